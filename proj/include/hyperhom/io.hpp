#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "hyperhom/instance.hpp"
#include "hyperhom/symfunc.hpp"

namespace hyperhom {

/// Malformed input text; `line()` is 1-based (0 when not tied to a line).
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

SymFunc load_symfunc(std::string_view text);
Hypergraph load_hypergraph(std::string_view text);
CspInstance load_csp(std::string_view text);

/// Either file kind, dispatched on the header line.
using AnyInstance = std::variant<Hypergraph, CspInstance>;
AnyInstance load_instance(std::string_view text);

/// Writers emit the same formats; only nonzero weights are listed.
std::string write_symfunc(const SymFunc& g);
std::string write_hypergraph(const Hypergraph& G);
std::string write_csp(const CspInstance& I);

std::string read_file(const std::string& path);

}  // namespace hyperhom
