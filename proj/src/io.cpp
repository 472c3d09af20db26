#include "hyperhom/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>


namespace hyperhom {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return lines;
}

int parse_int(const Line& line, const std::string& tok) {
  int value = 0;
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(line.number, "expected an integer, got '" + tok + "'");
  }
  return value;
}

void expect_header(const std::vector<Line>& lines, const std::string& kind) {
  if (lines.empty()) throw ParseError(0, "empty input; expected '" + kind + " v1' header");
  const Line& h = lines.front();
  if (h.tokens.size() != 2 || h.tokens[0] != kind || h.tokens[1] != "v1") {
    throw ParseError(h.number, "expected header '" + kind + " v1'");
  }
}

int parse_count_line(const Line& line, const std::string& key) {
  if (line.tokens.size() != 2 || line.tokens[0] != key) {
    throw ParseError(line.number, "expected '" + key + " <int>'");
  }
  const int v = parse_int(line, line.tokens[1]);
  if (v < 0) throw ParseError(line.number, key + " must be non-negative");
  return v;
}

std::vector<int> parse_vertices(const Line& line, int n) {
  std::vector<int> vs;
  for (std::size_t i = 1; i < line.tokens.size(); ++i) {
    const int v = parse_int(line, line.tokens[i]);
    if (v < 0 || v >= n) {
      throw ParseError(line.number, "index " + std::to_string(v) + " out of range [0, " +
                                        std::to_string(n) + ")");
    }
    vs.push_back(v);
  }
  return vs;
}

}  // namespace

SymFunc load_symfunc(std::string_view text) {
  const auto lines = tokenize(text);
  expect_header(lines, "symfunc");
  if (lines.size() < 2) throw ParseError(0, "missing 'q <int> r <int>' line");
  const Line& dims = lines[1];
  if (dims.tokens.size() != 4 || dims.tokens[0] != "q" || dims.tokens[2] != "r") {
    throw ParseError(dims.number, "expected 'q <int> r <int>'");
  }
  const int q = parse_int(dims, dims.tokens[1]);
  const int r = parse_int(dims, dims.tokens[3]);
  if (q < 1) throw ParseError(dims.number, "domain size q must be >= 1");
  if (r < 3) {
    throw ParseError(dims.number, "arity r = " + std::to_string(r) +
                                      " is not supported; weight functions must have r >= 3");
  }

  std::map<std::vector<int>, Rational> weights;
  for (std::size_t li = 2; li < lines.size(); ++li) {
    const Line& line = lines[li];
    const auto& t = line.tokens;
    if (t.size() != static_cast<std::size_t>(r) + 2 || t[static_cast<std::size_t>(r)] != "=") {
      throw ParseError(line.number, "expected " + std::to_string(r) + " elements, '=', weight");
    }
    std::vector<int> key;
    for (int j = 0; j < r; ++j) {
      const int z = parse_int(line, t[static_cast<std::size_t>(j)]);
      if (z < 0 || z >= q) {
        throw ParseError(line.number, "element " + std::to_string(z) + " out of range [0, " +
                                          std::to_string(q) + ")");
      }
      key.push_back(z);
    }
    if (!std::is_sorted(key.begin(), key.end())) {
      throw ParseError(line.number, "elements must be non-decreasing");
    }
    Rational w;
    try {
      w = Rational::parse(t.back());
    } catch (const std::exception& e) {
      throw ParseError(line.number, std::string("bad weight: ") + e.what());
    }
    if (w.sign() < 0) throw ParseError(line.number, "negative weight " + w.to_string());
    if (!weights.emplace(key, w).second) {
      throw ParseError(line.number, "duplicate multiset key");
    }
  }
  return SymFunc::tabulate(q, r, [&](std::span<const int> key) {
    const auto it = weights.find(std::vector<int>(key.begin(), key.end()));
    return it == weights.end() ? Rational(0) : it->second;
  });
}

Hypergraph load_hypergraph(std::string_view text) {
  const auto lines = tokenize(text);
  expect_header(lines, "hypergraph");
  if (lines.size() < 2) throw ParseError(0, "missing 'n <int>' line");
  const int n = parse_count_line(lines[1], "n");
  bool multi = false;
  int k = 0;
  std::vector<Scope> edges;
  std::set<Scope> seen;
  for (std::size_t li = 2; li < lines.size(); ++li) {
    const Line& line = lines[li];
    const auto& t = line.tokens;
    if (t[0] == "multi" && t.size() == 1 && edges.empty()) {
      multi = true;
      continue;
    }
    if (t[0] == "k" && edges.empty()) {
      k = parse_count_line(line, "k");
      continue;
    }
    if (t[0] != "e") throw ParseError(line.number, "expected edge line 'e <v1> ... <vk>'");
    auto vs = parse_vertices(line, n);
    if (vs.empty()) throw ParseError(line.number, "empty edge");
    {
      auto sorted = vs;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ParseError(line.number, "non-distinct edge vertices");
      }
    }
    if (!std::is_sorted(vs.begin(), vs.end())) {
      throw ParseError(line.number, "edge vertices must be strictly increasing");
    }
    if (k == 0) k = static_cast<int>(vs.size());
    if (static_cast<int>(vs.size()) != k) {
      throw ParseError(line.number, "edge has " + std::to_string(vs.size()) +
                                        " vertices; hypergraph is " + std::to_string(k) +
                                        "-uniform");
    }
    if (!seen.insert(vs).second && !multi) throw ParseError(line.number, "duplicate edge");
    edges.push_back(std::move(vs));
  }
  return Hypergraph(n, std::move(edges), multi, k);
}

CspInstance load_csp(std::string_view text) {
  const auto lines = tokenize(text);
  expect_header(lines, "csp");
  if (lines.size() < 2) throw ParseError(0, "missing 'n <int>' line");
  CspInstance I;
  I.n = parse_count_line(lines[1], "n");
  for (std::size_t li = 2; li < lines.size(); ++li) {
    const Line& line = lines[li];
    const auto& t = line.tokens;
    if (t[0] == "c") {
      auto vs = parse_vertices(line, I.n);
      if (vs.empty()) throw ParseError(line.number, "empty scope");
      if (!I.scopes.empty() && vs.size() != I.scopes.front().size()) {
        throw ParseError(line.number, "scope arity differs from earlier scopes");
      }
      I.scopes.push_back(std::move(vs));
    } else if (t[0] == "eq") {
      auto vs = parse_vertices(line, I.n);
      if (vs.size() != 2) throw ParseError(line.number, "expected 'eq <u> <w>'");
      I.equalities.emplace_back(vs[0], vs[1]);
    } else {
      throw ParseError(line.number, "expected 'c ...' or 'eq <u> <w>'");
    }
  }
  return I;
}

AnyInstance load_instance(std::string_view text) {
  const auto lines = tokenize(text);
  if (!lines.empty() && !lines.front().tokens.empty() && lines.front().tokens[0] == "csp") {
    return load_csp(text);
  }
  return load_hypergraph(text);
}

std::string write_symfunc(const SymFunc& g) {
  std::ostringstream os;
  os << "symfunc v1\nq " << g.domain_size() << " r " << g.arity() << '\n';
  g.for_each([&](std::span<const int> key, const Rational& w) {
    if (w.is_zero()) return;
    for (int z : key) os << z << ' ';
    os << "= " << w << '\n';
  });
  return os.str();
}

std::string write_hypergraph(const Hypergraph& G) {
  std::ostringstream os;
  os << "hypergraph v1\nn " << G.vertex_count() << '\n';
  if (G.edge_count() == 0 && G.uniformity() > 0) os << "k " << G.uniformity() << '\n';
  if (G.has_parallel_edges()) os << "multi\n";
  for (const auto& e : G.edges()) {
    os << 'e';
    for (int v : e) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

std::string write_csp(const CspInstance& I) {
  std::ostringstream os;
  os << "csp v1\nn " << I.n << '\n';
  for (const auto& s : I.scopes) {
    os << 'c';
    for (int v : s) os << ' ' << v;
    os << '\n';
  }
  for (const auto& [u, w] : I.equalities) os << "eq " << u << ' ' << w << '\n';
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace hyperhom
