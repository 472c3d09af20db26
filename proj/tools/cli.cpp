#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <stdexcept>

#include <CLI11.hpp>

#include "hyperhom/dichotomy.hpp"
#include "hyperhom/evaluator.hpp"
#include "hyperhom/fixtures.hpp"
#include "hyperhom/gadgets.hpp"
#include "hyperhom/io.hpp"
#include "hyperhom/report.hpp"

namespace hyperhom::cli {

namespace {

/// Selftest mismatch or a broken library invariant.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

struct Outcome {
  std::string status;
  Json payload;
  std::string summary;
};

std::uint64_t brute_cap(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("HYPERHOM_BRUTE_CAP")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("HYPERHOM_BRUTE_CAP is not a number: ") + env);
    }
  }
  return kDefaultBruteCap;
}

CspInstance load_any_csp(const std::string& path) {
  const AnyInstance inst = load_instance(read_file(path));
  if (const auto* G = std::get_if<Hypergraph>(&inst)) return as_csp(*G);
  return std::get<CspInstance>(inst);
}

Hypergraph load_graph(const std::string& path) {
  const AnyInstance inst = load_instance(read_file(path));
  if (const auto* G = std::get_if<Hypergraph>(&inst)) return *G;
  throw std::invalid_argument("'" + path + "' is a csp file; this gadget needs a hypergraph");
}

Outcome do_classify(const std::string& path) {
  const SymFunc g = load_symfunc(read_file(path));
  const Classification cls = classify(g);
  Outcome out{cls.tractable() ? "tractable" : "hard", to_json(cls), ""};
  if (cls.tractable()) {
    out.summary = "tractable: " + std::to_string(cls.components.size()) + " component(s)";
  } else {
    out.summary = "hard: " + cls.witness->describe();
  }
  return out;
}

Outcome do_eval(const std::string& gpath, const std::string& ipath, const std::string& method,
                const std::optional<std::uint64_t>& cap_flag) {
  const SymFunc g = load_symfunc(read_file(gpath));
  const CspInstance I = load_any_csp(ipath);
  const std::uint64_t cap = brute_cap(cap_flag);
  Json payload;
  Outcome out{"value", Json::object(), ""};
  if (method == "brute") {
    const Rational z = eval_bruteforce(g, I, cap);
    payload["value"] = z.to_string();
    payload["method"] = "brute";
  } else {
    const Classification cls = classify(g);
    if (!cls.tractable() && method != "auto") {
      throw std::invalid_argument("method '" + method + "' needs a tractable function; " +
                                  cls.witness->describe());
    }
    if (cls.tractable()) {
      const EvalMethod m = method == "dp-lambda" ? EvalMethod::StructuredDp : EvalMethod::Structured;
      payload = to_json(eval_tractable(cls, g, I, m));
    } else {
      payload["value"] = eval_bruteforce(g, I, cap).to_string();
      payload["method"] = "brute";
      payload["witness"] = to_json(*cls.witness);
    }
  }
  out.summary = "Z = " + payload["value"].get<std::string>() + " (" + payload["method"].get<std::string>() + ")";
  out.payload = std::move(payload);
  return out;
}

Outcome finish_gadget(const GadgetResult& res, const std::string& output) {
  Json payload = to_json(res);
  if (!output.empty()) {
    std::ofstream f(output);
    if (!f) throw std::runtime_error("cannot write '" + output + "'");
    f << write_hypergraph(res.instance);
    std::ofstream side(output + ".json");
    if (!side) throw std::runtime_error("cannot write '" + output + ".json'");
    side << payload.dump(2) << '\n';
    payload["output"] = output;
  }
  const std::string summary = std::to_string(res.instance.vertex_count()) + " vertices, " +
                              std::to_string(res.instance.edge_count()) + " edges";
  return {"value", std::move(payload), summary};
}

// Built-in invariant suite.
Outcome do_selftest() {
  Json checks = Json::array();
  bool all_ok = true;
  auto check = [&](const std::string& name, bool ok) {
    checks.push_back(Json{{"check", name}, {"ok", ok}});
    all_ok = all_ok && ok;
  };
  auto guarded = [&](const std::string& name, const std::function<bool()>& f) {
    bool ok = false;
    try {
      ok = f();
    } catch (const std::exception&) {
      ok = false;
    }
    check(name, ok);
  };

  const Hypergraph edge(3, {{0, 1, 2}});
  struct Named {
    std::string name;
    SymFunc g;
  };
  const std::vector<Named> tractable{{"parity", fixtures::parity()},
                                     {"geometric", fixtures::geometric()},
                                     {"mixed", fixtures::mixed()},
                                     {"z4", fixtures::sum_relation(4, 3)}};
  guarded("parity classification", [] {
    const Classification c = classify(fixtures::parity());
    return c.tractable() && c.components.size() == 1 &&
           c.components[0].group.decomposition.factors == std::vector<long>{2} && c.components[0].group.a == 0;
  });
  guarded("mixed classification", [] {
    const Classification c = classify(fixtures::mixed());
    return c.tractable() && c.components[0].factors.s == 2 &&
           c.components[0].factors.mu == std::vector<Rational>{1, 3} && c.components[0].factors.C == 1;
  });
  guarded("z4 shifted zero", [] {
    const SymFunc g = fixtures::sum_relation(4, 3);
    const SymRelation S(4, 3, [&](std::span<const int> t) { return g.at(t).sign() > 0; });
    const auto gs = std::get<GroupStructure>(reconstruct_group(S, 1));
    return gs.a == 2 && gs.decomposition.factors == std::vector<long>{4} && gs.decomposition.iso[1][0] == 0 &&
           !equation_check(S, gs).has_value();
  });
  guarded("not-all-zero witness", [] {
    const SymFunc g = fixtures::not_all_zero();
    const Classification c = classify(g);
    return c.witness && c.witness->kind == WitnessKind::NotLatin && c.witness->tuple == std::vector<int>{0, 1} &&
           replay_witness(g, *c.witness);
  });
  guarded("steiner7 witness", [] {
    const SymFunc g = fixtures::steiner7();
    const Classification c = classify(g);
    return c.witness && c.witness->kind == WitnessKind::NotAssociative && replay_witness(g, *c.witness);
  });
  guarded("single edge values", [&] {
    return eval_bruteforce(fixtures::parity(), edge) == 4 && eval_bruteforce(fixtures::geometric(), edge) == 27 &&
           eval_tractable(classify(fixtures::mixed()), fixtures::mixed(), edge).value == 256;
  });

  std::mt19937_64 rng(2024);
  for (const auto& [name, g] : tractable) {
    guarded(name + " structured = brute = dp", [&, &g = g] {
      const Classification cls = classify(g);
      for (int t = 0; t < 25; ++t) {
        const int n = 3 + t % 5;
        std::vector<Scope> edges;
        for (int e = 0; e < 1 + t % 4; ++e) {
          Scope s;
          while (s.size() < 3) {
            const int v = static_cast<int>(rng() % static_cast<unsigned>(n));
            if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
          }
          edges.push_back(s);
        }
        const Hypergraph G(n, edges, true);
        const Rational brute = eval_bruteforce(g, G);
        if (eval_tractable(cls, g, G).value != brute) return false;
        if (eval_tractable(cls, g, G, EvalMethod::StructuredDp).value != brute) return false;
      }
      return true;
    });
  }
  guarded("padding identity", [] {
    const Hypergraph tri(3, {{0, 1}, {1, 2}, {0, 2}});
    return eval_bruteforce(fixtures::mixed(), pad_to_arity(tri, 2, 3).instance) ==
           eval_bruteforce(marginalize(fixtures::mixed(), 2), tri);
  });
  guarded("interpolation", [] {
    const InterpolationResult r = recover_via_interpolation({{1, 2}, {3, 5}});
    return r.z0 == 2 && r.gammas == std::vector<Rational>{1, 1};
  });

  Json payload;
  payload["passed"] = all_ok;
  payload["checks"] = std::move(checks);
  if (!all_ok) {
    Json failed = Json::array();
    for (const auto& c : payload["checks"]) {
      if (!c["ok"].get<bool>()) failed.push_back(c["check"]);
    }
    throw InternalError("selftest mismatch: " + failed.dump());
  }
  return {"value", std::move(payload), "selftest: all checks passed"};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };
  Json command;
  command["args"] = args;

  CLI::App app{"Exact partition functions of symmetric hypergraph weight functions", "hyperhom"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string gpath, ipath, method = "auto", output;
  std::optional<std::uint64_t> cap;
  int k = 0, r = 0, j = 0, p = 0;
  std::function<Outcome()> action;

  auto* classify_cmd = app.add_subcommand("classify", "Decide tractability and report structure or a witness");
  classify_cmd->add_option("-g,--function", gpath, "weight function file")->required();
  classify_cmd->callback([&] { action = [&] { return do_classify(gpath); }; });

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate the partition function exactly");
  eval_cmd->add_option("-g,--function", gpath, "weight function file")->required();
  eval_cmd->add_option("-i,--instance", ipath, "hypergraph or csp file")->required();
  eval_cmd->add_option("--method", method, "auto|structured|dp-lambda|brute")
      ->check(CLI::IsMember({"auto", "structured", "dp-lambda", "brute"}));
  eval_cmd->add_option("--brute-cap", cap, "largest q^n brute force may enumerate");
  eval_cmd->callback([&] { action = [&] { return do_eval(gpath, ipath, method, cap); }; });

  auto* gadget = app.add_subcommand("gadget", "Build a reduction gadget");
  gadget->require_subcommand(1);
  auto out_opt = [&](CLI::App* c) { c->add_option("-o,--output", output, "write the instance here plus a .json sidecar"); };

  auto* pad = gadget->add_subcommand("pad", "Pad each edge with fresh vertices");
  pad->add_option("-i,--instance", ipath)->required();
  pad->add_option("-k", k, "edge size of the input")->required();
  pad->add_option("-r", r, "target arity")->required();
  out_opt(pad);
  pad->callback([&] { action = [&] { return finish_gadget(pad_to_arity(load_graph(ipath), k, r), output); }; });

  auto* stretch = gadget->add_subcommand("stretch", "Subdivide every binary scope");
  stretch->add_option("-i,--instance", ipath)->required();
  out_opt(stretch);
  stretch->callback([&] { action = [&] { return finish_gadget(two_stretch(load_any_csp(ipath)), output); }; });

  auto* tilde = gadget->add_subcommand("tilde", "Binary function f~ of the k-ary marginal");
  tilde->add_option("-g,--function", gpath)->required();
  tilde->add_option("-k", k)->required();
  tilde->callback([&] {
    action = [&] {
      const SymFunc t = tilde_f(load_symfunc(read_file(gpath)), k);
      Json table = Json::array();
      for (int x = 0; x < t.domain_size(); ++x) {
        Json row = Json::array();
        for (int y = 0; y < t.domain_size(); ++y) row.push_back(t.at({x, y}).to_string());
        table.push_back(std::move(row));
      }
      return Outcome{"value", Json{{"k", k}, {"table", std::move(table)}}, "f~ computed"};
    };
  });

  auto* power = gadget->add_subcommand("power", "Pendant edges per vertex degree");
  power->add_option("-i,--instance", ipath)->required();
  power->add_option("-j", j)->required();
  out_opt(power);
  power->callback([&] { action = [&] { return finish_gadget(vertex_power(load_graph(ipath), j), output); }; });

  auto* separate = gadget->add_subcommand("separate", "Component separator over p copies");
  separate->add_option("-i,--instance", ipath)->required();
  separate->add_option("-p", p)->required();
  out_opt(separate);
  separate->callback([&] { action = [&] { return finish_gadget(component_separator(load_graph(ipath), p), output); }; });

  auto* elim = gadget->add_subcommand("eq-elim", "Replace equalities by edge pairs");
  elim->add_option("-i,--instance", ipath)->required();
  elim->add_option("-p", p)->required();
  out_opt(elim);
  elim->callback([&] { action = [&] { return finish_gadget(equality_eliminator(load_any_csp(ipath), p), output); }; });

  auto* self = app.add_subcommand("selftest", "Run the built-in invariant suite");
  self->callback([&] { action = [] { return do_selftest(); }; });

  auto fail = [&](int code, const std::string& kind, const std::string& message) {
    Json payload{{"error", kind}, {"message", message}};
    out << make_report(command, "error", std::move(payload), elapsed()).dump(2) << '\n';
    err << "error: " << message << '\n';
    return code;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    err << kToolVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    return fail(1, "usage", e.what());
  }
  command["name"] = app.get_subcommands().front()->get_name();

  try {
    Outcome o = action();
    out << make_report(command, o.status, std::move(o.payload), elapsed()).dump(2) << '\n';
    err << o.summary << '\n';
    return 0;
  } catch (const CapExceeded& e) {
    return fail(1, "cap-exceeded", e.what());
  } catch (const ParseError& e) {
    return fail(1, "parse", e.what());
  } catch (const InternalError& e) {
    return fail(2, "internal", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(1, "input", e.what());
  } catch (const std::out_of_range& e) {
    return fail(1, "input", e.what());
  } catch (const std::domain_error& e) {
    return fail(1, "input", e.what());
  } catch (const std::logic_error& e) {
    return fail(2, "internal", e.what());
  } catch (const std::exception& e) {
    return fail(1, "input", e.what());
  }
}

}  // namespace hyperhom::cli
