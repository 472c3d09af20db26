#include "hyperhom/report.hpp"

namespace hyperhom {

namespace {

Json rationals(const std::vector<Rational>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.to_string());
  return out;
}

}  // namespace

Json to_json(const HardnessWitness& w) {
  Json out;
  out["kind"] = to_string(w.kind);
  out["component"] = w.component;
  out["tuple"] = w.tuple;
  out["related"] = w.related;
  out["values"] = rationals(w.values);
  out["description"] = w.describe();
  return out;
}

Json to_json(const Classification& cls) {
  Json out;
  out["domain_size"] = cls.domain_size;
  out["removed"] = cls.removed;
  out["tractable"] = cls.tractable();
  Json comps = Json::array();
  for (std::size_t l = 0; l < cls.components.size(); ++l) {
    const auto& fs = cls.components[l].factors;
    const auto& gs = cls.components[l].group;
    Json c;
    c["component"] = l;
    c["elements"] = fs.elements();
    c["classes"] = fs.classes;
    c["s"] = fs.s;
    c["mu"] = rationals(fs.mu);
    c["C"] = fs.C.to_string();
    Json g;
    g["order"] = gs.group.order();
    g["zero"] = gs.group.zero();
    g["cayley"] = gs.group.table();
    g["invariant_factors"] = gs.decomposition.factors;
    g["a"] = gs.a;
    g["iso"] = gs.decomposition.iso;
    c["group"] = std::move(g);
    comps.push_back(std::move(c));
  }
  out["components"] = std::move(comps);
  out["witness"] = cls.witness ? to_json(*cls.witness) : Json(nullptr);
  return out;
}

Json to_json(const EvalReport& report) {
  Json out;
  out["value"] = report.value.to_string();
  out["method"] = to_string(report.method);
  out["isolated"] = report.isolated;
  Json pieces = Json::array();
  for (const auto& p : report.pieces) {
    Json j;
    j["vertices"] = p.vertices;
    j["edges"] = p.edges;
    j["value"] = p.value.to_string();
    Json terms = Json::array();
    for (const auto& t : p.terms) {
      terms.push_back(Json{{"component", t.domain_component},
                           {"lambda", t.lambda.to_string()},
                           {"homs", hyperhom::to_string(t.homs)}});
    }
    j["terms"] = std::move(terms);
    pieces.push_back(std::move(j));
  }
  out["pieces"] = std::move(pieces);
  return out;
}

Json to_json(const GadgetResult& result) {
  Json out;
  out["vertices"] = result.instance.vertex_count();
  out["edges"] = result.instance.edge_count();
  out["uniformity"] = result.instance.uniformity();
  out["fresh"] = result.fresh;
  out["copies"] = result.copies;
  Json params = Json::object();
  for (const auto& [k, v] : result.parameters) params[k] = v;
  out["parameters"] = std::move(params);
  return out;
}

Json make_report(const Json& command, const std::string& status, Json payload, double timing_ms) {
  Json out;
  out["tool"] = kToolName;
  out["version"] = kToolVersion;
  out["command"] = command;
  out["status"] = status;
  out["payload"] = std::move(payload);
  out["timing_ms"] = timing_ms;
  return out;
}

}  // namespace hyperhom
