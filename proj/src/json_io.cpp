#include "d2lab/json_io.hpp"

#include <algorithm>
#include <cstdio>

namespace d2lab {

Json scalar_json(const Scalar& s) { return to_string(s); }

Scalar scalar_from_json(const Json& j) {
  if (!j.is_string()) throw std::invalid_argument("scalar: expected rational string");
  return parse_scalar(j.get<std::string>());
}

Json norm_value_json(const NormValue& v) {
  if (v.p == 1) return scalar_json(v.radicand);
  return Json{{"radicand", scalar_json(v.radicand)}, {"p", v.p}};
}

NormValue norm_value_from_json(const Json& j) {
  if (j.is_string()) return NormValue::exact(scalar_from_json(j));
  return NormValue{scalar_from_json(j.at("radicand")), j.at("p").get<int>()};
}

Json vector_json(const SeqVector& v) {
  Json coords = Json::array();
  for (const auto& c : v.coords) coords.push_back(scalar_json(c));
  Json j;
  j["coords"] = std::move(coords);
  j["limit"] = v.limit == 0 ? Json() : scalar_json(v.limit);
  return j;
}

SeqVector vector_from_json(const Json& j) {
  SeqVector v;
  for (const auto& c : j.at("coords")) v.coords.push_back(scalar_from_json(c));
  const auto& lim = j.at("limit");
  v.limit = lim.is_null() ? Scalar(0) : scalar_from_json(lim);
  return v;
}

Json functional_json(const Functional& f) {
  Json coeffs = Json::array();
  for (const auto& c : f.coeffs) coeffs.push_back(scalar_json(c));
  return Json{{"coeffs", std::move(coeffs)}, {"limit_coeff", scalar_json(f.limit_coeff)}};
}

Functional functional_from_json(const Json& j) {
  Functional f;
  for (const auto& c : j.at("coeffs")) f.coeffs.push_back(scalar_from_json(c));
  f.limit_coeff = scalar_from_json(j.at("limit_coeff"));
  return f;
}

Json model_json(const SpaceModel& m) {
  Json norm;
  switch (m.kind) {
    case NormKind::sup:
      norm = Json{{"kind", "sup"}};
      break;
    case NormKind::product_p:
      norm = Json{{"kind", "product_p"}, {"p", m.p}, {"split", m.split}};
      break;
    case NormKind::l1sum:
      norm = Json{{"kind", "l1sum"}, {"split", m.split}};
      break;
    case NormKind::gauge:
      norm = Json{{"kind", "gauge"}, {"ball", polytope_json(*m.ball)}};
      break;
  }
  return Json{{"dim", m.dim}, {"has_limit", m.has_limit}, {"norm", std::move(norm)}};
}

SpaceModel model_from_json(const Json& j) {
  SpaceModel m;
  m.dim = j.at("dim").get<int>();
  m.has_limit = j.at("has_limit").get<bool>();
  const auto& norm = j.at("norm");
  const std::string kind = norm.at("kind").get<std::string>();
  if (kind == "sup") {
    m.kind = NormKind::sup;
  } else if (kind == "product_p") {
    m.kind = NormKind::product_p;
    m.p = norm.at("p").get<int>();
    m.split = norm.at("split").get<int>();
  } else if (kind == "l1sum") {
    m.kind = NormKind::l1sum;
    m.split = norm.at("split").get<int>();
  } else if (kind == "gauge") {
    m.kind = NormKind::gauge;
    m.ball = std::make_shared<VPolytope>(polytope_from_json(norm.at("ball")));
  } else {
    throw std::invalid_argument("model: unknown norm kind '" + kind + "'");
  }
  return m;
}

Json polytope_json(const VPolytope& P) {
  std::vector<SeqVector> sorted = P.vertices;
  std::sort(sorted.begin(), sorted.end(), lex_less);
  Json verts = Json::array();
  for (const auto& v : sorted) verts.push_back(vector_json(v));
  return Json{{"model", model_json(P.model)},
              {"vertices", std::move(verts)},
              {"canonical", P.canonical}};
}

VPolytope polytope_from_json(const Json& j) {
  VPolytope P;
  P.model = model_from_json(j.at("model"));
  for (const auto& v : j.at("vertices")) P.vertices.push_back(vector_from_json(v));
  P.canonical = j.at("canonical").get<bool>();
  return P;
}

Json ledger_json(const StageLedger& ledger) {
  Json stages = Json::array();
  for (const auto& st : ledger.stages) {
    stages.push_back(Json{{"hull", polytope_json(st.hull)},
                          {"m", st.m},
                          {"l", st.l},
                          {"net_radius", scalar_json(st.net_radius)},
                          {"mesh_bound", scalar_json(st.mesh_bound)},
                          {"eps", scalar_json(st.eps)}});
  }
  Json net = Json::array();
  for (const auto& g : ledger.net) net.push_back(vector_json(g));
  return Json{{"mesh_denominator", ledger.mesh_denominator},
              {"stages", std::move(stages)},
              {"net", std::move(net)}};
}

StageLedger ledger_from_json(const Json& j) {
  StageLedger ledger;
  ledger.mesh_denominator = j.at("mesh_denominator").get<int>();
  for (const auto& st : j.at("stages")) {
    StageInfo info;
    info.hull = polytope_from_json(st.at("hull"));
    info.m = st.at("m").get<int>();
    info.l = st.at("l").get<int>();
    info.net_radius = scalar_from_json(st.at("net_radius"));
    info.mesh_bound = scalar_from_json(st.at("mesh_bound"));
    info.eps = scalar_from_json(st.at("eps"));
    ledger.stages.push_back(std::move(info));
  }
  for (const auto& g : j.at("net")) ledger.net.push_back(vector_from_json(g));
  return ledger;
}

Json renorm_params_json(const RenormParams& p) {
  Json funcs = Json::array();
  for (const auto& f : p.funcs) funcs.push_back(functional_json(f));
  Json weights = Json::array();
  for (const auto& w : p.weights) weights.push_back(scalar_json(w));
  return Json{{"eps", scalar_json(p.eps)},
              {"rho", scalar_json(p.rho)},
              {"delta", scalar_json(p.delta)},
              {"delta_tilde", scalar_json(p.delta_tilde)},
              {"gamma", scalar_json(p.gamma)},
              {"functionals", std::move(funcs)},
              {"weights", std::move(weights)}};
}

RenormParams renorm_params_from_json(const Json& j) {
  RenormParams p;
  p.eps = scalar_from_json(j.at("eps"));
  p.rho = scalar_from_json(j.at("rho"));
  p.delta = scalar_from_json(j.at("delta"));
  p.delta_tilde = scalar_from_json(j.at("delta_tilde"));
  p.gamma = scalar_from_json(j.at("gamma"));
  for (const auto& f : j.at("functionals")) p.funcs.push_back(functional_from_json(f));
  for (const auto& w : j.at("weights")) p.weights.push_back(scalar_from_json(w));
  return p;
}

std::string content_hash(const Json& j) {
  const std::string dump = j.dump();
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string approx_decimal(const Scalar& s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", approx_double(s));
  return buf;
}

}  // namespace d2lab
