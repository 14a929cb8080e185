#include "cig/serialize.hpp"

#include "cig/error.hpp"

namespace cig {

Json to_json(const Digraph& d) {
  Json arcs = Json::array();
  for (auto [u, v] : d.arcs()) arcs.push_back({u, v});
  return Json{{"order", d.order()}, {"arcs", std::move(arcs)}};
}

Digraph digraph_from_json(const Json& j) {
  try {
    const std::size_t order = j.at("order").get<std::size_t>();
    std::vector<Arc> arcs;
    for (const auto& a : j.at("arcs")) {
      if (!a.is_array() || a.size() != 2) throw InvalidInput("an arc must be a pair [u, v]");
      arcs.emplace_back(a[0].get<Vertex>(), a[1].get<Vertex>());
    }
    return Digraph::from_arcs(order, arcs);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed digraph object: ") + e.what());
  }
}

Json to_json(const PointPartition& p) { return Json(p.classes()); }

Json to_json(const GroupAutomorphism& a) { return Json(a.images); }

Json to_json(const CIPairResult& r) {
  Json j{{"verdict", to_string(r.verdict)}};
  j["alpha"] = r.alpha ? to_json(*r.alpha) : Json(nullptr);
  j["iso"] = r.iso ? Json(*r.iso) : Json(nullptr);
  return j;
}

Json to_json(const CIGroupVerdict& v) {
  Json witnesses = Json::array();
  for (const NonCIWitness& w : v.witnesses)
    witnesses.push_back(Json{{"s", w.s}, {"s_prime", w.s_prime}, {"iso", w.iso}});
  return Json{{"mode", to_string(v.mode)},
              {"group_order", v.group_order},
              {"is_ci", v.is_ci},
              {"exhaustive", v.exhaustive},
              {"sets_enumerated", v.sets_enumerated},
              {"orbit_count", v.orbit_count},
              {"pairs_total", v.pairs_total},
              {"pairs_checked", v.pairs_checked},
              {"witnesses", std::move(witnesses)}};
}

Json to_json(const LiftResult& l) {
  return Json{{"case", to_string(l.lift_case)},
              {"quotient_set", l.quotient_set},
              {"T", l.t},
              {"ell", l.ell},
              {"coset_partition", to_json(l.coset_partition)},
              {"quotient_graph", to_json(l.quotient_graph)}};
}

Json to_json(const NamedCheck& c) {
  return Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
}

Json to_json(const QuotientCICertificate& c) {
  Json checks = Json::array();
  for (const NamedCheck& k : c.checks) checks.push_back(to_json(k));
  Json j{{"status", to_string(c.status)},
         {"mode", to_string(c.mode)},
         {"instance",
          Json{{"group_order", c.group_order},
               {"H", c.h},
               {"transversal", c.transversal},
               {"S1", c.s1},
               {"S2", c.s2}}}};
  j["lift1"] = c.lift1 ? to_json(*c.lift1) : Json(nullptr);
  j["lift2"] = c.lift2 ? to_json(*c.lift2) : Json(nullptr);
  j["alpha"] = c.alpha ? to_json(*c.alpha) : Json(nullptr);
  j["alpha_bar"] = c.alpha_bar ? to_json(*c.alpha_bar) : Json(nullptr);
  j["checks"] = std::move(checks);
  const auto failure = c.first_failure();
  j["first_failure"] = failure ? Json(*failure) : Json(nullptr);
  return j;
}

Json to_json(const WreathAutReport& r) {
  Json j{{"gamma1", to_json(r.gamma1)},
         {"gamma2", to_json(r.gamma2)},
         {"aut1_order", r.aut1_order},
         {"aut2_order", r.aut2_order},
         {"product_aut_order", r.product_aut_order},
         {"wreath_group_order", r.wreath_group_order},
         {"equal", r.equal}};
  if (r.dichotomy) {
    const WreathDichotomy& d = *r.dichotomy;
    j["dichotomy"] = Json{{"r", d.r},
                          {"s", d.s},
                          {"inner_kind", to_string(d.inner_kind)},
                          {"outer_reduced", to_json(d.outer_reduced)},
                          {"inner_reduced", to_json(d.inner_reduced)},
                          {"outer_reduced_aut_order", d.outer_reduced_aut_order},
                          {"inner_reduced_aut_order", d.inner_reduced_aut_order},
                          {"predicted_order", d.predicted_order}};
  } else {
    j["dichotomy"] = nullptr;
  }
  j["consistent"] = r.consistent;
  return j;
}

}  // namespace cig
