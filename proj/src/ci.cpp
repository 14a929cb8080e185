#include "cig/ci.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <numeric>
#include <thread>

#include "cig/error.hpp"

namespace cig {

const char* to_string(Mode mode) { return mode == Mode::digraph ? "digraph" : "graph"; }

Mode parse_mode(std::string_view text) {
  if (text == "digraph") return Mode::digraph;
  if (text == "graph") return Mode::graph;
  throw InvalidInput("unknown mode '" + std::string(text) + "' (expected digraph or graph)");
}

const char* to_string(PairVerdict verdict) {
  switch (verdict) {
    case PairVerdict::not_isomorphic: return "NotIsomorphic";
    case PairVerdict::ci_equivalent: return "CIEquivalent";
    case PairVerdict::non_ci_witness: return "NonCIWitness";
  }
  return "?";
}

const char* to_string(LiftCase c) {
  return c == LiftCase::non_decomposable ? "NonDecomposable" : "Decomposable";
}

const char* to_string(CertificateStatus status) {
  switch (status) {
    case CertificateStatus::accepted: return "accepted";
    case CertificateStatus::rejected: return "rejected";
    case CertificateStatus::quotients_not_isomorphic: return "quotients_not_isomorphic";
    case CertificateStatus::hypothesis_fails: return "hypothesis_fails";
  }
  return "?";
}

namespace {

ElementSet validated_set(const FiniteGroup& g, std::span<const Element> s, const char* what) {
  for (Element x : s)
    if (x >= g.order())
      throw InvalidInput(std::string(what) + " element " + std::to_string(x) +
                         " is outside a group of order " + std::to_string(g.order()));
  return make_element_set({s.begin(), s.end()});
}

void require_graph_set(const FiniteGroup& g, std::span<const Element> s, const char* what) {
  if (!is_graph_set(g, s))
    throw InvalidInput(std::string(what) + " is not closed under inverses (graph mode)");
}

std::string set_string(std::span<const Element> s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

NamedCheck check(std::string name, bool passed, std::string detail = {}) {
  return NamedCheck{std::move(name), passed, std::move(detail)};
}

}  // namespace

// --- CI pairs and groups --------------------------------------------------

std::optional<GroupAutomorphism> automorphic_image_search(
    std::span<const GroupAutomorphism> automorphisms, std::span<const Element> s,
    std::span<const Element> s_prime) {
  const ElementSet a = make_element_set({s.begin(), s.end()});
  const ElementSet b = make_element_set({s_prime.begin(), s_prime.end()});
  if (a.size() != b.size()) return std::nullopt;
  for (const GroupAutomorphism& alpha : automorphisms)
    if (alpha.apply(a) == b) return alpha;
  return std::nullopt;
}

std::optional<GroupAutomorphism> automorphic_image_search(const FiniteGroup& g,
                                                          std::span<const Element> s,
                                                          std::span<const Element> s_prime,
                                                          std::size_t automorphism_cap) {
  validated_set(g, s, "connection set");
  validated_set(g, s_prime, "connection set");
  return automorphic_image_search(automorphism_group(g, automorphism_cap), s, s_prime);
}

CIPairResult ci_pair(const FiniteGroup& g, std::span<const GroupAutomorphism> automorphisms,
                     std::span<const Element> s, std::span<const Element> s_prime, Mode mode,
                     const Limits& limits) {
  const ElementSet a = validated_set(g, s, "first connection set");
  const ElementSet b = validated_set(g, s_prime, "second connection set");
  if (mode == Mode::graph) {
    require_graph_set(g, a, "first connection set");
    require_graph_set(g, b, "second connection set");
  }
  const Digraph da = cayley(g, a), db = cayley(g, b);
  CIPairResult result;
  if (auto alpha = automorphic_image_search(automorphisms, a, b)) {
    VertexMap map(alpha->images.begin(), alpha->images.end());
    if (!is_isomorphism(da, db, map))
      throw std::logic_error("group automorphism failed to map Cayley digraphs");
    result.verdict = PairVerdict::ci_equivalent;
    result.alpha = std::move(alpha);
    result.iso = std::move(map);
    return result;
  }
  result.iso = find_isomorphism(da, db, limits.search_cap);
  result.verdict = result.iso ? PairVerdict::non_ci_witness : PairVerdict::not_isomorphic;
  return result;
}

CIPairResult ci_pair(const FiniteGroup& g, std::span<const Element> s,
                     std::span<const Element> s_prime, Mode mode, const Limits& limits) {
  return ci_pair(g, automorphism_group(g, limits.automorphism_cap), s, s_prime, mode, limits);
}

CIGroupVerdict is_ci_group(const FiniteGroup& g, Mode mode, const CIGroupOptions& options) {
  const std::size_t n = g.order();
  if (n > options.subset_order_cap || n >= 32)
    throw CapExceeded("subset enumeration limited to groups of order " +
                      std::to_string(std::min<std::size_t>(options.subset_order_cap, 31)));
  const auto automorphisms = automorphism_group(g, options.limits.automorphism_cap);

  using Mask = std::uint32_t;
  auto to_set = [n](Mask m) {
    ElementSet s;
    for (Element x = 0; x < n; ++x)
      if (m >> x & 1u) s.push_back(x);
    return s;
  };
  auto image = [n](const GroupAutomorphism& alpha, Mask m) {
    Mask out = 0;
    for (Element x = 0; x < n; ++x)
      if (m >> x & 1u) out |= Mask{1} << alpha(x);
    return out;
  };
  auto eligible = [&](Mask m) {
    if (mode == Mode::digraph) return true;
    Mask inverses = 0;
    for (Element x = 0; x < n; ++x)
      if (m >> x & 1u) inverses |= Mask{1} << g.inverse(x);
    return inverses == m;
  };

  CIGroupVerdict verdict;
  verdict.mode = mode;
  verdict.group_order = n;
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<bool> seen(total, false);
  std::vector<std::vector<Mask>> by_size(n + 1);
  for (std::uint64_t m = 0; m < total; ++m) {
    const Mask mask = static_cast<Mask>(m);
    if (!eligible(mask)) continue;
    ++verdict.sets_enumerated;
    if (seen[mask]) continue;
    by_size[std::popcount(mask)].push_back(mask);
    ++verdict.orbit_count;
    for (const GroupAutomorphism& alpha : automorphisms) seen[image(alpha, mask)] = true;
  }

  std::vector<std::pair<Mask, Mask>> tasks;
  for (const auto& reps : by_size)
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i + 1; j < reps.size(); ++j) tasks.emplace_back(reps[i], reps[j]);
  verdict.pairs_total = tasks.size();
  if (options.budget && *options.budget < tasks.size()) {
    tasks.resize(*options.budget);
    verdict.exhaustive = false;
  }
  verdict.pairs_checked = tasks.size();

  std::vector<std::optional<VertexMap>> found(tasks.size());
  auto work = [&](std::size_t i) {
    CIPairResult r = ci_pair(g, automorphisms, to_set(tasks[i].first), to_set(tasks[i].second),
                             mode, options.limits);
    if (r.verdict == PairVerdict::non_ci_witness) found[i] = std::move(r.iso);
  };
  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1 || tasks.size() < 2) {
    for (std::size_t i = 0; i < tasks.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) work(i);
        } catch (...) {
          errors[t] = std::current_exception();
          next = tasks.size();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  for (std::size_t i = 0; i < tasks.size(); ++i)
    if (found[i])
      verdict.witnesses.push_back(
          NonCIWitness{to_set(tasks[i].first), to_set(tasks[i].second), std::move(*found[i])});
  verdict.is_ci = verdict.witnesses.empty();
  return verdict;
}

bool reverify_witness(const FiniteGroup& g, std::span<const GroupAutomorphism> automorphisms,
                      const NonCIWitness& witness) {
  const Digraph a = cayley(g, witness.s), b = cayley(g, witness.s_prime);
  if (!is_isomorphism(a, b, witness.iso)) return false;
  for (const GroupAutomorphism& alpha : automorphisms) {
    if (!is_automorphism(g, alpha.images)) return false;
    if (alpha.apply(witness.s) == witness.s_prime) return false;
  }
  return true;
}

// --- lifting --------------------------------------------------------------

LiftResult lift_connection_set(const FiniteGroup& g, const QuotientMap& q,
                               std::span<const Element> s_quotient) {
  LiftResult lift;
  lift.quotient_set = validated_set(q.target, s_quotient, "quotient connection set");
  lift.ell = q.kernel.size();
  lift.coset_partition = q.cosets.as_partition();
  lift.quotient_graph = cayley(q.target, lift.quotient_set);
  lift.lift_case = decompose_over_complete(lift.quotient_graph) ? LiftCase::decomposable
                                                                : LiftCase::non_decomposable;
  std::vector<Element> t;
  for (Element c : lift.quotient_set)
    t.insert(t.end(), q.cosets.cosets[c].begin(), q.cosets.cosets[c].end());
  if (lift.lift_case == LiftCase::non_decomposable)
    for (Element x : q.kernel)
      if (x != 0) t.push_back(x);
  lift.t = make_element_set(std::move(t));
  (void)g;
  return lift;
}

LiftResult lift_connection_set(const FiniteGroup& g, std::span<const Element> h,
                               std::span<const Element> s_quotient) {
  return lift_connection_set(g, quotient(g, h), s_quotient);
}

std::vector<Vertex> coset_sorted_indexing(const CosetDecomposition& cosets) {
  std::vector<Vertex> index(cosets.coset_of.size());
  for (std::size_t c = 0; c < cosets.cosets.size(); ++c)
    for (std::size_t pos = 0; pos < cosets.cosets[c].size(); ++pos)
      index[cosets.cosets[c][pos]] = static_cast<Vertex>(c * cosets.cosets[c].size() + pos);
  return index;
}

namespace {

struct LiftAnalysis {
  std::vector<NamedCheck> checks;
  std::optional<PermGroup> aut;
};

LiftAnalysis analyse_lift(const FiniteGroup& g, const QuotientMap& q, const LiftResult& lift,
                          const Limits& limits) {
  LiftAnalysis out;
  const std::size_t ell = lift.ell, m = q.target.order();
  const std::vector<Vertex> index = coset_sorted_indexing(q.cosets);
  std::vector<Vertex> element_at(index.size());
  for (Element x = 0; x < index.size(); ++x) element_at[index[x]] = x;

  const Digraph big = cayley(g, lift.t);
  const Digraph inner = lift.lift_case == LiftCase::non_decomposable ? complete(ell) : empty(ell);
  const Digraph expected = wreath_digraph(lift.quotient_graph, inner);
  out.checks.push_back(check("arcs_match_wreath", big.relabeled(index) == expected,
                             std::string("Cay(G,T) vs Cay(G/H,S) wr ") +
                                 (lift.lift_case == LiftCase::non_decomposable ? "K" : "co-K") +
                                 std::to_string(ell)));

  PermGroup aut = automorphism_group_of(big, limits.search_cap);
  const PermGroup quotient_aut = automorphism_group_of(lift.quotient_graph, limits.search_cap);
  const PermGroup wreath = wreath_perm(quotient_aut, symmetric_group(ell));
  out.checks.push_back(check("aut_order_matches_wreath", aut.order() == wreath.order(),
                             "|Aut(Cay(G,T))| = " + std::to_string(aut.order()) +
                                 ", |Aut(Cay(G/H,S)) wr S" + std::to_string(ell) +
                                 "| = " + std::to_string(wreath.order())));

  bool wreath_in_aut = true;
  for (const Perm& w : wreath.generators()) {
    std::vector<Point> images(index.size());
    for (Element x = 0; x < index.size(); ++x) images[x] = element_at[w(index[x])];
    if (!is_automorphism(big, Perm(std::move(images)))) wreath_in_aut = false;
  }
  out.checks.push_back(check("wreath_generators_in_aut", wreath_in_aut,
                             std::to_string(wreath.generators().size()) + " generators"));

  bool aut_in_wreath = true;
  for (const Perm& a : aut.generators()) {
    if (!preserves_partition(a, lift.coset_partition)) {
      aut_in_wreath = false;
      continue;
    }
    std::vector<Point> induced(m);
    for (std::size_t c = 0; c < m; ++c)
      induced[c] = static_cast<Point>(q.cosets.coset_of[a(q.cosets.transversal[c])]);
    if (!is_automorphism(lift.quotient_graph, Perm(std::move(induced)))) aut_in_wreath = false;
  }
  out.checks.push_back(check("aut_generators_in_wreath", aut_in_wreath,
                             std::to_string(aut.generators().size()) + " generators"));
  out.aut = std::move(aut);
  return out;
}

}  // namespace

std::vector<NamedCheck> verify_lift_structure(const FiniteGroup& g, const QuotientMap& q,
                                              const LiftResult& lift, const Limits& limits) {
  return analyse_lift(g, q, lift, limits).checks;
}

std::vector<NamedCheck> verify_lift_structure(const FiniteGroup& g, std::span<const Element> h,
                                              std::span<const Element> s_quotient,
                                              const Limits& limits) {
  const QuotientMap q = quotient(g, h);
  return verify_lift_structure(g, q, lift_connection_set(g, q, s_quotient), limits);
}

bool verify_unique_block_partition(const PermGroup& a, std::size_t ell,
                                   const PointPartition& expected, std::size_t degree_cap) {
  const auto systems = block_systems_of_size(a, ell, degree_cap);
  return systems.size() == 1 && systems.front() == expected;
}

// --- the certificate ------------------------------------------------------

std::optional<std::string> QuotientCICertificate::first_failure() const {
  for (const NamedCheck& c : checks)
    if (!c.passed) return c.name;
  return std::nullopt;
}

QuotientCICertificate quotient_ci_certificate(const FiniteGroup& g, const QuotientMap& q,
                                              std::span<const GroupAutomorphism> automorphisms,
                                              std::span<const Element> s1,
                                              std::span<const Element> s2, Mode mode,
                                              const Limits& limits) {
  QuotientCICertificate cert;
  cert.mode = mode;
  cert.group_order = g.order();
  cert.h = q.kernel;
  cert.transversal = q.cosets.transversal;
  cert.s1 = validated_set(q.target, s1, "first quotient connection set");
  cert.s2 = validated_set(q.target, s2, "second quotient connection set");
  if (mode == Mode::graph) {
    require_graph_set(q.target, cert.s1, "first quotient connection set");
    require_graph_set(q.target, cert.s2, "second quotient connection set");
  }

  const Digraph q1 = cayley(q.target, cert.s1), q2 = cayley(q.target, cert.s2);
  const bool quotients_iso = are_isomorphic(q1, q2, limits.search_cap);
  cert.checks.push_back(check("quotient_graphs_isomorphic", quotients_iso));
  if (!quotients_iso) {
    cert.status = CertificateStatus::quotients_not_isomorphic;
    return cert;
  }

  cert.lift1 = lift_connection_set(g, q, cert.s1);
  cert.lift2 = lift_connection_set(g, q, cert.s2);
  cert.checks.push_back(check("lift_cases_agree", cert.lift1->lift_case == cert.lift2->lift_case,
                              std::string(to_string(cert.lift1->lift_case)) + " / " +
                                  to_string(cert.lift2->lift_case)));
  int side = 1;
  for (const LiftResult* lift : {&*cert.lift1, &*cert.lift2}) {
    const std::string prefix = "lift" + std::to_string(side++) + "_";
    LiftAnalysis analysis = analyse_lift(g, q, *lift, limits);
    for (NamedCheck& c : analysis.checks) {
      c.name = prefix + c.name;
      cert.checks.push_back(std::move(c));
    }
    const auto systems = block_systems_of_size(*analysis.aut, lift->ell, limits.block_search_cap);
    const bool unique = systems.size() == 1 && systems.front() == lift->coset_partition;
    cert.checks.push_back(check(prefix + "unique_block_partition_is_cosets", unique,
                                std::to_string(systems.size()) + " invariant partition(s) with "
                                "classes of size " + std::to_string(lift->ell)));
  }

  const Digraph c1 = cayley(g, cert.lift1->t), c2 = cayley(g, cert.lift2->t);
  cert.checks.push_back(
      check("lifted_graphs_isomorphic", are_isomorphic(c1, c2, limits.search_cap)));

  cert.alpha = automorphic_image_search(automorphisms, cert.lift1->t, cert.lift2->t);
  cert.checks.push_back(check("alpha_maps_T1_to_T2", cert.alpha.has_value(),
                              cert.alpha ? "" : "no automorphism of G maps T1 to T2"));
  if (!cert.alpha) {
    const bool earlier_failure = std::any_of(cert.checks.begin(), cert.checks.end() - 1,
                                             [](const NamedCheck& c) { return !c.passed; });
    cert.status = earlier_failure ? CertificateStatus::rejected
                                  : CertificateStatus::hypothesis_fails;
    return cert;
  }
  const GroupAutomorphism& alpha = *cert.alpha;
  cert.checks.push_back(check("alpha_is_isomorphism", is_isomorphism(c1, c2, alpha.images)));
  cert.checks.push_back(check("alpha_preserves_coset_partition",
                              preserves_partition(Perm(alpha.images), cert.lift1->coset_partition)));
  const ElementSet image_of_h = alpha.apply(q.kernel);
  cert.checks.push_back(check("alpha_fixes_H", image_of_h == q.kernel,
                              "alpha(H) = " + set_string(image_of_h)));
  try {
    cert.alpha_bar = induced_quotient_automorphism(alpha, q);
    cert.checks.push_back(check("alpha_bar_well_defined", true));
  } catch (const InvalidInput& e) {
    cert.checks.push_back(check("alpha_bar_well_defined", false, e.what()));
  }
  if (cert.alpha_bar) {
    const ElementSet image = cert.alpha_bar->apply(cert.s1);
    cert.checks.push_back(check("alpha_bar_maps_S1_to_S2", image == cert.s2,
                                "alpha_bar(S1) = " + set_string(image)));
  } else {
    cert.checks.push_back(check("alpha_bar_maps_S1_to_S2", false, "alpha_bar undefined"));
  }
  cert.status = cert.first_failure() ? CertificateStatus::rejected : CertificateStatus::accepted;
  return cert;
}

QuotientCICertificate quotient_ci_certificate(const FiniteGroup& g, std::span<const Element> h,
                                              std::span<const Element> s1,
                                              std::span<const Element> s2, Mode mode,
                                              const Limits& limits) {
  const QuotientMap q = quotient(g, h);
  return quotient_ci_certificate(g, q, automorphism_group(g, limits.automorphism_cap), s1, s2,
                                 mode, limits);
}

// --- automorphisms of wreath products -------------------------------------

namespace {

// Classes of the union-find closure of `joined` over distinct vertex pairs.
template <class Joined>
std::vector<std::vector<Vertex>> components(std::size_t n, Joined&& joined) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (joined(u, v)) parent[find(u)] = find(v);
  std::vector<std::size_t> label(n);
  for (std::size_t x = 0; x < n; ++x) label[x] = find(x);
  const PointPartition partition = PointPartition::from_labels(label);
  std::vector<std::vector<Vertex>> out;
  for (const auto& cls : partition.classes())
    out.emplace_back(cls.begin(), cls.end());
  return out;
}

// Gamma2 = X_s wr Gamma2' with s maximal: the parts are the co-components
// (complete outer factor) or the weak components (edgeless outer factor).
std::optional<std::pair<std::size_t, Digraph>> split_outer(const Digraph& d, InnerKind kind,
                                                           std::size_t search_cap) {
  auto parts = kind == InnerKind::complete
                   ? components(d.order(), [&](Vertex u, Vertex v) {
                       return !(d.has_arc(u, v) && d.has_arc(v, u));
                     })
                   : components(d.order(), [&](Vertex u, Vertex v) {
                       return d.has_arc(u, v) || d.has_arc(v, u);
                     });
  if (parts.size() < 2) return std::nullopt;
  Digraph reduced = d.induced(parts.front());
  const std::size_t s = parts.size();
  const Digraph outer = kind == InnerKind::complete ? complete(s) : empty(s);
  if (reduced.order() * s != d.order() ||
      !are_isomorphic(wreath_digraph(outer, reduced), d, search_cap))
    return std::nullopt;
  return std::make_pair(s, std::move(reduced));
}

}  // namespace

WreathAutReport verify_wreath_aut_dichotomy(const Digraph& gamma1, const Digraph& gamma2,
                                            const Limits& limits) {
  if (gamma1.order() == 0 || gamma2.order() == 0)
    throw InvalidInput("wreath factors must be nonempty");
  WreathAutReport report;
  report.gamma1 = gamma1;
  report.gamma2 = gamma2;
  const PermGroup aut1 = automorphism_group_of(gamma1, limits.search_cap);
  const PermGroup aut2 = automorphism_group_of(gamma2, limits.search_cap);
  if (!is_transitive(aut1)) throw InvalidInput("first factor is not vertex-transitive");
  if (!is_transitive(aut2)) throw InvalidInput("second factor is not vertex-transitive");
  report.aut1_order = aut1.order();
  report.aut2_order = aut2.order();

  const Digraph product = wreath_digraph(gamma1, gamma2);
  const PermGroup product_aut = automorphism_group_of(product, limits.search_cap);
  const PermGroup wreath = wreath_perm(aut1, aut2);
  report.product_aut_order = product_aut.order();
  report.wreath_group_order = wreath.order();
  const bool contained = std::all_of(wreath.generators().begin(), wreath.generators().end(),
                                     [&](const Perm& p) { return is_automorphism(product, p); });
  report.equal = contained && report.product_aut_order == report.wreath_group_order;
  if (report.equal) {
    report.consistent = true;
    return report;
  }

  for (InnerKind kind : {InnerKind::complete, InnerKind::empty}) {
    auto outer = decompose(gamma1, kind);
    if (!outer) continue;
    auto inner = split_outer(gamma2, kind, limits.search_cap);
    if (!inner) continue;
    WreathDichotomy d;
    d.r = outer->inner_size;
    d.s = inner->first;
    d.inner_kind = kind;
    d.outer_reduced = outer->quotient;
    d.inner_reduced = inner->second;
    d.outer_reduced_aut_order = automorphism_group_of(d.outer_reduced, limits.search_cap).order();
    d.inner_reduced_aut_order = automorphism_group_of(d.inner_reduced, limits.search_cap).order();
    const std::uint64_t rs = d.r * d.s;
    const std::uint64_t fiber = checked_mul(factorial(rs), checked_pow(d.inner_reduced_aut_order, rs));
    d.predicted_order =
        checked_mul(d.outer_reduced_aut_order, checked_pow(fiber, d.outer_reduced.order()));
    report.dichotomy = std::move(d);
    break;
  }
  report.consistent =
      report.dichotomy && report.dichotomy->predicted_order == report.product_aut_order;
  return report;
}

}  // namespace cig
