#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cig/digraph.hpp"
#include "cig/finite_group.hpp"
#include "cig/iso.hpp"
#include "cig/perm_group.hpp"

namespace cig {

/// Digraph mode quantifies over every connection set, graph mode over the
/// inverse-closed ones.
enum class Mode { digraph, graph };

const char* to_string(Mode mode);
/// Accepts "digraph" and "graph"; throws InvalidInput otherwise.
Mode parse_mode(std::string_view text);

struct Limits {
  std::size_t automorphism_cap = kDefaultAutomorphismOrderCap;
  std::size_t search_cap = kDefaultSearchOrderCap;
  std::size_t block_search_cap = kDefaultBlockSearchDegreeCap;
};

/// The first automorphism (in the enumeration order of automorphism_group)
/// with alpha(s) = s_prime as sets.
std::optional<GroupAutomorphism> automorphic_image_search(
    const FiniteGroup& g, std::span<const Element> s, std::span<const Element> s_prime,
    std::size_t automorphism_cap = kDefaultAutomorphismOrderCap);
std::optional<GroupAutomorphism> automorphic_image_search(
    std::span<const GroupAutomorphism> automorphisms, std::span<const Element> s,
    std::span<const Element> s_prime);

enum class PairVerdict { not_isomorphic, ci_equivalent, non_ci_witness };

const char* to_string(PairVerdict verdict);

struct CIPairResult {
  PairVerdict verdict = PairVerdict::not_isomorphic;
  std::optional<GroupAutomorphism> alpha;
  std::optional<VertexMap> iso;
};

/// Throws InvalidInput in graph mode when a set is not inverse-closed.
CIPairResult ci_pair(const FiniteGroup& g, std::span<const Element> s,
                     std::span<const Element> s_prime, Mode mode, const Limits& limits = {});
CIPairResult ci_pair(const FiniteGroup& g, std::span<const GroupAutomorphism> automorphisms,
                     std::span<const Element> s, std::span<const Element> s_prime, Mode mode,
                     const Limits& limits = {});

struct NonCIWitness {
  ElementSet s;
  ElementSet s_prime;
  VertexMap iso;
};

struct CIGroupOptions {
  Limits limits;
  /// Maximum number of representative pairs to test; unlimited when empty.
  std::optional<std::uint64_t> budget;
  unsigned threads = 1;
  /// Largest group order whose subsets are enumerated.
  std::size_t subset_order_cap = 16;
};

struct CIGroupVerdict {
  Mode mode = Mode::digraph;
  std::size_t group_order = 0;
  /// False only with a witness; true with exhaustive = false is inconclusive.
  bool is_ci = true;
  bool exhaustive = true;
  std::uint64_t sets_enumerated = 0;
  std::uint64_t orbit_count = 0;
  std::uint64_t pairs_total = 0;
  std::uint64_t pairs_checked = 0;
  /// Every non-CI pair of orbit representatives, in scan order.
  std::vector<NonCIWitness> witnesses;
};

/// Splits the connection sets into Aut(g)-orbits (representative = the set
/// with the smallest bitmask) and runs ci_pair on every pair of
/// representatives of equal size.
CIGroupVerdict is_ci_group(const FiniteGroup& g, Mode mode, const CIGroupOptions& options = {});

/// Independent recheck of a witness: the map is an isomorphism of the two
/// Cayley digraphs and no automorphism in the full list maps s to s_prime.
bool reverify_witness(const FiniteGroup& g, std::span<const GroupAutomorphism> automorphisms,
                      const NonCIWitness& witness);

enum class LiftCase { non_decomposable, decomposable };

const char* to_string(LiftCase c);

/// A quotient connection set lifted to g. The inner factor is K_ell for
/// non-decomposable quotients and the edgeless digraph on ell vertices for
/// decomposable ones.
struct LiftResult {
  LiftCase lift_case = LiftCase::non_decomposable;
  ElementSet quotient_set;
  ElementSet t;
  std::size_t ell = 0;
  PointPartition coset_partition;
  Digraph quotient_graph;
};

/// `s_quotient` holds element indices of `q.target`.
LiftResult lift_connection_set(const FiniteGroup& g, const QuotientMap& q,
                               std::span<const Element> s_quotient);
LiftResult lift_connection_set(const FiniteGroup& g, std::span<const Element> h,
                               std::span<const Element> s_quotient);

/// Position of each element when g is sorted by (coset index, element).
std::vector<Vertex> coset_sorted_indexing(const CosetDecomposition& cosets);

struct NamedCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Arc identity with the wreath product under the coset-sorted indexing, and
/// Aut(Cay(g, T)) = Aut(quotient graph) wr S_ell via order equality plus
/// generator containment both ways.
std::vector<NamedCheck> verify_lift_structure(const FiniteGroup& g, const QuotientMap& q,
                                              const LiftResult& lift,
                                              const Limits& limits = {});
std::vector<NamedCheck> verify_lift_structure(const FiniteGroup& g, std::span<const Element> h,
                                              std::span<const Element> s_quotient,
                                              const Limits& limits = {});

/// Whether `a` has exactly one invariant partition with classes of size ell,
/// and it is `expected`.
bool verify_unique_block_partition(const PermGroup& a, std::size_t ell,
                                   const PointPartition& expected,
                                   std::size_t degree_cap = kDefaultBlockSearchDegreeCap);

enum class CertificateStatus { accepted, rejected, quotients_not_isomorphic, hypothesis_fails };

const char* to_string(CertificateStatus status);

struct QuotientCICertificate {
  Mode mode = Mode::digraph;
  std::size_t group_order = 0;
  ElementSet h;
  std::vector<Element> transversal;
  ElementSet s1;
  ElementSet s2;
  std::optional<LiftResult> lift1;
  std::optional<LiftResult> lift2;
  std::optional<GroupAutomorphism> alpha;
  std::optional<GroupAutomorphism> alpha_bar;
  std::vector<NamedCheck> checks;
  CertificateStatus status = CertificateStatus::rejected;

  bool accepted() const { return status == CertificateStatus::accepted; }
  /// Name of the first failing check, if any.
  std::optional<std::string> first_failure() const;
};

/// Runs the quotient argument on one instance and records every step as a
/// named check. `s1`, `s2` are subsets of the quotient, by quotient index.
QuotientCICertificate quotient_ci_certificate(const FiniteGroup& g, std::span<const Element> h,
                                              std::span<const Element> s1,
                                              std::span<const Element> s2, Mode mode,
                                              const Limits& limits = {});
QuotientCICertificate quotient_ci_certificate(const FiniteGroup& g, const QuotientMap& q,
                                              std::span<const GroupAutomorphism> automorphisms,
                                              std::span<const Element> s1,
                                              std::span<const Element> s2, Mode mode,
                                              const Limits& limits = {});

/// Gamma1 = Gamma1' wr X_r and Gamma2 = X_s wr Gamma2', X = K (case 1) or
/// its complement (case 2), with r and s maximal.
struct WreathDichotomy {
  std::size_t r = 0;
  std::size_t s = 0;
  InnerKind inner_kind = InnerKind::complete;
  Digraph outer_reduced;
  Digraph inner_reduced;
  std::uint64_t outer_reduced_aut_order = 0;
  std::uint64_t inner_reduced_aut_order = 0;
  /// |Aut(Gamma1')| * ((rs)! * |Aut(Gamma2')|^(rs))^|V(Gamma1')|.
  std::uint64_t predicted_order = 0;
};

struct WreathAutReport {
  Digraph gamma1;
  Digraph gamma2;
  std::uint64_t aut1_order = 0;
  std::uint64_t aut2_order = 0;
  std::uint64_t product_aut_order = 0;
  std::uint64_t wreath_group_order = 0;
  bool equal = false;
  std::optional<WreathDichotomy> dichotomy;
  /// Equality, or a dichotomy whose prediction matches the computed order.
  bool consistent = false;
};

/// Throws InvalidInput unless both factors are vertex-transitive.
WreathAutReport verify_wreath_aut_dichotomy(const Digraph& gamma1, const Digraph& gamma2,
                                            const Limits& limits = {});

}  // namespace cig
