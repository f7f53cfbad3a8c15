#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "zjkit/lattice.hpp"
#include "zjkit/section.hpp"
#include "zjkit/subgroup.hpp"
#include "zjkit/thompson.hpp"

namespace zjkit {

/// A group (as a subgroup of some table), an odd prime, and a fixed Sylow
/// p-subgroup, plus lazily built p-local data.
class PrimeContext {
 public:
  /// Uses sylow(ambient, p). Throws EvenPrime for p = 2.
  PrimeContext(Subgroup ambient, std::uint64_t p);
  /// Uses the given Sylow subgroup; throws SylowMismatch if it is not one.
  PrimeContext(Subgroup ambient, std::uint64_t p, Subgroup sylow);

  const Subgroup& ambient() const noexcept { return ambient_; }
  const GroupTable& table() const noexcept { return ambient_.table(); }
  std::uint64_t p() const noexcept { return p_; }
  const Subgroup& sylow() const noexcept { return sylow_; }

  /// Conjugacy classes of the ambient group.
  const ConjugacyClasses& classes() const;
  /// All subgroups of the Sylow subgroup.
  SubgroupList p_subgroups() const;
  /// Classes of the ambient group met by P, each restricted to P: the
  /// singleton fusion classes of P.
  const std::vector<std::vector<Elem>>& fusion_classes() const;

 private:
  Subgroup ambient_;
  std::uint64_t p_;
  Subgroup sylow_;
  struct Lazy;
  std::shared_ptr<Lazy> lazy_;
};

struct ConjugationWitness {
  Elem u = 0;  // element of D (or generator of U) that leaves
  Elem g = 0;
};

struct StrongClosureResult {
  bool holds = true;
  std::optional<ConjugationWitness> witness;
};

/// D is strongly closed in P: every u in D with u^g in P has u^g in D.
StrongClosureResult is_strongly_closed(const PrimeContext& ctx, const ElementSet& d);

/// Strongly closed subgroups of P (unions of fusion classes that are
/// subgroups), size-then-lex ordered.
std::vector<Subgroup> strongly_closed_subgroups(const PrimeContext& ctx);

/// Strongly closed subsets of P, as unions of fusion classes. Only when P has
/// at most `max_classes` fusion classes; otherwise nullopt.
std::optional<std::vector<ElementSet>> strongly_closed_sets(const PrimeContext& ctx,
                                                            std::size_t max_classes);

struct FusionResult {
  bool holds = true;
  std::optional<Subgroup> u;  // first subgroup of P with a bad conjugation
  Elem g = 0;
};

/// N controls strong fusion in P: for every U <= P and g with U^g <= P,
/// g lies in C(U) N.
FusionResult controls_strong_fusion(const PrimeContext& ctx, const Subgroup& n);

struct StabilityResult {
  bool holds = true;
  std::optional<Subgroup> p0;
  Elem g = 0;
};

/// For this p-subgroup P0: the least g in N(P0) with [P0, g, g] = 1 whose
/// coset modulo C(P0) lies outside O_p(N(P0) / C(P0)).
std::optional<Elem> stability_violation(const Subgroup& ambient, const Subgroup& p0, std::uint64_t p);

/// p-stability, quantified over p-subgroups up to conjugacy in the ambient
/// group. Throws EvenPrime for p = 2.
StabilityResult is_p_stable(const Subgroup& ambient, std::uint64_t p);
/// Same predicate over every p-subgroup and every normalizing element, with
/// O_p computed as the intersection of Sylow subgroups. For small groups.
StabilityResult is_p_stable_naive(const Subgroup& ambient, std::uint64_t p);

bool is_p_constrained(const Subgroup& ambient, std::uint64_t p);

struct QdFreeResult {
  bool free = true;
  std::optional<Subgroup> h;  // section H/K isomorphic to Qd(p)
  std::optional<Subgroup> k;
};
QdFreeResult is_qdp_free(const Subgroup& ambient, std::uint64_t p);

struct NilpotencyResult {
  bool holds = false;
  Subgroup complement;  // O_{p'}(G)
};
NilpotencyResult is_p_nilpotent(const Subgroup& ambient, std::uint64_t p);

struct IntersectionResult {
  ElementSet dn;             // D cap N
  bool strongly_closed = false;
  bool factorization = false;  // G = N_G(D cap N) N
};
/// Throws EmptyIntersection when D and N are disjoint, NotNormal when N is
/// not normal.
IntersectionResult strongly_closed_intersection(const PrimeContext& ctx, const ElementSet& d,
                                                const Subgroup& n);

struct ImagesReport {
  bool part_a_skipped = false;  // D^g cap H empty
  bool part_a = true;
  bool part_b = true;
};
/// (a) D^g cap H is strongly closed in P^g cap H with respect to H;
/// (b) DN/N is strongly closed in PN/N with respect to G/N. Throws
/// SylowMismatch when P^g cap H is not a Sylow subgroup of H.
ImagesReport strongly_closed_images(const PrimeContext& ctx, const ElementSet& d, const Subgroup& h,
                                    const Subgroup& n, Elem g);

struct QuotientStabilityReport {
  bool group_stable = false;
  bool quotient_stable = false;
  bool implication_holds() const { return !group_stable || quotient_stable; }
};
/// Stability of G and of G / O_{p'}(G).
QuotientStabilityReport quotient_p_stability_check(const Subgroup& ambient, std::uint64_t p);

struct CoreReport {
  bool p_stable = false;
  bool self_centralizing = false;  // C_G(O_p(G)) <= O_p(G)
  bool holds = true;               // every abelian normal subgroup of P lies in O_p(G)
  std::optional<Subgroup> witness;
  bool hypotheses() const { return p_stable && self_centralizing; }
};
CoreReport abelian_normal_in_core_check(const PrimeContext& ctx);

struct CrucialResult {
  Subgroup member;
  unsigned replace_steps = 0;  // replacements applied after the initial choice
};
/// A member of A_kind(N) normalized by B, for B, N normal in the p-group P,
/// class(B) <= 2 and B' inside every member. Starts from the member meeting B
/// most and replaces until normalized. Throws HypothesisFailure with tags
/// "B not normal", "N not normal", "class", "B' not in every member".
CrucialResult crucial_lemma_search(const Subgroup& p, const Subgroup& b, const Subgroup& n,
                                   AbelianKind kind);

}  // namespace zjkit
