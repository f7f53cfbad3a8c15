#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zjkit/subgroup.hpp"

namespace zjkit {

/// Outcome of a hypothesis test: `failed` names the first clause that does
/// not hold and is empty when all hold.
struct HypothesisCheck {
  std::string failed;
  bool holds() const { return failed.empty(); }
};

/// Replacement hypotheses on (G, A, B) for a p-group G with p odd:
/// A abelian, class(B) <= 2, B' <= A, A <= N_G(B), B not in N_G(A).
/// Tags: "A not abelian", "class", "B' not in A", "A does not normalize B",
/// "B normalizes A". Throws EvenPrime for 2-groups, NotPGroup otherwise.
HypothesisCheck check_replacement_hypotheses(const Subgroup& g, const Subgroup& a, const Subgroup& b);

struct ReplacementStep {
  Subgroup scope;        // the current G (always A times the current B)
  Subgroup maximal;      // chosen maximal subgroup M of scope containing A
  bool descended = false;  // M cap B failed to normalize A: recurse into M
  Elem b = 0;            // least element of B outside M (final step only)
  Subgroup h;            // A A^b (final step only)
  Subgroup z;            // A cap A^b (final step only)
};

struct ReplacementResult {
  Subgroup a_star;
  std::vector<ReplacementStep> trace;
};

/// The constructive replacement: an abelian A* with |A*| = |A|,
/// A cap B < A* cap B, A* <= N_G(A) cap <A^G>, exp(A*) | exp(A) and
/// rank(A) <= rank(A*). Throws HypothesisFailure when the hypotheses fail and
/// InternalError if a conclusion does not hold.
ReplacementResult replace(const Subgroup& g, const Subgroup& a, const Subgroup& b);

/// The four conclusions for a candidate A*, each evaluated separately.
struct ReplacementConclusions {
  bool abelian = false;
  bool same_order = false;
  bool meets_b_more = false;
  bool in_normalizer_and_closure = false;
  bool exponent_and_rank = false;
  bool all() const {
    return abelian && same_order && meets_b_more && in_normalizer_and_closure && exponent_and_rank;
  }
};
ReplacementConclusions evaluate_conclusions(const Subgroup& g, const Subgroup& a, const Subgroup& b,
                                            const Subgroup& a_star);

/// <[b, a] : a in A>
Subgroup commutator_segment(Elem b, const Subgroup& a);

/// Hypotheses of the commutator-segment lemma: G = BA, B normal in G,
/// B' <= Z(G), A abelian, [B, A, A, A] = 1. Tags: "G is not BA",
/// "B not normal", "B' not central", "A not abelian", "[B,A,A,A] nontrivial".
HypothesisCheck check_segment_hypotheses(const Subgroup& g, const Subgroup& b, const Subgroup& a);

struct SegmentReport {
  HypothesisCheck hypotheses;
  bool all_abelian = true;
  std::optional<Elem> witness;  // some b whose commutator set does not commute
};

/// For every b in B, checks that the set {[b, a] : a in A} consists of
/// pairwise commuting elements (so it generates an abelian subgroup).
SegmentReport segment_lemma_check(const Subgroup& g, const Subgroup& b, const Subgroup& a);

/// [X, g, ..., g] with `depth` copies of g; [X, g] = <[x, g] : x in X>.
Subgroup iterated_commutator(const Subgroup& x, Elem g, unsigned depth);
bool iterated_commutator_check(const Subgroup& x, Elem g, unsigned depth);

}  // namespace zjkit
