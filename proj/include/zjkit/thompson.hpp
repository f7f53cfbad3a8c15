#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zjkit/lattice.hpp"
#include "zjkit/subgroup.hpp"

namespace zjkit {

/// Which maximality measure selects the abelian family: order, rank, or
/// order among elementary abelian subgroups.
enum class AbelianKind { Order, Rank, Elementary };

inline constexpr AbelianKind kAllKinds[] = {AbelianKind::Order, AbelianKind::Rank,
                                            AbelianKind::Elementary};

/// "o", "r" or "e".
const char* kind_letter(AbelianKind kind);

struct AbelianFamily {
  AbelianKind kind;
  Subgroup host;
  std::vector<Subgroup> members;  // size-then-lex order
  std::uint64_t score = 0;        // max order, max rank, or max elementary order
};

/// The prime of a p-group; throws NotPGroup otherwise. The trivial group
/// reports 0.
std::uint64_t prime_of_p_group(const Subgroup& x);

/// Every abelian subgroup of the p-group X, size-then-lex ordered. Built by
/// extending abelian subgroups with centralizing elements, never touching
/// non-abelian ones. Memoized per thread.
SubgroupList abelian_subgroups(const Subgroup& x);
void clear_abelian_cache();

AbelianFamily abelian_family(const Subgroup& x, AbelianKind kind);

/// J_o, J_r or J_e: the subgroup generated by the family.
Subgroup thompson_subgroup(const Subgroup& x, AbelianKind kind);

/// <x in K : x^p = 1>. Throws NotPGroup unless |K| is a prime power.
Subgroup omega(const Subgroup& k);

bool is_elementary_abelian(const Subgroup& a);

struct RankExponent {
  unsigned rank = 0;
  std::uint64_t exponent = 1;
};

/// Rank through the largest elementary abelian subgroup (log_p |Omega(A)|,
/// per prime for non-p-groups), exponent as lcm of element orders. Throws
/// NotAbelian.
RankExponent rank_and_exponent(const Subgroup& a);

/// Minimal number of generators of an abelian group, computed as
/// log_p |A / A^p| (maximized over primes). Throws NotAbelian.
unsigned rank_by_generators(const Subgroup& a);

struct MonotonicityReport {
  bool member_inside = false;    // some A in A_x(P) lies in R
  bool containment_holds = true; // member_inside implies J_x(R) <= J_x(P)
  bool equivalence_holds = true; // J_x(P) = J_x(R) iff J_x(P) <= R
  bool j_equal = false;
  bool j_inside = false;
  bool passed() const { return containment_holds && equivalence_holds; }
};

/// Both statements relating J_x(P) and J_x(R) for R <= P.
MonotonicityReport j_monotonicity_check(const Subgroup& p, const Subgroup& r, AbelianKind kind);

/// The center-type subgroup attached to each kind: Z(J_o(X)),
/// Omega(Z(J_r(X))), Omega(Z(J_e(X))).
Subgroup zj_subgroup(const Subgroup& x, AbelianKind kind);

/// True iff zj_subgroup(X, kind) lies in every member of the family.
bool zj_in_every_member(const Subgroup& x, AbelianKind kind);

}  // namespace zjkit
