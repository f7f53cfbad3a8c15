#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "zjkit/fusion.hpp"
#include "zjkit/section.hpp"
#include "zjkit/subgroup.hpp"
#include "zjkit/thompson.hpp"

namespace zjkit {

/// J_x, Z(J_x) or Omega(Z(J_x)) for x in {o, r, e}.
struct BaseFunctor {
  enum class Op { J, ZJ, OmegaZJ };
  Op op = Op::ZJ;
  AbelianKind kind = AbelianKind::Order;

  /// "J_o", "ZJ_r", "OmegaZJ_e", ...
  std::string name() const;
  friend bool operator==(const BaseFunctor&, const BaseFunctor&) = default;
};

std::array<BaseFunctor, 9> all_base_functors();
std::optional<BaseFunctor> parse_base_functor(std::string_view name);

/// The three functors whose values appear in the normality and fusion
/// statements: ZJ_o, OmegaZJ_r, OmegaZJ_e.
std::array<BaseFunctor, 3> center_functors();

/// W(U) for a p-subgroup U (of any table). W(1) = 1.
Subgroup apply_base(const BaseFunctor& w, const Subgroup& u);
/// W(H/K), returned as the preimage L with K <= L <= H.
Subgroup apply_base(const BaseFunctor& w, const Section& s);

enum class CaseTag { Whole, Restricted };
const char* case_name(CaseTag tag);

struct FunctorValue {
  Subgroup output;
  Elem conjugator = 0;  // x with V^x <= P, or g positioning the Sylow
  CaseTag tag = CaseTag::Whole;
};

/// W_D on the p-subgroups of G, relative to a fixed Sylow P and a strongly
/// closed subset D of P. An empty D gives W itself. Values are memoized per
/// instance, keyed by the exact input; instances are not shared between
/// threads.
class DFunctor {
 public:
  DFunctor(BaseFunctor w, PrimeContext ctx, ElementSet d);

  const BaseFunctor& base() const noexcept { return w_; }
  const PrimeContext& context() const noexcept { return ctx_; }
  const ElementSet& d() const noexcept { return d_; }

  /// Throws NotPSubgroup when V is not a p-subgroup of G. For V outside P the
  /// value is computed through the least and the greatest conjugator into P,
  /// and InternalError is thrown if they disagree.
  FunctorValue evaluate(const Subgroup& v) const;
  Subgroup operator()(const Subgroup& v) const { return evaluate(v).output; }

  /// The value for U <= P computed through the given x (U^x <= P required).
  Subgroup through(const Subgroup& v, Elem x) const;

 private:
  FunctorValue on_sylow(const Subgroup& u) const;

  BaseFunctor w_;
  PrimeContext ctx_;
  ElementSet d_;
  mutable std::unordered_map<ElementSet, FunctorValue, ElementSetHash> memo_;
};

/// W*_D on the p-group sections H/K of G: W(<D^g cap H>K/K) when
/// D^g cap H is not inside K, W(H/K) otherwise, with g the least element
/// making P^g cap H a Sylow subgroup of H. Values are the preimages L.
class StarFunctor {
 public:
  StarFunctor(BaseFunctor w, PrimeContext ctx, ElementSet d);

  const BaseFunctor& base() const noexcept { return w_; }
  const PrimeContext& context() const noexcept { return ctx_; }

  /// Cross-checks against the greatest positioning element and throws
  /// InternalError on disagreement.
  FunctorValue evaluate(const Subgroup& h, const Subgroup& k) const;
  Subgroup operator()(const Subgroup& h, const Subgroup& k) const { return evaluate(h, k).output; }

 private:
  FunctorValue with(const Subgroup& h, const Subgroup& k, Elem g) const;

  struct Key {
    ElementSet h, k;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& key) const noexcept {
      return key.h.hash() * 31u ^ key.k.hash();
    }
  };

  BaseFunctor w_;
  PrimeContext ctx_;
  ElementSet d_;
  mutable std::unordered_map<Key, FunctorValue, KeyHash> memo_;
};

using SubgroupMap = std::function<Subgroup(const Subgroup&)>;
using SectionMap = std::function<Subgroup(const Subgroup& h, const Subgroup& k)>;

struct AxiomFailure {
  std::string axiom;  // "i", "ii", "iii", "iv", "D-conjugate", "well-defined", "restriction"
  Subgroup h;
  std::optional<Subgroup> k;
  Elem g = 0;
};

struct AxiomReport {
  std::size_t checked = 0;
  std::vector<AxiomFailure> failures;
  bool passed() const { return failures.empty(); }
  void merge(const AxiomReport& o);
};

/// Every p-subgroup of G (any Sylow), size-then-lex ordered.
std::vector<Subgroup> p_subgroups_of(const Subgroup& g, std::uint64_t p);

/// (i) W(U) <= U, (ii) W(U) != 1 for U != 1, (iii) W(U)^g = W(U^g), over every
/// p-subgroup U and every g. Stops recording after max_failures.
AxiomReport verify_conjugacy_axioms(const SubgroupMap& w, const Subgroup& g, std::uint64_t p,
                                    std::size_t max_failures = 16);

/// The D-specific statements for W_D: every pair of conjugators into P gives
/// the same value, and W_D = W_{D^y} for every y.
AxiomReport verify_d_functor(const DFunctor& f, std::size_t max_failures = 16);

/// p-group sections H/K of G with |H/K| <= max_order.
std::vector<std::pair<Subgroup, Subgroup>> p_sections(const Subgroup& g, std::uint64_t p,
                                                      std::size_t max_order);

/// (i)-(iii) on sections plus (iv): for N normal in H, N <= K, K/N a
/// p'-group, P0/N Sylow in H/N with W(P0/N) = L/N, W(H/K) = LK/K.
AxiomReport verify_section_axioms(const SectionMap& w, const Subgroup& g, std::uint64_t p,
                                  std::size_t max_order, std::size_t max_failures = 16);

/// W*_D(H/1) = W_D(H) for every p-subgroup H.
AxiomReport star_specializes_check(const StarFunctor& star, const DFunctor& wd);

/// The map W_{D^g cap H} on p-subgroups of H agrees with W_D. Throws
/// SylowMismatch unless P^g cap H is a Sylow subgroup of H. An empty
/// D^g cap H compares against plain W.
AxiomReport restriction_consistency_check(const DFunctor& wd, const Subgroup& h, Elem g);

/// <least non-identity element of U>: satisfies (i) and (ii) but not (iii).
Subgroup broken_functor(const Subgroup& u);

}  // namespace zjkit
