#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "zjkit/functors.hpp"
#include "zjkit/fusion.hpp"
#include "zjkit/harness/record.hpp"
#include "zjkit/section.hpp"
#include "zjkit/subgroup.hpp"

namespace zjkit::harness {

/// full: every D candidate the limits below allow; sylow-only: D = P.
enum class DMode { Full, SylowOnly };
std::optional<DMode> parse_d_mode(std::string_view text);
const char* d_mode_name(DMode mode);

/// Campaign check ids, in report order.
const std::vector<std::string>& all_check_ids();
bool is_check_id(std::string_view id);

// Scan limits (group or Sylow orders).
inline constexpr std::size_t kReplacementScanMax = 243;  // A
inline constexpr std::size_t kSegmentScanMax = 81;       // GlbLemma
inline constexpr std::size_t kRankScanMax = 243;         // RankLemma
inline constexpr std::size_t kSetSylowMax = 27;          // strongly closed sets as D
inline constexpr std::size_t kSubgroupSylowMax = 81;     // strongly closed subgroups as D
inline constexpr std::size_t kUnionClassCap = 10;        // classes combined into D sets
inline constexpr std::size_t kLemmaSetCap = 64;          // D sets used by the lemma checks
inline constexpr std::size_t kFunctorSetCap = 32;         // D sets used by the functor checks
inline constexpr std::size_t kFunctorGroupMax = 81;      // L-cf, L-scf, L-final
inline constexpr std::size_t kFunctorSectionMax = 27;    // section order for L-final
inline constexpr std::size_t kSectionScanGroupMax = 216; // L-ff

/// Exhaustive scans over one p-group, shared by the campaign and the
/// acceptance runner.
struct ScanSummary {
  std::size_t instances = 0;   // configurations examined
  std::size_t satisfying = 0;  // configurations meeting the hypotheses
  std::size_t failures = 0;
  ojson first_failure;         // null when there are none
  bool passed() const { return failures == 0; }
};

/// Every (A, B) with A abelian and B <= X meeting the replacement
/// hypotheses: replace must succeed, its output must satisfy the
/// conclusions, and an independent scan of the abelian subgroups must agree
/// that it is a valid replacement.
ScanSummary replacement_scan(const Subgroup& x);
/// Every (B, A) with A abelian normalizing B, scoped to G = BA: when the
/// commutator-segment hypotheses hold, {[b, a] : a in A} commutes for each b.
ScanSummary segment_scan(const Subgroup& x);
/// Rank via Omega against the minimal generator count, every abelian A <= X.
ScanSummary rank_scan(const Subgroup& x);

/// One (group, prime) pair with lazily computed group-level predicates and
/// D candidates. Not shared between threads.
class Analysis {
 public:
  Analysis(GroupPtr g, std::uint64_t p, DMode mode);

  const Subgroup& g() const noexcept { return g_; }
  std::uint64_t p() const noexcept { return p_; }
  DMode mode() const noexcept { return mode_; }
  const PrimeContext& ctx() const noexcept { return ctx_; }
  const Subgroup& sylow() const noexcept { return ctx_.sylow(); }

  Record record(std::string check, std::string d = "-") const;
  std::string describe(const ElementSet& d) const;

  bool p_stable();
  bool self_centralizing();
  bool p_constrained();
  bool qd_free();
  bool p_nilpotent();
  /// N_G(U) is p-constrained for every nontrivial U <= P.
  bool normalizers_constrained();
  bool strongly_closed(const ElementSet& d);
  bool controls(const Subgroup& n);

  const std::vector<Subgroup>& normal_subgroups();
  /// Normal subgroups of G inside O_p(G).
  const std::vector<Subgroup>& normal_p_subgroups();
  /// Strongly closed subgroups used as D.
  const std::vector<Subgroup>& d_subgroups();
  /// Replaces the D subgroups (probe mode feeds non-closed candidates).
  void override_d_subgroups(std::vector<Subgroup> ds) { d_subgroups_ = std::move(ds); }
  /// Strongly closed sets used as D.
  const std::vector<ElementSet>& d_sets();
  /// d_sets() when short enough for the lemma checks, else the subgroups.
  const std::vector<ElementSet>& lemma_sets();
  const std::vector<ElementSet>& functor_sets();
  std::vector<Subgroup> functor_subgroups();

  /// For each subgroup H of G, the least g with P^g cap H a Sylow subgroup
  /// of H and the context (H, p, P^g cap H).
  struct Positioned {
    Subgroup h;
    Elem g;
    PrimeContext ctx;
  };
  const std::vector<Positioned>& positioned();

  /// Sections X/K of G that are p-stable with C(O_p) <= O_p, each with the
  /// Sylow preimage H (H/K Sylow in X/K).
  struct Qualifying {
    Subgroup x, k, h;
  };
  const std::vector<Qualifying>& qualifying_sections(std::size_t* examined);

 private:
  GroupPtr table_;
  Subgroup g_;
  std::uint64_t p_;
  DMode mode_;
  PrimeContext ctx_;

  std::optional<bool> p_stable_, self_centralizing_, p_constrained_, qd_free_, p_nilpotent_,
      normalizers_constrained_;
  std::optional<std::vector<Subgroup>> normal_, normal_p_, d_subgroups_;
  std::optional<std::vector<ElementSet>> d_sets_, lemma_sets_, functor_sets_;
  std::optional<std::vector<Positioned>> positioned_;
  std::optional<std::vector<Qualifying>> qualifying_;
  std::size_t sections_examined_ = 0;
  std::unordered_map<ElementSet, bool, ElementSetHash> closed_, controls_;
};

/// Records of one check for one (group, prime) pair. Unknown ids throw Error.
std::vector<Record> run_check(std::string_view id, Analysis& a);

}  // namespace zjkit::harness
