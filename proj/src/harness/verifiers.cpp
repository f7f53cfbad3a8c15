#include "zjkit/harness/verifiers.hpp"

#include <algorithm>
#include <unordered_set>

#include "zjkit/error.hpp"
#include "zjkit/lattice.hpp"
#include "zjkit/numeric.hpp"
#include "zjkit/replacement.hpp"
#include "zjkit/sylow.hpp"
#include "zjkit/thompson.hpp"

namespace zjkit::harness {

namespace {

ojson elems(const ElementSet& s) {
  ojson out = ojson::array();
  s.for_each([&](Elem e) { out.push_back(e); });
  return out;
}

ojson elems(const Subgroup& s) { return elems(s.mask()); }

bool set_less(const ElementSet& a, const ElementSet& b) {
  const auto ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  return a.to_vector() < b.to_vector();
}

void note_failure(ScanSummary& s, ojson detail) {
  if (s.failures++ == 0) s.first_failure = std::move(detail);
}

// Independent check of the replacement conclusions for a candidate C given
// precomputed data about A.
struct ReplacementTarget {
  Subgroup bound;  // N_X(A) cap <A^X>
  std::size_t order;
  std::uint64_t exponent;
  unsigned rank;
};

bool valid_replacement(const ReplacementTarget& t, const Subgroup& a, const Subgroup& b, const Subgroup& c,
                       const RankExponent& cre) {
  return c.size() == t.order && c.is_subgroup_of(t.bound) &&
         intersection(c, b).size() > intersection(a, b).size() && t.exponent % cre.exponent == 0 &&
         cre.rank >= t.rank;
}

}  // namespace

std::optional<DMode> parse_d_mode(std::string_view text) {
  if (text == "full") return DMode::Full;
  if (text == "sylow-only") return DMode::SylowOnly;
  return std::nullopt;
}

const char* d_mode_name(DMode mode) { return mode == DMode::Full ? "full" : "sylow-only"; }

const std::vector<std::string>& all_check_ids() {
  static const std::vector<std::string> ids{"A",      "GlbLemma", "RankLemma", "L3.1",  "opg",   "L-strogly",
                                            "L-crucial", "T3.2",  "T3.6",      "Lp-stable", "L-sc2", "L-cf",
                                            "L-scf",  "L-final",  "L-ff",      "B",     "C",     "E",
                                            "F",      "H",        "CorF"};
  return ids;
}

bool is_check_id(std::string_view id) {
  const auto& ids = all_check_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

// scans

ScanSummary replacement_scan(const Subgroup& x) {
  ScanSummary s;
  const auto subs = subgroups_of(x);
  const auto abel = abelian_subgroups(x);
  std::vector<RankExponent> abel_re;
  for (const Subgroup& c : *abel) abel_re.push_back(rank_and_exponent(c));

  struct BData {
    const Subgroup* b;
    Subgroup derived, normalizer;
  };
  std::vector<BData> bs;
  for (const Subgroup& b : *subs) {
    Subgroup d = derived_subgroup(b);
    if (!commutator_subgroup(d, b).is_trivial()) continue;
    bs.push_back({&b, std::move(d), normalizer(x, b)});
  }
  for (std::size_t ai = 0; ai < abel->size(); ++ai) {
    const Subgroup& a = (*abel)[ai];
    const Subgroup na = normalizer(x, a);
    std::optional<ReplacementTarget> target;
    for (const BData& bd : bs) {
      const Subgroup& b = *bd.b;
      ++s.instances;
      if (!bd.derived.is_subgroup_of(a) || !a.is_subgroup_of(bd.normalizer) || b.is_subgroup_of(na)) continue;
      ++s.satisfying;
      ojson where{{"A", elems(a)}, {"B", elems(b)}};
      if (!check_replacement_hypotheses(x, a, b).holds()) {
        where["reason"] = "hypothesis check disagrees with the scan";
        note_failure(s, where);
        continue;
      }
      if (!target) target = ReplacementTarget{intersection(na, normal_closure(x, a)), a.size(),
                                              abel_re[ai].exponent, abel_re[ai].rank};
      Subgroup a_star;
      try {
        a_star = replace(x, a, b).a_star;
      } catch (const Error& e) {
        where["reason"] = e.what();
        note_failure(s, where);
        continue;
      }
      if (!evaluate_conclusions(x, a, b, a_star).all()) {
        where["reason"] = "conclusions fail";
        where["A*"] = elems(a_star);
        note_failure(s, where);
        continue;
      }
      bool exists = false, output_valid = false;
      for (std::size_t ci = 0; ci < abel->size(); ++ci) {
        const Subgroup& c = (*abel)[ci];
        if (!valid_replacement(*target, a, b, c, abel_re[ci])) continue;
        exists = true;
        if (c == a_star) output_valid = true;
      }
      if (!exists || !output_valid) {
        where["reason"] = exists ? "oracle rejects the output" : "oracle finds no replacement";
        where["A*"] = elems(a_star);
        note_failure(s, where);
      }
    }
  }
  return s;
}

ScanSummary segment_scan(const Subgroup& x) {
  ScanSummary s;
  const auto subs = subgroups_of(x);
  const auto abel = abelian_subgroups(x);
  for (const Subgroup& b : *subs) {
    const Subgroup nb = normalizer(x, b);
    for (const Subgroup& a : *abel) {
      if (!a.is_subgroup_of(nb)) continue;
      ++s.instances;
      const Subgroup g = product_subgroup(b, a);
      const SegmentReport rep = segment_lemma_check(g, b, a);
      if (!rep.hypotheses.holds()) continue;
      ++s.satisfying;
      if (!rep.all_abelian) {
        note_failure(s, {{"B", elems(b)}, {"A", elems(a)}, {"b", rep.witness.value_or(0)}});
      }
    }
  }
  return s;
}

ScanSummary rank_scan(const Subgroup& x) {
  ScanSummary s;
  for (const Subgroup& a : *abelian_subgroups(x)) {
    ++s.instances;
    ++s.satisfying;
    const unsigned via_omega = rank_and_exponent(a).rank;
    const unsigned via_gens = rank_by_generators(a);
    if (via_omega != via_gens)
      note_failure(s, {{"A", elems(a)}, {"rank_omega", via_omega}, {"rank_generators", via_gens}});
  }
  return s;
}

// Analysis

Analysis::Analysis(GroupPtr g, std::uint64_t p, DMode mode)
    : table_(g), g_(Subgroup::whole(g)), p_(p), mode_(mode), ctx_(g_, p) {}

Record Analysis::record(std::string check, std::string d) const {
  Record r;
  r.group = table_->name();
  r.order = table_->order();
  r.p = p_;
  r.check = std::move(check);
  r.d = std::move(d);
  return r;
}

std::string Analysis::describe(const ElementSet& d) const {
  if (d == sylow().mask()) return "P";
  std::string out = "{";
  bool first = true;
  d.for_each([&](Elem e) {
    if (!first) out += ",";
    out += std::to_string(e);
    first = false;
  });
  return out + "}";
}

bool Analysis::p_stable() {
  if (!p_stable_) p_stable_ = is_p_stable(g_, p_).holds;
  return *p_stable_;
}

bool Analysis::self_centralizing() {
  if (!self_centralizing_) {
    const Subgroup op = p_core(g_, p_);
    self_centralizing_ = centralizer(g_, op).is_subgroup_of(op);
  }
  return *self_centralizing_;
}

bool Analysis::p_constrained() {
  if (!p_constrained_) p_constrained_ = is_p_constrained(g_, p_);
  return *p_constrained_;
}

bool Analysis::qd_free() {
  if (!qd_free_) qd_free_ = is_qdp_free(g_, p_).free;
  return *qd_free_;
}

bool Analysis::p_nilpotent() {
  if (!p_nilpotent_) p_nilpotent_ = is_p_nilpotent(g_, p_).holds;
  return *p_nilpotent_;
}

bool Analysis::normalizers_constrained() {
  if (!normalizers_constrained_) {
    bool ok = true;
    for (const Subgroup& u : *ctx_.p_subgroups()) {
      if (u.is_trivial()) continue;
      if (!is_p_constrained(normalizer(g_, u), p_)) {
        ok = false;
        break;
      }
    }
    normalizers_constrained_ = ok;
  }
  return *normalizers_constrained_;
}

bool Analysis::strongly_closed(const ElementSet& d) {
  if (auto it = closed_.find(d); it != closed_.end()) return it->second;
  const bool v = !d.empty() && d.is_subset_of(sylow().mask()) && is_strongly_closed(ctx_, d).holds;
  closed_.emplace(d, v);
  return v;
}

bool Analysis::controls(const Subgroup& n) {
  if (auto it = controls_.find(n.mask()); it != controls_.end()) return it->second;
  const bool v = controls_strong_fusion(ctx_, n).holds;
  controls_.emplace(n.mask(), v);
  return v;
}

const std::vector<Subgroup>& Analysis::normal_subgroups() {
  if (!normal_) normal_ = normal_subgroups_of(g_);
  return *normal_;
}

const std::vector<Subgroup>& Analysis::normal_p_subgroups() {
  if (!normal_p_) {
    const Subgroup op = p_core(g_, p_);
    std::vector<Subgroup> out;
    for (const Subgroup& n : normal_subgroups())
      if (n.is_subgroup_of(op)) out.push_back(n);
    normal_p_ = std::move(out);
  }
  return *normal_p_;
}

const std::vector<Subgroup>& Analysis::d_subgroups() {
  if (d_subgroups_) return *d_subgroups_;
  std::vector<Subgroup> out;
  if (mode_ == DMode::SylowOnly) {
    out.push_back(sylow());
  } else if (sylow().size() <= kSubgroupSylowMax) {
    out = strongly_closed_subgroups(ctx_);
  } else {
    for (const Subgroup& c : {sylow(), omega(sylow()), center(sylow())})
      if (std::find(out.begin(), out.end(), c) == out.end() && strongly_closed(c.mask())) out.push_back(c);
    std::sort(out.begin(), out.end(), size_then_lex_less);
  }
  d_subgroups_ = std::move(out);
  return *d_subgroups_;
}

const std::vector<ElementSet>& Analysis::d_sets() {
  if (d_sets_) return *d_sets_;
  std::vector<ElementSet> out;
  for (const Subgroup& s : d_subgroups()) out.push_back(s.mask());
  if (mode_ == DMode::Full && sylow().size() <= kSetSylowMax) {
    // unions of fusion classes; beyond the cap only the first classes combine
    const auto& fc = ctx_.fusion_classes();
    const std::size_t n = std::min(fc.size(), kUnionClassCap);
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
      ElementSet s(table_->order());
      for (std::size_t i = 0; i < n; ++i)
        if ((bits >> i) & 1u)
          for (Elem x : fc[i]) s.insert(x);
      out.push_back(std::move(s));
    }
  }
  std::sort(out.begin(), out.end(), set_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  d_sets_ = std::move(out);
  return *d_sets_;
}

const std::vector<ElementSet>& Analysis::lemma_sets() {
  if (lemma_sets_) return *lemma_sets_;
  if (d_sets().size() <= kLemmaSetCap) {
    lemma_sets_ = d_sets();
  } else {
    std::vector<ElementSet> out;
    for (const Subgroup& s : d_subgroups()) out.push_back(s.mask());
    lemma_sets_ = std::move(out);
  }
  return *lemma_sets_;
}

namespace {

// P, Omega(P) and Z(P) when present, then an even spread over the rest
template <class T, class Mask>
std::vector<T> spread(const std::vector<T>& all, const std::vector<ElementSet>& preferred, Mask mask) {
  if (all.size() <= kFunctorSetCap) return all;
  std::vector<bool> taken(all.size(), false);
  std::size_t count = 0;
  for (const ElementSet& want : preferred)
    for (std::size_t i = 0; i < all.size(); ++i)
      if (!taken[i] && mask(all[i]) == want && count < kFunctorSetCap) taken[i] = true, ++count;
  const std::size_t rest = kFunctorSetCap - count;
  for (std::size_t k = 0; k < rest; ++k) {
    std::size_t i = k * all.size() / rest;
    while (taken[i]) i = (i + 1) % all.size();
    taken[i] = true;
  }
  std::vector<T> out;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (taken[i]) out.push_back(all[i]);
  return out;
}

}  // namespace

const std::vector<ElementSet>& Analysis::functor_sets() {
  if (!functor_sets_) {
    const std::vector<ElementSet> preferred{sylow().mask(), omega(sylow()).mask(), center(sylow()).mask()};
    functor_sets_ = spread(lemma_sets(), preferred, [](const ElementSet& s) { return s; });
  }
  return *functor_sets_;
}

std::vector<Subgroup> Analysis::functor_subgroups() {
  const std::vector<ElementSet> preferred{sylow().mask(), omega(sylow()).mask(), center(sylow()).mask()};
  return spread(d_subgroups(), preferred, [](const Subgroup& s) { return s.mask(); });
}

const std::vector<Analysis::Positioned>& Analysis::positioned() {
  if (positioned_) return *positioned_;
  std::vector<Positioned> out;
  const GroupTable& t = *table_;
  for (const Subgroup& h : *subgroups_of(g_)) {
    const std::size_t want = p_part(h.size(), p_);
    // least g over all of G, not just the distinct conjugates
    for (Elem g : g_.elements()) {
      const ElementSet q = conjugate_set(t, sylow().mask(), g) & h.mask();
      if (q.count() != want) continue;
      out.push_back({h, g, PrimeContext(h, p_, intersection(conjugate(sylow(), g), h))});
      break;
    }
  }
  positioned_ = std::move(out);
  return *positioned_;
}

const std::vector<Analysis::Qualifying>& Analysis::qualifying_sections(std::size_t* examined) {
  if (!qualifying_) {
    std::vector<Qualifying> out;
    sections_examined_ = 0;
    for (const Subgroup& x : *subgroups_of(g_)) {
      const Subgroup sx = zjkit::sylow(x, p_);
      for (const Subgroup& k : normal_subgroups_of(x)) {
        ++sections_examined_;
        const Section sec = quotient(x, k);
        const Subgroup q = Subgroup::whole(sec.quotient());
        if (!is_p_stable(q, p_).holds) continue;
        const Subgroup op = p_core(q, p_);
        if (!centralizer(q, op).is_subgroup_of(op)) continue;
        out.push_back({x, k, product_subgroup(sx, k)});
      }
    }
    qualifying_ = std::move(out);
  }
  if (examined) *examined = sections_examined_;
  return *qualifying_;
}

}  // namespace zjkit::harness
