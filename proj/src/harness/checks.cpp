#include <algorithm>
#include <functional>
#include <unordered_set>

#include "zjkit/error.hpp"
#include "zjkit/functors.hpp"
#include "zjkit/harness/verifiers.hpp"
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

// Counts instances and keeps the first failure.
struct Tally {
  std::size_t instances = 0;
  std::size_t failures = 0;
  ojson first;

  void pass() { ++instances; }
  void fail(ojson what) {
    ++instances;
    if (failures++ == 0) first = std::move(what);
  }
  void check(bool ok, const std::function<ojson()>& what) { ok ? pass() : fail(what()); }
  void merge(const AxiomReport& rep, const std::string& label) {
    instances += rep.checked;
    if (rep.failures.empty()) return;
    if (failures == 0) {
      const AxiomFailure& f = rep.failures.front();
      first = {{"case", label}, {"axiom", f.axiom}, {"H", elems(f.h)}, {"g", f.g}};
      if (f.k) first["K"] = elems(*f.k);
    }
    failures += rep.failures.size();
  }
  std::optional<bool> conclusion() const {
    if (instances == 0) return std::nullopt;
    return failures == 0;
  }
  ojson witness() const {
    ojson w{{"instances", instances}, {"failures", failures}};
    if (failures) w["first_failure"] = first;
    return w;
  }
  void into(Record& r) const {
    r.conclusion = conclusion();
    r.witness = witness();
  }
};

ojson scan_witness(const ScanSummary& s) {
  ojson w{{"instances", s.instances}, {"satisfying", s.satisfying}, {"failures", s.failures}};
  if (!s.first_failure.is_null()) w["first_failure"] = s.first_failure;
  return w;
}

std::string kind_name(AbelianKind k) { return kind_letter(k); }

// A scan over the Sylow subgroup when it is small enough.
std::vector<Record> sylow_scan(Analysis& a, const char* id, std::size_t limit,
                               ScanSummary (*scan)(const Subgroup&)) {
  if (a.sylow().is_trivial() || a.sylow().size() > limit) return {};
  Record r = a.record(id, "P");
  r.hyp("odd p-group", true);
  const ScanSummary s = scan(a.sylow());
  r.conclusion = s.passed();
  r.witness = scan_witness(s);
  return {r};
}

std::vector<Record> check_monotonicity(Analysis& a) {
  if (a.sylow().is_trivial()) return {};
  Record r = a.record("L3.1", "P");
  r.hyp("odd p-group", true);
  Tally t;
  for (const Subgroup& sub : *a.ctx().p_subgroups())
    for (AbelianKind k : kAllKinds) {
      const MonotonicityReport m = j_monotonicity_check(a.sylow(), sub, k);
      t.check(m.passed(), [&] {
        return ojson{{"R", elems(sub)}, {"kind", kind_name(k)}, {"containment", m.containment_holds},
                     {"equivalence", m.equivalence_holds}};
      });
    }
  t.into(r);
  return {r};
}

std::vector<Record> check_opg(Analysis& a) {
  Record r = a.record("opg", "P");
  const CoreReport rep = abelian_normal_in_core_check(a.ctx());
  r.hyp("p odd", true).hyp("p-stable", rep.p_stable).hyp("C(O_p) <= O_p", rep.self_centralizing);
  r.conclusion = rep.holds;
  if (rep.witness) r.witness = {{"A", elems(*rep.witness)}};
  return {r};
}

std::vector<Record> check_quotient_stability(Analysis& a) {
  Record r = a.record("Lp-stable");
  const QuotientStabilityReport rep = quotient_p_stability_check(a.g(), a.p());
  r.hyp("p-stable", rep.group_stable);
  r.conclusion = rep.quotient_stable;
  return {r};
}

std::vector<Record> check_crucial(Analysis& a) {
  if (a.sylow().is_trivial()) return {};
  const Subgroup& p = a.sylow();
  const auto normals = normal_subgroups_of(p);
  std::vector<Record> out;
  for (AbelianKind kind : kAllKinds) {
    Record r = a.record("L-crucial", "P");
    r.variant = kind_name(kind);
    r.hyp("odd p-group", true);
    Tally t;
    for (const Subgroup& b : normals) {
      const Subgroup bd = derived_subgroup(b);
      if (!commutator_subgroup(bd, b).is_trivial()) continue;
      for (const Subgroup& n : normals) {
        const AbelianFamily fam = abelian_family(n, kind);
        if (!std::all_of(fam.members.begin(), fam.members.end(),
                         [&](const Subgroup& m) { return bd.is_subgroup_of(m); }))
          continue;
        auto where = [&] { return ojson{{"B", elems(b)}, {"N", elems(n)}}; };
        try {
          const CrucialResult res = crucial_lemma_search(p, b, n, kind);
          const bool member =
              std::find(fam.members.begin(), fam.members.end(), res.member) != fam.members.end();
          t.check(member && b.is_subgroup_of(normalizer(p, res.member)), where);
        } catch (const Error& e) {
          ojson w = where();
          w["error"] = e.what();
          t.fail(w);
        }
      }
    }
    t.into(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Record> check_strongly_closed_intersection(Analysis& a) {
  std::vector<Record> out;
  for (const ElementSet& d : a.lemma_sets()) {
    Record r = a.record("L-strogly", a.describe(d));
    r.hyp("D strongly closed", a.strongly_closed(d));
    Tally t;
    for (const Subgroup& n : a.normal_subgroups()) {
      if (!d.intersects(n.mask())) continue;
      const IntersectionResult res = strongly_closed_intersection(a.ctx(), d, n);
      t.check(res.strongly_closed && res.factorization, [&] {
        return ojson{{"N", elems(n)}, {"strongly_closed", res.strongly_closed},
                     {"factorization", res.factorization}};
      });
    }
    t.into(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Record> check_images(Analysis& a) {
  std::vector<Record> out;
  const GroupTable& table = a.g().table();
  // quotient contexts for part (b)
  struct QuotientCtx {
    Subgroup n;
    Section sec;
    PrimeContext ctx;
  };
  std::vector<QuotientCtx> quotients;
  for (const Subgroup& n : a.normal_subgroups()) {
    Section sec = quotient(a.g(), n);
    PrimeContext qctx(Subgroup::whole(sec.quotient()), a.p(), sec.image(a.sylow()));
    quotients.push_back({n, std::move(sec), std::move(qctx)});
  }
  for (const ElementSet& d : a.lemma_sets()) {
    Record r = a.record("L-sc2", a.describe(d));
    r.hyp("D strongly closed", a.strongly_closed(d));
    Tally t;
    std::size_t skipped = 0;
    for (const auto& pos : a.positioned()) {
      const ElementSet e = conjugate_set(table, d, pos.g) & pos.h.mask();
      if (e.empty()) {
        ++skipped;
        continue;
      }
      t.check(is_strongly_closed(pos.ctx, e).holds,
              [&] { return ojson{{"part", "a"}, {"H", elems(pos.h)}, {"g", pos.g}}; });
    }
    for (const auto& q : quotients)
      t.check(is_strongly_closed(q.ctx, q.sec.image(d)).holds,
              [&] { return ojson{{"part", "b"}, {"N", elems(q.n)}}; });
    t.into(r);
    r.witness["empty_intersections"] = skipped;
    out.push_back(std::move(r));
  }
  return out;
}

bool functor_sized(const Analysis& a) { return a.g().size() <= kFunctorGroupMax; }

std::vector<Record> check_conjugacy_functor(Analysis& a) {
  if (!functor_sized(a)) return {};
  std::vector<Record> out;
  const ElementSet none(a.g().table().order());
  std::vector<ElementSet> ds{none};
  for (const ElementSet& d : a.functor_sets()) ds.push_back(d);
  for (const ElementSet& d : ds) {
    Record r = a.record("L-cf", d.empty() ? "none" : a.describe(d));
    r.hyp("D strongly closed or empty", d.empty() || a.strongly_closed(d));
    Tally t;
    for (const BaseFunctor& w : all_base_functors()) {
      try {
        const DFunctor f(w, a.ctx(), d);
        t.merge(verify_conjugacy_axioms([&](const Subgroup& u) { return f(u); }, a.g(), a.p()), w.name());
        t.merge(verify_d_functor(f), w.name());
      } catch (const Error& e) {
        t.fail({{"case", w.name()}, {"error", e.what()}});
      }
    }
    t.into(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Record> check_section_conjugacy_functor(Analysis& a) {
  if (!functor_sized(a)) return {};
  std::vector<Record> out;
  const GroupTable& table = a.g().table();
  for (const ElementSet& d : a.functor_sets()) {
    Record r = a.record("L-scf", a.describe(d));
    r.hyp("D strongly closed", a.strongly_closed(d));
    Tally t;
    for (const BaseFunctor& w : center_functors()) {
      try {
        const DFunctor wd(w, a.ctx(), d);
        // (a) and the restriction remark, for every H <= G
        for (const auto& pos : a.positioned()) {
          const ElementSet e = conjugate_set(table, d, pos.g) & pos.h.mask();
          const DFunctor local(w, pos.ctx, e);
          t.merge(verify_conjugacy_axioms([&](const Subgroup& u) { return local(u); }, pos.h, a.p()),
                  w.name() + " on H");
          t.merge(restriction_consistency_check(wd, pos.h, pos.g), w.name() + " restriction");
        }
        // (b) on every quotient G/N
        for (const Subgroup& n : a.normal_subgroups()) {
          const Section sec = quotient(a.g(), n);
          const Subgroup q = Subgroup::whole(sec.quotient());
          const PrimeContext qctx(q, a.p(), sec.image(a.sylow()));
          const DFunctor fq(w, qctx, sec.image(d));
          t.merge(verify_conjugacy_axioms([&](const Subgroup& u) { return fq(u); }, q, a.p()),
                  w.name() + " on G/N");
        }
      } catch (const Error& e) {
        t.fail({{"case", w.name()}, {"error", e.what()}});
      }
    }
    t.into(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Record> check_star_functor(Analysis& a) {
  if (!functor_sized(a)) return {};
  std::vector<Record> out;
  const ElementSet none(a.g().table().order());
  std::vector<ElementSet> ds{none};
  for (const ElementSet& d : a.functor_sets()) ds.push_back(d);
  for (const ElementSet& d : ds) {
    Record r = a.record("L-final", d.empty() ? "none" : a.describe(d));
    r.hyp("D strongly closed or empty", d.empty() || a.strongly_closed(d));
    Tally t;
    for (const BaseFunctor& w : all_base_functors()) {
      try {
        const StarFunctor star(w, a.ctx(), d);
        const DFunctor wd(w, a.ctx(), d);
        t.merge(verify_section_axioms([&](const Subgroup& h, const Subgroup& k) { return star(h, k); }, a.g(),
                                      a.p(), kFunctorSectionMax),
                w.name());
        t.merge(star_specializes_check(star, wd), w.name());
      } catch (const Error& e) {
        t.fail({{"case", w.name()}, {"error", e.what()}});
      }
    }
    t.into(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Record> check_star_normality(Analysis& a) {
  if (a.g().size() > kSectionScanGroupMax) return {};
  std::vector<Record> out;
  std::size_t examined = 0;
  const auto& sections = a.qualifying_sections(&examined);
  for (const Subgroup& d : a.functor_subgroups()) {
    Record r = a.record("L-ff", a.describe(d.mask()));
    r.hyp("D strongly closed subgroup", a.strongly_closed(d.mask()));
    Tally t;
    for (const BaseFunctor& w : center_functors()) {
      const StarFunctor star(w, a.ctx(), d.mask());
      for (const auto& s : sections) {
        const Subgroup l = star(s.h, s.k);
        t.check(is_normal_in(l, s.x), [&] {
          return ojson{{"functor", w.name()}, {"X", elems(s.x)}, {"K", elems(s.k)}, {"L", elems(l)}};
        });
      }
    }
    t.into(r);
    r.witness["sections_examined"] = examined;
    r.witness["sections_qualifying"] = sections.size();
    out.push_back(std::move(r));
  }
  return out;
}

// theorems

ojson kinds_failing(const std::vector<std::pair<AbelianKind, bool>>& v) {
  ojson f = ojson::array();
  for (const auto& [k, ok] : v)
    if (!ok) f.push_back(kind_name(k));
  return f;
}

void conclude_per_kind(Record& r, const std::vector<std::pair<AbelianKind, bool>>& v) {
  const bool all = std::all_of(v.begin(), v.end(), [](const auto& x) { return x.second; });
  r.conclusion = all;
  if (!all) r.witness = {{"failing", kinds_failing(v)}};
}

std::vector<Record> check_B(Analysis& a) {
  std::vector<Record> out;
  for (const Subgroup& d : a.d_subgroups()) {
    Record r = a.record("B", a.describe(d.mask()));
    r.hyp("p-stable", a.p_stable())
        .hyp("C(O_p) <= O_p", a.self_centralizing())
        .hyp("D strongly closed", a.strongly_closed(d.mask()));
    std::vector<std::pair<AbelianKind, bool>> v;
    for (AbelianKind k : kAllKinds) v.emplace_back(k, is_normal_in(zj_subgroup(d, k), a.g()));
    conclude_per_kind(r, v);
    out.push_back(std::move(r));
  }
  return out;
}

// Z(J_x(Omega(D))) for each kind: normal (or fusion-controlling) and equal.
template <class Pred>
void omega_conclusion(Record& r, const Subgroup& om, Pred&& pred) {
  std::vector<std::pair<AbelianKind, bool>> v;
  std::vector<Subgroup> zs;
  for (AbelianKind k : kAllKinds) {
    zs.push_back(center(thompson_subgroup(om, k)));
    v.emplace_back(k, pred(zs.back()));
  }
  const bool equal = zs[0] == zs[1] && zs[1] == zs[2];
  const bool all = equal && std::all_of(v.begin(), v.end(), [](const auto& x) { return x.second; });
  r.conclusion = all;
  if (!all) r.witness = {{"failing", kinds_failing(v)}, {"coincide", equal}};
}

std::vector<Record> check_C(Analysis& a) {
  std::vector<Record> out;
  for (const Subgroup& d : a.d_subgroups()) {
    Record r = a.record("C", a.describe(d.mask()));
    const Subgroup om = omega(d);
    r.hyp("p-stable", a.p_stable())
        .hyp("C(O_p) <= O_p", a.self_centralizing())
        .hyp("D strongly closed", a.strongly_closed(d.mask()))
        .hyp("exp(Omega(D)) = p", exponent(om) == a.p());
    omega_conclusion(r, om, [&](const Subgroup& z) { return is_normal_in(z, a.g()); });
    out.push_back(std::move(r));
  }
  return out;
}

struct SetData {
  Subgroup k;
  std::vector<std::pair<AbelianKind, bool>> members_in_d;
  std::vector<Subgroup> z;
};

SetData set_data(const Analysis& a, const ElementSet& d) {
  SetData s;
  s.k = closure(a.g().parent(), d);
  for (AbelianKind kind : kAllKinds) {
    const AbelianFamily fam = abelian_family(s.k, kind);
    const bool inside = std::all_of(fam.members.begin(), fam.members.end(),
                                    [&](const Subgroup& m) { return m.mask().is_subset_of(d); });
    s.members_in_d.emplace_back(kind, inside);
    s.z.push_back(zj_subgroup(s.k, kind));
  }
  return s;
}

std::vector<Record> check_T32(Analysis& a) {
  std::vector<Record> out;
  for (const ElementSet& d : a.d_sets()) {
    const SetData sd = set_data(a, d);
    for (std::size_t i = 0; i < 3; ++i) {
      Record r = a.record("T3.2", a.describe(d));
      r.variant = kind_name(kAllKinds[i]);
      r.hyp("p-stable", a.p_stable())
          .hyp("D strongly closed", a.strongly_closed(d))
          .hyp("A_x(K) inside D", sd.members_in_d[i].second);
      Tally t;
      for (const Subgroup& b : a.normal_p_subgroups())
        t.check(is_normal_in(intersection(sd.z[i], b), a.g()), [&] { return ojson{{"B", elems(b)}}; });
      t.into(r);
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<Record> check_T36(Analysis& a) {
  std::vector<Record> out;
  for (const ElementSet& d : a.d_sets()) {
    const SetData sd = set_data(a, d);
    for (std::size_t i = 0; i < 3; ++i) {
      Record r = a.record("T3.6", a.describe(d));
      r.variant = kind_name(kAllKinds[i]);
      r.hyp("p-stable", a.p_stable())
          .hyp("p-constrained", a.p_constrained())
          .hyp("D strongly closed", a.strongly_closed(d))
          .hyp("A_x(K) inside D", sd.members_in_d[i].second);
      r.conclusion = a.controls(normalizer(a.g(), sd.z[i]));
      out.push_back(std::move(r));
    }
  }
  return out;
}

void fusion_conclusion(Analysis& a, Record& r, const Subgroup& d) {
  std::vector<std::pair<AbelianKind, bool>> v;
  for (AbelianKind k : kAllKinds) v.emplace_back(k, a.controls(normalizer(a.g(), zj_subgroup(d, k))));
  conclude_per_kind(r, v);
}

std::vector<Record> check_E(Analysis& a) {
  std::vector<Record> out;
  for (const Subgroup& d : a.d_subgroups()) {
    Record r = a.record("E", a.describe(d.mask()));
    r.hyp("p-stable", a.p_stable())
        .hyp("N_G(U) p-constrained", a.normalizers_constrained())
        .hyp("D strongly closed", a.strongly_closed(d.mask()));
    fusion_conclusion(a, r, d);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Record> check_F(Analysis& a) {
  std::vector<Record> out;
  for (const Subgroup& d : a.d_subgroups()) {
    Record r = a.record("F", a.describe(d.mask()));
    r.hyp("Qd(p)-free", a.qd_free()).hyp("D strongly closed", a.strongly_closed(d.mask()));
    fusion_conclusion(a, r, d);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Record> check_CorF(Analysis& a) {
  std::vector<Record> out;
  for (const Subgroup& d : a.d_subgroups()) {
    Record r = a.record("CorF", a.describe(d.mask()));
    const Subgroup om = omega(d);
    r.hyp("Qd(p)-free", a.qd_free())
        .hyp("D strongly closed", a.strongly_closed(d.mask()))
        .hyp("exp(Omega(D)) = p", exponent(om) == a.p());
    omega_conclusion(r, om, [&](const Subgroup& z) { return a.controls(normalizer(a.g(), z)); });
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Record> check_H(Analysis& a) {
  std::vector<Record> out;
  for (const Subgroup& d : a.d_subgroups()) {
    Record r = a.record("H", a.describe(d.mask()));
    ojson nilpotent = ojson::array();
    for (AbelianKind k : kAllKinds)
      if (is_p_nilpotent(normalizer(a.g(), zj_subgroup(d, k)), a.p()).holds) nilpotent.push_back(kind_name(k));
    r.hyp("D strongly closed", a.strongly_closed(d.mask())).hyp("some normalizer p-nilpotent", !nilpotent.empty());
    r.conclusion = a.p_nilpotent();
    r.witness = {{"p-nilpotent normalizers", nilpotent}};
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<Record> run_check(std::string_view id, Analysis& a) {
  if (id == "A") return sylow_scan(a, "A", kReplacementScanMax, replacement_scan);
  if (id == "GlbLemma") return sylow_scan(a, "GlbLemma", kSegmentScanMax, segment_scan);
  if (id == "RankLemma") return sylow_scan(a, "RankLemma", kRankScanMax, rank_scan);
  if (id == "L3.1") return check_monotonicity(a);
  if (id == "opg") return check_opg(a);
  if (id == "L-strogly") return check_strongly_closed_intersection(a);
  if (id == "L-crucial") return check_crucial(a);
  if (id == "T3.2") return check_T32(a);
  if (id == "T3.6") return check_T36(a);
  if (id == "Lp-stable") return check_quotient_stability(a);
  if (id == "L-sc2") return check_images(a);
  if (id == "L-cf") return check_conjugacy_functor(a);
  if (id == "L-scf") return check_section_conjugacy_functor(a);
  if (id == "L-final") return check_star_functor(a);
  if (id == "L-ff") return check_star_normality(a);
  if (id == "B") return check_B(a);
  if (id == "C") return check_C(a);
  if (id == "E") return check_E(a);
  if (id == "F") return check_F(a);
  if (id == "H") return check_H(a);
  if (id == "CorF") return check_CorF(a);
  throw Error("unknown check id: " + std::string(id));
}

}  // namespace zjkit::harness
