#include "zjkit/fusion.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_set>

#include "zjkit/construct.hpp"
#include "zjkit/error.hpp"
#include "zjkit/isomorphism.hpp"
#include "zjkit/numeric.hpp"
#include "zjkit/replacement.hpp"
#include "zjkit/sylow.hpp"

namespace zjkit {

struct PrimeContext::Lazy {
  std::once_flag classes_once;
  ConjugacyClasses classes;
  std::once_flag fusion_once;
  std::vector<std::vector<Elem>> fusion;
};

namespace {

void require_odd_prime(std::uint64_t p) {
  if (!is_prime(p)) throw Error("prime expected");
  if (p == 2) throw EvenPrime("odd prime required");
}

bool conjugates_into(const GroupTable& t, std::span<const Elem> gens, Elem g, const Subgroup& p) {
  for (Elem u : gens)
    if (!p.contains(t.conj(u, g))) return false;
  return true;
}

// O_p of N / C(P0), pulled back to N.
Subgroup stability_kernel(const Subgroup& n, const Subgroup& c, std::uint64_t p) {
  const Section sec = quotient(n, c);
  return sec.preimage(p_core(Subgroup::whole(sec.quotient()), p));
}

GroupPtr qd_table(std::uint64_t p) {
  static std::mutex mu;
  static std::map<std::uint64_t, GroupPtr> built;
  std::lock_guard<std::mutex> lock(mu);
  auto it = built.find(p);
  if (it == built.end()) it = built.emplace(p, qd(p)).first;
  return it->second;
}

}  // namespace

PrimeContext::PrimeContext(Subgroup ambient, std::uint64_t p)
    : ambient_(std::move(ambient)), p_(p), lazy_(std::make_shared<Lazy>()) {
  require_odd_prime(p);
  sylow_ = zjkit::sylow(ambient_, p);
}

PrimeContext::PrimeContext(Subgroup ambient, std::uint64_t p, Subgroup sylow)
    : ambient_(std::move(ambient)), p_(p), sylow_(std::move(sylow)), lazy_(std::make_shared<Lazy>()) {
  require_odd_prime(p);
  if (!sylow_.is_subgroup_of(ambient_) || sylow_.size() != p_part(ambient_.size(), p))
    throw SylowMismatch("given subgroup is not a Sylow p-subgroup of the ambient group");
}

const ConjugacyClasses& PrimeContext::classes() const {
  std::call_once(lazy_->classes_once, [this] { lazy_->classes = conjugacy_classes(ambient_); });
  return lazy_->classes;
}

SubgroupList PrimeContext::p_subgroups() const { return subgroups_of(sylow_); }

const std::vector<std::vector<Elem>>& PrimeContext::fusion_classes() const {
  std::call_once(lazy_->fusion_once, [this] {
    const auto& cls = classes();
    std::map<int, std::vector<Elem>> by_class;
    for (Elem x : sylow_.elements()) by_class[cls.class_of[x]].push_back(x);
    for (auto& [id, members] : by_class) lazy_->fusion.push_back(std::move(members));
    std::sort(lazy_->fusion.begin(), lazy_->fusion.end());
  });
  return lazy_->fusion;
}

StrongClosureResult is_strongly_closed(const PrimeContext& ctx, const ElementSet& d) {
  if (d.empty() || !d.is_subset_of(ctx.sylow().mask()))
    throw Error("strong closure: D must be a nonempty subset of P");
  StrongClosureResult res;
  for (const auto& fc : ctx.fusion_classes()) {
    const bool any_in = std::any_of(fc.begin(), fc.end(), [&](Elem x) { return d.contains(x); });
    const bool all_in = std::all_of(fc.begin(), fc.end(), [&](Elem x) { return d.contains(x); });
    if (any_in && !all_in) {
      res.holds = false;
      break;
    }
  }
  if (res.holds) return res;
  const GroupTable& t = ctx.table();
  ConjugationWitness w;
  bool found = false;
  d.for_each([&](Elem u) {
    if (found) return;
    for (Elem g : ctx.ambient().elements()) {
      const Elem v = t.conj(u, g);
      if (ctx.sylow().contains(v) && !d.contains(v)) {
        w = {u, g};
        found = true;
        return;
      }
    }
  });
  res.witness = w;
  return res;
}

std::vector<Subgroup> strongly_closed_subgroups(const PrimeContext& ctx) {
  std::vector<Subgroup> out;
  for (const Subgroup& s : *ctx.p_subgroups())
    if (!s.is_trivial() && is_strongly_closed(ctx, s.mask()).holds) out.push_back(s);
  return out;
}

std::optional<std::vector<ElementSet>> strongly_closed_sets(const PrimeContext& ctx,
                                                            std::size_t max_classes) {
  const auto& fc = ctx.fusion_classes();
  if (fc.size() > max_classes) return std::nullopt;
  std::vector<ElementSet> out;
  const std::size_t n = fc.size();
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
    ElementSet s(ctx.table().order());
    for (std::size_t i = 0; i < n; ++i)
      if ((bits >> i) & 1u)
        for (Elem x : fc[i]) s.insert(x);
    out.push_back(std::move(s));
  }
  // deterministic order: by size, then by sorted elements
  std::sort(out.begin(), out.end(), [](const ElementSet& a, const ElementSet& b) {
    const auto ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    return a.to_vector() < b.to_vector();
  });
  return out;
}

FusionResult controls_strong_fusion(const PrimeContext& ctx, const Subgroup& n) {
  const Subgroup& g = ctx.ambient();
  const GroupTable& t = ctx.table();
  if (!n.is_subgroup_of(g)) throw Error("controls_strong_fusion: N must lie in G");
  FusionResult res;
  for (const Subgroup& u : *ctx.p_subgroups()) {
    const Subgroup c = centralizer(g, u);
    if (c.size() * n.size() / intersection(c, n).size() == g.size()) continue;
    const ElementSet cn = product_set(c, n);
    for (Elem x : g.elements()) {
      if (cn.contains(x) || !conjugates_into(t, u.generators(), x, ctx.sylow())) continue;
      res.holds = false;
      res.u = u;
      res.g = x;
      return res;
    }
  }
  return res;
}

std::optional<Elem> stability_violation(const Subgroup& ambient, const Subgroup& p0, std::uint64_t p) {
  const Subgroup n = normalizer(ambient, p0);
  const Subgroup c = centralizer(ambient, p0);
  if (n.size() == c.size()) return std::nullopt;
  const Subgroup k = stability_kernel(n, c, p);
  for (Elem g : n.elements()) {
    if (k.contains(g)) continue;
    if (iterated_commutator_check(p0, g, 2)) return g;
  }
  return std::nullopt;
}

StabilityResult is_p_stable(const Subgroup& ambient, std::uint64_t p) {
  require_odd_prime(p);
  const Subgroup s = sylow(ambient, p);
  StabilityResult res;
  if (s.size() == ambient.size()) return res;  // N/C is a p-group for every P0
  std::unordered_set<ElementSet, ElementSetHash> seen;
  const GroupTable& t = ambient.table();
  for (const Subgroup& p0 : *subgroups_of(s)) {
    if (seen.count(p0.mask())) continue;
    for (Elem g : ambient.elements()) seen.insert(conjugate_set(t, p0.mask(), g));
    if (auto g = stability_violation(ambient, p0, p)) {
      res.holds = false;
      res.p0 = p0;
      res.g = *g;
      return res;
    }
  }
  return res;
}

StabilityResult is_p_stable_naive(const Subgroup& ambient, std::uint64_t p) {
  require_odd_prime(p);
  StabilityResult res;
  for (const Subgroup& p0 : *subgroups_of(ambient)) {
    if (!is_p_group(p0, p)) continue;
    const Subgroup n = normalizer(ambient, p0);
    const Subgroup c = centralizer(ambient, p0);
    const Section sec = quotient(n, c);
    // O_p as the intersection of all Sylow p-subgroups of N/C
    const Subgroup q = Subgroup::whole(sec.quotient());
    Subgroup op = q;
    for (const Subgroup& s : all_sylows(q, p)) op = intersection(op, s);
    for (Elem g : n.elements()) {
      if (!iterated_commutator_check(p0, g, 2)) continue;
      if (!op.contains(sec.project(g))) {
        res.holds = false;
        res.p0 = p0;
        res.g = g;
        return res;
      }
    }
  }
  return res;
}

bool is_p_constrained(const Subgroup& ambient, std::uint64_t p) {
  if (!is_prime(p)) throw Error("prime expected");
  const Subgroup o = p_prime_p_core(ambient, p);
  std::optional<bool> verdict;
  for (const Subgroup& u : all_sylows(o, p)) {
    const bool v = centralizer(ambient, u).is_subgroup_of(o);
    if (verdict && *verdict != v) throw InternalError("p-constraint depends on the Sylow subgroup chosen");
    verdict = v;
  }
  return verdict.value_or(true);
}

QdFreeResult is_qdp_free(const Subgroup& ambient, std::uint64_t p) {
  require_odd_prime(p);
  QdFreeResult res;
  const std::uint64_t q = p * p * p * (p * p - 1);
  if (ambient.size() < q || ambient.size() % q != 0) return res;
  const GroupPtr target = qd_table(p);
  for (const Subgroup& h : *subgroups_of(ambient)) {
    if (h.size() % q != 0) continue;
    for (const Subgroup& k : *subgroups_of(h)) {
      if (k.size() * q != h.size() || !is_normal_in(k, h)) continue;
      const Section sec = quotient(h, k);
      if (is_isomorphic(sec.quotient(), target)) {
        res.free = false;
        res.h = h;
        res.k = k;
        return res;
      }
    }
  }
  return res;
}

NilpotencyResult is_p_nilpotent(const Subgroup& ambient, std::uint64_t p) {
  if (!is_prime(p)) throw Error("prime expected");
  NilpotencyResult res;
  res.complement = p_prime_core(ambient, p);
  res.holds = ambient.size() / res.complement.size() == p_part(ambient.size(), p);
  return res;
}

IntersectionResult strongly_closed_intersection(const PrimeContext& ctx, const ElementSet& d,
                                                const Subgroup& n) {
  const Subgroup& g = ctx.ambient();
  if (!n.is_subgroup_of(g) || !is_normal_in(n, g)) throw NotNormal("N is not normal in G");
  IntersectionResult res;
  res.dn = d & n.mask();
  if (res.dn.empty()) throw EmptyIntersection("D and N are disjoint");
  res.strongly_closed = is_strongly_closed(ctx, res.dn).holds;
  const Subgroup stab = set_stabilizer(g, res.dn);
  res.factorization = product_set(stab, n) == g.mask();
  return res;
}

ImagesReport strongly_closed_images(const PrimeContext& ctx, const ElementSet& d, const Subgroup& h,
                                    const Subgroup& n, Elem g) {
  const GroupTable& t = ctx.table();
  const std::uint64_t p = ctx.p();
  ImagesReport rep;
  const Subgroup q = intersection(conjugate(ctx.sylow(), g), h);
  if (q.size() != p_part(h.size(), p)) throw SylowMismatch("P^g cap H is not a Sylow subgroup of H");
  const ElementSet e = conjugate_set(t, d, g) & h.mask();
  if (e.empty()) {
    rep.part_a_skipped = true;
  } else {
    const PrimeContext hctx(h, p, q);
    rep.part_a = is_strongly_closed(hctx, e).holds;
  }
  const Subgroup& whole = ctx.ambient();
  if (!n.is_subgroup_of(whole) || !is_normal_in(n, whole)) throw NotNormal("N is not normal in G");
  const Section sec = quotient(whole, n);
  const PrimeContext qctx(Subgroup::whole(sec.quotient()), p, sec.image(ctx.sylow()));
  rep.part_b = is_strongly_closed(qctx, sec.image(d)).holds;
  return rep;
}

QuotientStabilityReport quotient_p_stability_check(const Subgroup& ambient, std::uint64_t p) {
  QuotientStabilityReport rep;
  rep.group_stable = is_p_stable(ambient, p).holds;
  const Section sec = quotient(ambient, p_prime_core(ambient, p));
  rep.quotient_stable = is_p_stable(Subgroup::whole(sec.quotient()), p).holds;
  return rep;
}

CoreReport abelian_normal_in_core_check(const PrimeContext& ctx) {
  CoreReport rep;
  const Subgroup& g = ctx.ambient();
  const Subgroup op = p_core(g, ctx.p());
  rep.p_stable = is_p_stable(g, ctx.p()).holds;
  rep.self_centralizing = centralizer(g, op).is_subgroup_of(op);
  for (const Subgroup& a : *abelian_subgroups(ctx.sylow())) {
    if (!is_normal_in(a, ctx.sylow())) continue;
    if (!a.is_subgroup_of(op)) {
      rep.holds = false;
      rep.witness = a;
      break;
    }
  }
  return rep;
}

CrucialResult crucial_lemma_search(const Subgroup& p, const Subgroup& b, const Subgroup& n,
                                   AbelianKind kind) {
  const auto prime = prime_of_p_group(p);
  if (prime == 2) throw EvenPrime("crucial lemma requires an odd prime");
  if (!b.is_subgroup_of(p) || !is_normal_in(b, p)) throw HypothesisFailure("B not normal");
  if (!n.is_subgroup_of(p) || !is_normal_in(n, p)) throw HypothesisFailure("N not normal");
  if (!commutator_subgroup(derived_subgroup(b), b).is_trivial()) throw HypothesisFailure("class");
  const auto fam = abelian_family(n, kind);
  const Subgroup bd = derived_subgroup(b);
  for (const Subgroup& a : fam.members)
    if (!bd.is_subgroup_of(a)) throw HypothesisFailure("B' not in every member");

  const Subgroup* best = nullptr;
  std::size_t best_meet = 0;
  for (const Subgroup& a : fam.members) {
    const auto meet = intersection(a, b).size();
    if (!best || meet > best_meet) {
      best = &a;
      best_meet = meet;
    }
  }
  CrucialResult res{*best, 0};
  auto in_family = [&](const Subgroup& a) {
    return std::find(fam.members.begin(), fam.members.end(), a) != fam.members.end();
  };
  while (!b.is_subgroup_of(normalizer(p, res.member))) {
    const Subgroup next = replace(p, res.member, b).a_star;
    if (!in_family(next)) throw InternalError("replacement left the family");
    res.member = next;
    ++res.replace_steps;
  }
  return res;
}

}  // namespace zjkit
