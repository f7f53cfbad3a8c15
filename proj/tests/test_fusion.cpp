#include <doctest.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "zjkit/construct.hpp"
#include "zjkit/error.hpp"
#include "zjkit/fusion.hpp"
#include "zjkit/lattice.hpp"
#include "zjkit/numeric.hpp"
#include "zjkit/sylow.hpp"

using namespace zjkit;

namespace {

Subgroup whole(const GroupPtr& g) { return Subgroup::whole(g); }

std::vector<std::uint64_t> odd_primes(const GroupTable& g) {
  std::vector<std::uint64_t> out;
  for (auto p : prime_divisors(g.order()))
    if (p != 2) out.push_back(p);
  return out;
}

// Definition-level check: every subset U of D and every g with U^g inside P
// has U^g inside D.
bool strongly_closed_by_subsets(const GroupTable& t, const oracle::Set& p, const oracle::Set& d) {
  const std::size_t n = d.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    oracle::Set u;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) u.push_back(d[i]);
    for (Elem g = 0; g < t.order(); ++g) {
      const auto ug = oracle::conjugate(t, u, g);
      if (oracle::subset(ug, p) && !oracle::subset(ug, d)) return false;
    }
  }
  return true;
}

// Brute-force control of strong fusion: every U <= P and g with U^g <= P
// factor as g = c n with c in C(U), n in N.
bool controls_by_brute_force(const GroupTable& t, const oracle::Set& p, const oracle::Set& n) {
  const auto all = oracle::all_elements(t);
  for (const auto& u : oracle::subgroups(t, p)) {
    const auto c = oracle::centralizer(t, all, u);
    std::vector<char> cn(t.order(), 0);
    for (Elem x : c)
      for (Elem y : n) cn[t.mul(x, y)] = 1;
    for (Elem g : all)
      if (oracle::subset(oracle::conjugate(t, u, g), p) && !cn[g]) return false;
  }
  return true;
}

Subgroup base_of_qd(const GroupPtr& q) { return p_core(whole(q), 3); }

}  // namespace

TEST_CASE("strong closure examples") {
  const GroupPtr a4 = alternating(4);
  const PrimeContext ctx(whole(a4), 3);
  CHECK(is_strongly_closed(ctx, ctx.sylow().mask()).holds);
  ElementSet d = ctx.sylow().mask();
  d.erase(ctx.sylow().elements()[1]);
  // x and x^2 are not fused in A4
  CHECK(is_strongly_closed(ctx, d).holds);

  const GroupPtr s3 = symmetric(3);
  const PrimeContext sctx(whole(s3), 3);
  ElementSet e = sctx.sylow().mask();
  e.erase(sctx.sylow().elements()[1]);
  const auto r = is_strongly_closed(sctx, e);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness.has_value());
  CHECK(e.contains(r.witness->u));
  const Elem image = s3->conj(r.witness->u, r.witness->g);
  CHECK(sctx.sylow().contains(image));
  CHECK_FALSE(e.contains(image));

  const GroupPtr g = fixtures::group("Sym3xZ3");
  const PrimeContext c2(whole(g), 3);
  const Subgroup z = center(whole(g));
  CHECK(z.size() == 3);
  CHECK(is_strongly_closed(c2, z.mask()).holds);
  CHECK(strongly_closed_by_subsets(*g, oracle::of(c2.sylow()), oracle::of(z)));

  CHECK_THROWS_AS(PrimeContext(whole(a4), 2), EvenPrime);
}

TEST_CASE("element-wise strong closure agrees with the subset definition up to order 24") {
  for (const auto& g : fixtures::groups_up_to(24)) {
    for (std::uint64_t p : odd_primes(*g)) {
      const PrimeContext ctx(whole(g), p);
      const oracle::Set pe = oracle::of(ctx.sylow());
      CAPTURE(g->name());
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << pe.size()); ++mask) {
        oracle::Set d;
        for (std::size_t i = 0; i < pe.size(); ++i)
          if (mask >> i & 1) d.push_back(pe[i]);
        const bool lib = is_strongly_closed(ctx, ElementSet::of(g->order(), d)).holds;
        REQUIRE(lib == strongly_closed_by_subsets(*g, pe, d));
      }
    }
  }
}

TEST_CASE("strongly closed sets are normal subsets and conjugation-equivariant") {
  for (const auto& g : fixtures::groups_up_to(60)) {
    for (std::uint64_t p : odd_primes(*g)) {
      const PrimeContext ctx(whole(g), p);
      const auto sets = strongly_closed_sets(ctx, 10);
      if (!sets) continue;
      const Subgroup n = normalizer(whole(g), ctx.sylow());
      for (const ElementSet& d : *sets) {
        for (Elem x : n.elements()) REQUIRE(conjugate_set(*g, d, x) == d);
        CHECK(is_normal_in(closure(g, d), ctx.sylow()));
      }
      for (Elem x = 0; x < g->order(); x += 5) {
        const PrimeContext moved(whole(g), p, conjugate(ctx.sylow(), x));
        for (const ElementSet& d : *sets) REQUIRE(is_strongly_closed(moved, conjugate_set(*g, d, x)).holds);
      }
    }
  }
}

TEST_CASE("control of strong fusion") {
  const GroupPtr a4 = alternating(4);
  const PrimeContext ctx(whole(a4), 3);
  CHECK(controls_strong_fusion(ctx, whole(a4)).holds);
  const Subgroup np = normalizer(whole(a4), ctx.sylow());
  CHECK(np == ctx.sylow());
  CHECK(controls_strong_fusion(ctx, np).holds);
  CHECK(controls_by_brute_force(*a4, oracle::of(ctx.sylow()), oracle::of(np)));

  const GroupPtr s3 = symmetric(3);
  const PrimeContext c3(whole(s3), 3);
  // the transposition fuses x with x^2 outside P
  CHECK_FALSE(controls_strong_fusion(c3, c3.sylow()).holds);
  CHECK(controls_strong_fusion(c3, whole(s3)).holds);

  // agreement with brute force and monotonicity, over every subgroup N
  for (const GroupPtr& g : {alternating(4), symmetric(4), fixtures::group("Sym3xZ3"), fixtures::group("Z3xZ3:Z2")}) {
    const PrimeContext c(whole(g), 3);
    const auto subs = all_subgroups(g);
    std::vector<bool> controls;
    for (const Subgroup& n : subs) {
      controls.push_back(controls_strong_fusion(c, n).holds);
      CHECK(controls.back() == controls_by_brute_force(*g, oracle::of(c.sylow()), oracle::of(n)));
    }
    for (std::size_t i = 0; i < subs.size(); ++i)
      for (std::size_t j = 0; j < subs.size(); ++j)
        if (controls[i] && subs[i].is_subgroup_of(subs[j])) CHECK(controls[j]);
  }
}

TEST_CASE("p-stability") {
  for (const auto& g : fixtures::p_groups_up_to(243)) CHECK(is_p_stable(whole(g), 3).holds);

  const GroupPtr q = qd(3);
  const auto r = is_p_stable(whole(q), 3);
  CHECK_FALSE(r.holds);
  const Subgroup base = base_of_qd(q);
  REQUIRE(r.p0.has_value());
  CHECK(*r.p0 == base);
  const auto g = stability_violation(whole(q), base, 3);
  REQUIRE(g.has_value());
  CHECK(*g == r.g);
  // [P0, g, g] = 1, g normalizes P0, and g acts nontrivially (a transvection)
  CHECK(q->element_order(*g) == 3);
  for (Elem x : base.elements()) CHECK(oracle::comm(*q, oracle::comm(*q, x, *g), *g) == 0);
  CHECK(conjugate(base, *g) == base);
  CHECK_FALSE(centralizer(whole(q), base).contains(*g));
}

TEST_CASE("p-stability over class representatives matches the naive quantifier up to order 48") {
  std::vector<GroupPtr> groups = fixtures::groups_up_to(48);
  groups.push_back(direct_product(symmetric(3), symmetric(3)));
  groups.push_back(special_linear_2(3));
  for (const auto& g : groups) {
    for (std::uint64_t p : odd_primes(*g)) {
      CAPTURE(g->name());
      CHECK(is_p_stable(whole(g), p).holds == is_p_stable_naive(whole(g), p).holds);
    }
  }
}

TEST_CASE("p-stability passes to subgroups") {
  for (const auto& g : fixtures::groups_up_to(128)) {
    for (std::uint64_t p : odd_primes(*g)) {
      if (!is_p_stable(whole(g), p).holds) continue;
      CAPTURE(g->name());
      for (const Subgroup& h : *subgroups_of(whole(g))) CHECK(is_p_stable(h, p).holds);
    }
  }
}

TEST_CASE("p-constraint, Qd-freeness and p-nilpotency") {
  const GroupPtr a4 = alternating(4), a5 = alternating(5), s3 = symmetric(3);
  CHECK(is_p_constrained(whole(a4), 3));
  CHECK(is_p_constrained(whole(heisenberg(3)), 3));
  CHECK_FALSE(is_p_constrained(whole(a5), 5));

  CHECK(is_qdp_free(whole(a4), 3).free);
  const GroupPtr q = qd(3);
  const auto qr = is_qdp_free(whole(q), 3);
  CHECK_FALSE(qr.free);
  REQUIRE(qr.h.has_value());
  CHECK(*qr.h == whole(q));
  CHECK(qr.k->is_trivial());
  const GroupPtr q2 = fixtures::group("Qd(3)xZ2");
  const auto q2r = is_qdp_free(whole(q2), 3);
  CHECK_FALSE(q2r.free);
  REQUIRE(q2r.h.has_value());
  CHECK(q2r.h->size() / q2r.k->size() == 216);
  for (const auto& g : fixtures::groups_up_to(215)) CHECK(is_qdp_free(whole(g), 3).free);

  const auto a4n = is_p_nilpotent(whole(a4), 3);
  CHECK(a4n.holds);
  CHECK(a4n.complement == sylow(a4, 2));
  CHECK_FALSE(is_p_nilpotent(whole(s3), 3).holds);
  const auto hn = is_p_nilpotent(whole(heisenberg(3)), 3);
  CHECK(hn.holds);
  CHECK(hn.complement.is_trivial());
}

TEST_CASE("strongly closed intersections") {
  const GroupPtr g = fixtures::group("Sym3xZ3");
  const PrimeContext ctx(whole(g), 3);
  const ElementSet d = ctx.sylow().mask();
  const auto all = strongly_closed_intersection(ctx, d, whole(g));
  CHECK(all.dn == d);
  CHECK(all.strongly_closed);
  CHECK(all.factorization);

  const Subgroup n = center(whole(g));
  const auto r = strongly_closed_intersection(ctx, d, n);
  CHECK(r.dn == n.mask());
  CHECK(r.strongly_closed);
  CHECK(r.factorization);

  const Subgroup two = sylow(g, 2);
  ElementSet nonidentity = d;
  nonidentity.erase(0);
  CHECK_THROWS_AS(strongly_closed_intersection(ctx, nonidentity, Subgroup::trivial(g)), EmptyIntersection);
  CHECK_THROWS_AS(strongly_closed_intersection(ctx, d, two), NotNormal);
}

TEST_CASE("strongly closed images") {
  const GroupPtr g = fixtures::group("Sym3xZ3");
  const PrimeContext ctx(whole(g), 3);
  const ElementSet d = ctx.sylow().mask();
  const auto whole_case = strongly_closed_images(ctx, d, whole(g), whole(g), 0);
  CHECK(whole_case.part_a == is_strongly_closed(ctx, d).holds);
  CHECK(whole_case.part_b);

  const Subgroup z = center(whole(g));
  const Subgroup s3 = normal_closure(whole(g), sylow(g, 2));
  CHECK(s3.size() == 6);
  ElementSet zs = z.mask();
  zs.erase(0);
  const auto skipped = strongly_closed_images(ctx, zs, s3, Subgroup::trivial(g), 0);
  CHECK(skipped.part_a_skipped);
  CHECK(skipped.part_b);
}

TEST_CASE("quotient stability and abelian normal subgroups in the core") {
  const GroupPtr g = fixtures::group("Sym3xZ3");
  const auto rep = quotient_p_stability_check(whole(g), 3);
  CHECK(rep.implication_holds());
  CHECK(rep.group_stable == is_p_stable(whole(g), 3).holds);
  const auto qrep = quotient_p_stability_check(whole(fixtures::group("Qd(3)xZ2")), 3);
  CHECK_FALSE(qrep.group_stable);
  CHECK(qrep.implication_holds());

  const GroupPtr inv = fixtures::group("Z3xZ3:Z2");
  const auto core = abelian_normal_in_core_check(PrimeContext(whole(inv), 3));
  CHECK(core.p_stable);
  CHECK(core.self_centralizing);
  CHECK(core.holds);

  const auto heis = abelian_normal_in_core_check(PrimeContext(whole(fixtures::group("Heis27:Z2")), 3));
  CHECK((!heis.hypotheses() || heis.holds));
}

TEST_CASE("crucial lemma search") {
  const GroupPtr h = heisenberg(3);
  const Subgroup p = whole(h);
  const auto r = crucial_lemma_search(p, center(p), p, AbelianKind::Order);
  const auto fam = abelian_family(p, AbelianKind::Order);
  CHECK(std::find(fam.members.begin(), fam.members.end(), r.member) != fam.members.end());

  const GroupPtr w = wreath_cyclic(3);
  const Subgroup wp = whole(w);
  Subgroup base;
  for (const Subgroup& a : *abelian_subgroups(wp))
    if (a.size() == 27 && is_normal_in(a, wp)) base = a;
  CHECK(nilpotency_class(wp) == 3u);
  CHECK_THROWS_AS(crucial_lemma_search(wp, wp, base, AbelianKind::Elementary), HypothesisFailure);
  std::size_t tried = 0;
  for (const Subgroup& b : normal_subgroups_of(wp)) {
    if (nilpotency_class(b).value_or(99) > 2 || !derived_subgroup(b).is_subgroup_of(base)) continue;
    const auto rw = crucial_lemma_search(wp, b, base, AbelianKind::Elementary);
    CHECK(rw.member == base);
    CHECK(b.is_subgroup_of(normalizer(wp, rw.member)));
    ++tried;
  }
  CHECK(tried > 0);
}
