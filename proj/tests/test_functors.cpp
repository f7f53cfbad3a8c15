#include <doctest.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "zjkit/construct.hpp"
#include "zjkit/error.hpp"
#include "zjkit/functors.hpp"
#include "zjkit/isomorphism.hpp"
#include "zjkit/lattice.hpp"
#include "zjkit/numeric.hpp"
#include "zjkit/sylow.hpp"

using namespace zjkit;

namespace {

Subgroup whole(const GroupPtr& g) { return Subgroup::whole(g); }

BaseFunctor zj_o() { return *parse_base_functor("ZJ_o"); }

// The value of a base functor computed from its definition with the oracle
// families: J = <members>, then center, then elements of order p.
oracle::Set base_by_definition(const GroupTable& t, const oracle::Set& u, const BaseFunctor& w, std::uint64_t p) {
  if (u.size() == 1) return u;
  const auto abelian = oracle::abelian_subgroups(t, u);
  std::uint64_t best = 0;
  auto score = [&](const oracle::Set& a) -> std::uint64_t {
    switch (w.kind) {
      case AbelianKind::Order: return a.size();
      case AbelianKind::Rank: return oracle::rank_abelian(t, a, p);
      case AbelianKind::Elementary: return oracle::exponent_divides(t, a, p) ? a.size() : 0;
    }
    return 0;
  };
  for (const auto& a : abelian) best = std::max(best, score(a));
  oracle::Set gen;
  for (const auto& a : abelian)
    if (score(a) == best) gen.insert(gen.end(), a.begin(), a.end());
  oracle::Set j = oracle::close(t, oracle::sorted(gen));
  if (w.op == BaseFunctor::Op::J) return j;
  const oracle::Set z = oracle::centralizer(t, j, j);
  if (w.op == BaseFunctor::Op::ZJ) return z;
  oracle::Set low;
  for (Elem x : z)
    if (oracle::power(t, x, p) == 0) low.push_back(x);
  return oracle::close(t, low);
}

}  // namespace

TEST_CASE("base functor names") {
  const auto all = all_base_functors();
  CHECK(all.size() == 9);
  for (const auto& w : all) CHECK(parse_base_functor(w.name()) == w);
  CHECK_FALSE(parse_base_functor("ZJ_x").has_value());
  const auto c = center_functors();
  CHECK(c[0].name() == "ZJ_o");
  CHECK(c[1].name() == "OmegaZJ_r");
  CHECK(c[2].name() == "OmegaZJ_e");
}

TEST_CASE("base functors match their definitions") {
  const GroupPtr a = abelian({9, 3});
  CHECK(apply_base(zj_o(), whole(a)) == whole(a));
  const GroupPtr h = heisenberg(3);
  const auto oe = *parse_base_functor("OmegaZJ_e");
  CHECK(apply_base(oe, whole(h)) == omega(center(thompson_subgroup(whole(h), AbelianKind::Elementary))));
  for (const auto& w : all_base_functors()) CHECK(apply_base(w, Subgroup::trivial(h)).is_trivial());

  for (const GroupPtr& g : {heisenberg(3), extraspecial(3, 9), wreath_cyclic(3), abelian({9, 3}), cyclic(27)}) {
    for (const auto& w : all_base_functors()) {
      CAPTURE(g->name());
      CAPTURE(w.name());
      CHECK(oracle::of(apply_base(w, whole(g))) == base_by_definition(*g, oracle::all_elements(*g), w, 3));
    }
  }
}

TEST_CASE("W_D examples") {
  const GroupPtr a4 = alternating(4);
  const PrimeContext actx(whole(a4), 3);
  for (const auto& w : all_base_functors()) {
    const DFunctor f(w, actx, actx.sylow().mask());
    for (const Subgroup& u : p_subgroups_of(whole(a4), 3))
      if (u.is_subgroup_of(actx.sylow())) CHECK(f(u) == apply_base(w, u));
  }

  const GroupPtr g = fixtures::group("Sym3xZ3");
  const PrimeContext ctx(whole(g), 3);
  const Subgroup z = center(whole(g));
  const DFunctor f(zj_o(), ctx, z.mask());
  const FunctorValue v = f.evaluate(ctx.sylow());
  CHECK(v.output == z);
  CHECK(v.tag == CaseTag::Restricted);
  // a subgroup meeting D trivially falls back to W
  for (const Subgroup& u : p_subgroups_of(whole(g), 3)) {
    if (!intersection(u, z).is_trivial() || u.is_trivial()) continue;
    const FunctorValue vu = f.evaluate(u);
    CHECK(vu.output == apply_base(zj_o(), u));
    CHECK(vu.tag == CaseTag::Whole);
  }

  // in Sym3 the two elements of order 3 are fused
  const GroupPtr s3 = symmetric(3);
  const PrimeContext sctx(whole(s3), 3);
  ElementSet half = sctx.sylow().mask();
  half.erase(sctx.sylow().elements()[1]);
  CHECK_THROWS_AS(DFunctor(zj_o(), sctx, half), HypothesisFailure);
}

TEST_CASE("W*_D examples") {
  const GroupPtr g = fixtures::group("Sym3xZ3");
  const PrimeContext ctx(whole(g), 3);
  const Subgroup p = ctx.sylow(), z = center(whole(g));
  const StarFunctor star(zj_o(), ctx, z.mask());
  // K = 1, H <= P, D cap H nontrivial
  CHECK(star(p, Subgroup::trivial(g)) == z);
  // D inside K: the whole quotient
  const FunctorValue v = star.evaluate(p, z);
  CHECK(v.output == p);
  CHECK(v.tag == CaseTag::Whole);

  const StarFunctor full(zj_o(), ctx, p.mask());
  CHECK(full(p, Subgroup::trivial(g)) == apply_base(zj_o(), p));
}

TEST_CASE("conjugacy functor axioms") {
  const GroupPtr a = abelian({9, 3});
  for (const auto& w : all_base_functors())
    CHECK(verify_conjugacy_axioms([&](const Subgroup& u) { return apply_base(w, u); }, whole(a), 3).passed());

  const GroupPtr a4 = alternating(4);
  const PrimeContext ctx(whole(a4), 3);
  const DFunctor f(zj_o(), ctx, ctx.sylow().mask());
  CHECK(verify_conjugacy_axioms([&](const Subgroup& u) { return f(u); }, whole(a4), 3).passed());
  CHECK(verify_d_functor(f).passed());

  for (const char* name : {"Heis27", "Z3wrZ3"}) {
    const GroupPtr g = fixtures::group(name);
    const auto rep = verify_conjugacy_axioms(broken_functor, whole(g), 3);
    REQUIRE_FALSE(rep.passed());
    CHECK(rep.failures.front().axiom == "iii");
    const Subgroup u = rep.failures.front().h;
    const Elem x = rep.failures.front().g;
    CHECK(conjugate(broken_functor(u), x) != broken_functor(conjugate(u, x)));
  }
}

TEST_CASE("section functor axioms") {
  const GroupPtr g = fixtures::group("Sym3xZ3");
  const PrimeContext ctx(whole(g), 3);
  const StarFunctor star(zj_o(), ctx, ctx.sylow().mask());
  const auto rep =
      verify_section_axioms([&](const Subgroup& h, const Subgroup& k) { return star(h, k); }, whole(g), 3, 9);
  CHECK(rep.passed());
  CHECK(rep.checked > 0);
  const DFunctor wd(zj_o(), ctx, ctx.sylow().mask());
  CHECK(star_specializes_check(star, wd).passed());

  // trivial sections are among those swept
  bool trivial_seen = false;
  for (const auto& [h, k] : p_sections(whole(g), 3, 9)) trivial_seen = trivial_seen || h == k;
  CHECK(trivial_seen);

  // the broken map fails somewhere on the sections of a nonabelian group
  const GroupPtr h = heisenberg(3);
  const auto bad = verify_section_axioms(
      [&](const Subgroup& top, const Subgroup& k) { return join(broken_functor(top), k); }, whole(h), 3, 27);
  CHECK_FALSE(bad.passed());
}

TEST_CASE("restriction consistency") {
  const GroupPtr a4 = alternating(4);
  const PrimeContext ctx(whole(a4), 3);
  const DFunctor f(zj_o(), ctx, ctx.sylow().mask());
  CHECK(restriction_consistency_check(f, whole(a4), 0).passed());
  const Subgroup n = normalizer(whole(a4), ctx.sylow());
  CHECK(restriction_consistency_check(f, n, 0).passed());

  // D^g cap H empty: compared against plain W
  const GroupPtr g = fixtures::group("Sym3xZ3");
  const PrimeContext c2(whole(g), 3);
  const Subgroup z = center(whole(g));
  const Subgroup s3 = normal_closure(whole(g), sylow(g, 2));
  const DFunctor fz(zj_o(), c2, z.mask());
  Elem pos = 0;
  while (intersection(conjugate(c2.sylow(), pos), s3).size() != 3) ++pos;
  CHECK(restriction_consistency_check(fz, s3, pos).passed());
  // P^g cap H must be a Sylow subgroup of H
  for (const Subgroup& q : all_sylows(whole(a4), 3))
    if (q != ctx.sylow()) CHECK_THROWS_AS(restriction_consistency_check(f, q, 0), SylowMismatch);
}

TEST_CASE("base functors commute with isomorphisms between p-subgroups") {
  for (const auto& g : fixtures::groups_up_to(48)) {
    for (std::uint64_t p : prime_divisors(g->order())) {
      if (p == 2) continue;
      const auto subs = p_subgroups_of(whole(g), p);
      for (std::size_t i = 0; i < subs.size(); ++i) {
        for (std::size_t j = i; j < subs.size(); ++j) {
          if (subs[i].size() != subs[j].size() || subs[i].size() == 1) continue;
          const Section qi = induced(subs[i]), qj = induced(subs[j]);
          const auto phi = find_isomorphism(qi.quotient(), qj.quotient());
          if (!phi) continue;
          for (const auto& w : all_base_functors()) {
            const Subgroup wi = apply_base(w, subs[i]), wj = apply_base(w, subs[j]);
            oracle::Set mapped, expected;
            for (Elem x : wi.elements()) mapped.push_back(phi->images[qi.project(x)]);
            for (Elem x : wj.elements()) expected.push_back(qj.project(x));
            REQUIRE(oracle::sorted(mapped) == oracle::sorted(expected));
          }
        }
      }
    }
  }
}
