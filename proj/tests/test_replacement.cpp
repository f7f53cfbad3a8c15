#include <doctest.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "zjkit/construct.hpp"
#include "zjkit/error.hpp"
#include "zjkit/lattice.hpp"
#include "zjkit/numeric.hpp"
#include "zjkit/replacement.hpp"
#include "zjkit/thompson.hpp"

using namespace zjkit;

namespace {

Subgroup whole(const GroupPtr& g) { return Subgroup::whole(g); }

struct Wreath {
  GroupPtr g;
  Subgroup base, top;
  Elem t = 0;
};

Wreath wreath() {
  Wreath w;
  w.g = wreath_cyclic(3);
  for (const Subgroup& a : *abelian_subgroups(whole(w.g)))
    if (a.size() == 27 && is_normal_in(a, whole(w.g))) w.base = a;
  for (Elem x = 0; x < w.g->order(); ++x)
    if (!w.base.contains(x) && w.g->element_order(x) == 3) {
      w.t = x;
      break;
    }
  w.top = closure(w.g, std::vector<Elem>{w.t});
  return w;
}

// Brute-force test of conclusions (a)-(d) for a candidate C.
bool valid_replacement(const GroupTable& t, const oracle::Set& g, const oracle::Set& a, const oracle::Set& b,
                       const oracle::Set& c, std::uint64_t p) {
  auto meet = [](const oracle::Set& x, const oracle::Set& y) {
    oracle::Set out;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return out;
  };
  oracle::Set conjugates;
  for (Elem x : g) {
    const auto ax = oracle::conjugate(t, a, x);
    conjugates.insert(conjugates.end(), ax.begin(), ax.end());
  }
  const oracle::Set bound = meet(oracle::normalizer(t, g, a), oracle::close(t, oracle::sorted(conjugates)));
  std::uint64_t exp_a = 1;
  for (Elem x : a) exp_a = std::max(exp_a, oracle::order_of(t, x));  // p-group: exponent is the max order
  return c.size() == a.size() && meet(a, b).size() < meet(c, b).size() && oracle::subset(c, bound) &&
         oracle::exponent_divides(t, c, exp_a) && oracle::rank_abelian(t, c, p) >= oracle::rank_abelian(t, a, p);
}

}  // namespace

TEST_CASE("replacement hypotheses") {
  const Wreath w = wreath();
  CHECK(w.base.size() == 27);
  CHECK(normalizer(whole(w.g), w.top).size() == 9);
  CHECK(check_replacement_hypotheses(whole(w.g), w.top, w.base).holds());
  CHECK(check_replacement_hypotheses(whole(w.g), w.base, w.top).failed == "A does not normalize B");
  CHECK(check_replacement_hypotheses(whole(w.g), w.top, center(whole(w.g))).failed == "B normalizes A");
  CHECK(check_replacement_hypotheses(whole(w.g), Subgroup::trivial(w.g), whole(w.g)).failed == "class");
  CHECK(check_replacement_hypotheses(whole(w.g), whole(w.g), w.base).failed == "A not abelian");
  const GroupPtr d8 = dihedral(4);
  CHECK_THROWS_AS(check_replacement_hypotheses(whole(d8), Subgroup::trivial(d8), whole(d8)), EvenPrime);
}

TEST_CASE("replace on the wreath product gives the central diagonal") {
  const Wreath w = wreath();
  const auto res = replace(whole(w.g), w.top, w.base);
  CHECK(res.a_star == center(whole(w.g)));
  CHECK(res.a_star.size() == 3);
  CHECK(intersection(w.top, w.base).is_trivial());
  CHECK(intersection(res.a_star, w.base) == res.a_star);
  // every valid order-3 replacement, found by brute force, includes the output
  const auto all = oracle::all_elements(*w.g);
  std::set<oracle::Set> valid;
  for (const auto& c : oracle::abelian_subgroups(*w.g, all))
    if (valid_replacement(*w.g, all, oracle::of(w.top), oracle::of(w.base), c, 3)) valid.insert(c);
  CHECK(valid.count(oracle::of(res.a_star)) == 1);
  CHECK(evaluate_conclusions(whole(w.g), w.top, w.base, res.a_star).all());

  // deterministic
  const auto again = replace(whole(w.g), w.top, w.base);
  CHECK(again.a_star == res.a_star);
  CHECK(again.trace.size() == res.trace.size());
}

TEST_CASE("replace rejects instances outside the hypotheses") {
  const Wreath w = wreath();
  // A cap B = A forces B <= N(A)
  CHECK_THROWS_AS(replace(whole(w.g), intersection(w.base, center(whole(w.g))), w.base), HypothesisFailure);
}

TEST_CASE("replacement on Heis27 x Z3 against the brute-force oracle") {
  const GroupPtr g = fixtures::group("Heis27xZ3");
  const Subgroup gg = whole(g);
  const auto all = oracle::all_elements(*g);
  const auto abelian = oracle::abelian_subgroups(*g, all);
  std::size_t instances = 0;
  for (const Subgroup& b : *subgroups_of(gg)) {
    if (nilpotency_class(b).value_or(99) > 2) continue;
    for (const Subgroup& a : *abelian_subgroups(gg)) {
      if (!check_replacement_hypotheses(gg, a, b).holds()) continue;
      ++instances;
      const auto res = replace(gg, a, b);
      const oracle::Set scope = oracle::of(product_subgroup(b, a));
      bool exists = false;
      for (const auto& c : abelian) exists = exists || valid_replacement(*g, scope, oracle::of(a), oracle::of(b), c, 3);
      CHECK(exists);
      CHECK(valid_replacement(*g, scope, oracle::of(a), oracle::of(b), oracle::of(res.a_star), 3));
      // the recursion shrinks the scope and stays within log_p |G| steps
      for (std::size_t i = 1; i < res.trace.size(); ++i) CHECK(res.trace[i].scope.size() < res.trace[i - 1].scope.size());
      CHECK(res.trace.size() <= 4);
      if (is_elementary_abelian(a) && a.size() == abelian_family(res.trace.front().scope, AbelianKind::Elementary).score) {
        CHECK(is_elementary_abelian(res.a_star));
      }
    }
    if (instances > 400) break;
  }
  CHECK(instances > 0);
}

TEST_CASE("commutator segments") {
  const GroupPtr h = heisenberg(3);
  const Subgroup hh = whole(h);
  const Subgroup z = center(hh);
  for (Elem b = 0; b < h->order(); ++b) CHECK(commutator_segment(b, z).is_trivial());

  for (const Subgroup& a : abelian_family(hh, AbelianKind::Order).members) {
    const auto rep = segment_lemma_check(hh, hh, a);
    CHECK(rep.hypotheses.holds());
    CHECK(rep.all_abelian);
    for (Elem b = 0; b < h->order(); ++b) {
      oracle::Set seg;
      for (Elem x : a.elements()) seg.push_back(oracle::comm(*h, b, x));
      bool commuting = true;
      for (Elem x : seg)
        for (Elem y : seg) commuting = commuting && oracle::commute(*h, x, y);
      CHECK(commuting);
    }
  }

  const Wreath w = wreath();
  const Subgroup a = join(w.top, center(whole(w.g)));
  CHECK(a.size() == 9);
  const auto rep = segment_lemma_check(whole(w.g), w.base, a);
  CHECK(rep.hypotheses.holds());
  CHECK(rep.all_abelian);

  CHECK(check_segment_hypotheses(whole(w.g), w.base, w.top).holds());
  CHECK(check_segment_hypotheses(whole(w.g), whole(w.g), w.top).failed == "B' not central");
}

TEST_CASE("iterated commutators") {
  const Wreath w = wreath();
  const Elem z = center(whole(w.g)).elements()[1];
  CHECK(iterated_commutator_check(whole(w.g), z, 1));
  CHECK(iterated_commutator_check(w.base, w.t, 3));
  CHECK_FALSE(iterated_commutator_check(w.base, w.t, 2));
  CHECK(iterated_commutator(w.base, w.t, 1).size() == 9);
  CHECK(iterated_commutator(w.base, w.t, 2).size() == 3);
}
