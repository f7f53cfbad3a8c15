#include "zjkit/replacement.hpp"

#include <algorithm>
#include <map>

#include "zjkit/error.hpp"
#include "zjkit/numeric.hpp"
#include "zjkit/section.hpp"
#include "zjkit/thompson.hpp"

namespace zjkit {
namespace {

bool class_at_most_two(const Subgroup& b) {
  return commutator_subgroup(derived_subgroup(b), b).is_trivial();
}

std::uint64_t require_odd_p_group(const Subgroup& g) {
  const auto p = prime_of_p_group(g);
  if (p == 2) throw EvenPrime("replacement requires an odd prime");
  return p;
}

// Frattini subgroup of a p-group: G' G^p.
Subgroup frattini(const Subgroup& g, std::uint64_t p) {
  std::vector<Elem> seed;
  const Subgroup d = derived_subgroup(g);
  seed.assign(d.generators().begin(), d.generators().end());
  for (Elem x : g.elements()) seed.push_back(g.table().power(x, static_cast<long long>(p)));
  return closure(g.parent(), seed);
}

// Lexicographically least maximal subgroup of the p-group g containing a.
// Maximal subgroups over A Phi(G) are preimages of hyperplanes of the
// elementary abelian quotient G / A Phi(G).
Subgroup least_maximal_containing(const Subgroup& g, const Subgroup& a, std::uint64_t p) {
  const Subgroup x = join(a, frattini(g, p));
  if (x.size() == g.size()) throw InternalError("replace: A Phi(G) is all of G");
  const Section sec = quotient(g, x);
  const GroupTable& q = *sec.quotient();
  const Subgroup whole = Subgroup::whole(sec.quotient());
  // basis by greedy extension, coordinates by enumeration
  std::vector<Elem> basis;
  Subgroup span = Subgroup::trivial(sec.quotient());
  for (Elem e = 1; e < q.order() && span.size() < q.order(); ++e) {
    if (span.contains(e)) continue;
    basis.push_back(e);
    span = extend(span, e);
  }
  const std::size_t k = basis.size();
  std::vector<std::vector<std::uint64_t>> coords(q.order());
  {
    std::vector<std::uint64_t> c(k, 0);
    for (std::uint64_t idx = 0; idx < ipow(p, static_cast<unsigned>(k)); ++idx) {
      std::uint64_t t = idx;
      Elem e = 0;
      for (std::size_t i = 0; i < k; ++i) {
        c[i] = t % p;
        t /= p;
        e = q.mul(e, q.power(basis[i], static_cast<long long>(c[i])));
      }
      coords[e] = c;
    }
  }
  std::optional<Subgroup> best;
  std::vector<std::uint64_t> f(k, 0);
  for (std::uint64_t idx = 1; idx < ipow(p, static_cast<unsigned>(k)); ++idx) {
    std::uint64_t t = idx;
    for (std::size_t i = 0; i < k; ++i) {
      f[i] = t % p;
      t /= p;
    }
    // one functional per line: first nonzero coefficient equal to 1
    const auto lead = std::find_if(f.begin(), f.end(), [](std::uint64_t v) { return v != 0; });
    if (*lead != 1) continue;
    ElementSet mask(g.table().order());
    for (Elem e : g.elements()) {
      const auto& c = coords[sec.project(e)];
      std::uint64_t s = 0;
      for (std::size_t i = 0; i < k; ++i) s += f[i] * c[i];
      if (s % p == 0) mask.insert(e);
    }
    Subgroup m = Subgroup::from_closed(g.parent(), std::move(mask));
    if (!best || m < *best) best = std::move(m);
  }
  return *best;
}

}  // namespace

HypothesisCheck check_replacement_hypotheses(const Subgroup& g, const Subgroup& a, const Subgroup& b) {
  require_odd_p_group(g);
  if (!a.is_subgroup_of(g) || !b.is_subgroup_of(g)) throw Error("replacement: A and B must lie in G");
  if (!is_abelian(a)) return {"A not abelian"};
  if (!class_at_most_two(b)) return {"class"};
  if (!derived_subgroup(b).is_subgroup_of(a)) return {"B' not in A"};
  if (!a.is_subgroup_of(normalizer(g, b))) return {"A does not normalize B"};
  if (b.is_subgroup_of(normalizer(g, a))) return {"B normalizes A"};
  return {};
}

ReplacementConclusions evaluate_conclusions(const Subgroup& g, const Subgroup& a, const Subgroup& b,
                                            const Subgroup& a_star) {
  ReplacementConclusions c;
  c.abelian = is_abelian(a_star);
  c.same_order = a_star.size() == a.size();
  c.meets_b_more = intersection(a, b).size() < intersection(a_star, b).size() &&
                   intersection(a, b).is_subgroup_of(a_star);
  c.in_normalizer_and_closure =
      a_star.is_subgroup_of(normalizer(g, a)) && a_star.is_subgroup_of(normal_closure(g, a));
  if (c.abelian) {
    const auto ra = rank_and_exponent(a);
    const auto rs = rank_and_exponent(a_star);
    c.exponent_and_rank = ra.exponent % rs.exponent == 0 && ra.rank <= rs.rank;
  }
  return c;
}

ReplacementResult replace(const Subgroup& g, const Subgroup& a, const Subgroup& b) {
  const auto p = require_odd_p_group(g);
  if (auto h = check_replacement_hypotheses(g, a, b); !h.holds()) throw HypothesisFailure(h.failed);

  ReplacementResult res;
  Subgroup cur_b = b;
  Subgroup scope = product_subgroup(a, b);
  for (;;) {
    if (res.trace.size() > log_p(g.size(), p))
      throw InternalError("replace: recursion deeper than log_p |G|");
    ReplacementStep step;
    step.scope = scope;
    step.maximal = least_maximal_containing(scope, a, p);
    const Subgroup mb = intersection(step.maximal, cur_b);
    const Subgroup na = normalizer(scope, a);
    if (!mb.is_subgroup_of(na)) {
      step.descended = true;
      res.trace.push_back(step);
      cur_b = mb;
      scope = step.maximal;  // M = A (M cap B)
      continue;
    }
    if (!(na == step.maximal)) throw InternalError("replace: M is not N(A) in the final step");
    const ElementSet outside = cur_b.mask() - step.maximal.mask();
    step.b = outside.first();
    const Subgroup ab = conjugate(a, step.b);
    step.h = product_subgroup(a, ab);
    step.z = intersection(a, ab);
    res.a_star = product_subgroup(intersection(step.h, cur_b), step.z);
    res.trace.push_back(step);
    break;
  }
  if (!evaluate_conclusions(g, a, b, res.a_star).all())
    throw InternalError("replace: a conclusion fails for the constructed A*");
  return res;
}

Subgroup commutator_segment(Elem b, const Subgroup& a) {
  const GroupTable& t = a.table();
  std::vector<Elem> seed;
  for (Elem x : a.elements()) seed.push_back(t.comm(b, x));
  return closure(a.parent(), seed);
}

HypothesisCheck check_segment_hypotheses(const Subgroup& g, const Subgroup& b, const Subgroup& a) {
  require_odd_p_group(g);
  if (!a.is_subgroup_of(g) || !b.is_subgroup_of(g)) throw Error("segment lemma: A and B must lie in G");
  if (product_set(b, a) != g.mask()) return {"G is not BA"};
  if (!is_normal_in(b, g)) return {"B not normal"};
  if (!derived_subgroup(b).is_subgroup_of(center(g))) return {"B' not central"};
  if (!is_abelian(a)) return {"A not abelian"};
  const Subgroup ba = commutator_subgroup(b, a);
  if (!commutator_subgroup(commutator_subgroup(ba, a), a).is_trivial()) return {"[B,A,A,A] nontrivial"};
  return {};
}

SegmentReport segment_lemma_check(const Subgroup& g, const Subgroup& b, const Subgroup& a) {
  SegmentReport rep;
  rep.hypotheses = check_segment_hypotheses(g, b, a);
  if (!rep.hypotheses.holds()) return rep;
  const GroupTable& t = g.table();
  std::vector<Elem> set;
  for (Elem x : b.elements()) {
    set.clear();
    for (Elem y : a.elements()) set.push_back(t.comm(x, y));
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    for (std::size_t i = 0; i < set.size() && !rep.witness; ++i)
      for (std::size_t j = i + 1; j < set.size(); ++j)
        if (t.mul(set[i], set[j]) != t.mul(set[j], set[i])) {
          rep.witness = x;
          break;
        }
    if (rep.witness) {
      rep.all_abelian = false;
      break;
    }
  }
  return rep;
}

Subgroup iterated_commutator(const Subgroup& x, Elem g, unsigned depth) {
  const GroupTable& t = x.table();
  Subgroup cur = x;
  for (unsigned i = 0; i < depth && !cur.is_trivial(); ++i) {
    std::vector<Elem> seed;
    for (Elem e : cur.elements()) seed.push_back(t.comm(e, g));
    cur = closure(x.parent(), seed);
  }
  return cur;
}

bool iterated_commutator_check(const Subgroup& x, Elem g, unsigned depth) {
  return iterated_commutator(x, g, depth).is_trivial();
}

}  // namespace zjkit
