#include "zjkit/sylow.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "zjkit/error.hpp"
#include "zjkit/numeric.hpp"
#include "zjkit/section.hpp"

namespace zjkit {
namespace {

// For equal-size sets, lexicographic order on the sorted sequences is decided
// by the least element of the symmetric difference.
bool lex_less_same_size(const ElementSet& a, const ElementSet& b) {
  auto wa = a.words();
  auto wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    const auto x = wa[i] ^ wb[i];
    if (x) return (wa[i] >> std::countr_zero(x)) & 1u;
  }
  return false;
}

Subgroup sylow_by_extension(const Subgroup& h, std::uint64_t p) {
  const GroupTable& t = h.table();
  Subgroup s = Subgroup::trivial(h.parent());
  const std::uint64_t target = p_part(h.size(), p);
  std::vector<Elem> p_elems;
  for (Elem x : h.elements())
    if (x != 0 && prime_of_power(t.element_order(x)) == p) p_elems.push_back(x);

  while (s.size() < target) {
    const Subgroup n = normalizer(h, s);
    Elem found = 0;
    for (Elem x : p_elems) {
      if (!s.contains(x) && n.contains(x) && s.contains(t.power(x, static_cast<long long>(p)))) {
        found = x;
        break;
      }
    }
    if (found == 0) throw InternalError("sylow: extension stalled below the Sylow order");
    ElementSet mask = s.mask();
    Elem xi = 0;
    for (std::uint64_t i = 1; i < p; ++i) {
      xi = t.mul(xi, found);
      for (Elem e : s.elements()) mask.insert(t.mul(e, xi));
    }
    std::vector<Elem> gens(s.generators().begin(), s.generators().end());
    gens.push_back(found);
    s = Subgroup::from_closed(h.parent(), std::move(mask), std::move(gens));
  }
  return s;
}

std::vector<ElementSet> conjugate_masks(const Subgroup& h, const Subgroup& s) {
  const GroupTable& t = h.table();
  std::unordered_set<ElementSet, ElementSetHash> seen;
  std::vector<ElementSet> out;
  for (Elem g : h.elements()) {
    ElementSet m = conjugate_set(t, s.mask(), g);
    if (seen.insert(m).second) out.push_back(std::move(m));
  }
  return out;
}

// Union of elements x whose normal closure in h satisfies `keep`.
template <class Pred>
Subgroup core_by_classes(const Subgroup& h, Pred keep) {
  const auto cls = conjugacy_classes(h);
  std::vector<Elem> seed;
  for (const auto& c : cls.classes) {
    const Subgroup ncl = normal_closure(h, std::span<const Elem>(c.data(), 1));
    if (keep(ncl)) seed.insert(seed.end(), c.begin(), c.end());
  }
  return closure(h.parent(), seed);
}

}  // namespace

bool is_p_group(const Subgroup& h, std::uint64_t p) {
  return h.size() == p_part(h.size(), p);
}

bool is_p_prime_group(const Subgroup& h, std::uint64_t p) { return h.size() % p != 0; }

Subgroup sylow(const Subgroup& h, std::uint64_t p) {
  if (!is_prime(p)) throw Error("sylow: p must be prime");
  const Subgroup s = sylow_by_extension(h, p);
  if (s.size() == 1 || s.size() == h.size()) return s;
  const auto masks = conjugate_masks(h, s);
  const ElementSet* best = &masks.front();
  for (const auto& m : masks)
    if (lex_less_same_size(m, *best)) best = &m;
  if (*best == s.mask()) return s;
  return Subgroup::from_closed(h.parent(), *best);
}

Subgroup sylow(const GroupPtr& g, std::uint64_t p) { return sylow(Subgroup::whole(g), p); }

std::vector<Subgroup> all_sylows(const Subgroup& h, std::uint64_t p) {
  const Subgroup s = sylow(h, p);
  std::vector<Subgroup> out;
  for (auto& m : conjugate_masks(h, s)) out.push_back(Subgroup::from_closed(h.parent(), std::move(m)));
  std::sort(out.begin(), out.end());
  return out;
}

Subgroup p_core(const Subgroup& h, std::uint64_t p) {
  return core_by_classes(h, [p](const Subgroup& n) { return is_p_group(n, p); });
}

Subgroup p_prime_core(const Subgroup& h, std::uint64_t p) {
  return core_by_classes(h, [p](const Subgroup& n) { return is_p_prime_group(n, p); });
}

Subgroup p_prime_p_core(const Subgroup& h, std::uint64_t p) {
  const Subgroup k = p_prime_core(h, p);
  const Section sec = quotient(h, k);
  const Subgroup op = p_core(Subgroup::whole(sec.quotient()), p);
  return sec.preimage(op);
}

Elem conjugate_into(const Subgroup& ambient, const Subgroup& v, const Subgroup& p) {
  const GroupTable& t = ambient.table();
  for (Elem x : ambient.elements()) {
    bool ok = true;
    for (Elem gen : v.generators()) {
      if (!p.contains(t.conj(gen, x))) {
        ok = false;
        break;
      }
    }
    if (ok) return x;
  }
  throw NotPSubgroup("conjugate_into: no conjugate of V lies in P");
}

std::vector<Elem> all_conjugators_into(const Subgroup& ambient, const Subgroup& v,
                                       const Subgroup& p) {
  const GroupTable& t = ambient.table();
  std::vector<Elem> out;
  for (Elem x : ambient.elements()) {
    bool ok = true;
    for (Elem gen : v.generators()) {
      if (!p.contains(t.conj(gen, x))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(x);
  }
  return out;
}

}  // namespace zjkit
