#include "zjkit/subgroup.hpp"

#include <algorithm>
#include <numeric>

#include "zjkit/error.hpp"

namespace zjkit {
namespace {

// Breadth-first closure: multiply every element (from `start` on) by every
// generator until nothing new appears.
void close_in_place(const GroupTable& t, ElementSet& mask, std::vector<Elem>& elems,
                    std::span<const Elem> gens, std::size_t start = 0) {
  for (std::size_t i = start; i < elems.size(); ++i) {
    const Elem e = elems[i];
    for (Elem s : gens) {
      const Elem v = t.mul(e, s);
      if (!mask.contains(v)) {
        mask.insert(v);
        elems.push_back(v);
      }
    }
  }
}

std::vector<Elem> greedy_generators(const GroupTable& t, std::span<const Elem> elements) {
  // Prefer high-order elements: fewer generators for the same subgroup.
  std::vector<Elem> cand(elements.begin(), elements.end());
  std::stable_sort(cand.begin(), cand.end(), [&](Elem a, Elem b) {
    return t.element_order(a) > t.element_order(b);
  });
  ElementSet mask(t.order());
  mask.insert(0);
  std::vector<Elem> elems{0};
  std::vector<Elem> gens;
  for (Elem x : cand) {
    if (mask.contains(x)) continue;
    gens.push_back(x);
    close_in_place(t, mask, elems, gens, 0);
    if (elems.size() == elements.size()) break;
  }
  return gens;
}

Subgroup make(const GroupPtr& g, ElementSet mask, std::vector<Elem> gens) {
  return Subgroup::from_closed(g, std::move(mask), std::move(gens));
}

}  // namespace

Subgroup Subgroup::whole(GroupPtr g) {
  const auto n = g->order();
  std::vector<Elem> gens(g->generators().begin(), g->generators().end());
  return from_closed(std::move(g), ElementSet::full(n), std::move(gens));
}

Subgroup Subgroup::trivial(GroupPtr g) {
  ElementSet m(g->order());
  m.insert(0);
  return from_closed(std::move(g), std::move(m), {});
}

Subgroup Subgroup::from_closed(GroupPtr g, ElementSet mask, std::vector<Elem> gens) {
  auto impl = std::make_shared<Impl>();
  impl->parent = std::move(g);
  impl->elements = mask.to_vector();
  impl->mask = std::move(mask);
  if (!gens.empty() || impl->elements.size() == 1) {
    impl->gens = std::move(gens);
    std::call_once(impl->gens_once, [] {});
  }
  return Subgroup(std::move(impl));
}

std::span<const Elem> Subgroup::generators() const {
  std::call_once(impl_->gens_once,
                 [this] { impl_->gens = greedy_generators(*impl_->parent, impl_->elements); });
  return impl_->gens;
}

std::strong_ordering operator<=>(const Subgroup& a, const Subgroup& b) noexcept {
  const auto& x = a.impl_->elements;
  const auto& y = b.impl_->elements;
  return std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end());
}

bool size_then_lex_less(const Subgroup& a, const Subgroup& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Subgroup closure(const GroupPtr& g, std::span<const Elem> seed) {
  const GroupTable& t = *g;
  ElementSet mask(t.order());
  mask.insert(0);
  std::vector<Elem> elems{0};
  std::vector<Elem> gens;
  for (Elem s : seed) {
    if (s >= t.order()) throw Error("closure: element index out of range");
    if (mask.contains(s)) continue;
    gens.push_back(s);
    close_in_place(t, mask, elems, gens, 0);
  }
  return make(g, std::move(mask), std::move(gens));
}

Subgroup closure(const GroupPtr& g, const ElementSet& seed) {
  auto v = seed.to_vector();
  return closure(g, std::span<const Elem>(v));
}

Subgroup extend(const Subgroup& h, Elem x) {
  if (h.contains(x)) return h;
  const GroupTable& t = h.table();
  ElementSet mask = h.mask();
  std::vector<Elem> elems(h.elements().begin(), h.elements().end());
  std::vector<Elem> gens(h.generators().begin(), h.generators().end());
  gens.push_back(x);
  close_in_place(t, mask, elems, gens, 0);
  return make(h.parent(), std::move(mask), std::move(gens));
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  Subgroup r = a;
  for (Elem x : b.generators()) r = extend(r, x);
  return r;
}

Subgroup intersection(const Subgroup& a, const Subgroup& b) {
  return make(a.parent(), a.mask() & b.mask(), {});
}

ElementSet product_set(const Subgroup& a, const Subgroup& b) {
  const GroupTable& t = a.table();
  ElementSet out(t.order());
  std::vector<Elem> buf(b.size());
  for (Elem x : a.elements()) {
    simd::active().gather_u32(buf.data(), t.row(x).data(), b.elements().data(), b.size());
    for (Elem y : buf) out.insert(y);
  }
  return out;
}

Subgroup product_subgroup(const Subgroup& a, const Subgroup& b) {
  ElementSet s = product_set(a, b);
  const std::size_t expect = a.size() * b.size() / intersection(a, b).size();
  Subgroup j = join(a, b);
  if (j.size() != expect || !(j.mask() == s))
    throw Error("product_subgroup: AB is not a subgroup");
  return j;
}

bool is_abelian(const Subgroup& h) {
  const GroupTable& t = h.table();
  auto gens = h.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (t.mul(gens[i], gens[j]) != t.mul(gens[j], gens[i])) return false;
  return true;
}

bool is_normal_in(const Subgroup& k, const Subgroup& h) {
  if (!k.is_subgroup_of(h)) return false;
  const GroupTable& t = h.table();
  for (Elem g : h.generators())
    for (Elem x : k.generators())
      if (!k.contains(t.conj(x, g))) return false;
  return true;
}

std::uint64_t exponent(const Subgroup& h) {
  std::uint64_t e = 1;
  for (Elem x : h.elements()) e = std::lcm(e, static_cast<std::uint64_t>(h.table().element_order(x)));
  return e;
}

Subgroup centralizer(const Subgroup& ambient, std::span<const Elem> s) {
  const GroupTable& t = ambient.table();
  ElementSet mask(t.order());
  for (Elem g : ambient.elements()) {
    bool ok = true;
    for (Elem x : s) {
      if (t.mul(g, x) != t.mul(x, g)) {
        ok = false;
        break;
      }
    }
    if (ok) mask.insert(g);
  }
  return make(ambient.parent(), std::move(mask), {});
}

Subgroup centralizer(const Subgroup& ambient, const Subgroup& s) {
  return centralizer(ambient, s.generators());
}

Subgroup center(const Subgroup& h) { return centralizer(h, h); }

Subgroup normalizer(const Subgroup& ambient, const Subgroup& s) {
  const GroupTable& t = ambient.table();
  auto gens = s.generators();
  ElementSet mask(t.order());
  for (Elem g : ambient.elements()) {
    bool ok = true;
    for (Elem x : gens) {
      if (!s.contains(t.conj(x, g))) {
        ok = false;
        break;
      }
    }
    if (ok) mask.insert(g);
  }
  return make(ambient.parent(), std::move(mask), {});
}

Subgroup set_stabilizer(const Subgroup& ambient, const ElementSet& s) {
  const GroupTable& t = ambient.table();
  auto elems = s.to_vector();
  std::vector<Elem> img(elems.size());
  ElementSet mask(t.order());
  for (Elem g : ambient.elements()) {
    conjugate_elements(t, elems, g, img);
    bool ok = true;
    for (Elem y : img) {
      if (!s.contains(y)) {
        ok = false;
        break;
      }
    }
    if (ok) mask.insert(g);
  }
  return make(ambient.parent(), std::move(mask), {});
}

Subgroup normal_closure(const Subgroup& ambient, std::span<const Elem> s) {
  const GroupTable& t = ambient.table();
  ElementSet mask(t.order());
  mask.insert(0);
  std::vector<Elem> elems{0};
  std::vector<Elem> gens;
  std::vector<Elem> pending(s.begin(), s.end());
  auto amb_gens = ambient.generators();
  while (!pending.empty()) {
    Elem x = pending.back();
    pending.pop_back();
    if (mask.contains(x)) continue;
    gens.push_back(x);
    close_in_place(t, mask, elems, gens, 0);
    for (Elem g : amb_gens) pending.push_back(t.conj(x, g));
  }
  return make(ambient.parent(), std::move(mask), std::move(gens));
}

Subgroup normal_closure(const Subgroup& ambient, const Subgroup& s) {
  return normal_closure(ambient, s.generators());
}

Subgroup commutator_subgroup(const Subgroup& x, const Subgroup& y) {
  // [X, Y] is the normal closure in <X, Y> of the commutators of generators.
  const GroupTable& t = x.table();
  std::vector<Elem> seeds;
  for (Elem a : x.generators())
    for (Elem b : y.generators()) {
      Elem c = t.comm(a, b);
      if (c != 0) seeds.push_back(c);
    }
  if (seeds.empty()) return Subgroup::trivial(x.parent());
  return normal_closure(join(x, y), seeds);
}

Subgroup derived_subgroup(const Subgroup& h) { return commutator_subgroup(h, h); }

std::optional<unsigned> nilpotency_class(const Subgroup& h) {
  unsigned c = 0;
  Subgroup gamma = h;
  while (!gamma.is_trivial()) {
    Subgroup next = commutator_subgroup(gamma, h);
    if (next.size() == gamma.size()) return std::nullopt;
    gamma = next;
    ++c;
  }
  return c;
}

bool is_solvable(const Subgroup& h) {
  Subgroup d = h;
  while (!d.is_trivial()) {
    Subgroup next = derived_subgroup(d);
    if (next.size() == d.size()) return false;
    d = next;
  }
  return true;
}

ElementSet conjugate_set(const GroupTable& t, const ElementSet& s, Elem g) {
  auto elems = s.to_vector();
  std::vector<Elem> img(elems.size());
  conjugate_elements(t, elems, g, img);
  return ElementSet::of(t.order(), img);
}

Subgroup conjugate(const Subgroup& s, Elem g) {
  const GroupTable& t = s.table();
  std::vector<Elem> img(s.size());
  conjugate_elements(t, s.elements(), g, img);
  std::vector<Elem> gens(s.generators().size());
  conjugate_elements(t, s.generators(), g, gens);
  return make(s.parent(), ElementSet::of(t.order(), img), std::move(gens));
}

ConjugacyClasses conjugacy_classes(const Subgroup& ambient) {
  const GroupTable& t = ambient.table();
  ConjugacyClasses cc;
  cc.class_of.assign(t.order(), -1);
  auto gens = ambient.generators();
  for (Elem x : ambient.elements()) {
    if (cc.class_of[x] != -1) continue;
    const int id = static_cast<int>(cc.classes.size());
    std::vector<Elem> orbit{x};
    cc.class_of[x] = id;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (Elem g : gens) {
        Elem y = t.conj(orbit[i], g);
        if (cc.class_of[y] == -1) {
          cc.class_of[y] = id;
          orbit.push_back(y);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    cc.classes.push_back(std::move(orbit));
  }
  return cc;
}

}  // namespace zjkit
