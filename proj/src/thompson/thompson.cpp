#include "zjkit/thompson.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "zjkit/error.hpp"
#include "zjkit/numeric.hpp"

namespace zjkit {
namespace {

struct Key {
  std::uint64_t table;
  ElementSet mask;
  friend bool operator==(const Key&, const Key&) = default;
};
struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept { return k.mask.hash() ^ (k.table * 0x9e37u); }
};

struct AbelianCache {
  std::unordered_map<Key, SubgroupList, KeyHash> map;
  std::size_t held = 0;
};

AbelianCache& abelian_cache() {
  thread_local AbelianCache c;
  return c;
}

constexpr std::size_t kCacheBudget = 400000;

std::vector<Elem> cyclic_reps(const Subgroup& x) {
  const GroupTable& t = x.table();
  ElementSet covered(t.order());
  std::vector<Elem> reps;
  for (Elem e : x.elements()) {
    if (e == 0 || covered.contains(e)) continue;
    reps.push_back(e);
    const auto ord = t.element_order(e);
    Elem y = e;
    for (std::uint32_t k = 1; k < ord; ++k) {
      if (std::gcd(k, ord) == 1) covered.insert(y);
      y = t.mul(y, e);
    }
  }
  return reps;
}

std::vector<Subgroup> compute_abelian(const Subgroup& x, std::uint64_t p) {
  const GroupTable& t = x.table();
  const auto reps = cyclic_reps(x);
  std::unordered_set<ElementSet, ElementSetHash> seen;
  std::vector<Subgroup> all{Subgroup::trivial(x.parent())};
  seen.insert(all.front().mask());
  std::vector<Subgroup> layer = all;
  while (!layer.empty()) {
    std::vector<Subgroup> next;
    for (const Subgroup& h : layer) {
      const Subgroup c = centralizer(x, h);
      for (Elem r : reps) {
        if (h.contains(r) || !c.contains(r)) continue;
        if (!h.contains(t.power(r, static_cast<long long>(p)))) continue;
        ElementSet mask = h.mask();
        Elem ri = 0;
        for (std::uint64_t i = 1; i < p; ++i) {
          ri = t.mul(ri, r);
          for (Elem e : h.elements()) mask.insert(t.mul(e, ri));
        }
        if (!seen.insert(mask).second) continue;
        std::vector<Elem> gens(h.generators().begin(), h.generators().end());
        gens.push_back(r);
        Subgroup k = Subgroup::from_closed(x.parent(), std::move(mask), std::move(gens));
        next.push_back(k);
        all.push_back(std::move(k));
      }
    }
    layer = std::move(next);
  }
  std::sort(all.begin(), all.end(), size_then_lex_less);
  return all;
}

std::uint64_t measure(const Subgroup& a, AbelianKind kind) {
  switch (kind) {
    case AbelianKind::Order:
    case AbelianKind::Elementary:
      return a.size();
    case AbelianKind::Rank:
      return rank_and_exponent(a).rank;
  }
  return 0;
}

}  // namespace

const char* kind_letter(AbelianKind kind) {
  switch (kind) {
    case AbelianKind::Order: return "o";
    case AbelianKind::Rank: return "r";
    case AbelianKind::Elementary: return "e";
  }
  return "?";
}

std::uint64_t prime_of_p_group(const Subgroup& x) {
  if (x.size() == 1) return 0;
  auto p = prime_of_power(x.size());
  if (!p) throw NotPGroup("order " + std::to_string(x.size()) + " is not a prime power");
  return *p;
}

SubgroupList abelian_subgroups(const Subgroup& x) {
  const auto p = prime_of_p_group(x);
  auto& c = abelian_cache();
  Key key{x.table().id(), x.mask()};
  if (auto it = c.map.find(key); it != c.map.end()) return it->second;
  SubgroupList list;
  if (p == 0)
    list = std::make_shared<const std::vector<Subgroup>>(std::vector<Subgroup>{x});
  else
    list = std::make_shared<const std::vector<Subgroup>>(compute_abelian(x, p));
  if (c.held + list->size() > kCacheBudget) {
    c.map.clear();
    c.held = 0;
  }
  c.held += list->size();
  c.map.emplace(std::move(key), list);
  return list;
}

void clear_abelian_cache() {
  abelian_cache().map.clear();
  abelian_cache().held = 0;
}

bool is_elementary_abelian(const Subgroup& a) {
  if (!is_abelian(a)) return false;
  if (a.size() == 1) return true;
  const auto p = prime_of_power(a.size());
  if (!p) return false;
  for (Elem e : a.elements())
    if (e != 0 && a.table().element_order(e) != *p) return false;
  return true;
}

AbelianFamily abelian_family(const Subgroup& x, AbelianKind kind) {
  AbelianFamily fam{kind, x, {}, 0};
  auto subs = abelian_subgroups(x);
  std::vector<const Subgroup*> pool;
  for (const Subgroup& a : *subs)
    if (kind != AbelianKind::Elementary || is_elementary_abelian(a)) pool.push_back(&a);
  std::vector<std::uint64_t> scores;
  for (const Subgroup* a : pool) scores.push_back(measure(*a, kind));
  fam.score = scores.empty() ? 0 : *std::max_element(scores.begin(), scores.end());
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (scores[i] == fam.score) fam.members.push_back(*pool[i]);
  return fam;
}

Subgroup thompson_subgroup(const Subgroup& x, AbelianKind kind) {
  const auto fam = abelian_family(x, kind);
  // members are size-ordered, so a single member or the whole host ends the join early
  Subgroup j = Subgroup::trivial(x.parent());
  for (auto it = fam.members.rbegin(); it != fam.members.rend(); ++it) {
    if (it->is_subgroup_of(j)) continue;
    j = join(j, *it);
    if (j.size() == x.size()) break;
  }
  return j;
}

Subgroup omega(const Subgroup& k) {
  const auto p = prime_of_p_group(k);
  if (p == 0) return k;
  std::vector<Elem> seed;
  for (Elem e : k.elements())
    if (k.table().element_order(e) == p) seed.push_back(e);
  return closure(k.parent(), seed);
}

RankExponent rank_and_exponent(const Subgroup& a) {
  if (!is_abelian(a)) throw NotAbelian("rank_and_exponent: subgroup is not abelian");
  const GroupTable& t = a.table();
  RankExponent out;
  std::uint64_t lcm = 1;
  for (Elem e : a.elements()) lcm = std::lcm(lcm, static_cast<std::uint64_t>(t.element_order(e)));
  out.exponent = lcm;
  for (auto q : prime_divisors(a.size())) {
    // the elements of order dividing q form the largest elementary abelian q-subgroup
    std::size_t count = 0;
    for (Elem e : a.elements())
      if (t.element_order(e) == 1 || t.element_order(e) == q) ++count;
    out.rank = std::max(out.rank, log_p(count, q));
  }
  return out;
}

unsigned rank_by_generators(const Subgroup& a) {
  if (!is_abelian(a)) throw NotAbelian("rank_by_generators: subgroup is not abelian");
  const GroupTable& t = a.table();
  unsigned rank = 0;
  for (auto q : prime_divisors(a.size())) {
    ElementSet powers(t.order());
    std::size_t part = 0;
    for (Elem e : a.elements()) {
      if (!prime_of_power(t.element_order(e)).has_value() && e != 0) continue;
      if (e != 0 && *prime_of_power(t.element_order(e)) != q) continue;
      ++part;
      powers.insert(t.power(e, static_cast<long long>(q)));
    }
    rank = std::max(rank, log_p(part / powers.count(), q));
  }
  return rank;
}

MonotonicityReport j_monotonicity_check(const Subgroup& p, const Subgroup& r, AbelianKind kind) {
  MonotonicityReport rep;
  const auto fam = abelian_family(p, kind);
  for (const Subgroup& a : fam.members)
    if (a.is_subgroup_of(r)) {
      rep.member_inside = true;
      break;
    }
  const Subgroup jp = thompson_subgroup(p, kind);
  const Subgroup jr = thompson_subgroup(r, kind);
  if (rep.member_inside) rep.containment_holds = jr.is_subgroup_of(jp);
  rep.j_equal = jp == jr;
  rep.j_inside = jp.is_subgroup_of(r);
  rep.equivalence_holds = rep.j_equal == rep.j_inside;
  return rep;
}

Subgroup zj_subgroup(const Subgroup& x, AbelianKind kind) {
  const Subgroup z = center(thompson_subgroup(x, kind));
  return kind == AbelianKind::Order ? z : omega(z);
}

bool zj_in_every_member(const Subgroup& x, AbelianKind kind) {
  const Subgroup z = zj_subgroup(x, kind);
  const auto fam = abelian_family(x, kind);
  return std::all_of(fam.members.begin(), fam.members.end(),
                     [&](const Subgroup& a) { return z.is_subgroup_of(a); });
}

}  // namespace zjkit
