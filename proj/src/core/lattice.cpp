#include "zjkit/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "zjkit/config.hpp"
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

constexpr std::size_t kCacheBudget = 400000;  // cached subgroups per thread

struct LatticeCache {
  std::unordered_map<Key, SubgroupList, KeyHash> map;
  std::size_t held = 0;
};

LatticeCache& cache() {
  thread_local LatticeCache c;
  return c;
}

// One element per cyclic subgroup of prime-power order (the least generator).
std::vector<Elem> prime_power_cyclic_reps(const Subgroup& x) {
  const GroupTable& t = x.table();
  ElementSet covered(t.order());
  std::vector<Elem> reps;
  for (Elem e : x.elements()) {
    if (e == 0 || covered.contains(e)) continue;
    const auto ord = t.element_order(e);
    if (!prime_of_power(ord)) continue;
    reps.push_back(e);
    // mark the other generators of <e>
    Elem y = e;
    for (std::uint32_t k = 1; k < ord; ++k) {
      if (std::gcd(k, ord) == 1) covered.insert(y);
      y = t.mul(y, e);
    }
  }
  return reps;
}

std::vector<Subgroup> compute_lattice(const Subgroup& x) {
  const GroupTable& t = x.table();
  const bool solvable = is_solvable(x);
  const auto cands = prime_power_cyclic_reps(x);

  std::unordered_set<ElementSet, ElementSetHash> seen;
  std::vector<Subgroup> all;
  std::vector<Subgroup> layer{Subgroup::trivial(x.parent())};
  seen.insert(layer.front().mask());
  all.push_back(layer.front());

  while (!layer.empty()) {
    std::vector<Subgroup> next;
    for (const Subgroup& h : layer) {
      if (solvable) {
        // Every subgroup of a solvable group has a normal maximal subgroup of
        // prime index, so adjoining normalizing elements of prime-power order
        // with q-th power inside h reaches every subgroup.
        const Subgroup n = normalizer(x, h);
        for (Elem c : cands) {
          if (h.contains(c) || !n.contains(c)) continue;
          const auto q = prime_of_power(t.element_order(c)).value();
          if (!h.contains(t.power(c, static_cast<long long>(q)))) continue;
          ElementSet mask = h.mask();
          Elem ci = 0;
          for (std::uint64_t i = 1; i < q; ++i) {
            ci = t.mul(ci, c);
            for (Elem e : h.elements()) mask.insert(t.mul(e, ci));
          }
          if (!seen.insert(mask).second) continue;
          std::vector<Elem> gens(h.generators().begin(), h.generators().end());
          gens.push_back(c);
          Subgroup k = Subgroup::from_closed(x.parent(), std::move(mask), std::move(gens));
          next.push_back(k);
          all.push_back(k);
        }
      } else {
        for (Elem c : cands) {
          if (h.contains(c)) continue;
          Subgroup k = extend(h, c);
          if (!seen.insert(k.mask()).second) continue;
          next.push_back(k);
          all.push_back(k);
        }
      }
    }
    layer = std::move(next);
  }
  std::sort(all.begin(), all.end(), size_then_lex_less);
  return all;
}

}  // namespace

SubgroupList subgroups_of(const Subgroup& x) {
  auto& c = cache();
  Key key{x.table().id(), x.mask()};
  if (auto it = c.map.find(key); it != c.map.end()) return it->second;
  auto list = std::make_shared<const std::vector<Subgroup>>(compute_lattice(x));
  if (c.held + list->size() > kCacheBudget) {
    c.map.clear();
    c.held = 0;
  }
  c.held += list->size();
  c.map.emplace(std::move(key), list);
  return list;
}

std::vector<Subgroup> all_subgroups(const GroupPtr& g) {
  require_within_bound(g->order(), "all_subgroups");
  auto list = subgroups_of(Subgroup::whole(g));
  return *list;
}

std::vector<Subgroup> normal_subgroups_of(const Subgroup& x) {
  std::vector<Subgroup> out;
  for (const Subgroup& s : *subgroups_of(x))
    if (is_normal_in(s, x)) out.push_back(s);
  return out;
}

std::vector<Subgroup> maximal_subgroups_of(const Subgroup& x) {
  auto subs = subgroups_of(x);
  std::vector<Subgroup> proper;
  for (const Subgroup& s : *subs)
    if (s.size() < x.size()) proper.push_back(s);
  std::vector<Subgroup> out;
  for (std::size_t i = 0; i < proper.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = i + 1; j < proper.size(); ++j) {
      if (proper[j].size() > proper[i].size() && proper[i].is_subgroup_of(proper[j])) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(proper[i]);
  }
  return out;
}

void clear_lattice_cache() {
  cache().map.clear();
  cache().held = 0;
}

}  // namespace zjkit
