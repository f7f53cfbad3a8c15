#pragma once
// Brute-force reference computations used by the tests. Everything here works
// on the raw multiplication table with sorted element vectors, sharing no code
// with the library beyond GroupTable::mul.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "zjkit/group_table.hpp"
#include "zjkit/subgroup.hpp"

namespace oracle {

using zjkit::Elem;
using zjkit::GroupTable;
using Set = std::vector<Elem>;  // sorted

inline Set sorted(Set s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline Set of(const zjkit::Subgroup& h) { return Set(h.elements().begin(), h.elements().end()); }

inline Elem inverse(const GroupTable& t, Elem x) {
  for (Elem y = 0; y < t.order(); ++y)
    if (t.mul(x, y) == 0) return y;
  return 0;
}

inline Elem conj(const GroupTable& t, Elem x, Elem g) { return t.mul(t.mul(inverse(t, g), x), g); }

inline Elem comm(const GroupTable& t, Elem x, Elem y) {
  return t.mul(t.mul(inverse(t, x), inverse(t, y)), t.mul(x, y));
}

inline Elem power(const GroupTable& t, Elem x, std::uint64_t k) {
  Elem r = 0;
  for (std::uint64_t i = 0; i < k; ++i) r = t.mul(r, x);
  return r;
}

inline std::uint64_t order_of(const GroupTable& t, Elem x) {
  std::uint64_t k = 1;
  for (Elem y = x; y != 0; y = t.mul(y, x)) ++k;
  return k;
}

/// Saturate the seed under multiplication (finite group: closure under
/// products is a subgroup).
inline Set close(const GroupTable& t, const Set& seed) {
  std::vector<char> in(t.order(), 0);
  Set out{0};
  in[0] = 1;
  for (Elem s : seed)
    if (!in[s]) in[s] = 1, out.push_back(s);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (Elem z : {t.mul(out[i], out[j]), t.mul(out[j], out[i])})
        if (!in[z]) in[z] = 1, out.push_back(z);
  return sorted(out);
}

inline Set with(Set s, Elem x) {
  s.push_back(x);
  return sorted(s);
}

/// Every subgroup of `ambient` (default: the whole table), found by closing
/// each known subgroup with each element until nothing new appears.
inline std::set<Set> subgroups(const GroupTable& t, const Set& ambient) {
  std::set<Set> found{Set{0}};
  std::vector<Set> frontier{Set{0}};
  while (!frontier.empty()) {
    std::vector<Set> next;
    for (const Set& h : frontier)
      for (Elem x : ambient) {
        if (std::binary_search(h.begin(), h.end(), x)) continue;
        Set c = close(t, with(h, x));
        if (found.insert(c).second) next.push_back(c);
      }
    frontier = std::move(next);
  }
  return found;
}

inline bool commute(const GroupTable& t, Elem a, Elem b) { return t.mul(a, b) == t.mul(b, a); }

/// Abelian subgroups of `ambient`, closing abelian subgroups with elements
/// that commute with every generator so far.
inline std::set<Set> abelian_subgroups(const GroupTable& t, const Set& ambient) {
  std::set<Set> found{Set{0}};
  std::vector<Set> frontier{Set{0}};
  while (!frontier.empty()) {
    std::vector<Set> next;
    for (const Set& a : frontier)
      for (Elem x : ambient) {
        if (std::binary_search(a.begin(), a.end(), x)) continue;
        if (!std::all_of(a.begin(), a.end(), [&](Elem y) { return commute(t, x, y); })) continue;
        Set c = close(t, with(a, x));
        if (found.insert(c).second) next.push_back(c);
      }
    frontier = std::move(next);
  }
  return found;
}

inline unsigned log_base(std::uint64_t n, std::uint64_t p) {
  unsigned k = 0;
  while (n > 1) n /= p, ++k;
  return k;
}

/// Rank of an abelian p-group through |A / A^p|.
inline unsigned rank_abelian(const GroupTable& t, const Set& a, std::uint64_t p) {
  Set pth;
  for (Elem x : a) pth.push_back(power(t, x, p));
  return log_base(a.size() / sorted(pth).size(), p);
}

inline bool exponent_divides(const GroupTable& t, const Set& a, std::uint64_t n) {
  return std::all_of(a.begin(), a.end(), [&](Elem x) { return power(t, x, n) == 0; });
}

inline bool is_normal(const GroupTable& t, const Set& k, const Set& h) {
  for (Elem g : h)
    for (Elem x : k)
      if (!std::binary_search(k.begin(), k.end(), conj(t, x, g))) return false;
  return true;
}

inline Set centralizer(const GroupTable& t, const Set& ambient, const Set& s) {
  Set out;
  for (Elem g : ambient)
    if (std::all_of(s.begin(), s.end(), [&](Elem x) { return commute(t, g, x); })) out.push_back(g);
  return out;
}

inline Set normalizer(const GroupTable& t, const Set& ambient, const Set& s) {
  Set out;
  for (Elem g : ambient) {
    Set c;
    for (Elem x : s) c.push_back(conj(t, x, g));
    if (sorted(c) == s) out.push_back(g);
  }
  return out;
}

inline Set conjugate(const GroupTable& t, const Set& s, Elem g) {
  Set c;
  for (Elem x : s) c.push_back(conj(t, x, g));
  return sorted(c);
}

inline bool subset(const Set& a, const Set& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

inline Set all_elements(const GroupTable& t) {
  Set s(t.order());
  for (Elem i = 0; i < t.order(); ++i) s[i] = i;
  return s;
}

// The three families of abelian subgroups of x, by order, rank and
// elementary order, each with its maximal score.
struct Families {
  std::set<Set> o, r, e;
  std::uint64_t d_o = 0, d_r = 0, d_e = 0;
};

inline Families families(const GroupTable& t, const Set& x, std::uint64_t p) {
  Families f;
  const auto abelian = abelian_subgroups(t, x);
  for (const auto& a : abelian) {
    f.d_o = std::max<std::uint64_t>(f.d_o, a.size());
    f.d_r = std::max<std::uint64_t>(f.d_r, rank_abelian(t, a, p));
    if (exponent_divides(t, a, p)) f.d_e = std::max<std::uint64_t>(f.d_e, a.size());
  }
  for (const auto& a : abelian) {
    if (a.size() == f.d_o) f.o.insert(a);
    if (rank_abelian(t, a, p) == f.d_r) f.r.insert(a);
    if (a.size() == f.d_e && exponent_divides(t, a, p)) f.e.insert(a);
  }
  return f;
}

}  // namespace oracle
