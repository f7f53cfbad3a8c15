#include "zjkit/construct.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "zjkit/config.hpp"
#include "zjkit/error.hpp"
#include "zjkit/numeric.hpp"

namespace zjkit {
namespace {

using nlohmann::json;

constexpr Elem kNoImageLocal = std::numeric_limits<Elem>::max();

GroupPtr make_table(std::string name, std::size_t n, std::vector<Elem> mul, std::vector<Elem> gens) {
  return std::make_shared<const GroupTable>(std::move(name), n, std::move(mul), std::move(gens));
}

GroupPtr renamed(const GroupPtr& g, std::string name) {
  const auto n = g->order();
  std::vector<Elem> mul;
  mul.reserve(n * n);
  for (Elem a = 0; a < n; ++a) {
    auto r = g->row(a);
    mul.insert(mul.end(), r.begin(), r.end());
  }
  return make_table(std::move(name), n, std::move(mul),
                    std::vector<Elem>(g->generators().begin(), g->generators().end()));
}

// Extend gens -> images to a homomorphism n -> n by breadth-first search over
// words in gens. nullopt when the assignment is inconsistent or not bijective.
std::optional<std::vector<Elem>> extend_automorphism(const GroupTable& n, std::span<const Elem> gens,
                                                     std::span<const Elem> images) {
  std::vector<Elem> map(n.order(), kNoImageLocal);
  std::vector<char> used(n.order(), 0);
  map[0] = 0;
  used[0] = 1;
  std::vector<Elem> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Elem e = queue[i];
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const Elem v = n.mul(e, gens[j]);
      const Elem w = n.mul(map[e], images[j]);
      if (map[v] == kNoImageLocal) {
        if (used[w]) return std::nullopt;
        map[v] = w;
        used[w] = 1;
        queue.push_back(v);
      } else if (map[v] != w) {
        return std::nullopt;
      }
    }
  }
  if (queue.size() != n.order()) return std::nullopt;
  return map;
}

std::uint64_t factorial(unsigned n) {
  std::uint64_t f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

void require_prime(std::uint64_t p, const char* what) {
  if (!is_prime(p)) throw Error(std::string(what) + ": p must be prime");
}

}  // namespace

GroupPtr cyclic(std::uint64_t n) {
  if (n == 0) throw Error("cyclic: order must be positive");
  require_within_bound(n, "cyclic");
  std::vector<Elem> mul(n * n);
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b) mul[a * n + b] = static_cast<Elem>((a + b) % n);
  std::vector<Elem> gens;
  if (n > 1) gens.push_back(1);
  return make_table("Z" + std::to_string(n), n, std::move(mul), std::move(gens));
}

GroupPtr abelian(const std::vector<std::uint64_t>& invariants) {
  if (invariants.empty()) return cyclic(1);
  GroupPtr g = cyclic(invariants.front());
  for (std::size_t i = 1; i < invariants.size(); ++i) g = direct_product(g, cyclic(invariants[i]));
  return g;
}

GroupPtr elementary_abelian(std::uint64_t p, unsigned k) {
  require_prime(p, "elementary_abelian");
  return abelian(std::vector<std::uint64_t>(k, p));
}

GroupPtr dihedral(std::uint64_t n) {
  if (n < 1) throw Error("dihedral: n must be positive");
  const std::uint64_t order = 2 * n;
  require_within_bound(order, "dihedral");
  // r^i s^j at index i + n j
  std::vector<Elem> mul(order * order);
  for (std::uint64_t x = 0; x < order; ++x)
    for (std::uint64_t y = 0; y < order; ++y) {
      const auto i = x % n, j = x / n, k = y % n, l = y / n;
      const auto r = (j == 0 ? i + k : i + n - k) % n;
      mul[x * order + y] = static_cast<Elem>(r + n * ((j + l) % 2));
    }
  std::vector<Elem> gens;
  if (n > 1) gens.push_back(1);
  gens.push_back(static_cast<Elem>(n));
  return make_table("D" + std::to_string(order), order, std::move(mul), std::move(gens));
}

GroupPtr quaternion(std::uint64_t order) {
  if (order < 8 || !prime_of_power(order) || order % 2 != 0)
    throw Error("quaternion: order must be 2^k with k >= 3");
  require_within_bound(order, "quaternion");
  const std::uint64_t m = order / 4;  // a has order 2m, b^2 = a^m
  const std::uint64_t two_m = 2 * m;
  std::vector<Elem> mul(order * order);
  for (std::uint64_t x = 0; x < order; ++x)
    for (std::uint64_t y = 0; y < order; ++y) {
      const auto i = x % two_m, j = x / two_m, k = y % two_m, l = y / two_m;
      std::uint64_t e, f;
      if (j == 0) {
        e = i + k;
        f = l;
      } else {
        e = i + two_m - k;
        f = 1 + l;
        if (f == 2) {
          e += m;
          f = 0;
        }
      }
      mul[x * order + y] = static_cast<Elem>(e % two_m + two_m * f);
    }
  return make_table("Q" + std::to_string(order), order, std::move(mul),
                    {1, static_cast<Elem>(two_m)});
}

GroupPtr heisenberg(std::uint64_t p) {
  require_prime(p, "heisenberg");
  const std::uint64_t n = p * p * p;
  require_within_bound(n, "heisenberg");
  // (a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b'); index a + p b + p^2 c
  std::vector<Elem> mul(n * n);
  for (std::uint64_t x = 0; x < n; ++x)
    for (std::uint64_t y = 0; y < n; ++y) {
      const auto a = x % p, b = (x / p) % p, c = x / (p * p);
      const auto a2 = y % p, b2 = (y / p) % p, c2 = y / (p * p);
      const auto ra = (a + a2) % p, rb = (b + b2) % p, rc = (c + c2 + a * b2) % p;
      mul[x * n + y] = static_cast<Elem>(ra + p * rb + p * p * rc);
    }
  return make_table("Heis" + std::to_string(n), n, std::move(mul), {1, static_cast<Elem>(p)});
}

GroupPtr extraspecial(std::uint64_t p, std::uint64_t exponent) {
  require_prime(p, "extraspecial");
  if (p == 2) throw EvenPrime("extraspecial: odd p required");
  if (exponent == p) return heisenberg(p);
  if (exponent != p * p) throw Error("extraspecial: exponent must be p or p^2");
  // Z_{p^2} semidirect Z_p, the generator acting as multiplication by 1 + p
  GroupPtr n = cyclic(p * p);
  GroupPtr h = cyclic(p);
  std::vector<Elem> act(p * p);
  for (std::uint64_t i = 0; i < p * p; ++i) act[i] = static_cast<Elem>(i * (1 + p) % (p * p));
  return semidirect(n, h, {act},
                    "Extraspecial" + std::to_string(p * p * p) + "e" + std::to_string(p * p));
}

GroupPtr wreath_cyclic(std::uint64_t p) {
  require_prime(p, "wreath_cyclic");
  const std::uint64_t base = ipow(p, static_cast<unsigned>(p));
  require_within_bound(base * p, "wreath_cyclic");
  GroupPtr n = elementary_abelian(p, static_cast<unsigned>(p));
  GroupPtr h = cyclic(p);
  // base coordinates (x_0..x_{p-1}) stored as mixed radix with x_0 most
  // significant; the top generator shifts coordinates cyclically
  std::vector<Elem> act(base);
  for (std::uint64_t e = 0; e < base; ++e) {
    std::vector<std::uint64_t> x(p);
    auto t = e;
    for (std::uint64_t i = p; i-- > 0;) {
      x[i] = t % p;
      t /= p;
    }
    std::uint64_t img = 0;
    for (std::uint64_t i = 0; i < p; ++i) img = img * p + x[(i + p - 1) % p];
    act[e] = static_cast<Elem>(img);
  }
  return semidirect(n, h, {act}, "Z" + std::to_string(p) + "wrZ" + std::to_string(p));
}

GroupPtr special_linear_2(std::uint64_t p) {
  require_prime(p, "special_linear_2");
  require_within_bound(p * (p * p - 1), "special_linear_2");
  using M = std::array<std::uint64_t, 4>;  // a b / c d
  std::vector<M> mats{{1, 0, 0, 1}};
  for (std::uint64_t a = 0; a < p; ++a)
    for (std::uint64_t b = 0; b < p; ++b)
      for (std::uint64_t c = 0; c < p; ++c)
        for (std::uint64_t d = 0; d < p; ++d) {
          M m{a, b, c, d};
          if ((a * d + p * p - (b * c) % p) % p == 1 && m != mats.front()) mats.push_back(m);
        }
  std::map<M, Elem> index;
  for (std::size_t i = 0; i < mats.size(); ++i) index[mats[i]] = static_cast<Elem>(i);
  const std::size_t n = mats.size();
  std::vector<Elem> mul(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const M& x = mats[i];
      const M& y = mats[j];
      M r{(x[0] * y[0] + x[1] * y[2]) % p, (x[0] * y[1] + x[1] * y[3]) % p,
          (x[2] * y[0] + x[3] * y[2]) % p, (x[2] * y[1] + x[3] * y[3]) % p};
      mul[i * n + j] = index.at(r);
    }
  return make_table("SL(2," + std::to_string(p) + ")", n, std::move(mul),
                    {index.at({1, 1, 0, 1}), index.at({1, 0, 1, 1})});
}

GroupPtr qd(std::uint64_t p) {
  require_prime(p, "qd");
  require_within_bound(p * p * p * (p * p - 1), "qd");
  GroupPtr v = elementary_abelian(p, 2);  // (x, y) at index x p + y
  GroupPtr sl = special_linear_2(p);
  // recover each generator's matrix from its action on the SL table: the
  // generators are the two unit transvections in that order
  const std::array<std::array<std::uint64_t, 4>, 2> gen_mats{{{1, 1, 0, 1}, {1, 0, 1, 1}}};
  std::vector<std::vector<Elem>> action;
  for (const auto& m : gen_mats) {
    std::vector<Elem> act(p * p);
    for (std::uint64_t x = 0; x < p; ++x)
      for (std::uint64_t y = 0; y < p; ++y) {
        const auto nx = (m[0] * x + m[1] * y) % p;
        const auto ny = (m[2] * x + m[3] * y) % p;
        act[x * p + y] = static_cast<Elem>(nx * p + ny);
      }
    action.push_back(std::move(act));
  }
  return semidirect(v, sl, action, "Qd(" + std::to_string(p) + ")");
}

GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b) {
  const std::size_t na = a->order(), nb = b->order(), n = na * nb;
  require_within_bound(n, "direct_product");
  std::vector<Elem> mul(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      mul[x * n + y] = static_cast<Elem>(a->mul(static_cast<Elem>(x / nb), static_cast<Elem>(y / nb)) * nb +
                                         b->mul(static_cast<Elem>(x % nb), static_cast<Elem>(y % nb)));
  std::vector<Elem> gens;
  for (Elem g : a->generators()) gens.push_back(static_cast<Elem>(g * nb));
  for (Elem g : b->generators()) gens.push_back(g);
  return make_table(a->name() + "x" + b->name(), n, std::move(mul), std::move(gens));
}

GroupPtr semidirect(const GroupPtr& n, const GroupPtr& h,
                    const std::vector<std::vector<Elem>>& action, std::string name) {
  const std::size_t nn = n->order(), nh = h->order(), order = nn * nh;
  require_within_bound(order, "semidirect");
  auto hgens = h->generators();
  if (action.size() != hgens.size())
    throw Error("semidirect: need one automorphism per generator of the acting group");
  for (const auto& act : action) {
    if (act.size() != nn) throw Error("semidirect: automorphism has the wrong length");
    for (Elem a = 0; a < nn; ++a)
      for (Elem b = 0; b < nn; ++b)
        if (act[n->mul(a, b)] != n->mul(act[a], act[b]))
          throw Error("semidirect: action is not a homomorphism of the normal factor");
  }
  // act(h s) = act(h) o act(s), built breadth-first; inconsistency means the
  // generator images do not define an action
  std::vector<std::vector<Elem>> acts(nh);
  acts[0].resize(nn);
  for (Elem x = 0; x < nn; ++x) acts[0][x] = x;
  std::vector<Elem> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Elem e = queue[i];
    for (std::size_t j = 0; j < hgens.size(); ++j) {
      const Elem v = h->mul(e, hgens[j]);
      std::vector<Elem> comp(nn);
      for (Elem x = 0; x < nn; ++x) comp[x] = acts[e][action[j][x]];
      if (acts[v].empty()) {
        acts[v] = std::move(comp);
        queue.push_back(v);
      } else if (acts[v] != comp) {
        throw Error("semidirect: generator automorphisms do not define an action");
      }
    }
  }
  if (queue.size() != nh) throw Error("semidirect: acting group generators do not generate it");

  // (n1, h1) at index n1 + nn h1
  std::vector<Elem> mul(order * order);
  for (std::size_t x = 0; x < order; ++x) {
    const auto n1 = static_cast<Elem>(x % nn), h1 = static_cast<Elem>(x / nn);
    for (std::size_t y = 0; y < order; ++y) {
      const auto n2 = static_cast<Elem>(y % nn), h2 = static_cast<Elem>(y / nn);
      mul[x * order + y] = static_cast<Elem>(n->mul(n1, acts[h1][n2]) + nn * h->mul(h1, h2));
    }
  }
  std::vector<Elem> gens;
  for (Elem g : n->generators()) gens.push_back(g);
  for (Elem g : hgens) gens.push_back(static_cast<Elem>(nn * g));
  if (name.empty()) name = n->name() + ":" + h->name();
  return make_table(std::move(name), order, std::move(mul), std::move(gens));
}

GroupPtr from_permutations(std::string name, const std::vector<Permutation>& gens) {
  const std::size_t degree = gens.empty() ? 0 : gens.front().size();
  for (const auto& g : gens) {
    if (g.size() != degree) throw ParseError(name + ": generators have different degrees");
    std::vector<char> hit(degree, 0);
    for (auto v : g) {
      if (v >= degree || hit[v]) throw ParseError(name + ": generator is not a permutation");
      hit[v] = 1;
    }
  }
  Permutation id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = static_cast<std::uint32_t>(i);
  // product x*y applies x first, then y
  auto compose = [&](const Permutation& x, const Permutation& y) {
    Permutation r(degree);
    for (std::size_t i = 0; i < degree; ++i) r[i] = y[x[i]];
    return r;
  };
  std::vector<Permutation> elems{id};
  std::map<Permutation, Elem> index{{id, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : gens) {
      Permutation v = compose(elems[i], g);
      if (index.emplace(v, static_cast<Elem>(elems.size())).second) {
        elems.push_back(std::move(v));
        if (elems.size() > order_bound())
          throw BoundExceeded(name + ": permutation group exceeds the order bound");
      }
    }
  }
  const std::size_t n = elems.size();
  std::vector<Elem> mul(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) mul[a * n + b] = index.at(compose(elems[a], elems[b]));
  std::vector<Elem> gidx;
  for (const auto& g : gens) {
    const Elem e = index.at(g);
    if (e != 0 && std::find(gidx.begin(), gidx.end(), e) == gidx.end()) gidx.push_back(e);
  }
  return make_table(std::move(name), n, std::move(mul), std::move(gidx));
}

Permutation parse_cycles(const std::string& text, unsigned degree) {
  Permutation perm(degree);
  for (unsigned i = 0; i < degree; ++i) perm[i] = i;
  std::vector<char> moved(degree, 0);
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  while (pos < text.size()) {
    if (text[pos] != '(') throw ParseError("cycle notation: expected '(' in \"" + text + "\"");
    ++pos;
    std::vector<std::uint32_t> cycle;
    for (;;) {
      skip_ws();
      if (pos >= text.size()) throw ParseError("cycle notation: unterminated cycle in \"" + text + "\"");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (text[pos] == ',') {
        ++pos;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos])))
        throw ParseError("cycle notation: unexpected character in \"" + text + "\"");
      std::uint64_t v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        v = v * 10 + static_cast<std::uint64_t>(text[pos++] - '0');
      if (v < 1 || v > degree)
        throw ParseError("cycle notation: point " + std::to_string(v) + " out of range in \"" + text + "\"");
      const auto pt = static_cast<std::uint32_t>(v - 1);
      if (moved[pt]) throw ParseError("cycle notation: point repeated in \"" + text + "\"");
      moved[pt] = 1;
      cycle.push_back(pt);
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) perm[cycle[i]] = cycle[(i + 1) % cycle.size()];
    skip_ws();
  }
  return perm;
}

GroupPtr symmetric(unsigned n) {
  if (n < 1) throw Error("symmetric: degree must be positive");
  require_within_bound(factorial(n), "symmetric");
  std::vector<Permutation> gens;
  if (n >= 2) {
    Permutation t(n), c(n);
    for (unsigned i = 0; i < n; ++i) {
      t[i] = i;
      c[i] = (i + 1) % n;
    }
    std::swap(t[0], t[1]);
    gens.push_back(t);
    if (n > 2) gens.push_back(c);
  }
  return from_permutations("Sym" + std::to_string(n), gens);
}

GroupPtr alternating(unsigned n) {
  if (n < 1) throw Error("alternating: degree must be positive");
  require_within_bound(n < 2 ? 1 : factorial(n) / 2, "alternating");
  std::vector<Permutation> gens;
  if (n >= 3) {
    Permutation t(n), c(n);
    for (unsigned i = 0; i < n; ++i) t[i] = c[i] = i;
    t[0] = 1;
    t[1] = 2;
    t[2] = 0;
    gens.push_back(t);
    if (n > 3) {
      // (1 2 ... n) for odd n, (2 3 ... n) for even n
      const unsigned start = n % 2 == 1 ? 0 : 1;
      for (unsigned i = start; i < n; ++i) c[i] = i + 1 < n ? i + 1 : start;
      gens.push_back(c);
    }
  }
  return from_permutations("A" + std::to_string(n), gens);
}

std::uint64_t descriptor_order(const json& d) {
  if (!d.is_object() || !d.contains("family")) throw ParseError("construction descriptor needs a \"family\"");
  const std::string f = d.at("family").get<std::string>();
  auto num = [&](const char* key) { return d.at(key).get<std::uint64_t>(); };
  if (f == "cyclic") return num("n");
  if (f == "elementary") return ipow(num("p"), static_cast<unsigned>(num("k")));
  if (f == "abelian") {
    std::uint64_t o = 1;
    for (const auto& v : d.at("invariants")) o *= v.get<std::uint64_t>();
    return o;
  }
  if (f == "dihedral") return 2 * num("n");
  if (f == "quaternion") return num("order");
  if (f == "heisenberg" || f == "extraspecial") return ipow(num("p"), 3);
  if (f == "wreath") return ipow(num("p"), static_cast<unsigned>(num("p") + 1));
  if (f == "sl2") {
    const auto p = num("p");
    return p * (p * p - 1);
  }
  if (f == "qd") {
    const auto p = num("p");
    return p * p * p * (p * p - 1);
  }
  if (f == "symmetric") return factorial(static_cast<unsigned>(num("n")));
  if (f == "alternating") {
    const auto n = num("n");
    return n < 2 ? 1 : factorial(static_cast<unsigned>(n)) / 2;
  }
  if (f == "direct") {
    std::uint64_t o = 1;
    for (const auto& x : d.at("factors")) o *= descriptor_order(x);
    return o;
  }
  if (f == "semidirect") return descriptor_order(d.at("normal")) * descriptor_order(d.at("acting"));
  throw ParseError("unknown construction family \"" + f + "\"");
}

GroupPtr build(const json& d) {
  GroupPtr g;
  try {
    const auto order = descriptor_order(d);
    if (order > order_bound())
      throw BoundExceeded("construction of order " + std::to_string(order) + " exceeds the order bound " +
                          std::to_string(order_bound()));
    const std::string f = d.at("family").get<std::string>();
    auto num = [&](const char* key) { return d.at(key).get<std::uint64_t>(); };
    if (f == "cyclic") {
      g = cyclic(num("n"));
    } else if (f == "elementary") {
      g = elementary_abelian(num("p"), static_cast<unsigned>(num("k")));
    } else if (f == "abelian") {
      g = abelian(d.at("invariants").get<std::vector<std::uint64_t>>());
    } else if (f == "dihedral") {
      g = dihedral(num("n"));
    } else if (f == "quaternion") {
      g = quaternion(num("order"));
    } else if (f == "heisenberg") {
      g = heisenberg(num("p"));
    } else if (f == "extraspecial") {
      g = extraspecial(num("p"), num("exponent"));
    } else if (f == "wreath") {
      g = wreath_cyclic(num("p"));
    } else if (f == "sl2") {
      g = special_linear_2(num("p"));
    } else if (f == "qd") {
      g = qd(num("p"));
    } else if (f == "symmetric") {
      g = symmetric(static_cast<unsigned>(num("n")));
    } else if (f == "alternating") {
      g = alternating(static_cast<unsigned>(num("n")));
    } else if (f == "direct") {
      const auto& fs = d.at("factors");
      if (fs.empty()) throw ParseError("direct product needs at least one factor");
      g = build(fs.at(0));
      for (std::size_t i = 1; i < fs.size(); ++i) g = direct_product(g, build(fs.at(i)));
    } else if (f == "semidirect") {
      GroupPtr n = build(d.at("normal"));
      GroupPtr h = build(d.at("acting"));
      const auto& a = d.at("action");
      std::vector<std::vector<Elem>> action;
      auto ngens = n->generators();
      for (std::size_t j = 0; j < h->generators().size(); ++j) {
        std::vector<Elem> images;
        if (a.is_string() && a.get<std::string>() == "invert-generators") {
          for (Elem x : ngens) images.push_back(n->inv(x));
        } else if (a.is_array()) {
          images = a.at(j).get<std::vector<Elem>>();
          if (images.size() != ngens.size())
            throw ParseError("semidirect action: one image per generator of the normal factor");
          for (Elem y : images)
            if (y >= n->order()) throw ParseError("semidirect action: image index out of range");
        } else {
          throw ParseError("semidirect action must be \"invert-generators\" or a list of image lists");
        }
        auto aut = extend_automorphism(*n, ngens, images);
        if (!aut) throw ParseError("semidirect action: generator images do not define an automorphism");
        action.push_back(std::move(*aut));
      }
      g = semidirect(n, h, action);
    } else {
      throw ParseError("unknown construction family \"" + f + "\"");
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed construction descriptor: ") + e.what());
  }
  if (d.contains("name")) g = renamed(g, d.at("name").get<std::string>());
  return g;
}

}  // namespace zjkit
