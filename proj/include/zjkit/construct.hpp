#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "zjkit/group_table.hpp"

namespace zjkit {

/// A permutation on points 0..degree-1; perm[i] is the image of i.
using Permutation = std::vector<std::uint32_t>;

GroupPtr cyclic(std::uint64_t n);
/// (Z_p)^k
GroupPtr elementary_abelian(std::uint64_t p, unsigned k);
/// Z_{n1} x Z_{n2} x ...
GroupPtr abelian(const std::vector<std::uint64_t>& invariants);
/// Dihedral group of order 2n.
GroupPtr dihedral(std::uint64_t n);
/// Generalized quaternion group of order 2^k, k >= 3.
GroupPtr quaternion(std::uint64_t order);
/// Upper unitriangular 3x3 matrices over Z_p (order p^3, exponent p for odd p).
GroupPtr heisenberg(std::uint64_t p);
/// Extraspecial group of order p^3 with the given exponent (p or p^2), p odd.
GroupPtr extraspecial(std::uint64_t p, std::uint64_t exponent);
/// Z_p wr Z_p: (Z_p)^p by a cyclic shift.
GroupPtr wreath_cyclic(std::uint64_t p);
GroupPtr special_linear_2(std::uint64_t p);
/// (Z_p x Z_p) semidirect SL(2, p) under the natural action.
GroupPtr qd(std::uint64_t p);
GroupPtr symmetric(unsigned n);
GroupPtr alternating(unsigned n);
GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b);

/// N semidirect H. `action[i]` is the automorphism of N attached to the i-th
/// generator of H, given as the image of every element of N. Elements are
/// pairs (n, h) multiplied as (n1, h1)(n2, h2) = (n1 * act(h1)(n2), h1 h2).
GroupPtr semidirect(const GroupPtr& n, const GroupPtr& h,
                    const std::vector<std::vector<Elem>>& action, std::string name = {});

/// Flatten the permutation group generated by `gens` (all of one degree)
/// into a table. Element 0 is the identity; the rest follow breadth-first
/// order over the generators.
GroupPtr from_permutations(std::string name, const std::vector<Permutation>& gens);

/// Parse "(1 2 3)(4 5)" style cycle notation with 1-based points.
Permutation parse_cycles(const std::string& text, unsigned degree);

/// Build from a JSON construction descriptor, e.g.
/// {"family":"cyclic","n":9}, {"family":"qd","p":3},
/// {"family":"direct","factors":[{...},{...}]},
/// {"family":"semidirect","normal":{...},"acting":{...},"action":"invert"}.
GroupPtr build(const nlohmann::json& descriptor);

/// Order the descriptor would produce, computed without building tables.
std::uint64_t descriptor_order(const nlohmann::json& descriptor);

}  // namespace zjkit
