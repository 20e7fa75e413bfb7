#pragma once

#include <span>
#include <vector>

#include "sbon/binary_vector.hpp"

namespace sbon {

// Boolean Orthonormalization Process.
//
// A set of binary vectors is orthonormal in the Boolean sense when every pair of
// distinct members has an all-zero AND. BOP maps input vectors v_1..v_N onto an
// orthonormal set u_1..u_N plus residuals s_1..s_N with u_i AND s_i = 0 and
// u_i OR s_i = v_i. Effectively u_j keeps the bits of v_j not already present in
// any of v_1..v_{j-1}, so the result depends on input order.
struct BopResult {
    std::vector<BinaryVector> u;
    std::vector<BinaryVector> s;

    friend bool operator==(const BopResult&, const BopResult&) = default;
};

// True iff all pairs of distinct members are AND-disjoint. A singleton is trivially
// orthonormal. Empty sets and length mismatches raise.
bool is_orthonormal_set(std::span<const BinaryVector> vectors);

// Version 1: u_j = v_j, then u_j ^= (v_j & u_i) for i = 1..j-1 ascending; s_j = v_j ^ u_j.
BopResult bop_v1(std::span<const BinaryVector> vectors);

// Version 2: s_j = 0, then s_j |= v_j & (v_i ^ s_i) for i = 1..j-1 ascending; u_j = v_j ^ s_j.
BopResult bop_v2(std::span<const BinaryVector> vectors);

} // namespace sbon
