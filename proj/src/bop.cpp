#include "sbon/bop.hpp"

#include <string>

#include "sbon/error.hpp"

namespace sbon {

namespace {

void check_set(std::span<const BinaryVector> vectors, const char* op) {
    if (vectors.empty()) throw StructuralError(std::string(op) + ": empty vector set");
    const std::size_t p = vectors.front().size();
    for (std::size_t k = 1; k < vectors.size(); ++k) {
        if (vectors[k].size() != p) {
            throw StructuralError(std::string(op) + ": vector " + std::to_string(k) + " has length " +
                                  std::to_string(vectors[k].size()) + ", expected " + std::to_string(p));
        }
    }
}

bool disjoint(const BinaryVector& a, const BinaryVector& b) noexcept {
    const auto wa = a.words();
    const auto wb = b.words();
    for (std::size_t i = 0; i < wa.size(); ++i) {
        if (wa[i] & wb[i]) return false;
    }
    return true;
}

} // namespace

bool is_orthonormal_set(std::span<const BinaryVector> vectors) {
    check_set(vectors, "is_orthonormal_set");
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        for (std::size_t j = k + 1; j < vectors.size(); ++j) {
            if (!disjoint(vectors[k], vectors[j])) return false;
        }
    }
    return true;
}

BopResult bop_v1(std::span<const BinaryVector> vectors) {
    check_set(vectors, "bop_v1");
    const std::size_t n = vectors.size();
    BopResult result;
    result.u.assign(vectors.begin(), vectors.end());
    result.s.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const BinaryVector& v = vectors[j];
        BinaryVector& u = result.u[j];
        for (std::size_t i = 0; i < j; ++i) u ^= v & result.u[i];
        result.s.push_back(v ^ u);
    }
    return result;
}

BopResult bop_v2(std::span<const BinaryVector> vectors) {
    check_set(vectors, "bop_v2");
    const std::size_t n = vectors.size();
    BopResult result;
    result.s.assign(n, BinaryVector(vectors.front().size()));
    result.u.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const BinaryVector& v = vectors[j];
        BinaryVector& s = result.s[j];
        for (std::size_t i = 0; i < j; ++i) s |= v & (vectors[i] ^ result.s[i]);
        result.u.push_back(v ^ s);
    }
    return result;
}

} // namespace sbon
