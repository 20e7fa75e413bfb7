#include "sbon/binary_vector.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "sbon/error.hpp"

namespace sbon {

BinaryVector::BinaryVector(std::size_t size, bool value)
    : size_(size), words_((size + kWordBits - 1) / kWordBits, value ? ~word_type{0} : word_type{0}) {
    clear_tail();
}

BinaryVector::BinaryVector(std::initializer_list<int> bits) : BinaryVector(bits.size()) {
    std::size_t i = 0;
    for (int b : bits) set(i++, b != 0);
}

std::size_t BinaryVector::count() const noexcept {
    std::size_t n = 0;
    for (word_type w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool BinaryVector::none() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](word_type w) { return w == 0; });
}

void BinaryVector::check_same_size(const BinaryVector& rhs) const {
    if (size_ != rhs.size_) {
        throw StructuralError("binary vector length mismatch: " + std::to_string(size_) + " vs " +
                              std::to_string(rhs.size_));
    }
}

void BinaryVector::clear_tail() noexcept {
    if (const std::size_t used = size_ % kWordBits; used != 0) {
        words_.back() &= (word_type{1} << used) - 1;
    }
}

BinaryVector& BinaryVector::operator&=(const BinaryVector& rhs) {
    check_same_size(rhs);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= rhs.words_[i];
    return *this;
}

BinaryVector& BinaryVector::operator|=(const BinaryVector& rhs) {
    check_same_size(rhs);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= rhs.words_[i];
    return *this;
}

BinaryVector& BinaryVector::operator^=(const BinaryVector& rhs) {
    check_same_size(rhs);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= rhs.words_[i];
    return *this;
}

BinaryVector operator&(BinaryVector a, const BinaryVector& b) { return a &= b; }
BinaryVector operator|(BinaryVector a, const BinaryVector& b) { return a |= b; }
BinaryVector operator^(BinaryVector a, const BinaryVector& b) { return a ^= b; }

BinaryVector operator~(const BinaryVector& v) {
    BinaryVector out = v;
    for (auto& w : out.words_) w = ~w;
    out.clear_tail();
    return out;
}

} // namespace sbon
