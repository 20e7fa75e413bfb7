#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace sbon {

// Fixed-length bit vector packed into 64-bit words, least significant bit of word 0 is
// element 0. Bits past size() in the last word are kept at zero so word-wise
// comparisons and popcounts stay exact.
class BinaryVector {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    BinaryVector() = default;
    explicit BinaryVector(std::size_t size, bool value = false);
    BinaryVector(std::initializer_list<int> bits);

    std::size_t size() const noexcept { return size_; }
    std::size_t word_count() const noexcept { return words_.size(); }

    bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
    void set(std::size_t i, bool value = true) noexcept {
        const word_type mask = word_type{1} << (i % kWordBits);
        if (value) {
            words_[i / kWordBits] |= mask;
        } else {
            words_[i / kWordBits] &= ~mask;
        }
    }

    std::span<const word_type> words() const noexcept { return words_; }

    std::size_t count() const noexcept;
    bool none() const noexcept;

    BinaryVector& operator&=(const BinaryVector& rhs);
    BinaryVector& operator|=(const BinaryVector& rhs);
    BinaryVector& operator^=(const BinaryVector& rhs);

    friend bool operator==(const BinaryVector&, const BinaryVector&) = default;

private:
    void check_same_size(const BinaryVector& rhs) const;
    void clear_tail() noexcept;

    std::size_t size_ = 0;
    std::vector<word_type> words_;

    friend BinaryVector operator~(const BinaryVector& v);
};

// Elementwise operations; operands of different length raise StructuralError.
BinaryVector operator&(BinaryVector a, const BinaryVector& b);
BinaryVector operator|(BinaryVector a, const BinaryVector& b);
BinaryVector operator^(BinaryVector a, const BinaryVector& b);
BinaryVector operator~(const BinaryVector& v);

inline BinaryVector bit_and(const BinaryVector& a, const BinaryVector& b) { return a & b; }
inline BinaryVector bit_or(const BinaryVector& a, const BinaryVector& b) { return a | b; }
inline BinaryVector bit_xor(const BinaryVector& a, const BinaryVector& b) { return a ^ b; }

} // namespace sbon
