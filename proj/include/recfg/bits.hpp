#ifndef RECFG_BITS_HPP
#define RECFG_BITS_HPP

#include <bit>
#include <cstdint>
#include <string>

#include "recfg/errors.hpp"

namespace recfg {

// Fixed-length bit string, packed into one 64-bit word, little-endian
// (bit i of `word` is position i of the string).  All strings handled by
// this artifact (inputs, proofs, codewords, messages) fit in 64 bits.
struct Bits {
    std::uint64_t word = 0;
    int len = 0;

    Bits() = default;
    Bits(std::uint64_t word_, int len_) : word(word_), len(len_) {
        if (len_ < 0 || len_ > 64) throw InputError("Bits length out of range");
        if (len_ < 64) word &= (std::uint64_t{1} << len_) - 1;
    }

    static Bits zeros(int len) { return Bits(0, len); }

    bool get(int i) const {
        if (i < 0 || i >= len) throw InputError("Bits index out of range");
        return (word >> i) & 1;
    }
    void set(int i, bool v) {
        if (i < 0 || i >= len) throw InputError("Bits index out of range");
        if (v) word |= std::uint64_t{1} << i;
        else word &= ~(std::uint64_t{1} << i);
    }
    void flip(int i) { set(i, !get(i)); }

    bool operator==(const Bits& o) const = default;
};

inline int hamming(const Bits& a, const Bits& b) {
    if (a.len != b.len) throw InputError("hamming: length mismatch");
    return std::popcount(a.word ^ b.word);
}

// "0101" with character i giving bit i.
inline std::string to_string(const Bits& b) {
    std::string s(static_cast<std::size_t>(b.len), '0');
    for (int i = 0; i < b.len; ++i)
        if (b.get(i)) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

inline bool is_power_of_two(std::uint64_t x) { return x != 0 && std::has_single_bit(x); }

inline int log2_exact(std::uint64_t x) {
    if (!is_power_of_two(x)) throw InputError("log2_exact: not a power of two");
    return std::countr_zero(x);
}

} // namespace recfg

#endif
