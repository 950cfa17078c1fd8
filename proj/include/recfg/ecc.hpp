#ifndef RECFG_ECC_HPP
#define RECFG_ECC_HPP

#include <optional>
#include <string>
#include <vector>

#include "recfg/bits.hpp"

namespace recfg {

// Binary linear code given by its generator basis; exact minimum distance is
// computed (brute force over nonzero codewords) at construction.
struct LinearCode {
    std::string family;            // "hadamard"
    int msg_len = 0;               // k
    int block_len = 0;             // n_blk, <= 64
    int distance = 0;              // exact d_C
    std::vector<std::uint64_t> basis;   // basis[i] = codeword of unit message e_i

    std::uint64_t encode_packed(std::uint64_t msg) const;
    Bits encode(const Bits& msg) const;

    int unique_radius() const { return (distance - 1) / 2; }
};

// Hadamard code: block length 2^k, codeword bit s = <msg, s> mod 2 with the
// column index s read as a little-endian bit vector.  Distance 2^(k-1).
LinearCode hadamard_code(int k);

// Exact minimum pairwise distance (= minimum nonzero codeword weight).
int min_distance(const LinearCode& code);

struct Decoded {
    Bits msg;
    int dist;
};

// Nearest-codeword decoding by enumeration over all 2^k messages.
// nullopt (AMBIGUOUS) when the best distance exceeds the unique-decoding
// radius floor((d_C-1)/2) or when the minimum is not unique.
std::optional<Decoded> decode_nearest(const LinearCode& code, const Bits& word);

} // namespace recfg

#endif
