#include "recfg/ecc.hpp"

#include <bit>

namespace recfg {

std::uint64_t LinearCode::encode_packed(std::uint64_t msg) const {
    std::uint64_t cw = 0;
    for (int i = 0; i < msg_len; ++i)
        if ((msg >> i) & 1) cw ^= basis[static_cast<std::size_t>(i)];
    return cw;
}

Bits LinearCode::encode(const Bits& msg) const {
    if (msg.len != msg_len) throw InputError("encode: message length mismatch");
    return Bits(encode_packed(msg.word), block_len);
}

int min_distance(const LinearCode& code) {
    if (code.msg_len > 24) throw BudgetError(std::uint64_t{1} << code.msg_len, 1u << 24);
    // Linear code: minimum pairwise distance = minimum nonzero codeword weight.
    int best = code.block_len + 1;
    for (std::uint64_t msg = 1; msg < (std::uint64_t{1} << code.msg_len); ++msg) {
        int w = std::popcount(code.encode_packed(msg));
        if (w < best) best = w;
    }
    return best;
}

LinearCode hadamard_code(int k) {
    if (k < 1 || k > 6) throw InputError("hadamard_code: k must be in [1, 6]");
    LinearCode code;
    code.family = "hadamard";
    code.msg_len = k;
    code.block_len = 1 << k;
    code.basis.resize(static_cast<std::size_t>(k));
    // Unit message e_i maps to the codeword whose bit at column s is bit i of s.
    for (int i = 0; i < k; ++i) {
        std::uint64_t cw = 0;
        for (int s = 0; s < code.block_len; ++s)
            if ((s >> i) & 1) cw |= std::uint64_t{1} << s;
        code.basis[static_cast<std::size_t>(i)] = cw;
    }
    code.distance = min_distance(code);
    return code;
}

std::optional<Decoded> decode_nearest(const LinearCode& code, const Bits& word) {
    if (word.len != code.block_len) throw InputError("decode: word length mismatch");
    int best = code.block_len + 1;
    std::uint64_t best_msg = 0;
    bool tie = false;
    for (std::uint64_t msg = 0; msg < (std::uint64_t{1} << code.msg_len); ++msg) {
        int d = std::popcount(code.encode_packed(msg) ^ word.word);
        if (d < best) {
            best = d;
            best_msg = msg;
            tie = false;
        } else if (d == best) {
            tie = true;
        }
    }
    if (tie || best > code.unique_radius()) return std::nullopt;
    return Decoded{Bits(best_msg, code.msg_len), best};
}

} // namespace recfg
