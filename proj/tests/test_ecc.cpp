#include <doctest.h>

#include <bit>

#include "recfg/ecc.hpp"

using namespace recfg;

TEST_CASE("hadamard encodings pinned by hand") {
    LinearCode h2 = hadamard_code(2);
    CHECK(h2.block_len == 4);
    CHECK(h2.distance == 2);
    CHECK(to_string(h2.encode(Bits(0b00, 2))) == "0000");
    // Message bits (m_0, m_1) = (1, 0); column s contributes <msg, s> mod 2.
    CHECK(to_string(h2.encode(Bits(0b01, 2))) == "0101");

    LinearCode h3 = hadamard_code(3);
    Bits all = h3.encode(Bits(0b111, 3));
    for (int s = 0; s < 8; ++s)
        CHECK(all.get(s) == (std::popcount(static_cast<unsigned>(s)) % 2 == 1));
}

TEST_CASE("hadamard is linear") {
    LinearCode h3 = hadamard_code(3);
    for (std::uint64_t a = 0; a < 8; ++a)
        for (std::uint64_t b = 0; b < 8; ++b)
            CHECK(h3.encode(Bits(a ^ b, 3)).word ==
                  (h3.encode(Bits(a, 3)).word ^ h3.encode(Bits(b, 3)).word));
}

TEST_CASE("min_distance matches 2^(k-1)") {
    for (int k = 1; k <= 5; ++k) {
        LinearCode code = hadamard_code(k);
        CHECK(min_distance(code) == 1 << (k - 1));
        CHECK(code.distance == 1 << (k - 1));
    }
    // k = 1: the distance is just the weight of the lone nonzero codeword.
    LinearCode h1 = hadamard_code(1);
    CHECK(min_distance(h1) == std::popcount(h1.encode(Bits(1, 1)).word));
}

TEST_CASE("decoding exact codewords") {
    for (int k = 1; k <= 4; ++k) {
        LinearCode code = hadamard_code(k);
        for (std::uint64_t msg = 0; msg < (std::uint64_t{1} << k); ++msg) {
            auto dec = decode_nearest(code, code.encode(Bits(msg, k)));
            REQUIRE(dec.has_value());
            CHECK(dec->msg.word == msg);
            CHECK(dec->dist == 0);
        }
    }
}

TEST_CASE("k=2 has unique radius 0: any flip is ambiguous") {
    LinearCode h2 = hadamard_code(2);
    CHECK(h2.unique_radius() == 0);
    Bits cw = h2.encode(Bits(0b01, 2));
    for (int i = 0; i < 4; ++i) {
        Bits corrupted = cw;
        corrupted.flip(i);
        CHECK_FALSE(decode_nearest(h2, corrupted).has_value());
    }
}

TEST_CASE("k=3 corrects one flipped bit") {
    LinearCode h3 = hadamard_code(3);
    CHECK(h3.unique_radius() == 1);
    Bits cw = h3.encode(Bits(0b101, 3));
    for (int i = 0; i < 8; ++i) {
        Bits corrupted = cw;
        corrupted.flip(i);
        auto dec = decode_nearest(h3, corrupted);
        REQUIRE(dec.has_value());
        CHECK(dec->msg.word == 0b101);
        CHECK(dec->dist == 1);
    }
    // Two flips leave the unique-decoding radius.
    Bits two = cw;
    two.flip(0);
    two.flip(3);
    CHECK_FALSE(decode_nearest(h3, two).has_value());
}

TEST_CASE("encode rejects wrong message lengths") {
    LinearCode h2 = hadamard_code(2);
    CHECK_THROWS_AS(h2.encode(Bits(0, 3)), InputError);
    CHECK_THROWS_AS(decode_nearest(h2, Bits(0, 3)), InputError);
    CHECK_THROWS_AS(hadamard_code(0), InputError);
    CHECK_THROWS_AS(hadamard_code(7), InputError);
}
