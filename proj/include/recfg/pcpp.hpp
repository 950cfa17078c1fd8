#ifndef RECFG_PCPP_HPP
#define RECFG_PCPP_HPP

#include <functional>
#include <optional>
#include <vector>

#include "recfg/bits.hpp"
#include "recfg/rational.hpp"

namespace recfg {

// Total boolean predicate on n-bit inputs, input packed little-endian.
struct Circuit {
    int input_len = 0;
    std::function<bool(std::uint64_t)> evaluator;

    static Circuit from_truth_table(int input_len, const std::vector<bool>& table);

    bool eval(const Bits& x) const;
    bool eval_packed(std::uint64_t x) const { return evaluator(x); }

    // All solutions, materialized by 2^n enumeration (throws BudgetError past budget).
    std::vector<std::uint64_t> solutions(std::uint64_t budget) const;
};

// min over solutions w of Hamming(x, w)/n >= delta; a circuit without
// solutions makes every x delta-far (vacuous minimum).
bool is_delta_far(const Circuit& c, const Bits& x, const Rational& delta, std::uint64_t budget);

// A PCPP verifier as an explicit randomness-indexed query table: for each of
// the 2^r randomness strings, a q-tuple of positions in [0, n+m) and an accept
// table over the queried bits (read as a little-endian q-bit integer).
//
// Query tuples may contain repeats when produced by builders that sample
// positions with replacement; verifiers meant as Def-style tables keep them
// distinct.
struct ScalarPcpp {
    int n = 0, m = 0, r = 0, q = 0;
    std::vector<std::vector<int>> queries;            // [2^r][q] positions
    std::vector<std::vector<std::uint64_t>> pred;     // [2^r] bitsets of 2^q accept bits
    std::function<Bits(const Bits&)> honest_proof;    // completeness witness; may be unset
    Rational declared_delta{0, 1};
    Rational declared_kappa{1, 1};

    std::uint64_t num_omegas() const { return std::uint64_t{1} << r; }

    bool accepts(std::uint64_t omega, std::uint64_t queried) const {
        return (pred[omega][queried >> 6] >> (queried & 63)) & 1;
    }

    // Assembles the queried bits of x∘pi (packed as x | pi<<n) for one omega.
    std::uint64_t gather(std::uint64_t omega, std::uint64_t xpi) const {
        std::uint64_t idx = 0;
        const auto& tuple = queries[omega];
        for (int l = 0; l < q; ++l)
            idx |= ((xpi >> tuple[static_cast<std::size_t>(l)]) & 1) << l;
        return idx;
    }

    void validate() const;
};

// Exact acceptance probability over all 2^r randomness strings.
Rational accept_prob(const ScalarPcpp& v, const Bits& x, const Bits& pi);

// True iff every solution x of c is accepted with probability 1 on its honest proof.
bool audit_completeness(const ScalarPcpp& v, const Circuit& c, std::uint64_t budget);

// Measured soundness: max acceptance probability over delta-far x and all
// proofs, by full (x, pi, omega) enumeration over the bit-packed kernel.
// `budget` bounds the 2^n * 2^m * 2^r triple count.
Rational audit_soundness(const ScalarPcpp& v, const Circuit& c, const Rational& delta,
                         std::uint64_t budget);

// Proximity test with k independent uniformly sampled input columns:
// proof = claimed solution w (m = n), r = k*log2(n), q = n + k.
// Accepts iff C(w) = 1 and x agrees with w on every sampled column.
ScalarPcpp build_proximity_pcpp(const Circuit& c, int k, const Rational& declared_delta);

// Def-style parallelizability: identical (n, m, r, q) and identical query
// tuples for every randomness string (predicates are unconstrained).
bool check_parallelizable(const std::vector<ScalarPcpp>& vs);

} // namespace recfg

#endif
