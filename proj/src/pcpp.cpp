#include "recfg/pcpp.hpp"

#include <algorithm>

namespace recfg {

Circuit Circuit::from_truth_table(int input_len, const std::vector<bool>& table) {
    if (input_len < 0 || input_len > 30) throw InputError("circuit: input_len out of range");
    if (table.size() != (std::size_t{1} << input_len))
        throw InputError("circuit: truth table has wrong size");
    return Circuit{input_len, [table](std::uint64_t x) { return table[x]; }};
}

bool Circuit::eval(const Bits& x) const {
    if (x.len != input_len) throw InputError("circuit: input length mismatch");
    return evaluator(x.word);
}

std::vector<std::uint64_t> Circuit::solutions(std::uint64_t budget) const {
    std::uint64_t space = std::uint64_t{1} << input_len;
    if (space > budget) throw BudgetError(space, budget);
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 0; x < space; ++x)
        if (evaluator(x)) out.push_back(x);
    return out;
}

bool is_delta_far(const Circuit& c, const Bits& x, const Rational& delta, std::uint64_t budget) {
    if (x.len != c.input_len) throw InputError("is_delta_far: input length mismatch");
    for (std::uint64_t w : c.solutions(budget)) {
        int d = std::popcount(x.word ^ w);
        if (Rational(BigInt(d), BigInt(c.input_len)) < delta) return false;
    }
    return true;   // vacuously far when the circuit has no solutions
}

void ScalarPcpp::validate() const {
    if (n < 0 || m < 0 || r < 0 || r > 24 || q < 1 || q > 26)
        throw InputError("pcpp: parameters out of range");
    if (queries.size() != num_omegas() || pred.size() != num_omegas())
        throw InputError("pcpp: query/predicate table size mismatch");
    const std::size_t words = ((std::size_t{1} << q) + 63) / 64;
    for (std::uint64_t w = 0; w < num_omegas(); ++w) {
        if (static_cast<int>(queries[w].size()) != q)
            throw InputError("pcpp: query tuple arity mismatch");
        for (int pos : queries[w])
            if (pos < 0 || pos >= n + m) throw InputError("pcpp: query position out of range");
        if (pred[w].size() < words) throw InputError("pcpp: predicate bitset too small");
    }
}

Rational accept_prob(const ScalarPcpp& v, const Bits& x, const Bits& pi) {
    if (x.len != v.n) throw InputError("accept_prob: |x| != n");
    if (pi.len != v.m) throw InputError("accept_prob: |pi| != m");
    std::uint64_t xpi = x.word | (pi.word << v.n);
    std::uint64_t count = 0;
    for (std::uint64_t w = 0; w < v.num_omegas(); ++w)
        if (v.accepts(w, v.gather(w, xpi))) ++count;
    return Rational(BigInt(count), BigInt(v.num_omegas()));
}

bool audit_completeness(const ScalarPcpp& v, const Circuit& c, std::uint64_t budget) {
    if (!v.honest_proof) throw InputError("audit_completeness: verifier has no honest proof map");
    for (std::uint64_t sol : c.solutions(budget)) {
        Bits x(sol, v.n);
        if (accept_prob(v, x, v.honest_proof(x)) != Rational(1)) return false;
    }
    return true;
}

Rational audit_soundness(const ScalarPcpp& v, const Circuit& c, const Rational& delta,
                         std::uint64_t budget) {
    if (v.n + v.m + v.r >= 63) throw BudgetError(~std::uint64_t{0}, budget);
    std::uint64_t triples = std::uint64_t{1} << (v.n + v.m + v.r);
    if (triples > budget) throw BudgetError(triples, budget);

    // delta-far x's up front; max over (x, pi) of accepting-omega counts.
    std::vector<std::uint64_t> far;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << v.n); ++x)
        if (is_delta_far(c, Bits(x, v.n), delta, budget)) far.push_back(x);

    const std::uint64_t omegas = v.num_omegas();
    std::uint64_t best = 0;
    for (std::uint64_t x : far) {
        for (std::uint64_t pi = 0; pi < (std::uint64_t{1} << v.m); ++pi) {
            std::uint64_t xpi = x | (pi << v.n);
            std::uint64_t count = 0;
            for (std::uint64_t w = 0; w < omegas; ++w)
                if (v.accepts(w, v.gather(w, xpi))) ++count;
            if (count > best) best = count;
        }
    }
    return Rational(BigInt(best), BigInt(omegas));   // empty far set gives 0
}

namespace {

Rational pow_rational(Rational base, int e) {
    Rational out(1);
    for (int i = 0; i < e; ++i) out *= base;
    return out;
}

} // namespace

ScalarPcpp build_proximity_pcpp(const Circuit& c, int k, const Rational& declared_delta) {
    const int n = c.input_len;
    if (!is_power_of_two(static_cast<std::uint64_t>(n)))
        throw InputError("build_proximity_pcpp: input length must be a power of two");
    if (k < 1) throw InputError("build_proximity_pcpp: k must be >= 1");
    const int lg = log2_exact(static_cast<std::uint64_t>(n));
    ScalarPcpp v;
    v.n = n;
    v.m = n;
    v.r = k * lg;
    v.q = n + k;
    if (v.r > 24 || v.q > 26) throw BudgetError(std::uint64_t{1} << std::min(v.r + v.q, 62), 1u << 24);

    const std::uint64_t omegas = v.num_omegas();
    const std::size_t words = ((std::size_t{1} << v.q) + 63) / 64;
    v.queries.resize(omegas);
    v.pred.resize(omegas);
    for (std::uint64_t w = 0; w < omegas; ++w) {
        auto& tuple = v.queries[w];
        tuple.reserve(static_cast<std::size_t>(v.q));
        for (int p = 0; p < v.m; ++p) tuple.push_back(n + p);   // whole proof
        std::vector<int> cols(static_cast<std::size_t>(k));
        for (int l = 0; l < k; ++l) {
            cols[static_cast<std::size_t>(l)] =
                static_cast<int>((w >> (l * lg)) & static_cast<std::uint64_t>(n - 1));
            tuple.push_back(cols[static_cast<std::size_t>(l)]);   // sampled input columns
        }
        auto& bits = v.pred[w];
        bits.assign(words, 0);
        // Queried index layout: bits [0, m) = claimed solution w', bit m+l = x[c_l].
        for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << v.q); ++idx) {
            std::uint64_t claimed = idx & ((std::uint64_t{1} << v.m) - 1);
            if (!c.eval_packed(claimed)) continue;
            bool ok = true;
            for (int l = 0; l < k && ok; ++l) {
                bool xbit = (idx >> (v.m + l)) & 1;
                bool wbit = (claimed >> cols[static_cast<std::size_t>(l)]) & 1;
                ok = xbit == wbit;
            }
            if (ok) bits[idx >> 6] |= std::uint64_t{1} << (idx & 63);
        }
    }
    v.honest_proof = [](const Bits& x) { return x; };
    v.declared_delta = declared_delta;
    // Each sample independently catches a disagreement of weight >= ceil(delta*n).
    BigInt mismatches = (declared_delta.numerator() * n + declared_delta.denominator() - 1) /
                        declared_delta.denominator();
    v.declared_kappa = pow_rational(Rational(BigInt(n) - mismatches, BigInt(n)), k);
    return v;
}

bool check_parallelizable(const std::vector<ScalarPcpp>& vs) {
    if (vs.empty()) throw InputError("check_parallelizable: empty verifier list");
    const ScalarPcpp& a = vs.front();
    for (const ScalarPcpp& b : vs) {
        if (b.n != a.n || b.m != a.m || b.r != a.r || b.q != a.q) return false;
        if (b.queries != a.queries) return false;
    }
    return true;
}

} // namespace recfg
