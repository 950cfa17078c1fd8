#include <doctest.h>

#include "recfg/gen.hpp"
#include "recfg/parallel.hpp"

using namespace recfg;

namespace {

constexpr std::uint64_t kBudget = std::uint64_t{1} << 20;

// n = m = 1, r = 1: omega 0 queries position 0, omega 1 queries position 1;
// each accepts iff the queried bit is 1.
ScalarPcpp toy_verifier() {
    ScalarPcpp v;
    v.n = v.m = v.r = v.q = 1;
    v.queries = {{0}, {1}};
    v.pred = {{0b10}, {0b10}};
    v.honest_proof = [](const Bits& x) { return x; };
    return v;
}

// OR of two binary variables.
ReconfigProblem or_source() {
    std::vector<Constraint> cons;
    cons.push_back(Constraint::table({0, 1}, {{0, 1}, {1, 0}, {1, 1}}));
    return ReconfigProblem::strict(CspInstance(2, 2, std::move(cons)), {1, 0}, {1, 1});
}

// Three binary variables, single always-true constraint; endpoints 000 / 111.
ReconfigProblem free3_source() {
    std::vector<Constraint> cons;
    cons.push_back(Constraint::table(
        {0, 1}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
    return ReconfigProblem::strict(CspInstance(3, 2, std::move(cons)), {0, 0, 0}, {1, 1, 1});
}

void for_each_psi(const ParallelPcppSystem& sys, const std::function<void(const LayeredAssignment&)>& fn) {
    std::uint64_t space = 1;
    for (int c = 0; c < sys.cols(); ++c) space *= static_cast<std::uint64_t>(sys.alphabet());
    LayeredAssignment psi;
    psi.columns.resize(static_cast<std::size_t>(sys.cols()));
    for (std::uint64_t idx = 0; idx < space; ++idx) {
        std::uint64_t rem = idx;
        for (int c = 0; c < sys.cols(); ++c) {
            psi.columns[static_cast<std::size_t>(c)] =
                static_cast<std::uint16_t>(rem % static_cast<std::uint64_t>(sys.alphabet()));
            rem /= static_cast<std::uint64_t>(sys.alphabet());
        }
        fn(psi);
    }
}

} // namespace

TEST_CASE("lifting one scalar verifier preserves acceptance exactly") {
    ScalarPcpp v = toy_verifier();
    ParallelPcppSystem sys = lift_scalars({v});
    CHECK(sys.t == 1);
    CHECK(sys.cols() == 2);
    for_each_psi(sys, [&](const LayeredAssignment& psi) {
        Bits x = layer_row(psi, 0, 0, sys.x_cols);
        Bits pi = layer_row(psi, 0, sys.x_cols, sys.proof_cols);
        CHECK(parallel_accept_prob(sys, psi, 0) == accept_prob(v, x, pi));
        CHECK(parallel_value(sys, psi) == accept_prob(v, x, pi));
    });
}

TEST_CASE("two stacked copies agree layer by layer") {
    ScalarPcpp v = toy_verifier();
    ParallelPcppSystem sys = lift_scalars({v, v});
    CHECK(sys.alphabet() == 4);
    for_each_psi(sys, [&](const LayeredAssignment& psi) {
        for (int i = 0; i < 2; ++i) {
            Bits x = layer_row(psi, i, 0, sys.x_cols);
            Bits pi = layer_row(psi, i, sys.x_cols, sys.proof_cols);
            CHECK(parallel_accept_prob(sys, psi, i) == accept_prob(v, x, pi));
        }
        // Identical layers make the two probabilities coincide.
        LayeredAssignment mirror = psi;
        for (auto& s : mirror.columns) {
            int bit = s & 1;
            s = static_cast<std::uint16_t>(bit | (bit << 1));
        }
        CHECK(parallel_accept_prob(sys, mirror, 0) == parallel_accept_prob(sys, mirror, 1));
    });
}

TEST_CASE("parallelize_to_csp structure") {
    ParallelPcppSystem sys = lift_scalars({toy_verifier(), toy_verifier()});
    CspInstance csp = parallelize_to_csp(sys);
    CHECK(csp.num_vars == 3);        // v + one x column + one proof column
    CHECK(csp.alphabet_size == 4);   // {0,1}^2
    CHECK(csp.constraints.size() == 2);
}

TEST_CASE("csp value equals the selected layer's acceptance probability") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        ParallelPcppSystem sys = gen_micro_system(derive_seed(seed, "unit-micro"));
        CspInstance csp = parallelize_to_csp(sys);
        for_each_psi(sys, [&](const LayeredAssignment& psi) {
            for (int v = 0; v < sys.alphabet(); ++v) {
                LayeredAssignment with_v = psi;
                with_v.v = v;
                Rational expect = v < sys.t ? parallel_accept_prob(sys, psi, v) : Rational(0);
                CHECK(value(csp, to_csp_assignment(with_v)) == expect);
            }
        });
    }
}

TEST_CASE("csp assignment conversion round-trips") {
    ParallelPcppSystem sys = lift_scalars({toy_verifier(), toy_verifier()});
    LayeredAssignment psi;
    psi.columns = {3, 1};
    psi.v = 1;
    Assignment a = to_csp_assignment(psi);
    CHECK(a == Assignment{1, 3, 1});
    CHECK(from_csp_assignment(a, 2) == psi);
}

TEST_CASE("km24_circuit accepts exactly the coherent triples") {
    ReconfigProblem src = or_source();
    LinearCode code = hadamard_code(2);
    Circuit c = km24_circuit(src.instance, code, 0);
    CHECK(c.input_len == 3 * code.block_len);

    auto pack = [&](const Assignment& a1, const Assignment& a2, const Assignment& a3) {
        std::uint64_t w = 0;
        int off = 0;
        for (const Assignment* a : {&a1, &a2, &a3}) {
            w |= code.encode(assignment_to_bits(*a)).word << off;
            off += code.block_len;
        }
        return w;
    };

    Assignment z{1, 0}, zp{1, 1}, far{0, 1};
    CHECK(c.eval_packed(pack(zp, zp, zp)));
    CHECK(c.eval_packed(pack(zp, z, z)));       // pairwise distance <= 1
    CHECK_FALSE(c.eval_packed(pack(far, z, z)));  // (01) vs (10): distance 2
    // Decoded assignments must satisfy the source.
    Assignment bad{0, 0};
    CHECK_FALSE(c.eval_packed(pack(bad, bad, bad)));
    // A non-codeword in any slot rejects.
    std::uint64_t honest = pack(zp, zp, zp);
    CHECK_FALSE(c.eval_packed(honest ^ 1));
}

TEST_CASE("km24_build parameter arithmetic") {
    Km24Instance inst = km24_build(or_source(), hadamard_code(2), 2);
    CHECK(inst.system.t == 4);
    CHECK(inst.system.x_cols == 4);
    CHECK(inst.system.proof_cols == 12);
    CHECK(inst.system.alphabet() == 16);
    CspInstance csp = parallelize_to_csp(inst.system);
    CHECK(csp.num_vars == 17);
    CHECK(csp.constraints.size() == inst.system.num_omegas());
    CHECK(parallel_value(inst.system, inst.psi_ini) == Rational(1));
    CHECK(parallel_value(inst.system, inst.psi_tar) == Rational(1));
}

TEST_CASE("completeness path on a one-step source") {
    Km24Instance inst = km24_build(or_source(), hadamard_code(2), 1);
    ReconfigPath src_path{{{1, 0}, {1, 1}}};
    auto path = completeness_path(inst, src_path);
    REQUIRE(!path.empty());
    CHECK(path.front() == inst.psi_ini);
    CHECK(path.back() == inst.psi_tar);
    for (std::size_t s = 0; s < path.size(); ++s) {
        CHECK(parallel_accept_prob(inst.system, path[s], path[s].v) == Rational(1));
        if (s == 0) continue;
        Assignment prev = to_csp_assignment(path[s - 1]);
        Assignment cur = to_csp_assignment(path[s]);
        int diff = 0;
        for (std::size_t j = 0; j < cur.size(); ++j)
            if (cur[j] != prev[j]) ++diff;
        CHECK(diff == 1);
    }

    // The reduced problem accepts the lifted path at threshold 1.
    CspInstance reduced = parallelize_to_csp(inst.system);
    ReconfigProblem problem = ReconfigProblem::strict(
        reduced, to_csp_assignment(inst.psi_ini), to_csp_assignment(inst.psi_tar));
    ReconfigPath lifted;
    for (const auto& psi : path) lifted.steps.push_back(to_csp_assignment(psi));
    CHECK(verify_path(problem, lifted, Rational(1)));
}

TEST_CASE("completeness path on a constant source is a single state") {
    ReconfigProblem src = or_source();
    src.sigma_tar = src.sigma_ini;
    Km24Instance inst = km24_build(src, hadamard_code(2), 1);
    ReconfigPath still{{src.sigma_ini}};
    auto path = completeness_path(inst, still);
    CHECK(path.size() == 1);
    CHECK(path.front() == inst.psi_ini);
    CHECK(inst.psi_ini == inst.psi_tar);
}

TEST_CASE("extraction: honest states, majority votes, radius stability") {
    Km24Instance inst = km24_build(or_source(), hadamard_code(2), 1);
    auto z0 = extract_assignment(inst, inst.psi_ini);
    REQUIRE(z0.has_value());
    CHECK(bits_to_assignment(*z0) == inst.source.sigma_ini);

    // Layers 1..3 decode to (z', z, z): two-of-three majority picks z.
    LinearCode& code = inst.code;
    LayeredAssignment psi = inst.psi_ini;
    Bits ez = code.encode(assignment_to_bits(Assignment{1, 0}));
    Bits ezp = code.encode(assignment_to_bits(Assignment{1, 1}));
    for (int c = 0; c < code.block_len; ++c) {
        auto set_layer_bit = [&](int layer, const Bits& cw) {
            std::uint16_t mask = static_cast<std::uint16_t>(1 << layer);
            if (cw.get(c)) psi.columns[static_cast<std::size_t>(c)] |= mask;
            else psi.columns[static_cast<std::size_t>(c)] &= static_cast<std::uint16_t>(~mask);
        };
        set_layer_bit(1, ezp);
        set_layer_bit(2, ez);
        set_layer_bit(3, ez);
    }
    psi.v = 0;
    auto voted = extract_assignment(inst, psi);
    REQUIRE(voted.has_value());
    CHECK(bits_to_assignment(*voted) == Assignment{1, 0});

    // Invalid indicator value is BOTTOM.
    LayeredAssignment invalid = inst.psi_ini;
    invalid.v = 7;
    CHECK_FALSE(extract_assignment(inst, invalid).has_value());
}

TEST_CASE("extraction survives one corrupted bit when the radius allows") {
    Km24Instance inst = km24_build(free3_source(), hadamard_code(3), 1);
    REQUIRE(inst.code.unique_radius() == 1);
    auto base = extract_assignment(inst, inst.psi_ini);
    REQUIRE(base.has_value());
    for (int c = 0; c < inst.code.block_len; ++c) {
        LayeredAssignment corrupted = inst.psi_ini;
        corrupted.columns[static_cast<std::size_t>(c)] ^= 1 << 2;   // x layer 2
        auto z = extract_assignment(inst, corrupted);
        REQUIRE(z.has_value());
        CHECK(z->word == base->word);
    }
}

TEST_CASE("binarize_csp") {
    // Binary alphabet: the transform is the identity on semantics.
    ReconfigProblem src = or_source();
    CspInstance same = binarize_csp(src.instance);
    CHECK(same.num_vars == src.instance.num_vars);
    CHECK(same.alphabet_size == 2);

    // One variable over {0,1,2,3}, constraint "symbol = 3".
    std::vector<Constraint> cons;
    cons.push_back(Constraint::table({0}, {{3}}));
    CspInstance quad(1, 4, std::move(cons));
    CspInstance bin = binarize_csp(quad);
    CHECK(bin.num_vars == 2);
    CHECK(bin.alphabet_size == 2);
    REQUIRE(bin.constraints.size() == 1);
    CHECK(bin.constraints[0].accepted == std::vector<std::vector<int>>{{1, 1}});
    CHECK(binarize_assignment({3}, 4) == Assignment{1, 1});
    CHECK(binarize_assignment({2}, 4) == Assignment{0, 1});

    // Solution counts agree on random instances.
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        CspInstance inst = gen_random_table_csp(seed, 3, 4, 2, 2);
        CspInstance b = binarize_csp(inst);
        std::uint64_t src_count = 0, bin_count = 0;
        AssignmentEnumerator en(inst.num_vars, inst.alphabet_size, kBudget);
        Assignment a;
        while (en.next(a))
            if (is_solution(inst, a)) ++src_count;
        AssignmentEnumerator eb(b.num_vars, b.alphabet_size, kBudget);
        while (eb.next(a))
            if (is_solution(b, a)) ++bin_count;
        CHECK(src_count == bin_count);
    }
}

TEST_CASE("km24_build rejects non-binary sources") {
    std::vector<Constraint> cons;
    cons.push_back(Constraint::table({0}, {{0}, {1}, {2}}));
    ReconfigProblem p =
        ReconfigProblem::strict(CspInstance(1, 3, std::move(cons)), {0}, {2});
    CHECK_THROWS_AS(km24_build(p, hadamard_code(1), 1), InputError);
}
