#include <doctest.h>

#include <algorithm>

#include "recfg/gen.hpp"
#include "recfg/reconfig.hpp"

using namespace recfg;

namespace {

constexpr std::uint64_t kBudget = std::uint64_t{1} << 16;

CspInstance equality2() {
    std::vector<Constraint> cons;
    cons.push_back(Constraint::table({0, 1}, {{0, 0}, {1, 1}}));
    return CspInstance(2, 2, std::move(cons));
}

Constraint always_true01() {
    return Constraint::table({0, 1}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

} // namespace

TEST_CASE("neighbors enumerates exactly the distance-1 assignments") {
    auto free_instance = [](int n, int sigma) {
        std::vector<std::vector<int>> all;
        for (int s = 0; s < sigma; ++s) all.push_back({s});
        std::vector<Constraint> cons;
        cons.push_back(Constraint::table({0}, all));
        return CspInstance(n, sigma, std::move(cons));
    };
    CspInstance one = free_instance(1, 3);
    CHECK(neighbors(one, {0}) == std::vector<Assignment>{{1}, {2}});

    CspInstance two = free_instance(2, 2);
    CHECK(neighbors(two, {0, 0}) == std::vector<Assignment>{{1, 0}, {0, 1}});

    CspInstance big = free_instance(3, 4);
    auto ns = neighbors(big, {1, 2, 3});
    CHECK(ns.size() == 3u * 3u);
    for (const auto& n : ns) {
        int diff = 0;
        for (std::size_t i = 0; i < n.size(); ++i)
            if (n[i] != Assignment{1, 2, 3}[i]) ++diff;
        CHECK(diff == 1);
    }
}

TEST_CASE("exact_path degenerate and small cases") {
    CspInstance eq = equality2();
    ReconfigProblem same = ReconfigProblem::strict(eq, {0, 0}, {0, 0});
    auto p = exact_path(same, kBudget);
    REQUIRE(p.has_value());
    CHECK(p->steps == std::vector<Assignment>{{0, 0}});

    // 1 var over {0,1,2}, constraint "symbol != 1", 0 -> 2.
    std::vector<Constraint> cons;
    cons.push_back(Constraint::table({0}, {{0}, {2}}));
    ReconfigProblem skip =
        ReconfigProblem::strict(CspInstance(1, 3, std::move(cons)), {0}, {2});
    auto sp = exact_path(skip, kBudget);
    REQUIRE(sp.has_value());
    CHECK(sp->steps == std::vector<Assignment>{{0}, {2}});

    // Equality on 2 binary vars: no all-solution path from 00 to 11.
    ReconfigProblem blocked = ReconfigProblem::strict(equality2(), {0, 0}, {1, 1});
    CHECK_FALSE(exact_path(blocked, kBudget).has_value());
}

TEST_CASE("reconfig_value on the pinned examples") {
    ReconfigProblem same = ReconfigProblem::strict(equality2(), {1, 1}, {1, 1});
    CHECK(reconfig_value(same, kBudget) == Rational(1));

    std::vector<Constraint> cons;
    cons.push_back(Constraint::table({0, 1}, {{0, 0}, {1, 1}}));
    cons.push_back(always_true01());
    ReconfigProblem half =
        ReconfigProblem::strict(CspInstance(2, 2, std::move(cons)), {0, 0}, {1, 1});
    CHECK(reconfig_value(half, kBudget) == Rational(1, 2));

    ReconfigProblem zero = ReconfigProblem::strict(equality2(), {0, 0}, {1, 1});
    CHECK(reconfig_value(zero, kBudget) == Rational(0));
}

TEST_CASE("brute force oracle reproduces the examples") {
    ReconfigProblem zero = ReconfigProblem::strict(equality2(), {0, 0}, {1, 1});
    CHECK(brute_force_reconfig_value(zero, kBudget) == Rational(0));

    std::vector<Constraint> cons;
    cons.push_back(Constraint::table({0, 1}, {{0, 0}, {1, 1}}));
    cons.push_back(always_true01());
    ReconfigProblem half =
        ReconfigProblem::strict(CspInstance(2, 2, std::move(cons)), {0, 0}, {1, 1});
    CHECK(brute_force_reconfig_value(half, kBudget) == Rational(1, 2));
}

TEST_CASE("verify_path on pinned cases") {
    CspInstance eq = equality2();
    ReconfigProblem same = ReconfigProblem::strict(eq, {0, 0}, {0, 0});
    ReconfigPath still{{{0, 0}, {0, 0}}};
    CHECK(verify_path(same, still, Rational(1)));

    // Middle step satisfies only the always-true constraint: value 1/2.
    std::vector<Constraint> cons;
    cons.push_back(Constraint::table({0, 1}, {{0, 0}, {1, 1}}));
    cons.push_back(always_true01());
    ReconfigProblem cross =
        ReconfigProblem::strict(CspInstance(2, 2, std::move(cons)), {0, 0}, {1, 1});
    ReconfigPath through{{{0, 0}, {0, 1}, {1, 1}}};
    std::string diag;
    CHECK_FALSE(verify_path(cross, through, Rational(1), &diag));
    CHECK_FALSE(diag.empty());
    CHECK(verify_path(cross, through, Rational(1, 2)));

    // Wrong endpoint and a two-coordinate jump are both rejected.
    ReconfigPath wrong_end{{{0, 0}, {0, 1}}};
    CHECK_FALSE(verify_path(cross, wrong_end, Rational(0)));
    ReconfigPath jump{{{0, 0}, {1, 1}}};
    CHECK_FALSE(verify_path(cross, jump, Rational(0)));
}

TEST_CASE("exact_path output always verifies at threshold 1") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        ReconfigProblem p = gen_random_solvable_problem(seed, 3, 2, 2, 2);
        auto path = exact_path(p, kBudget);
        bool yes = reconfig_value(p, kBudget) == Rational(1);
        CHECK(path.has_value() == yes);
        if (path) CHECK(verify_path(p, *path, Rational(1)));
    }
}

TEST_CASE("monotonicity under an always-true constraint") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        ReconfigProblem p = gen_random_problem(seed, 3, 2, 3, 2);
        Rational r = reconfig_value(p, kBudget);
        auto e = BigInt(p.instance.constraints.size());
        ReconfigProblem padded = p;
        padded.instance.constraints.push_back(always_true01());
        padded.instance = CspInstance(p.instance.num_vars, p.instance.alphabet_size,
                                      padded.instance.constraints);
        CHECK(reconfig_value(padded, kBudget) == Rational(r.numerator() * BigInt(e) / r.denominator() + 1, e + 1));
    }
}

TEST_CASE("symmetry in the endpoints") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        ReconfigProblem p = gen_random_problem(seed, 3, 2, 3, 2);
        ReconfigProblem swapped =
            ReconfigProblem::make_relaxed(p.instance, p.sigma_tar, p.sigma_ini);
        CHECK(reconfig_value(p, kBudget) == reconfig_value(swapped, kBudget));
    }
}

TEST_CASE("strict problems require solution endpoints") {
    CHECK_THROWS_AS(ReconfigProblem::strict(equality2(), {0, 1}, {1, 1}), InputError);
}

TEST_CASE("bottleneck_path certifies the value") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        ReconfigProblem p = gen_random_problem(seed, 3, 2, 3, 2);
        Rational v = reconfig_value(p, kBudget);
        ReconfigPath path = bottleneck_path(p, kBudget);
        CHECK(verify_path(p, path, v));
    }
}
