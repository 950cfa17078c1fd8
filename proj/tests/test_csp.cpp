#include <doctest.h>

#include <algorithm>

#include "recfg/csp.hpp"

using namespace recfg;

namespace {

Constraint equality01() { return Constraint::table({0, 1}, {{0, 0}, {1, 1}}); }
Constraint both_ones01() { return Constraint::table({0, 1}, {{1, 1}}); }

CspInstance equality_instance() {
    std::vector<Constraint> cons;
    cons.push_back(equality01());
    return CspInstance(2, 2, std::move(cons));
}

} // namespace

TEST_CASE("eval_constraint on the equality predicate") {
    CspInstance inst = equality_instance();
    CHECK(eval_constraint(inst, 0, {0, 0}));
    CHECK_FALSE(eval_constraint(inst, 0, {0, 1}));
    CHECK(eval_constraint(inst, 0, {1, 1}));
}

TEST_CASE("value counts satisfied constraints exactly") {
    CspInstance eq = equality_instance();
    CHECK(value(eq, {0, 0}) == Rational(1));

    std::vector<Constraint> cons;
    cons.push_back(equality01());
    cons.push_back(both_ones01());
    CspInstance two(2, 2, std::move(cons));
    CHECK(value(two, {0, 0}) == Rational(1, 2));
    CHECK(value(two, {1, 1}) == Rational(1));
    CHECK(satisfied_count(two, {0, 0}) == 1);
}

TEST_CASE("is_solution matches value == 1") {
    std::vector<Constraint> cons;
    cons.push_back(equality01());
    cons.push_back(both_ones01());
    CspInstance inst(2, 2, std::move(cons));
    CHECK(is_solution(inst, {1, 1}));
    CHECK_FALSE(is_solution(inst, {0, 0}));
    AssignmentEnumerator en(2, 2, 16);
    Assignment a;
    while (en.next(a)) CHECK(is_solution(inst, a) == (value(inst, a) == Rational(1)));
}

TEST_CASE("duplicated constraints count with multiplicity") {
    std::vector<Constraint> cons;
    cons.push_back(equality01());
    cons.push_back(both_ones01());
    cons.push_back(both_ones01());
    CspInstance inst(2, 2, std::move(cons));
    CHECK(value(inst, {0, 0}) == Rational(1, 3));
}

TEST_CASE("enumerator yields the full lexicographic order") {
    AssignmentEnumerator en(2, 2, 16);
    std::vector<Assignment> all;
    Assignment a;
    while (en.next(a)) all.push_back(a);
    CHECK(all == std::vector<Assignment>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});

    AssignmentEnumerator en3(1, 3, 16);
    all.clear();
    while (en3.next(a)) all.push_back(a);
    CHECK(all == std::vector<Assignment>{{0}, {1}, {2}});

    AssignmentEnumerator en8(3, 2, 16);
    all.clear();
    while (en8.next(a)) all.push_back(a);
    CHECK(all.size() == 8);
    std::sort(all.begin(), all.end());
    CHECK(std::unique(all.begin(), all.end()) == all.end());
}

TEST_CASE("enumeration budget is enforced at construction") {
    CHECK_THROWS_AS(AssignmentEnumerator(4, 4, 255), BudgetError);
    CHECK(state_space_size(4, 4, 256) == 256);
    CHECK_THROWS_AS(state_space_size(40, 3, std::uint64_t{1} << 20), BudgetError);
}

TEST_CASE("assignment index round-trips") {
    for (std::uint64_t i = 0; i < 27; ++i) {
        Assignment a = assignment_from_index(i, 3, 3);
        CHECK(assignment_index(a, 3) == i);
    }
    // Variable 0 is the most significant digit.
    CHECK(assignment_from_index(9, 3, 3) == Assignment{1, 0, 0});
}

TEST_CASE("serialize and parse round-trip") {
    std::vector<Constraint> cons;
    cons.push_back(equality01());
    cons.push_back(Constraint::table({2, 0}, {{1, 0}, {2, 1}, {0, 2}}));
    CspInstance inst(3, 3, std::move(cons));
    CspInstance back = parse_csp(serialize(inst));
    CHECK(back.num_vars == inst.num_vars);
    CHECK(back.alphabet_size == inst.alphabet_size);
    REQUIRE(back.constraints.size() == inst.constraints.size());
    for (std::size_t i = 0; i < back.constraints.size(); ++i) {
        CHECK(back.constraints[i].vars == inst.constraints[i].vars);
        CHECK(back.constraints[i].accepted == inst.constraints[i].accepted);
    }
}

TEST_CASE("parse errors name the offending line") {
    std::string bad = "csp 2 2 1\ncon 2 0 5 1\nacc 0 0\n";
    try {
        parse_csp(bad);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("serialize rejects structured constraints") {
    std::vector<Constraint> cons;
    cons.push_back(Constraint::structured({0}, [](std::span<const int>) { return true; }));
    CspInstance inst(1, 2, std::move(cons));
    CHECK_THROWS_AS(serialize(inst), InputError);
}

TEST_CASE("constraints require distinct in-range variables") {
    CHECK_THROWS_AS(Constraint::table({0, 0}, {{0, 0}}), InputError);
    std::vector<Constraint> cons;
    cons.push_back(Constraint::table({0, 3}, {{0, 0}}));
    CHECK_THROWS_AS(CspInstance(2, 2, std::move(cons)), InputError);
}

TEST_CASE("parse_rational accepts integers and fractions") {
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("2/4") == Rational(1, 2));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("x"));
}
