#ifndef RECFG_CSP_HPP
#define RECFG_CSP_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "recfg/errors.hpp"
#include "recfg/rational.hpp"

namespace recfg {

// Symbols are integers in [0, alphabet_size).
using Assignment = std::vector<int>;

// One arity-q constraint on a tuple of pairwise-distinct variables.
//
// Two physical forms behind one logical predicate: TABLE keeps an explicit
// accepted-tuple set; STRUCTURED delegates to a stored evaluator (used by the
// verifier-derived instances, whose arities make tuple tables infeasible).
struct Constraint {
    enum class Form { Table, Structured };

    std::vector<int> vars;
    Form form = Form::Table;
    std::vector<std::vector<int>> accepted;                 // TABLE, kept sorted
    std::function<bool(std::span<const int>)> evaluator;    // STRUCTURED

    static Constraint table(std::vector<int> vars, std::vector<std::vector<int>> accepted);
    static Constraint structured(std::vector<int> vars,
                                 std::function<bool(std::span<const int>)> evaluator);

    int arity() const { return static_cast<int>(vars.size()); }

    // Total predicate over the local tuple (symbols for `vars`, in order).
    bool eval_local(std::span<const int> local) const;
};

struct CspInstance {
    int num_vars = 0;
    int alphabet_size = 0;
    std::vector<Constraint> constraints;   // multiset: duplicates count with multiplicity

    CspInstance() = default;
    CspInstance(int num_vars, int alphabet_size, std::vector<Constraint> constraints);

    std::size_t num_constraints() const { return constraints.size(); }
    void check_assignment(const Assignment& a) const;
};

bool eval_constraint(const CspInstance& inst, std::size_t idx, const Assignment& a);

// Fraction of constraints satisfied, counted with multiplicity. Exact.
Rational value(const CspInstance& inst, const Assignment& a);

// Integer count of satisfied constraints (value * |E|).
std::uint64_t satisfied_count(const CspInstance& inst, const Assignment& a);

bool is_solution(const CspInstance& inst, const Assignment& a);

// Lexicographic enumeration of all alphabet^num_vars assignments.
// Throws BudgetError at construction if the space exceeds `budget`.
class AssignmentEnumerator {
public:
    AssignmentEnumerator(int num_vars, int alphabet_size, std::uint64_t budget);
    // Writes the next assignment into `out`; false when exhausted.
    bool next(Assignment& out);

private:
    int num_vars_, alphabet_size_;
    Assignment current_;
    bool done_ = false, started_ = false;
};

// Number of assignments, or throws BudgetError if it exceeds `budget`.
std::uint64_t state_space_size(int num_vars, int alphabet_size, std::uint64_t budget);

// Dense state index <-> assignment, in the enumerator's lexicographic order
// (variable 0 most significant).
std::uint64_t assignment_index(const Assignment& a, int alphabet_size);
Assignment assignment_from_index(std::uint64_t idx, int num_vars, int alphabet_size);

// Text format (TABLE-form instances only; see parse for the grammar).
std::string serialize(const CspInstance& inst);
CspInstance parse_csp(const std::string& text);

} // namespace recfg

#endif
