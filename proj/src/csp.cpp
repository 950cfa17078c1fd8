#include "recfg/csp.hpp"

#include <algorithm>
#include <sstream>

#include "recfg/detail/line_reader.hpp"

namespace recfg {

namespace {

void check_distinct_vars(const std::vector<int>& vars) {
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i] == vars[j])
                throw InputError("constraint: repeated variable index " +
                                 std::to_string(vars[i]));
}

} // namespace

Constraint Constraint::table(std::vector<int> vars, std::vector<std::vector<int>> accepted) {
    check_distinct_vars(vars);
    Constraint c;
    c.vars = std::move(vars);
    c.form = Form::Table;
    c.accepted = std::move(accepted);
    std::sort(c.accepted.begin(), c.accepted.end());
    c.accepted.erase(std::unique(c.accepted.begin(), c.accepted.end()), c.accepted.end());
    return c;
}

Constraint Constraint::structured(std::vector<int> vars,
                                  std::function<bool(std::span<const int>)> evaluator) {
    check_distinct_vars(vars);
    Constraint c;
    c.vars = std::move(vars);
    c.form = Form::Structured;
    c.evaluator = std::move(evaluator);
    return c;
}

bool Constraint::eval_local(std::span<const int> local) const {
    if (static_cast<int>(local.size()) != arity())
        throw InputError("constraint: local tuple length mismatch");
    if (form == Form::Structured) return evaluator(local);
    std::vector<int> key(local.begin(), local.end());
    return std::binary_search(accepted.begin(), accepted.end(), key);
}

CspInstance::CspInstance(int num_vars_, int alphabet_size_, std::vector<Constraint> constraints_)
    : num_vars(num_vars_), alphabet_size(alphabet_size_), constraints(std::move(constraints_)) {
    if (num_vars <= 0) throw InputError("csp: num_vars must be positive");
    if (alphabet_size <= 0) throw InputError("csp: alphabet_size must be positive");
    if (constraints.empty()) throw InputError("csp: constraint list must be non-empty");
    for (const auto& c : constraints) {
        std::vector<int> seen;
        for (int v : c.vars) {
            if (v < 0 || v >= num_vars) throw InputError("csp: variable index out of range");
            if (std::find(seen.begin(), seen.end(), v) != seen.end())
                throw InputError("csp: repeated variable within one constraint");
            seen.push_back(v);
        }
        if (c.form == Constraint::Form::Table) {
            for (const auto& tup : c.accepted) {
                if (tup.size() != c.vars.size())
                    throw InputError("csp: accepted tuple arity mismatch");
                for (int s : tup)
                    if (s < 0 || s >= alphabet_size)
                        throw InputError("csp: accepted tuple symbol out of range");
            }
        } else if (!c.evaluator) {
            throw InputError("csp: structured constraint without evaluator");
        }
    }
}

void CspInstance::check_assignment(const Assignment& a) const {
    if (static_cast<int>(a.size()) != num_vars)
        throw InputError("assignment: wrong length");
    for (int s : a)
        if (s < 0 || s >= alphabet_size)
            throw InputError("assignment: symbol out of range");
}

bool eval_constraint(const CspInstance& inst, std::size_t idx, const Assignment& a) {
    if (idx >= inst.constraints.size()) throw InputError("eval_constraint: index out of range");
    inst.check_assignment(a);
    const Constraint& c = inst.constraints[idx];
    std::vector<int> local(c.vars.size());
    for (std::size_t i = 0; i < c.vars.size(); ++i) local[i] = a[static_cast<std::size_t>(c.vars[i])];
    return c.eval_local(local);
}

std::uint64_t satisfied_count(const CspInstance& inst, const Assignment& a) {
    inst.check_assignment(a);
    std::uint64_t count = 0;
    std::vector<int> local;
    for (const Constraint& c : inst.constraints) {
        local.resize(c.vars.size());
        for (std::size_t i = 0; i < c.vars.size(); ++i)
            local[i] = a[static_cast<std::size_t>(c.vars[i])];
        if (c.eval_local(local)) ++count;
    }
    return count;
}

Rational value(const CspInstance& inst, const Assignment& a) {
    return Rational(BigInt(satisfied_count(inst, a)), BigInt(inst.constraints.size()));
}

bool is_solution(const CspInstance& inst, const Assignment& a) {
    return satisfied_count(inst, a) == inst.constraints.size();
}

std::uint64_t state_space_size(int num_vars, int alphabet_size, std::uint64_t budget) {
    std::uint64_t size = 1;
    for (int i = 0; i < num_vars; ++i) {
        if (size > budget / static_cast<std::uint64_t>(alphabet_size))
            throw BudgetError(0, budget);  // product overflows the budget; exact size unknown
        size *= static_cast<std::uint64_t>(alphabet_size);
    }
    if (size > budget) throw BudgetError(size, budget);
    return size;
}

AssignmentEnumerator::AssignmentEnumerator(int num_vars, int alphabet_size, std::uint64_t budget)
    : num_vars_(num_vars), alphabet_size_(alphabet_size) {
    state_space_size(num_vars, alphabet_size, budget);
    current_.assign(static_cast<std::size_t>(num_vars), 0);
}

bool AssignmentEnumerator::next(Assignment& out) {
    if (done_) return false;
    if (!started_) {
        started_ = true;
        out = current_;
        return true;
    }
    // Lexicographic increment, last variable fastest.
    int i = num_vars_ - 1;
    while (i >= 0 && current_[static_cast<std::size_t>(i)] == alphabet_size_ - 1) {
        current_[static_cast<std::size_t>(i)] = 0;
        --i;
    }
    if (i < 0) { done_ = true; return false; }
    ++current_[static_cast<std::size_t>(i)];
    out = current_;
    return true;
}

std::uint64_t assignment_index(const Assignment& a, int alphabet_size) {
    std::uint64_t idx = 0;
    for (int s : a) idx = idx * static_cast<std::uint64_t>(alphabet_size) + static_cast<std::uint64_t>(s);
    return idx;
}

Assignment assignment_from_index(std::uint64_t idx, int num_vars, int alphabet_size) {
    Assignment a(static_cast<std::size_t>(num_vars));
    for (int i = num_vars - 1; i >= 0; --i) {
        a[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::uint64_t>(alphabet_size));
        idx /= static_cast<std::uint64_t>(alphabet_size);
    }
    return a;
}

std::string serialize(const CspInstance& inst) {
    std::ostringstream out;
    out << "csp " << inst.num_vars << " " << inst.alphabet_size << " "
        << inst.constraints.size() << "\n";
    for (const Constraint& c : inst.constraints) {
        if (c.form != Constraint::Form::Table)
            throw InputError("serialize: structured constraints serialize via their owning system");
        out << "con " << c.arity();
        for (int v : c.vars) out << " " << v;
        out << " " << c.accepted.size() << "\n";
        for (const auto& tup : c.accepted) {
            out << "acc";
            for (int s : tup) out << " " << s;
            out << "\n";
        }
    }
    return out.str();
}

using detail::LineReader;
using detail::parse_int;

CspInstance parse_csp_from(LineReader& rd) {
    std::vector<std::string> toks;
    int line = 0;
    if (!rd.next_line(toks, line)) throw ParseError(rd.line() + 1, "missing csp header");
    if (toks[0] != "csp" || toks.size() != 4)
        throw ParseError(line, "expected 'csp <num_vars> <alphabet_size> <num_constraints>'");
    int num_vars = parse_int(toks[1], line);
    int alphabet = parse_int(toks[2], line);
    int num_cons = parse_int(toks[3], line);
    if (num_vars <= 0) throw ParseError(line, "num_vars must be positive");
    if (alphabet <= 0) throw ParseError(line, "alphabet_size must be positive");
    if (num_cons <= 0) throw ParseError(line, "num_constraints must be positive");

    std::vector<Constraint> cons;
    for (int ci = 0; ci < num_cons; ++ci) {
        if (!rd.next_line(toks, line)) throw ParseError(rd.line() + 1, "missing 'con' line");
        if (toks[0] != "con" || toks.size() < 2)
            throw ParseError(line, "expected 'con <arity> <vars...> <num_accepted>'");
        int arity = parse_int(toks[1], line);
        if (arity <= 0) throw ParseError(line, "arity must be positive");
        if (static_cast<int>(toks.size()) != 3 + arity)
            throw ParseError(line, "wrong token count on 'con' line");
        std::vector<int> vars(static_cast<std::size_t>(arity));
        for (int i = 0; i < arity; ++i) {
            vars[static_cast<std::size_t>(i)] = parse_int(toks[static_cast<std::size_t>(2 + i)], line);
            if (vars[static_cast<std::size_t>(i)] < 0 || vars[static_cast<std::size_t>(i)] >= num_vars)
                throw ParseError(line, "variable index out of range");
        }
        int num_acc = parse_int(toks.back(), line);
        if (num_acc < 0) throw ParseError(line, "num_accepted must be non-negative");
        std::vector<std::vector<int>> accepted;
        for (int ai = 0; ai < num_acc; ++ai) {
            if (!rd.next_line(toks, line)) throw ParseError(rd.line() + 1, "missing 'acc' line");
            if (toks[0] != "acc" || static_cast<int>(toks.size()) != 1 + arity)
                throw ParseError(line, "expected 'acc' with " + std::to_string(arity) + " symbols");
            std::vector<int> tup(static_cast<std::size_t>(arity));
            for (int i = 0; i < arity; ++i) {
                tup[static_cast<std::size_t>(i)] = parse_int(toks[static_cast<std::size_t>(1 + i)], line);
                if (tup[static_cast<std::size_t>(i)] < 0 || tup[static_cast<std::size_t>(i)] >= alphabet)
                    throw ParseError(line, "accepted symbol out of range");
            }
            accepted.push_back(std::move(tup));
        }
        cons.push_back(Constraint::table(std::move(vars), std::move(accepted)));
    }
    return CspInstance(num_vars, alphabet, std::move(cons));
}

CspInstance parse_csp(const std::string& text) {
    LineReader rd(text);
    CspInstance inst = parse_csp_from(rd);
    std::vector<std::string> toks;
    int line = 0;
    if (rd.next_line(toks, line)) throw ParseError(line, "trailing tokens after instance");
    return inst;
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text), BigInt(1));
        return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    } catch (const std::exception&) {
        throw InputError("bad rational: '" + text + "'");
    }
}

} // namespace recfg
