#ifndef RECFG_ERRORS_HPP
#define RECFG_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace recfg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rejected input: out-of-range index, malformed assignment, precondition violation.
struct InputError : Error {
    using Error::Error;
};

// Text format violation; carries the 1-based line of the first offending token.
struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& what_)
        : Error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

// Enumeration budget exceeded; carries the exact state-space size that was requested.
struct BudgetError : Error {
    std::uint64_t requested;
    BudgetError(std::uint64_t requested_, std::uint64_t budget)
        : Error("enumeration budget exceeded: need " + std::to_string(requested_) +
                " states, budget is " + std::to_string(budget)),
          requested(requested_) {}
};

} // namespace recfg

#endif
