#ifndef RECFG_SUITE_HPP
#define RECFG_SUITE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace recfg {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;
    double ms;
};

// Runs the full verification battery (exhaustive micro-tier identities,
// oracle agreements, code and verifier audits, end-to-end pipeline checks).
// One result per criterion; progress lines go to `out` when non-null.
std::vector<CriterionResult> run_acceptance_suite(std::uint64_t seed, std::ostream* out);

} // namespace recfg

#endif
