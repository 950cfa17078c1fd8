#ifndef RECFG_RECONFIG_HPP
#define RECFG_RECONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "recfg/csp.hpp"

namespace recfg {

// Endpoint pair for reconfiguration.  The strict constructor requires both
// endpoints to be solutions; `relaxed` admits arbitrary endpoints (used by
// oracle cross-checks on seeded micro instances) and marks the problem so.
struct ReconfigProblem {
    CspInstance instance;
    Assignment sigma_ini;
    Assignment sigma_tar;
    bool relaxed = false;

    static ReconfigProblem strict(CspInstance instance, Assignment ini, Assignment tar);
    static ReconfigProblem make_relaxed(CspInstance instance, Assignment ini, Assignment tar);
};

struct ReconfigPath {
    std::vector<Assignment> steps;   // non-empty; consecutive steps differ in <= 1 coordinate
};

// All assignments at Hamming distance exactly 1 from `a`
// (num_vars * (alphabet-1) of them, in (variable, symbol) order).
std::vector<Assignment> neighbors(const CspInstance& inst, const Assignment& a);

// Shortest path through solution states only, if one exists.
// Deterministic: BFS with lexicographic tie-breaking.
std::optional<ReconfigPath> exact_path(const ReconfigProblem& p, std::uint64_t budget);

// Bottleneck value: max over ini->tar paths of the min step value.
// Binary search over the |E|+1 candidate thresholds with connectivity BFS.
Rational reconfig_value(const ReconfigProblem& p, std::uint64_t budget);

// Same contract, computed by widest-path dynamic programming over the full
// configuration graph.  Independent oracle for reconfig_value; tiny spaces only.
Rational brute_force_reconfig_value(const ReconfigProblem& p, std::uint64_t budget);

// Optional certificate for reconfig_value: a path whose bottleneck is optimal.
ReconfigPath bottleneck_path(const ReconfigProblem& p, std::uint64_t budget);

// True iff the path connects the problem's endpoints, moves one coordinate at
// a time, and every step has value >= threshold.  Malformed input yields false
// with a diagnostic, never a throw.
bool verify_path(const ReconfigProblem& p, const ReconfigPath& path, const Rational& threshold,
                 std::string* diagnostic = nullptr);

} // namespace recfg

#endif
