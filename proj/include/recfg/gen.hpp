#ifndef RECFG_GEN_HPP
#define RECFG_GEN_HPP

#include <cstdint>
#include <optional>

#include "recfg/parallel.hpp"
#include "recfg/reconfig.hpp"

namespace recfg {

// All generation is deterministic per seed; sub-streams are derived by
// hashing the seed with a stream name so commands stay reproducible.
std::uint64_t derive_seed(std::uint64_t seed, const std::string& stream);

// n binary variables chained by equality constraints, endpoints all-0 / all-1.
// A NO instance for any positive threshold.
ReconfigProblem gen_equality_chain(int n);

// n binary variables chained by OR constraints, endpoints alternating
// 1010../0101..; a YES instance.
ReconfigProblem gen_or_chain(int n);

// Random TABLE-form instance; every predicate keeps each tuple accepted with
// probability 1/2 (at least one accepted tuple is forced).
CspInstance gen_random_table_csp(std::uint64_t seed, int num_vars, int alphabet_size,
                                 int num_constraints, int arity);

// Random instance plus a relaxed endpoint pair (arbitrary assignments).
ReconfigProblem gen_random_problem(std::uint64_t seed, int num_vars, int alphabet_size,
                                   int num_constraints, int arity);

// Random instance whose endpoints are two of its solutions (strict problem,
// so the file round-trips through the default parser).  Retries derived seeds
// until an instance with at least two solutions appears.
ReconfigProblem gen_random_solvable_problem(std::uint64_t seed, int num_vars, int alphabet_size,
                                            int num_constraints, int arity);

// Random micro parallel system: t in {1,2}, x_cols+proof_cols <= 4, r <= 2,
// q <= 3, uniformly random layer predicate tables.
ParallelPcppSystem gen_micro_system(std::uint64_t seed);

// Random layered endpoint pair for a micro system (valid indicator values).
std::pair<LayeredAssignment, LayeredAssignment> gen_micro_endpoints(
    const ParallelPcppSystem& sys, std::uint64_t seed);

// Random binary 2-CSP source with a known exact bit-adjacent path between two
// solutions.  Retries derived seeds internally; nullopt if none found.
struct SourceWithPath {
    ReconfigProblem problem;
    ReconfigPath path;
};
std::optional<SourceWithPath> gen_adjacent_source(std::uint64_t seed, int num_vars);

} // namespace recfg

#endif
