#ifndef RECFG_PARALLEL_HPP
#define RECFG_PARALLEL_HPP

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "recfg/csp.hpp"
#include "recfg/ecc.hpp"
#include "recfg/pcpp.hpp"
#include "recfg/reconfig.hpp"

namespace recfg {

// Predicate of one layer's verifier for one randomness string, applied to the
// full layered symbols of the queried columns (each symbol is a t-bit stack).
using LayerPredicate = std::function<bool(std::span<const std::uint16_t>)>;

// t layer-aware verifiers sharing one column-query map over x_cols + proof_cols
// columns.  Row-local predicates (each layer reading only its own row) are the
// special case produced by lift_scalars; the KM24 builder installs predicates
// that read the other layers of the sampled x columns as well.
struct ParallelPcppSystem {
    int t = 0;
    int x_cols = 0;
    int proof_cols = 0;
    int r = 0;
    std::vector<std::vector<int>> queries;              // [2^r] column tuples (repeats allowed)
    std::vector<std::vector<LayerPredicate>> layer_preds;   // [t][2^r]
    Rational declared_delta{0, 1};
    Rational declared_kappa{1, 1};

    int cols() const { return x_cols + proof_cols; }
    std::uint64_t num_omegas() const { return std::uint64_t{1} << r; }
    int alphabet() const { return 1 << t; }
    void validate() const;
};

// Column symbols over {0,1}^t plus the indicator variable v.  Values 0..t-1 of
// v select a layer; all other values are invalid indicator states.
struct LayeredAssignment {
    std::vector<std::uint16_t> columns;    // x columns first, then proof columns
    int v = 0;

    bool operator==(const LayeredAssignment&) const = default;
};

// Row i of the x-column region (or of the proof region with offset/len set).
Bits layer_row(const LayeredAssignment& psi, int layer, int first_col, int len);

// Stacks t parallelizable scalar verifiers; layer i's predicate reads only
// layer i of each queried column.
ParallelPcppSystem lift_scalars(const std::vector<ScalarPcpp>& vs);

// Exact fraction of randomness strings whose layer-i predicate accepts (v ignored).
Rational parallel_accept_prob(const ParallelPcppSystem& sys, const LayeredAssignment& psi,
                              int layer);

// max over layers of parallel_accept_prob: the per-step value of the
// parallel-PCPP reconfiguration formulation.
Rational parallel_value(const ParallelPcppSystem& sys, const LayeredAssignment& psi);

// The parallelization reduction: one structured (arity <= q+1) constraint per
// randomness string on {v} ∪ queried columns, satisfied iff v selects a layer
// in [t] whose predicate accepts the queried layered values.
CspInstance parallelize_to_csp(const ParallelPcppSystem& sys);

// CSP variable order: v first, then columns.
Assignment to_csp_assignment(const LayeredAssignment& psi);
LayeredAssignment from_csp_assignment(const Assignment& a, int num_cols);

// Circuit on 3*block_len bits (the triple (w_j), j in [4]\{excluded_layer}, in
// ascending j order): accepts iff each w_j is exactly a codeword, each decoded
// assignment satisfies `source`, and the decoded assignments are pairwise
// within Hamming distance 1.
Circuit km24_circuit(const CspInstance& source, const LinearCode& code, int excluded_layer);

struct Km24Instance {
    ParallelPcppSystem system;     // t = 4
    ReconfigProblem source;        // binary alphabet
    LinearCode code;
    int reps = 0;                  // sampled x-columns per randomness string
    LayeredAssignment psi_ini;
    LayeredAssignment psi_tar;
};

// Full pipeline instance: 4 encoded x layers, per-layer proofs carrying the
// claimed triple of the other layers' codewords, randomness sampling `reps`
// x-columns.  Endpoint assignments are the honest encodings of the source
// endpoints with v = 0.
Km24Instance km24_build(const ReconfigProblem& source, const LinearCode& code, int reps);

// Honest proof content for one layer, given the current source assignment held
// by each of the four x layers.
Bits km24_honest_proof(const Km24Instance& inst, int layer,
                       const std::array<Assignment, 4>& layer_values);

// Constructive completeness: turns an exact bit-adjacent source path into a
// reconfiguration sequence of the layered instance changing one variable per
// step with parallel_value 1 throughout.
std::vector<LayeredAssignment> completeness_path(const Km24Instance& inst,
                                                 const ReconfigPath& source_path);

// Majority-vote extraction over the decodings of the non-v x layers.
// nullopt (BOTTOM) when v is an invalid indicator, fewer than two layers
// decode uniquely, or the vote ties.
std::optional<Bits> extract_assignment(const Km24Instance& inst, const LayeredAssignment& psi);

// Splits each symbol over a power-of-two alphabet into log2|Σ| binary
// variables (little-endian); solutions are in bijection with the source's.
CspInstance binarize_csp(const CspInstance& inst);
Assignment binarize_assignment(const Assignment& a, int alphabet_size);
ReconfigProblem binarize_problem(const ReconfigProblem& p);

Assignment bits_to_assignment(const Bits& b);
Bits assignment_to_bits(const Assignment& a);

} // namespace recfg

#endif
