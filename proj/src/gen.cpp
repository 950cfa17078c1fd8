#include "recfg/gen.hpp"

#include <algorithm>
#include <random>

namespace recfg {

std::uint64_t derive_seed(std::uint64_t seed, const std::string& stream) {
    // FNV-1a over the stream name, mixed into the base seed.
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : stream) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return seed ^ h;
}

ReconfigProblem gen_equality_chain(int n) {
    if (n < 2) throw InputError("equality-chain: need at least 2 variables");
    std::vector<Constraint> cons;
    for (int i = 0; i + 1 < n; ++i)
        cons.push_back(Constraint::table({i, i + 1}, {{0, 0}, {1, 1}}));
    Assignment ini(static_cast<std::size_t>(n), 0), tar(static_cast<std::size_t>(n), 1);
    return ReconfigProblem::strict(CspInstance(n, 2, std::move(cons)), ini, tar);
}

ReconfigProblem gen_or_chain(int n) {
    if (n < 2) throw InputError("or-chain: need at least 2 variables");
    std::vector<Constraint> cons;
    for (int i = 0; i + 1 < n; ++i)
        cons.push_back(Constraint::table({i, i + 1}, {{0, 1}, {1, 0}, {1, 1}}));
    Assignment ini(static_cast<std::size_t>(n)), tar(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        ini[static_cast<std::size_t>(i)] = i % 2 == 0 ? 1 : 0;
        tar[static_cast<std::size_t>(i)] = i % 2 == 0 ? 0 : 1;
    }
    return ReconfigProblem::strict(CspInstance(n, 2, std::move(cons)), ini, tar);
}

CspInstance gen_random_table_csp(std::uint64_t seed, int num_vars, int alphabet_size,
                                 int num_constraints, int arity) {
    if (arity > num_vars) throw InputError("gen: arity cannot exceed num_vars");
    std::mt19937_64 rng(seed);
    std::vector<Constraint> cons;
    for (int ci = 0; ci < num_constraints; ++ci) {
        // Distinct variable tuple.
        std::vector<int> vars;
        while (static_cast<int>(vars.size()) < arity) {
            int v = static_cast<int>(rng() % static_cast<std::uint64_t>(num_vars));
            if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
        }
        std::uint64_t tuples = 1;
        for (int i = 0; i < arity; ++i) tuples *= static_cast<std::uint64_t>(alphabet_size);
        std::vector<std::vector<int>> accepted;
        for (std::uint64_t t = 0; t < tuples; ++t) {
            if (rng() & 1) continue;
            std::vector<int> tup(static_cast<std::size_t>(arity));
            std::uint64_t rem = t;
            for (int i = 0; i < arity; ++i) {
                tup[static_cast<std::size_t>(i)] =
                    static_cast<int>(rem % static_cast<std::uint64_t>(alphabet_size));
                rem /= static_cast<std::uint64_t>(alphabet_size);
            }
            accepted.push_back(std::move(tup));
        }
        if (accepted.empty())
            accepted.push_back(std::vector<int>(static_cast<std::size_t>(arity), 0));
        cons.push_back(Constraint::table(std::move(vars), std::move(accepted)));
    }
    return CspInstance(num_vars, alphabet_size, std::move(cons));
}

ReconfigProblem gen_random_problem(std::uint64_t seed, int num_vars, int alphabet_size,
                                   int num_constraints, int arity) {
    CspInstance inst = gen_random_table_csp(seed, num_vars, alphabet_size, num_constraints, arity);
    std::mt19937_64 rng(derive_seed(seed, "endpoints"));
    Assignment ini(static_cast<std::size_t>(num_vars)), tar(static_cast<std::size_t>(num_vars));
    for (int i = 0; i < num_vars; ++i) {
        ini[static_cast<std::size_t>(i)] = static_cast<int>(rng() % static_cast<std::uint64_t>(alphabet_size));
        tar[static_cast<std::size_t>(i)] = static_cast<int>(rng() % static_cast<std::uint64_t>(alphabet_size));
    }
    return ReconfigProblem::make_relaxed(std::move(inst), std::move(ini), std::move(tar));
}

ReconfigProblem gen_random_solvable_problem(std::uint64_t seed, int num_vars, int alphabet_size,
                                            int num_constraints, int arity) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        std::uint64_t s = derive_seed(seed, "solvable-" + std::to_string(attempt));
        CspInstance inst =
            gen_random_table_csp(s, num_vars, alphabet_size, num_constraints, arity);
        std::vector<Assignment> sols;
        AssignmentEnumerator en(num_vars, alphabet_size, std::uint64_t{1} << 20);
        Assignment a;
        while (en.next(a))
            if (is_solution(inst, a)) sols.push_back(a);
        if (sols.size() < 2) continue;
        std::mt19937_64 rng(derive_seed(s, "pick"));
        Assignment ini = sols[rng() % sols.size()];
        Assignment tar = sols[rng() % sols.size()];
        return ReconfigProblem::strict(std::move(inst), std::move(ini), std::move(tar));
    }
    throw InputError("gen: no instance with two solutions found for these parameters");
}

ParallelPcppSystem gen_micro_system(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ParallelPcppSystem sys;
    sys.t = 1 + static_cast<int>(rng() % 2);
    int cols = 2 + static_cast<int>(rng() % 3);             // 2..4
    sys.x_cols = 1 + static_cast<int>(rng() % (cols - 1));  // at least one of each
    sys.proof_cols = cols - sys.x_cols;
    sys.r = static_cast<int>(rng() % 3);                    // 0..2
    int q = 1 + static_cast<int>(rng() % std::min(3, cols));

    sys.queries.resize(sys.num_omegas());
    for (auto& tuple : sys.queries) {
        while (static_cast<int>(tuple.size()) < q) {
            int col = static_cast<int>(rng() % static_cast<std::uint64_t>(cols));
            if (std::find(tuple.begin(), tuple.end(), col) == tuple.end()) tuple.push_back(col);
        }
    }
    std::uint64_t table = 1;
    for (int l = 0; l < q; ++l) table *= static_cast<std::uint64_t>(sys.alphabet());
    sys.layer_preds.resize(static_cast<std::size_t>(sys.t));
    for (int i = 0; i < sys.t; ++i) {
        for (std::uint64_t w = 0; w < sys.num_omegas(); ++w) {
            std::vector<std::uint64_t> bits((table + 63) / 64, 0);
            for (std::uint64_t idx = 0; idx < table; ++idx)
                if (rng() & 1) bits[idx >> 6] |= std::uint64_t{1} << (idx & 63);
            int alphabet = sys.alphabet();
            sys.layer_preds[static_cast<std::size_t>(i)].push_back(
                [bits = std::move(bits), alphabet, q](std::span<const std::uint16_t> syms) {
                    std::uint64_t idx = 0, scale = 1;
                    for (int l = 0; l < q; ++l) {
                        idx += static_cast<std::uint64_t>(syms[static_cast<std::size_t>(l)]) * scale;
                        scale *= static_cast<std::uint64_t>(alphabet);
                    }
                    return ((bits[idx >> 6] >> (idx & 63)) & 1) != 0;
                });
        }
    }
    return sys;
}

std::pair<LayeredAssignment, LayeredAssignment> gen_micro_endpoints(
    const ParallelPcppSystem& sys, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto draw = [&]() {
        LayeredAssignment psi;
        psi.v = static_cast<int>(rng() % static_cast<std::uint64_t>(sys.t));
        psi.columns.resize(static_cast<std::size_t>(sys.cols()));
        for (auto& s : psi.columns)
            s = static_cast<std::uint16_t>(rng() % static_cast<std::uint64_t>(sys.alphabet()));
        return psi;
    };
    return {draw(), draw()};
}

std::optional<SourceWithPath> gen_adjacent_source(std::uint64_t seed, int num_vars) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::uint64_t s = derive_seed(seed, "source-" + std::to_string(attempt));
        int num_cons = 1 + static_cast<int>(s % 3);
        CspInstance inst = gen_random_table_csp(s, num_vars, 2, num_cons, std::min(2, num_vars));
        // Pick two solutions connected inside the solution subgraph.
        std::vector<Assignment> sols;
        AssignmentEnumerator en(num_vars, 2, 1u << 16);
        Assignment a;
        while (en.next(a))
            if (is_solution(inst, a)) sols.push_back(a);
        if (sols.size() < 2) continue;
        std::mt19937_64 rng(derive_seed(s, "pick"));
        for (int tries = 0; tries < 8; ++tries) {
            const Assignment& ini = sols[rng() % sols.size()];
            const Assignment& tar = sols[rng() % sols.size()];
            if (ini == tar && tries + 1 < 8) continue;
            ReconfigProblem p = ReconfigProblem::strict(inst, ini, tar);
            if (auto path = exact_path(p, 1u << 16))
                return SourceWithPath{std::move(p), std::move(*path)};
        }
    }
    return std::nullopt;
}

} // namespace recfg
