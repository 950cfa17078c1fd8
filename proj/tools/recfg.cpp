// Command-line front end: instance generation, the parallelization reduction,
// verifier audits, exact reconfiguration values, path verification, and the
// full acceptance battery.  Exit codes: 0 pass, 1 semantic fail, 2 usage or
// parse error, 3 budget exceeded.
#include <CLI11.hpp>

#include <chrono>
#include <iostream>

#include "recfg/gen.hpp"
#include "recfg/io.hpp"
#include "recfg/suite.hpp"

using namespace recfg;

namespace {

std::uint64_t config_hash(const std::string& canonical) {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : canonical) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

struct GlobalOpts {
    std::uint64_t seed = 1;
    std::string delta = "1/4";
    int reps = 2;
    std::uint64_t budget_states = std::uint64_t{1} << 20;
    std::uint64_t budget_triples = std::uint64_t{1} << 26;
    std::string out;

    std::string canonical() const {
        return "seed=" + std::to_string(seed) + " delta=" + delta +
               " reps=" + std::to_string(reps) + " budget-states=" + std::to_string(budget_states) +
               " budget-triples=" + std::to_string(budget_triples);
    }
};

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

void print_row(const GlobalOpts& g, const std::string& fields) {
    std::cout << "row seed=" << g.seed << " cfg=" << std::hex << config_hash(g.canonical())
              << std::dec << " " << fields << "\n";
}

int cmd_gen(const GlobalOpts& g, const std::string& kind, int n, int alphabet, int cons,
            int arity) {
    if (g.out.empty()) throw CLI::ValidationError("--out is required for gen");
    ReconfigProblem p = [&] {
        if (kind == "equality-chain") return gen_equality_chain(n);
        if (kind == "or-chain") return gen_or_chain(n);
        if (kind == "random-csp")
            return gen_random_solvable_problem(g.seed, n, alphabet, cons, arity);
        throw CLI::ValidationError("unknown kind '" + kind + "'");
    }();
    write_file(g.out, serialize_reconfig(p));
    print_row(g, "cmd=gen kind=" + kind + " vars=" + std::to_string(p.instance.num_vars) +
                     " constraints=" + std::to_string(p.instance.constraints.size()) +
                     " out=" + g.out);
    return 0;
}

int cmd_reduce(const GlobalOpts& g, const std::string& source_file, bool binarize) {
    if (g.out.empty()) throw CLI::ValidationError("--out is required for reduce");
    auto t0 = std::chrono::steady_clock::now();
    ReconfigProblem source = parse_reconfig(read_file(source_file));
    if (source.instance.alphabet_size != 2) {
        if (!binarize)
            throw InputError("source alphabet is not binary; pass --binarize to split symbols "
                             "into bits first");
        source = binarize_problem(source);
    }
    LinearCode code = hadamard_code(source.instance.num_vars);
    Km24Instance inst = km24_build(source, code, g.reps);
    CspInstance reduced = parallelize_to_csp(inst.system);

    std::string src_out = g.out + ".source";
    std::string psys_out = g.out + ".psys";
    std::string csp_out = g.out + ".csp";
    write_file(src_out, serialize_reconfig(source));
    write_file(psys_out,
               serialize_km24_ref(inst, std::filesystem::path(src_out).filename().string()));
    write_file(csp_out, serialize_reduced_csp(
                            reduced, std::filesystem::path(psys_out).filename().string()));

    int max_arity = 0;
    for (const auto& c : reduced.constraints) max_arity = std::max(max_arity, c.arity());
    print_row(g, "cmd=reduce t=4 vars=" + std::to_string(reduced.num_vars) +
                     " alphabet=" + std::to_string(reduced.alphabet_size) +
                     " constraints=" + std::to_string(reduced.constraints.size()) +
                     " max_arity=" + std::to_string(max_arity) +
                     " x_cols=" + std::to_string(inst.system.x_cols) +
                     " proof_cols=" + std::to_string(inst.system.proof_cols) +
                     " ms=" + std::to_string(static_cast<long>(elapsed_ms(t0))));
    return 0;
}

int cmd_audit(const GlobalOpts& g, const std::string& circuit_file, const std::string& pcpp_file,
              const std::string& kappa) {
    auto t0 = std::chrono::steady_clock::now();
    Circuit c = parse_circuit(read_file(circuit_file));
    ScalarPcpp v;
    bool built = pcpp_file.empty();
    if (built) {
        v = build_proximity_pcpp(c, g.reps, parse_rational(g.delta));
    } else {
        v = parse_pcpp(read_file(pcpp_file));
        v.declared_delta = parse_rational(g.delta);
        if (!kappa.empty()) v.declared_kappa = parse_rational(kappa);
    }
    std::string completeness = "unavailable";
    if (v.honest_proof) completeness = audit_completeness(v, c, g.budget_states) ? "pass" : "fail";
    Rational measured = audit_soundness(v, c, v.declared_delta, g.budget_triples);
    bool sound = measured <= v.declared_kappa;
    print_row(g, "cmd=audit n=" + std::to_string(v.n) + " m=" + std::to_string(v.m) +
                     " r=" + std::to_string(v.r) + " q=" + std::to_string(v.q) +
                     " completeness=" + completeness + " measured=" + to_string(measured) +
                     " declared=" + to_string(v.declared_kappa) +
                     " pass=" + (sound && completeness != "fail" ? "1" : "0") +
                     " ms=" + std::to_string(static_cast<long>(elapsed_ms(t0))));
    return (sound && completeness != "fail") ? 0 : 1;
}

int cmd_recval(const GlobalOpts& g, const std::string& problem_file, bool relaxed) {
    auto t0 = std::chrono::steady_clock::now();
    ReconfigProblem p = parse_reconfig(read_file(problem_file), relaxed);
    Rational val = reconfig_value(p, g.budget_states);
    ReconfigPath path = bottleneck_path(p, g.budget_states);
    std::string oracle = "skipped";
    std::uint64_t states = state_space_size(p.instance.num_vars, p.instance.alphabet_size,
                                            g.budget_states);
    if (states <= 100000) {
        Rational bf = brute_force_reconfig_value(p, g.budget_states);
        oracle = bf == val ? "agree" : "DISAGREE";
    }
    if (!g.out.empty()) write_file(g.out, serialize_path(path));
    print_row(g, "cmd=recval value=" + to_string(val) +
                     " path_len=" + std::to_string(path.steps.size()) + " oracle=" + oracle +
                     " ms=" + std::to_string(static_cast<long>(elapsed_ms(t0))));
    return oracle == "DISAGREE" ? 1 : 0;
}

int cmd_verify(const GlobalOpts& g, const std::string& problem_file, const std::string& path_file,
               const std::string& threshold, bool relaxed) {
    ReconfigProblem p = parse_reconfig(read_file(problem_file), relaxed);
    ReconfigPath path = parse_path(read_file(path_file));
    std::string diag;
    bool ok = verify_path(p, path, parse_rational(threshold), &diag);
    print_row(g, "cmd=verify threshold=" + threshold + " steps=" +
                     std::to_string(path.steps.size()) + " pass=" + (ok ? "1" : "0") +
                     (diag.empty() ? "" : " reason=\"" + diag + "\""));
    return ok ? 0 : 1;
}

int cmd_suite(const GlobalOpts& g) {
    auto results = run_acceptance_suite(g.seed, &std::cout);
    bool all = true;
    for (const auto& r : results) {
        print_row(g, "cmd=suite criterion=" + std::to_string(r.id) +
                         " pass=" + (r.pass ? "1" : "0") +
                         " ms=" + std::to_string(static_cast<long>(r.ms)));
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"reduction toolkit: parallelized PCPP verifiers to gap CSP reconfiguration"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "base seed for all randomness");
    app.add_option("--delta", g.delta, "proximity parameter (rational, e.g. 1/4)");
    app.add_option("--reps", g.reps, "sampled columns per randomness string");
    app.add_option("--budget-states", g.budget_states, "assignment enumeration budget");
    app.add_option("--budget-triples", g.budget_triples, "(x, pi, omega) audit budget");
    app.add_option("--out", g.out, "output path (or prefix for reduce)");

    std::string kind, source_file, circuit_file, pcpp_file, problem_file, path_file;
    std::string threshold = "1", kappa;
    int n = 2, alphabet = 2, cons = 2, arity = 2;
    bool binarize = false, relaxed = false;

    auto* gen = app.add_subcommand("gen", "generate a reconfiguration problem file");
    gen->add_option("kind", kind, "equality-chain | or-chain | random-csp")->required();
    gen->add_option("--n", n, "number of variables");
    gen->add_option("--alphabet", alphabet, "alphabet size (random-csp)");
    gen->add_option("--cons", cons, "constraint count (random-csp)");
    gen->add_option("--arity", arity, "constraint arity (random-csp)");

    auto* reduce = app.add_subcommand("reduce", "run the full reduction pipeline on a source");
    reduce->add_option("source", source_file, "source reconfiguration problem file")->required();
    reduce->add_flag("--binarize", binarize, "binarize a power-of-two alphabet source first");

    auto* audit = app.add_subcommand("audit", "audit verifier completeness and soundness");
    audit->add_option("circuit", circuit_file, "circuit file")->required();
    audit->add_option("--pcpp", pcpp_file, "verifier file (default: build the proximity test)");
    audit->add_option("--kappa", kappa, "declared soundness for file-based verifiers");

    auto* recval = app.add_subcommand("recval", "exact reconfiguration value with oracle check");
    recval->add_option("problem", problem_file, "reconfiguration problem file")->required();
    recval->add_flag("--relaxed", relaxed, "admit non-solution endpoints");

    auto* verify = app.add_subcommand("verify", "check a path against a threshold");
    verify->add_option("problem", problem_file, "reconfiguration problem file")->required();
    verify->add_option("path", path_file, "path file")->required();
    verify->add_option("--threshold", threshold, "step value threshold (rational)");
    verify->add_flag("--relaxed", relaxed, "admit non-solution endpoints");

    auto* suite = app.add_subcommand("suite", "run the acceptance battery");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return cmd_gen(g, kind, n, alphabet, cons, arity);
        if (reduce->parsed()) return cmd_reduce(g, source_file, binarize);
        if (audit->parsed()) return cmd_audit(g, circuit_file, pcpp_file, kappa);
        if (recval->parsed()) return cmd_recval(g, problem_file, relaxed);
        if (verify->parsed()) return cmd_verify(g, problem_file, path_file, threshold, relaxed);
        if (suite->parsed()) return cmd_suite(g);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
