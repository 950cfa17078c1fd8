#include "recfg/parallel.hpp"

#include <algorithm>
#include <memory>
#include <unordered_map>

namespace recfg {

void ParallelPcppSystem::validate() const {
    if (t < 1 || t > 8) throw InputError("psys: t out of range");
    if (x_cols < 0 || proof_cols < 0 || cols() < 1)
        throw InputError("psys: column counts out of range");
    if (r < 0 || r > 24) throw InputError("psys: randomness out of range");
    if (queries.size() != num_omegas()) throw InputError("psys: query map size mismatch");
    if (layer_preds.size() != static_cast<std::size_t>(t))
        throw InputError("psys: layer predicate count mismatch");
    for (const auto& tuple : queries)
        for (int col : tuple)
            if (col < 0 || col >= cols()) throw InputError("psys: queried column out of range");
    for (const auto& per_layer : layer_preds) {
        if (per_layer.size() != num_omegas())
            throw InputError("psys: per-layer predicate table size mismatch");
        for (const auto& pred : per_layer)
            if (!pred) throw InputError("psys: missing layer predicate");
    }
}

Bits layer_row(const LayeredAssignment& psi, int layer, int first_col, int len) {
    std::uint64_t word = 0;
    for (int c = 0; c < len; ++c)
        if ((psi.columns[static_cast<std::size_t>(first_col + c)] >> layer) & 1)
            word |= std::uint64_t{1} << c;
    return Bits(word, len);
}

ParallelPcppSystem lift_scalars(const std::vector<ScalarPcpp>& vs) {
    if (!check_parallelizable(vs)) throw InputError("lift_scalars: verifiers are not parallelizable");
    const ScalarPcpp& v0 = vs.front();
    ParallelPcppSystem sys;
    sys.t = static_cast<int>(vs.size());
    sys.x_cols = v0.n;
    sys.proof_cols = v0.m;
    sys.r = v0.r;
    sys.queries = v0.queries;
    sys.declared_delta = v0.declared_delta;
    sys.declared_kappa = v0.declared_kappa;
    sys.layer_preds.resize(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) {
        sys.layer_preds[i].reserve(sys.num_omegas());
        // Shared copy keeps the predicates valid past the caller's vector.
        auto vi = std::make_shared<ScalarPcpp>(vs[i]);
        for (std::uint64_t w = 0; w < sys.num_omegas(); ++w) {
            // Row-local: layer i reads bit i of each queried column.
            int layer = static_cast<int>(i);
            sys.layer_preds[i].push_back([vi, layer, w](std::span<const std::uint16_t> syms) {
                std::uint64_t idx = 0;
                for (std::size_t l = 0; l < syms.size(); ++l)
                    idx |= static_cast<std::uint64_t>((syms[l] >> layer) & 1) << l;
                return vi->accepts(w, idx);
            });
        }
    }
    return sys;
}

namespace {

void check_layered(const ParallelPcppSystem& sys, const LayeredAssignment& psi) {
    if (static_cast<int>(psi.columns.size()) != sys.cols())
        throw InputError("layered assignment: wrong column count");
    for (std::uint16_t s : psi.columns)
        if (s >= (1u << sys.t)) throw InputError("layered assignment: symbol out of range");
}

} // namespace

Rational parallel_accept_prob(const ParallelPcppSystem& sys, const LayeredAssignment& psi,
                              int layer) {
    if (layer < 0 || layer >= sys.t) throw InputError("parallel_accept_prob: bad layer index");
    check_layered(sys, psi);
    std::uint64_t count = 0;
    std::vector<std::uint16_t> syms;
    for (std::uint64_t w = 0; w < sys.num_omegas(); ++w) {
        const auto& tuple = sys.queries[w];
        syms.resize(tuple.size());
        for (std::size_t l = 0; l < tuple.size(); ++l)
            syms[l] = psi.columns[static_cast<std::size_t>(tuple[l])];
        if (sys.layer_preds[static_cast<std::size_t>(layer)][w](syms)) ++count;
    }
    return Rational(BigInt(count), BigInt(sys.num_omegas()));
}

Rational parallel_value(const ParallelPcppSystem& sys, const LayeredAssignment& psi) {
    Rational best(0);
    for (int i = 0; i < sys.t; ++i)
        best = std::max(best, parallel_accept_prob(sys, psi, i));
    return best;
}

CspInstance parallelize_to_csp(const ParallelPcppSystem& sys) {
    sys.validate();
    std::vector<Constraint> cons;
    cons.reserve(sys.num_omegas());
    for (std::uint64_t w = 0; w < sys.num_omegas(); ++w) {
        const auto& tuple = sys.queries[w];
        // Deduplicate repeated columns (first-occurrence order); slot_of maps
        // each original tuple position to its local variable slot.
        std::vector<int> uniq;
        std::vector<int> slot_of(tuple.size());
        for (std::size_t l = 0; l < tuple.size(); ++l) {
            auto it = std::find(uniq.begin(), uniq.end(), tuple[l]);
            if (it == uniq.end()) {
                slot_of[l] = static_cast<int>(uniq.size());
                uniq.push_back(tuple[l]);
            } else {
                slot_of[l] = static_cast<int>(it - uniq.begin());
            }
        }
        std::vector<int> vars;
        vars.push_back(0);   // the indicator variable
        for (int col : uniq) vars.push_back(1 + col);

        std::vector<LayerPredicate> preds;
        preds.reserve(static_cast<std::size_t>(sys.t));
        for (int i = 0; i < sys.t; ++i)
            preds.push_back(sys.layer_preds[static_cast<std::size_t>(i)][w]);
        int t = sys.t;
        cons.push_back(Constraint::structured(
            std::move(vars),
            [preds = std::move(preds), slot_of = std::move(slot_of), t](std::span<const int> local) {
                int v = local[0];
                if (v < 0 || v >= t) return false;   // invalid indicator state
                std::vector<std::uint16_t> syms(slot_of.size());
                for (std::size_t l = 0; l < slot_of.size(); ++l)
                    syms[l] = static_cast<std::uint16_t>(local[static_cast<std::size_t>(1 + slot_of[l])]);
                return preds[static_cast<std::size_t>(v)](syms);
            }));
    }
    return CspInstance(1 + sys.cols(), sys.alphabet(), std::move(cons));
}

Assignment to_csp_assignment(const LayeredAssignment& psi) {
    Assignment a;
    a.reserve(psi.columns.size() + 1);
    a.push_back(psi.v);
    for (std::uint16_t s : psi.columns) a.push_back(static_cast<int>(s));
    return a;
}

LayeredAssignment from_csp_assignment(const Assignment& a, int num_cols) {
    if (static_cast<int>(a.size()) != num_cols + 1)
        throw InputError("from_csp_assignment: wrong length");
    LayeredAssignment psi;
    psi.v = a[0];
    psi.columns.reserve(static_cast<std::size_t>(num_cols));
    for (int c = 0; c < num_cols; ++c)
        psi.columns.push_back(static_cast<std::uint16_t>(a[static_cast<std::size_t>(1 + c)]));
    return psi;
}

Assignment bits_to_assignment(const Bits& b) {
    Assignment a(static_cast<std::size_t>(b.len));
    for (int i = 0; i < b.len; ++i) a[static_cast<std::size_t>(i)] = b.get(i) ? 1 : 0;
    return a;
}

Bits assignment_to_bits(const Assignment& a) {
    Bits b = Bits::zeros(static_cast<int>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 0 && a[i] != 1) throw InputError("assignment_to_bits: non-binary symbol");
        b.set(static_cast<int>(i), a[i] == 1);
    }
    return b;
}

Circuit km24_circuit(const CspInstance& source, const LinearCode& code, int excluded_layer) {
    if (source.alphabet_size != 2) throw InputError("km24_circuit: source must be binary");
    if (source.num_vars != code.msg_len)
        throw InputError("km24_circuit: code message length must equal source variable count");
    if (excluded_layer < 0 || excluded_layer >= 4)
        throw InputError("km24_circuit: excluded layer out of range");

    // Exact-codeword membership table (2^k entries).
    std::unordered_map<std::uint64_t, std::uint64_t> msg_of;
    for (std::uint64_t msg = 0; msg < (std::uint64_t{1} << code.msg_len); ++msg)
        msg_of.emplace(code.encode_packed(msg), msg);

    const int blk = code.block_len;
    const int k = code.msg_len;
    auto source_copy = source;
    return Circuit{
        3 * blk,
        [msg_of = std::move(msg_of), source_copy = std::move(source_copy), blk, k](std::uint64_t input) {
            const std::uint64_t mask = (blk == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << blk) - 1;
            std::uint64_t ys[3];
            for (int j = 0; j < 3; ++j) {
                std::uint64_t w = (input >> (j * blk)) & mask;
                auto it = msg_of.find(w);
                if (it == msg_of.end()) return false;   // not exactly a codeword
                ys[j] = it->second;
                if (!is_solution(source_copy, bits_to_assignment(Bits(ys[j], k)))) return false;
            }
            for (int a = 0; a < 3; ++a)
                for (int b = a + 1; b < 3; ++b)
                    if (std::popcount(ys[a] ^ ys[b]) > 1) return false;
            return true;
        }};
}

namespace {

// The three layers a verifier reads, ascending.
std::array<int, 3> other_layers(int layer) {
    std::array<int, 3> out{};
    int idx = 0;
    for (int j = 0; j < 4; ++j)
        if (j != layer) out[static_cast<std::size_t>(idx++)] = j;
    return out;
}

} // namespace

Bits km24_honest_proof(const Km24Instance& inst, int layer,
                       const std::array<Assignment, 4>& layer_values) {
    const int blk = inst.code.block_len;
    Bits proof = Bits::zeros(3 * blk);
    auto others = other_layers(layer);
    for (int j = 0; j < 3; ++j) {
        Bits cw = inst.code.encode(assignment_to_bits(layer_values[static_cast<std::size_t>(
            others[static_cast<std::size_t>(j)])]));
        proof.word |= cw.word << (j * blk);
    }
    return Bits(proof.word, 3 * blk);
}

Km24Instance km24_build(const ReconfigProblem& source, const LinearCode& code, int reps) {
    if (source.instance.alphabet_size != 2) throw InputError("km24_build: source must be binary");
    if (source.relaxed) throw InputError("km24_build: source endpoints must be solutions");
    if (code.msg_len != source.instance.num_vars)
        throw InputError("km24_build: code message length must equal source variable count");
    if (!is_power_of_two(static_cast<std::uint64_t>(code.block_len)))
        throw InputError("km24_build: code block length must be a power of two");
    if (reps < 1) throw InputError("km24_build: reps must be >= 1");
    const int blk = code.block_len;
    const int lg = log2_exact(static_cast<std::uint64_t>(blk));
    const int r = reps * lg;
    if (r > 24) throw BudgetError(std::uint64_t{1} << std::min(r, 62), std::uint64_t{1} << 24);

    Km24Instance inst;
    inst.source = source;
    inst.code = code;
    inst.reps = reps;

    ParallelPcppSystem sys;
    sys.t = 4;
    sys.x_cols = blk;
    sys.proof_cols = 3 * blk;
    sys.r = r;
    sys.queries.resize(sys.num_omegas());
    for (std::uint64_t w = 0; w < sys.num_omegas(); ++w) {
        auto& tuple = sys.queries[w];
        for (int p = 0; p < sys.proof_cols; ++p) tuple.push_back(sys.x_cols + p);
        for (int l = 0; l < reps; ++l)
            tuple.push_back(static_cast<int>((w >> (l * lg)) & static_cast<std::uint64_t>(blk - 1)));
    }

    sys.layer_preds.resize(4);
    for (int i = 0; i < 4; ++i) {
        Circuit circ = km24_circuit(source.instance, code, i);
        auto others = other_layers(i);
        for (std::uint64_t w = 0; w < sys.num_omegas(); ++w) {
            std::vector<int> cols(static_cast<std::size_t>(reps));
            for (int l = 0; l < reps; ++l)
                cols[static_cast<std::size_t>(l)] =
                    static_cast<int>((w >> (l * lg)) & static_cast<std::uint64_t>(blk - 1));
            int proof_cols = sys.proof_cols;
            sys.layer_preds[static_cast<std::size_t>(i)].push_back(
                [circ, others, cols = std::move(cols), proof_cols, blk,
                 i](std::span<const std::uint16_t> syms) {
                    // First proof_cols symbols are the proof columns; layer i
                    // of them is the claimed triple w.
                    std::uint64_t claimed = 0;
                    for (int p = 0; p < proof_cols; ++p)
                        if ((syms[static_cast<std::size_t>(p)] >> i) & 1)
                            claimed |= std::uint64_t{1} << p;
                    if (!circ.eval_packed(claimed)) return false;
                    // Remaining symbols are the sampled x columns: every other
                    // layer must agree with its claimed codeword there.
                    for (std::size_t l = 0; l < cols.size(); ++l) {
                        std::uint16_t sym = syms[static_cast<std::size_t>(proof_cols) + l];
                        for (int j = 0; j < 3; ++j) {
                            bool xbit = (sym >> others[static_cast<std::size_t>(j)]) & 1;
                            bool wbit = (claimed >> (j * blk + cols[l])) & 1;
                            if (xbit != wbit) return false;
                        }
                    }
                    return true;
                });
        }
    }
    inst.system = std::move(sys);

    auto honest = [&](const Assignment& z) {
        LayeredAssignment psi;
        psi.v = 0;
        psi.columns.assign(static_cast<std::size_t>(inst.system.cols()), 0);
        Bits cw = code.encode(assignment_to_bits(z));
        for (int c = 0; c < blk; ++c)
            psi.columns[static_cast<std::size_t>(c)] = cw.get(c) ? 0xF : 0;
        std::array<Assignment, 4> layer_values{z, z, z, z};
        for (int i = 0; i < 4; ++i) {
            Bits proof = km24_honest_proof(inst, i, layer_values);
            for (int p = 0; p < 3 * blk; ++p)
                if (proof.get(p))
                    psi.columns[static_cast<std::size_t>(blk + p)] |=
                        static_cast<std::uint16_t>(1u << i);
        }
        return psi;
    };
    inst.psi_ini = honest(source.sigma_ini);
    inst.psi_tar = honest(source.sigma_tar);

    if (parallel_value(inst.system, inst.psi_ini) != Rational(1) ||
        parallel_value(inst.system, inst.psi_tar) != Rational(1))
        throw InputError("km24_build: honest endpoint failed its own verifier");
    return inst;
}

std::vector<LayeredAssignment> completeness_path(const Km24Instance& inst,
                                                 const ReconfigPath& source_path) {
    std::string diag;
    if (!verify_path(inst.source, source_path, Rational(1), &diag))
        throw InputError("completeness_path: source path invalid: " + diag);

    const int blk = inst.code.block_len;
    std::vector<LayeredAssignment> path;
    LayeredAssignment cur = inst.psi_ini;
    path.push_back(cur);

    auto push_if_changed = [&](const LayeredAssignment& next) {
        if (next != path.back()) path.push_back(next);
    };
    auto set_v = [&](int v) {
        if (cur.v == v) return;
        cur.v = v;
        path.push_back(cur);
    };
    auto set_column_bit = [&](int col, int layer, bool bit) {
        std::uint16_t sym = cur.columns[static_cast<std::size_t>(col)];
        std::uint16_t next = bit ? static_cast<std::uint16_t>(sym | (1u << layer))
                                 : static_cast<std::uint16_t>(sym & ~(1u << layer));
        if (next == sym) return;
        cur.columns[static_cast<std::size_t>(col)] = next;
        path.push_back(cur);
    };
    auto set_x_layer = [&](int layer, const Bits& target) {
        for (int c = 0; c < blk; ++c) set_column_bit(c, layer, target.get(c));
    };
    auto set_proof_layer = [&](int layer, const Bits& target) {
        for (int p = 0; p < 3 * blk; ++p) set_column_bit(blk + p, layer, target.get(p));
    };

    // Source assignment currently encoded by each x layer.
    std::array<Assignment, 4> layer_values{inst.source.sigma_ini, inst.source.sigma_ini,
                                           inst.source.sigma_ini, inst.source.sigma_ini};

    for (std::size_t s = 1; s < source_path.steps.size(); ++s) {
        const Assignment& next_z = source_path.steps[s];
        if (next_z == source_path.steps[s - 1]) continue;
        Bits next_cw = inst.code.encode(assignment_to_bits(next_z));
        // One round of the v-cycle: with layer i's verifier active, its own x
        // row and the next verifier's proof row are unread and get rewritten.
        for (int i = 0; i < 4; ++i) {
            set_v(i);
            set_x_layer(i, next_cw);
            layer_values[static_cast<std::size_t>(i)] = next_z;
            int next_layer = (i + 1) % 4;
            set_proof_layer(next_layer, km24_honest_proof(inst, next_layer, layer_values));
        }
    }

    // All x layers hold the target; park v at 0 and refresh the proofs the
    // active verifier does not read, landing exactly on psi_tar.
    set_v(0);
    for (int layer = 1; layer < 4; ++layer)
        set_proof_layer(layer, km24_honest_proof(inst, layer, layer_values));
    push_if_changed(inst.psi_tar);
    if (cur != inst.psi_tar)
        throw InputError("completeness_path: schedule did not land on psi_tar");
    return path;
}

std::optional<Bits> extract_assignment(const Km24Instance& inst, const LayeredAssignment& psi) {
    if (psi.v < 0 || psi.v >= inst.system.t) return std::nullopt;
    const int blk = inst.code.block_len;
    std::vector<Bits> votes;
    for (int j = 0; j < 4; ++j) {
        if (j == psi.v) continue;
        Bits row = layer_row(psi, j, 0, blk);
        if (auto dec = decode_nearest(inst.code, row)) votes.push_back(dec->msg);
    }
    if (votes.size() < 2) return std::nullopt;
    Bits out = Bits::zeros(inst.code.msg_len);
    for (int b = 0; b < inst.code.msg_len; ++b) {
        int ones = 0;
        for (const Bits& y : votes)
            if (y.get(b)) ++ones;
        int zeros = static_cast<int>(votes.size()) - ones;
        if (ones == zeros) return std::nullopt;   // tied vote
        out.set(b, ones > zeros);
    }
    return out;
}

CspInstance binarize_csp(const CspInstance& inst) {
    if (!is_power_of_two(static_cast<std::uint64_t>(inst.alphabet_size)))
        throw InputError("binarize_csp: alphabet size must be a power of two");
    const int b = log2_exact(static_cast<std::uint64_t>(inst.alphabet_size));
    if (b == 1) return inst;

    std::vector<Constraint> cons;
    for (const Constraint& c : inst.constraints) {
        std::vector<int> vars;
        for (int v : c.vars)
            for (int j = 0; j < b; ++j) vars.push_back(v * b + j);
        if (c.form == Constraint::Form::Table) {
            std::vector<std::vector<int>> accepted;
            for (const auto& tup : c.accepted) {
                std::vector<int> bits;
                for (int s : tup)
                    for (int j = 0; j < b; ++j) bits.push_back((s >> j) & 1);
                accepted.push_back(std::move(bits));
            }
            cons.push_back(Constraint::table(std::move(vars), std::move(accepted)));
        } else {
            auto eval = c.evaluator;
            int arity = c.arity();
            cons.push_back(Constraint::structured(
                std::move(vars), [eval, arity, b](std::span<const int> local) {
                    std::vector<int> syms(static_cast<std::size_t>(arity));
                    for (int i = 0; i < arity; ++i) {
                        int s = 0;
                        for (int j = 0; j < b; ++j)
                            s |= local[static_cast<std::size_t>(i * b + j)] << j;
                        syms[static_cast<std::size_t>(i)] = s;
                    }
                    return eval(syms);
                }));
        }
    }
    return CspInstance(inst.num_vars * b, 2, std::move(cons));
}

Assignment binarize_assignment(const Assignment& a, int alphabet_size) {
    const int b = log2_exact(static_cast<std::uint64_t>(alphabet_size));
    Assignment out;
    out.reserve(a.size() * static_cast<std::size_t>(b));
    for (int s : a)
        for (int j = 0; j < b; ++j) out.push_back((s >> j) & 1);
    return out;
}

ReconfigProblem binarize_problem(const ReconfigProblem& p) {
    CspInstance inst = binarize_csp(p.instance);
    Assignment ini = binarize_assignment(p.sigma_ini, p.instance.alphabet_size);
    Assignment tar = binarize_assignment(p.sigma_tar, p.instance.alphabet_size);
    if (p.relaxed) return ReconfigProblem::make_relaxed(std::move(inst), std::move(ini), std::move(tar));
    return ReconfigProblem::strict(std::move(inst), std::move(ini), std::move(tar));
}

} // namespace recfg
