#include "recfg/io.hpp"

#include <fstream>
#include <sstream>

#include "recfg/detail/line_reader.hpp"

namespace recfg {

CspInstance parse_csp_from(detail::LineReader& rd);   // defined in csp.cpp

using detail::LineReader;
using detail::parse_int;
using detail::parse_u64;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path.string());
    out << content;
}

namespace {

Assignment parse_symbols(const std::vector<std::string>& toks, std::size_t first, int count,
                         int line) {
    if (toks.size() != first + static_cast<std::size_t>(count))
        throw ParseError(line, "expected " + std::to_string(count) + " symbols");
    Assignment a(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        a[static_cast<std::size_t>(i)] = parse_int(toks[first + static_cast<std::size_t>(i)], line);
    return a;
}

void expect_eof(LineReader& rd) {
    std::vector<std::string> toks;
    int line = 0;
    if (rd.next_line(toks, line)) throw ParseError(line, "trailing tokens");
}

std::vector<std::uint64_t> parse_bitset(const std::string& s, std::uint64_t nbits, int line) {
    if (s.size() != nbits) throw ParseError(line, "expected " + std::to_string(nbits) + " bits");
    std::vector<std::uint64_t> words((nbits + 63) / 64, 0);
    for (std::uint64_t i = 0; i < nbits; ++i) {
        char c = s[i];
        if (c == '1') words[i >> 6] |= std::uint64_t{1} << (i & 63);
        else if (c != '0') throw ParseError(line, "bit string must be 0/1");
    }
    return words;
}

std::string bitset_string(const std::vector<std::uint64_t>& words, std::uint64_t nbits) {
    std::string s(nbits, '0');
    for (std::uint64_t i = 0; i < nbits; ++i)
        if ((words[i >> 6] >> (i & 63)) & 1) s[i] = '1';
    return s;
}

} // namespace

ReconfigProblem parse_reconfig(const std::string& text, bool relaxed) {
    LineReader rd(text);
    CspInstance inst = parse_csp_from(rd);
    std::vector<std::string> toks;
    int line = 0;
    if (!rd.next_line(toks, line) || toks[0] != "ini")
        throw ParseError(rd.line() + 1, "expected 'ini' line");
    Assignment ini = parse_symbols(toks, 1, inst.num_vars, line);
    if (!rd.next_line(toks, line) || toks[0] != "tar")
        throw ParseError(rd.line() + 1, "expected 'tar' line");
    Assignment tar = parse_symbols(toks, 1, inst.num_vars, line);
    expect_eof(rd);
    if (relaxed) return ReconfigProblem::make_relaxed(std::move(inst), std::move(ini), std::move(tar));
    return ReconfigProblem::strict(std::move(inst), std::move(ini), std::move(tar));
}

std::string serialize_reconfig(const ReconfigProblem& p) {
    std::ostringstream out;
    out << serialize(p.instance);
    out << "ini";
    for (int s : p.sigma_ini) out << " " << s;
    out << "\ntar";
    for (int s : p.sigma_tar) out << " " << s;
    out << "\n";
    return out.str();
}

Circuit parse_circuit(const std::string& text) {
    LineReader rd(text);
    std::vector<std::string> toks;
    int line = 0;
    if (!rd.next_line(toks, line) || toks[0] != "circuit" || toks.size() != 2)
        throw ParseError(rd.line() + 1, "expected 'circuit <n>'");
    int n = parse_int(toks[1], line);
    if (n < 0 || n > 20) throw ParseError(line, "circuit input length out of range");
    if (!rd.next_line(toks, line) || toks[0] != "tt" || toks.size() != 2)
        throw ParseError(rd.line() + 1, "expected 'tt <bits>'");
    std::uint64_t size = std::uint64_t{1} << n;
    if (toks[1].size() != size) throw ParseError(line, "truth table must have 2^n bits");
    std::vector<bool> table(size);
    for (std::uint64_t i = 0; i < size; ++i) {
        if (toks[1][i] != '0' && toks[1][i] != '1')
            throw ParseError(line, "truth table must be 0/1");
        table[i] = toks[1][i] == '1';
    }
    expect_eof(rd);
    return Circuit::from_truth_table(n, table);
}

std::string serialize_circuit(const Circuit& c) {
    if (c.input_len > 20)
        throw BudgetError(std::uint64_t{1} << c.input_len, std::uint64_t{1} << 20);
    std::ostringstream out;
    out << "circuit " << c.input_len << "\ntt ";
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << c.input_len); ++x)
        out << (c.eval_packed(x) ? '1' : '0');
    out << "\n";
    return out.str();
}

ScalarPcpp parse_pcpp(const std::string& text) {
    LineReader rd(text);
    std::vector<std::string> toks;
    int line = 0;
    if (!rd.next_line(toks, line) || toks[0] != "pcpp" || toks.size() != 5)
        throw ParseError(rd.line() + 1, "expected 'pcpp <n> <m> <r> <q>'");
    ScalarPcpp v;
    v.n = parse_int(toks[1], line);
    v.m = parse_int(toks[2], line);
    v.r = parse_int(toks[3], line);
    v.q = parse_int(toks[4], line);
    if (v.r < 0 || v.r > 24 || v.q < 1 || v.q > 26)
        throw ParseError(line, "pcpp parameters out of range");
    v.queries.resize(v.num_omegas());
    v.pred.resize(v.num_omegas());
    for (std::uint64_t w = 0; w < v.num_omegas(); ++w) {
        if (!rd.next_line(toks, line) || toks[0] != "omega")
            throw ParseError(rd.line() + 1, "expected 'omega' line");
        if (toks.size() != static_cast<std::size_t>(2 + v.q))
            throw ParseError(line, "omega line needs index plus q positions");
        if (parse_u64(toks[1], line) != w)
            throw ParseError(line, "omega indices must be 0..2^r-1 in order");
        for (int l = 0; l < v.q; ++l) {
            int pos = parse_int(toks[static_cast<std::size_t>(2 + l)], line);
            if (pos < 0 || pos >= v.n + v.m)
                throw ParseError(line, "query position out of range");
            v.queries[w].push_back(pos);
        }
        if (!rd.next_line(toks, line) || toks[0] != "pred" || toks.size() != 2)
            throw ParseError(rd.line() + 1, "expected 'pred <bits>' line");
        v.pred[w] = parse_bitset(toks[1], std::uint64_t{1} << v.q, line);
    }
    expect_eof(rd);
    v.validate();
    return v;
}

std::string serialize_pcpp(const ScalarPcpp& v) {
    std::ostringstream out;
    out << "pcpp " << v.n << " " << v.m << " " << v.r << " " << v.q << "\n";
    for (std::uint64_t w = 0; w < v.num_omegas(); ++w) {
        out << "omega " << w;
        for (int pos : v.queries[w]) out << " " << pos;
        out << "\npred " << bitset_string(v.pred[w], std::uint64_t{1} << v.q) << "\n";
    }
    return out.str();
}

ReconfigPath parse_path(const std::string& text) {
    LineReader rd(text);
    std::vector<std::string> toks;
    int line = 0;
    if (!rd.next_line(toks, line) || toks[0] != "path" || toks.size() != 3)
        throw ParseError(rd.line() + 1, "expected 'path <num_steps> <num_vars>'");
    int steps = parse_int(toks[1], line);
    int vars = parse_int(toks[2], line);
    if (steps < 1 || vars < 1) throw ParseError(line, "path dimensions must be positive");
    ReconfigPath path;
    for (int s = 0; s < steps; ++s) {
        if (!rd.next_line(toks, line) || toks[0] != "step")
            throw ParseError(rd.line() + 1, "expected 'step' line");
        path.steps.push_back(parse_symbols(toks, 1, vars, line));
    }
    expect_eof(rd);
    return path;
}

std::string serialize_path(const ReconfigPath& path) {
    if (path.steps.empty()) throw InputError("serialize_path: empty path");
    std::ostringstream out;
    out << "path " << path.steps.size() << " " << path.steps.front().size() << "\n";
    for (const Assignment& a : path.steps) {
        out << "step";
        for (int s : a) out << " " << s;
        out << "\n";
    }
    return out.str();
}

std::string serialize_km24_ref(const Km24Instance& inst, const std::string& source_path) {
    std::ostringstream out;
    out << "psys " << inst.system.t << " " << inst.system.x_cols << " " << inst.system.proof_cols
        << " " << inst.system.r << " " << inst.reps << " code=" << inst.code.family << " "
        << inst.code.msg_len << " source=" << source_path << "\n";
    return out.str();
}

std::string serialize_micro_psys(const ParallelPcppSystem& sys) {
    sys.validate();
    if (sys.queries.empty()) throw InputError("serialize_micro_psys: no query map");
    const std::size_t q = sys.queries.front().size();
    for (const auto& tuple : sys.queries)
        if (tuple.size() != q)
            throw InputError("serialize_micro_psys: query tuples must share one arity");
    std::uint64_t table = 1;
    for (std::size_t l = 0; l < q; ++l) {
        table *= static_cast<std::uint64_t>(sys.alphabet());
        if (table > (std::uint64_t{1} << 20))
            throw BudgetError(table, std::uint64_t{1} << 20);
    }
    std::ostringstream out;
    out << "psys " << sys.t << " " << sys.x_cols << " " << sys.proof_cols << " " << sys.r << " "
        << q << "\n";
    for (std::uint64_t w = 0; w < sys.num_omegas(); ++w) {
        out << "omega " << w;
        for (int col : sys.queries[w]) out << " " << col;
        out << "\n";
    }
    std::vector<std::uint16_t> syms(q);
    for (int i = 0; i < sys.t; ++i) {
        out << "layer " << i << "\n";
        for (std::uint64_t w = 0; w < sys.num_omegas(); ++w) {
            out << "pred ";
            for (std::uint64_t idx = 0; idx < table; ++idx) {
                std::uint64_t rem = idx;
                for (std::size_t l = 0; l < q; ++l) {
                    syms[l] = static_cast<std::uint16_t>(rem % static_cast<std::uint64_t>(sys.alphabet()));
                    rem /= static_cast<std::uint64_t>(sys.alphabet());
                }
                out << (sys.layer_preds[static_cast<std::size_t>(i)][w](syms) ? '1' : '0');
            }
            out << "\n";
        }
    }
    return out.str();
}

namespace {

ParallelPcppSystem parse_micro_psys_body(LineReader& rd, const std::vector<std::string>& header,
                                         int header_line) {
    ParallelPcppSystem sys;
    sys.t = parse_int(header[1], header_line);
    sys.x_cols = parse_int(header[2], header_line);
    sys.proof_cols = parse_int(header[3], header_line);
    sys.r = parse_int(header[4], header_line);
    int q = parse_int(header[5], header_line);
    if (sys.t < 1 || sys.t > 8 || sys.r < 0 || sys.r > 20 || q < 1)
        throw ParseError(header_line, "psys parameters out of range");
    std::uint64_t table = 1;
    for (int l = 0; l < q; ++l) {
        table *= static_cast<std::uint64_t>(sys.alphabet());
        if (table > (std::uint64_t{1} << 20)) throw ParseError(header_line, "psys table too large");
    }

    std::vector<std::string> toks;
    int line = 0;
    sys.queries.resize(sys.num_omegas());
    for (std::uint64_t w = 0; w < sys.num_omegas(); ++w) {
        if (!rd.next_line(toks, line) || toks[0] != "omega")
            throw ParseError(rd.line() + 1, "expected 'omega' line");
        if (toks.size() != static_cast<std::size_t>(2 + q))
            throw ParseError(line, "omega line needs index plus q columns");
        if (parse_u64(toks[1], line) != w)
            throw ParseError(line, "omega indices must be 0..2^r-1 in order");
        for (int l = 0; l < q; ++l) {
            int col = parse_int(toks[static_cast<std::size_t>(2 + l)], line);
            if (col < 0 || col >= sys.cols()) throw ParseError(line, "column out of range");
            sys.queries[w].push_back(col);
        }
    }
    sys.layer_preds.resize(static_cast<std::size_t>(sys.t));
    for (int i = 0; i < sys.t; ++i) {
        if (!rd.next_line(toks, line) || toks[0] != "layer" || toks.size() != 2 ||
            parse_int(toks[1], line) != i)
            throw ParseError(rd.line() + 1, "expected 'layer " + std::to_string(i) + "'");
        for (std::uint64_t w = 0; w < sys.num_omegas(); ++w) {
            if (!rd.next_line(toks, line) || toks[0] != "pred" || toks.size() != 2)
                throw ParseError(rd.line() + 1, "expected 'pred <bits>' line");
            auto bits = parse_bitset(toks[1], table, line);
            int alphabet = sys.alphabet();
            int arity = q;
            sys.layer_preds[static_cast<std::size_t>(i)].push_back(
                [bits = std::move(bits), alphabet, arity](std::span<const std::uint16_t> syms) {
                    std::uint64_t idx = 0, scale = 1;
                    for (int l = 0; l < arity; ++l) {
                        idx += static_cast<std::uint64_t>(syms[static_cast<std::size_t>(l)]) * scale;
                        scale *= static_cast<std::uint64_t>(alphabet);
                    }
                    return ((bits[idx >> 6] >> (idx & 63)) & 1) != 0;
                });
        }
    }
    expect_eof(rd);
    sys.validate();
    return sys;
}

} // namespace

ParallelPcppSystem parse_micro_psys(const std::string& text) {
    LineReader rd(text);
    std::vector<std::string> toks;
    int line = 0;
    if (!rd.next_line(toks, line) || toks[0] != "psys" || toks.size() != 6)
        throw ParseError(rd.line() + 1, "expected 'psys <t> <x_cols> <proof_cols> <r> <q>'");
    return parse_micro_psys_body(rd, toks, line);
}

LoadedSystem load_psys_file(const std::filesystem::path& path) {
    std::string text = read_file(path);
    LineReader rd(text);
    std::vector<std::string> toks;
    int line = 0;
    if (!rd.next_line(toks, line) || toks[0] != "psys")
        throw ParseError(rd.line() + 1, "expected 'psys' header");
    bool reference = toks.size() == 9 && toks[6].rfind("code=", 0) == 0 &&
                     toks[8].rfind("source=", 0) == 0;
    if (!reference) {
        if (toks.size() != 6) throw ParseError(line, "unrecognized psys header");
        return LoadedSystem{parse_micro_psys_body(rd, toks, line), std::nullopt};
    }
    expect_eof(rd);
    int t = parse_int(toks[1], line);
    int x_cols = parse_int(toks[2], line);
    int proof_cols = parse_int(toks[3], line);
    int r = parse_int(toks[4], line);
    int reps = parse_int(toks[5], line);
    std::string family = toks[6].substr(5);
    int k_code = parse_int(toks[7], line);
    std::string source_rel = toks[8].substr(7);
    if (family != "hadamard") throw ParseError(line, "unknown code family '" + family + "'");

    std::filesystem::path source_path(source_rel);
    if (source_path.is_relative() && path.has_parent_path())
        source_path = path.parent_path() / source_path;
    ReconfigProblem source = parse_reconfig(read_file(source_path));
    Km24Instance inst = km24_build(source, hadamard_code(k_code), reps);
    if (inst.system.t != t || inst.system.x_cols != x_cols ||
        inst.system.proof_cols != proof_cols || inst.system.r != r)
        throw ParseError(line, "psys header does not match the rebuilt system");
    ParallelPcppSystem sys = inst.system;
    return LoadedSystem{std::move(sys), std::move(inst)};
}

std::string serialize_reduced_csp(const CspInstance& reduced, const std::string& psys_path) {
    std::ostringstream out;
    out << "csp " << reduced.num_vars << " " << reduced.alphabet_size << " "
        << reduced.constraints.size() << "\n";
    out << "structured " << psys_path << "\n";
    return out.str();
}

CspInstance load_csp_file(const std::filesystem::path& path) {
    std::string text = read_file(path);
    LineReader probe(text);
    std::vector<std::string> toks, header;
    int line = 0, header_line = 0;
    if (!probe.next_line(header, header_line) || header[0] != "csp" || header.size() != 4)
        throw ParseError(header_line == 0 ? 1 : header_line, "expected 'csp' header");
    if (probe.next_line(toks, line) && toks[0] == "structured") {
        if (toks.size() != 2) throw ParseError(line, "expected 'structured <system file>'");
        std::filesystem::path psys(toks[1]);
        if (psys.is_relative() && path.has_parent_path()) psys = path.parent_path() / psys;
        CspInstance reduced = parallelize_to_csp(load_psys_file(psys).system);
        if (reduced.num_vars != parse_int(header[1], header_line) ||
            reduced.alphabet_size != parse_int(header[2], header_line) ||
            static_cast<int>(reduced.constraints.size()) != parse_int(header[3], header_line))
            throw ParseError(header_line, "csp header does not match the referenced system");
        return reduced;
    }
    return parse_csp(text);
}

} // namespace recfg
