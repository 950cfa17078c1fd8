#ifndef RECFG_IO_HPP
#define RECFG_IO_HPP

#include <filesystem>
#include <optional>
#include <string>

#include "recfg/parallel.hpp"
#include "recfg/pcpp.hpp"
#include "recfg/reconfig.hpp"

namespace recfg {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

// Reconfiguration problem = csp instance format plus `ini`/`tar` lines.
ReconfigProblem parse_reconfig(const std::string& text, bool relaxed = false);
std::string serialize_reconfig(const ReconfigProblem& p);

// `circuit <n>` + `tt <2^n bits>` (truth table indexed little-endian).
Circuit parse_circuit(const std::string& text);
std::string serialize_circuit(const Circuit& c);

// `pcpp <n> <m> <r> <q>`, then per omega `omega <w> <i_1> ... <i_q>` and
// `pred <2^q accept bits>` (queried tuple read as a little-endian integer).
ScalarPcpp parse_pcpp(const std::string& text);
std::string serialize_pcpp(const ScalarPcpp& v);

// `path <num_steps> <num_vars>` + one `step <symbols...>` line per step.
ReconfigPath parse_path(const std::string& text);
std::string serialize_path(const ReconfigPath& path);

// Parallel system files.  Two forms behind one loader:
//  - reference form (reduction artifacts):
//      psys <t> <x_cols> <proof_cols> <r> <reps> code=<family> <k_code> source=<path>
//  - embedded micro form:
//      psys <t> <x_cols> <proof_cols> <r> <q>
//      omega <w> <c_1> ... <c_q>           (one per randomness string)
//      layer <i>                            (then one pred line per omega)
//      pred <(2^t)^q accept bits>           (symbol tuple read base-2^t, little-endian)
struct LoadedSystem {
    ParallelPcppSystem system;
    std::optional<Km24Instance> km24;   // present for reference-form files
};

LoadedSystem load_psys_file(const std::filesystem::path& path);
std::string serialize_km24_ref(const Km24Instance& inst, const std::string& source_path);
std::string serialize_micro_psys(const ParallelPcppSystem& sys);
ParallelPcppSystem parse_micro_psys(const std::string& text);

// Reduced-instance export: the csp header plus `structured <system file>`.
std::string serialize_reduced_csp(const CspInstance& reduced, const std::string& psys_path);
// Loads either a plain TABLE-form csp file or a `structured` reference.
CspInstance load_csp_file(const std::filesystem::path& path);

} // namespace recfg

#endif
