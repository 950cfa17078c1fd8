#include "recfg/reconfig.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace recfg {

ReconfigProblem ReconfigProblem::strict(CspInstance instance, Assignment ini, Assignment tar) {
    instance.check_assignment(ini);
    instance.check_assignment(tar);
    if (!is_solution(instance, ini)) throw InputError("reconfig: sigma_ini is not a solution");
    if (!is_solution(instance, tar)) throw InputError("reconfig: sigma_tar is not a solution");
    return ReconfigProblem{std::move(instance), std::move(ini), std::move(tar), false};
}

ReconfigProblem ReconfigProblem::make_relaxed(CspInstance instance, Assignment ini, Assignment tar) {
    instance.check_assignment(ini);
    instance.check_assignment(tar);
    return ReconfigProblem{std::move(instance), std::move(ini), std::move(tar), true};
}

std::vector<Assignment> neighbors(const CspInstance& inst, const Assignment& a) {
    inst.check_assignment(a);
    std::vector<Assignment> out;
    out.reserve(static_cast<std::size_t>(inst.num_vars) *
                static_cast<std::size_t>(inst.alphabet_size - 1));
    for (int v = 0; v < inst.num_vars; ++v) {
        for (int s = 0; s < inst.alphabet_size; ++s) {
            if (s == a[static_cast<std::size_t>(v)]) continue;
            Assignment b = a;
            b[static_cast<std::size_t>(v)] = s;
            out.push_back(std::move(b));
        }
    }
    return out;
}

namespace {

// Full configuration graph materialized as per-state satisfied counts.
struct StateSpace {
    int num_vars, alphabet;
    std::uint64_t size;
    std::vector<std::uint64_t> pow;            // pow[i] = alphabet^(num_vars-1-i)
    std::vector<std::uint32_t> sat;            // satisfied-constraint count per state

    StateSpace(const CspInstance& inst, std::uint64_t budget)
        : num_vars(inst.num_vars), alphabet(inst.alphabet_size) {
        size = state_space_size(num_vars, alphabet, budget);
        pow.assign(static_cast<std::size_t>(num_vars), 1);
        for (int i = num_vars - 2; i >= 0; --i)
            pow[static_cast<std::size_t>(i)] =
                pow[static_cast<std::size_t>(i + 1)] * static_cast<std::uint64_t>(alphabet);
        sat.resize(size);
        AssignmentEnumerator en(num_vars, alphabet, budget);
        Assignment a;
        std::uint64_t idx = 0;
        while (en.next(a)) sat[idx++] = static_cast<std::uint32_t>(satisfied_count(inst, a));
    }

    int digit(std::uint64_t idx, int var) const {
        return static_cast<int>((idx / pow[static_cast<std::size_t>(var)]) %
                                static_cast<std::uint64_t>(alphabet));
    }

    // Visits the Hamming-distance-1 neighbors of idx in (variable, symbol) order.
    template <typename F>
    void for_neighbors(std::uint64_t idx, F&& fn) const {
        for (int v = 0; v < num_vars; ++v) {
            int cur = digit(idx, v);
            std::uint64_t base = idx - static_cast<std::uint64_t>(cur) * pow[static_cast<std::size_t>(v)];
            for (int s = 0; s < alphabet; ++s) {
                if (s == cur) continue;
                fn(base + static_cast<std::uint64_t>(s) * pow[static_cast<std::size_t>(v)]);
            }
        }
    }

    // BFS from `from` over states with sat >= threshold; parents for path recovery.
    // Returns true iff `to` is reached.
    bool connected(std::uint64_t from, std::uint64_t to, std::uint32_t threshold,
                   std::vector<std::int64_t>* parent_out = nullptr) const {
        if (sat[from] < threshold || sat[to] < threshold) return false;
        std::vector<std::int64_t> parent(size, -2);   // -2 unvisited, -1 root
        std::queue<std::uint64_t> q;
        parent[from] = -1;
        q.push(from);
        while (!q.empty()) {
            std::uint64_t u = q.front();
            q.pop();
            if (u == to) break;
            for_neighbors(u, [&](std::uint64_t w) {
                if (parent[w] == -2 && sat[w] >= threshold) {
                    parent[w] = static_cast<std::int64_t>(u);
                    q.push(w);
                }
            });
        }
        bool reached = parent[to] != -2;
        if (parent_out) *parent_out = std::move(parent);
        return reached;
    }

    ReconfigPath recover(const std::vector<std::int64_t>& parent, std::uint64_t to) const {
        std::vector<std::uint64_t> rev;
        for (std::int64_t cur = static_cast<std::int64_t>(to); cur != -1;
             cur = parent[static_cast<std::uint64_t>(cur)])
            rev.push_back(static_cast<std::uint64_t>(cur));
        ReconfigPath path;
        for (auto it = rev.rbegin(); it != rev.rend(); ++it)
            path.steps.push_back(assignment_from_index(*it, num_vars, alphabet));
        return path;
    }
};

} // namespace

std::optional<ReconfigPath> exact_path(const ReconfigProblem& p, std::uint64_t budget) {
    StateSpace ss(p.instance, budget);
    const std::uint32_t all = static_cast<std::uint32_t>(p.instance.constraints.size());
    std::uint64_t from = assignment_index(p.sigma_ini, ss.alphabet);
    std::uint64_t to = assignment_index(p.sigma_tar, ss.alphabet);
    std::vector<std::int64_t> parent;
    if (!ss.connected(from, to, all, &parent)) return std::nullopt;
    return ss.recover(parent, to);
}

Rational reconfig_value(const ReconfigProblem& p, std::uint64_t budget) {
    StateSpace ss(p.instance, budget);
    std::uint64_t from = assignment_index(p.sigma_ini, ss.alphabet);
    std::uint64_t to = assignment_index(p.sigma_tar, ss.alphabet);
    // Candidate bottlenecks are k/|E|; connectivity is monotone in k, so the
    // optimum is found by binary search.  k=0 always connects (full graph).
    std::uint32_t lo = 0, hi = std::min(ss.sat[from], ss.sat[to]);
    while (lo < hi) {
        std::uint32_t mid = lo + (hi - lo + 1) / 2;
        if (ss.connected(from, to, mid)) lo = mid;
        else hi = mid - 1;
    }
    return Rational(BigInt(lo), BigInt(p.instance.constraints.size()));
}

ReconfigPath bottleneck_path(const ReconfigProblem& p, std::uint64_t budget) {
    StateSpace ss(p.instance, budget);
    std::uint64_t from = assignment_index(p.sigma_ini, ss.alphabet);
    std::uint64_t to = assignment_index(p.sigma_tar, ss.alphabet);
    std::uint32_t lo = 0, hi = std::min(ss.sat[from], ss.sat[to]);
    while (lo < hi) {
        std::uint32_t mid = lo + (hi - lo + 1) / 2;
        if (ss.connected(from, to, mid)) lo = mid;
        else hi = mid - 1;
    }
    std::vector<std::int64_t> parent;
    ss.connected(from, to, lo, &parent);
    return ss.recover(parent, to);
}

Rational brute_force_reconfig_value(const ReconfigProblem& p, std::uint64_t budget) {
    StateSpace ss(p.instance, budget);
    std::uint64_t from = assignment_index(p.sigma_ini, ss.alphabet);
    std::uint64_t to = assignment_index(p.sigma_tar, ss.alphabet);
    // Widest-path DP (Dijkstra with max-min relaxation); the independent route
    // against which reconfig_value's threshold search is validated.
    std::vector<std::int64_t> best(ss.size, -1);
    using Entry = std::pair<std::uint32_t, std::uint64_t>;
    std::priority_queue<Entry> heap;
    best[from] = ss.sat[from];
    heap.push({ss.sat[from], from});
    while (!heap.empty()) {
        auto [w, u] = heap.top();
        heap.pop();
        if (static_cast<std::int64_t>(w) < best[u]) continue;
        ss.for_neighbors(u, [&](std::uint64_t v) {
            std::uint32_t cand = std::min<std::uint32_t>(w, ss.sat[v]);
            if (static_cast<std::int64_t>(cand) > best[v]) {
                best[v] = cand;
                heap.push({cand, v});
            }
        });
    }
    return Rational(BigInt(best[to]), BigInt(p.instance.constraints.size()));
}

bool verify_path(const ReconfigProblem& p, const ReconfigPath& path, const Rational& threshold,
                 std::string* diagnostic) {
    auto fail = [&](const std::string& msg) {
        if (diagnostic) *diagnostic = msg;
        return false;
    };
    if (path.steps.empty()) return fail("path is empty");
    for (std::size_t i = 0; i < path.steps.size(); ++i) {
        const Assignment& a = path.steps[i];
        try {
            p.instance.check_assignment(a);
        } catch (const InputError& e) {
            return fail("step " + std::to_string(i) + ": " + e.what());
        }
        if (value(p.instance, a) < threshold)
            return fail("step " + std::to_string(i) + " has value " +
                        to_string(value(p.instance, a)) + " below threshold " +
                        to_string(threshold));
        if (i > 0) {
            int diff = 0;
            for (std::size_t j = 0; j < a.size(); ++j)
                if (a[j] != path.steps[i - 1][j]) ++diff;
            // "at most one coordinate": equal consecutive steps are allowed.
            if (diff > 1)
                return fail("steps " + std::to_string(i - 1) + " and " + std::to_string(i) +
                            " differ in " + std::to_string(diff) + " coordinates");
        }
    }
    if (path.steps.front() != p.sigma_ini) return fail("first step is not sigma_ini");
    if (path.steps.back() != p.sigma_tar) return fail("last step is not sigma_tar");
    if (diagnostic) diagnostic->clear();
    return true;
}

} // namespace recfg
