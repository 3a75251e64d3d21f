#pragma once

#include <chrono>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "orient/algo_amortized.hpp"
#include "orient/algo_reinsertion.hpp"
#include "orient/algo_twostage.hpp"
#include "orient/counter_game.hpp"
#include "orient/verify.hpp"
#include "orient/workload.hpp"

namespace orient {

enum class Algo { Amortized, TwoStage, Reinsertion };

inline Algo algo_from_string(const std::string& s) {
    if (s == "amortized") return Algo::Amortized;
    if (s == "twostage") return Algo::TwoStage;
    if (s == "reinsertion") return Algo::Reinsertion;
    throw Error("unknown algorithm '" + s + "'");
}

inline const char* algo_name(Algo a) {
    switch (a) {
        case Algo::Amortized: return "amortized";
        case Algo::TwoStage: return "twostage";
        default: return "reinsertion";
    }
}

struct RunOptions {
    Algo algo = Algo::Amortized;
    bool verify = false;
    bool deterministic = false;
    uint64_t seed = 1;
    std::unordered_map<std::string, std::string> params;  // tau_star/tau_prime/tau/delta/sigma/eps overrides
};

struct MetricsRow {
    int64_t batch_index = 0;
    int64_t batch_size = 0;
    std::string algorithm;
    int64_t max_outdegree = 0;
    int64_t flips = 0;
    int64_t edges_to_static = 0;
    int64_t skyline_threshold_min = -1;
    int64_t recursion_depth = 0;
    uint64_t element_touches = 0;
    int64_t elapsed_ns = 0;
};

inline std::string metrics_header() {
    return "batch_index,batch_size,algorithm,max_outdegree,flips,edges_to_static,"
           "skyline_threshold_min,recursion_depth,element_touches,elapsed_ns";
}

inline std::string to_csv(const MetricsRow& r) {
    std::ostringstream os;
    os << r.batch_index << ',' << r.batch_size << ',' << r.algorithm << ',' << r.max_outdegree << ','
       << r.flips << ',' << r.edges_to_static << ',' << r.skyline_threshold_min << ','
       << r.recursion_depth << ',' << r.element_touches << ',' << r.elapsed_ns;
    return os.str();
}

struct RunResult {
    std::vector<MetricsRow> rows;
    std::string csv;            // header + one line per batch
    std::string digest;         // final orientation digest, hex
    bool verify_ok = true;
    std::vector<std::string> violations;
    int64_t final_max_outdegree = 0;
    int64_t final_edges = 0;
};

namespace runner_detail {

inline Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

inline uint64_t fnv1a(uint64_t h, uint64_t x) {
    for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xff;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string orientation_digest(const OrientedGraph& g) {
    std::vector<std::tuple<VertexId, VertexId, VertexId>> edges;
    edges.reserve(static_cast<size_t>(g.num_edges()));
    for (const auto& [u, v] : g.edge_list()) {
        const EdgeId id = g.find_edge(u, v);
        edges.emplace_back(u, v, g.edge(id).tail);
    }
    std::sort(edges.begin(), edges.end());
    uint64_t h = 0xcbf29ce484222325ULL;
    h = fnv1a(h, static_cast<uint64_t>(g.n()));
    h = fnv1a(h, static_cast<uint64_t>(g.num_edges()));
    for (const auto& [u, v, t] : edges) {
        h = fnv1a(h, static_cast<uint64_t>(static_cast<uint32_t>(u)));
        h = fnv1a(h, static_cast<uint64_t>(static_cast<uint32_t>(v)));
        h = fnv1a(h, static_cast<uint64_t>(static_cast<uint32_t>(t)));
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

struct DeterministicModeGuard {
    bool prev;
    explicit DeterministicModeGuard(bool on) : prev(prims::deterministic_mode) {
        prims::deterministic_mode = on;
    }
    ~DeterministicModeGuard() { prims::deterministic_mode = prev; }
};

}  // namespace runner_detail

// Runs a workload batch by batch, emitting one metrics row per batch and
// optional JSON-lines verification reports. Verification failures stop the
// run and surface in the result.
inline RunResult run_workload(const Workload& w, const RunOptions& opts,
                              std::ostream* reports = nullptr) {
    runner_detail::DeterministicModeGuard det(opts.deterministic);
    RunResult res;

    const int64_t c = w.c;
    std::optional<AmortizedParams> ap;
    std::optional<WorstCaseParams> wp;
    std::optional<ReinsertionParams> rp;
    int64_t cprime = c;
    int m = WorstCaseParams::strata_for(8 * c, c);

    auto get = [&](const char* k) -> std::optional<std::string> {
        auto it = opts.params.find(k);
        return it == opts.params.end() ? std::nullopt : std::optional<std::string>(it->second);
    };

    if (opts.algo == Algo::Amortized) {
        ap = AmortizedParams::defaults(c);
        if (auto v = get("tau_star")) ap->tau_star = runner_detail::parse_rational(*v);
        if (auto v = get("tau_prime")) {
            ap->tau_prime = runner_detail::parse_rational(*v);
            ap->eps = ap->tau_prime / Rational(c) - Rational(2);
        }
        if (auto v = get("tau")) ap->tau = runner_detail::parse_rational(*v);
        ap->validate(c);
    } else {
        wp = opts.algo == Algo::TwoStage ? WorstCaseParams::twostage_defaults(c, w.n)
                                         : WorstCaseParams::reinsertion_defaults(c, w.n);
        if (auto v = get("delta")) wp->delta = std::stoll(*v);
        if (auto v = get("sigma")) wp->sigma = std::stoll(*v);
        if (auto v = get("eps")) wp->eps = runner_detail::parse_rational(*v);
        if (get("sigma") || get("eps")) wp->eta = WorstCaseParams::compute_eta(wp->eps, wp->sigma);
        wp->validate();
        cprime = wp->cprime;
        m = wp->m;
        if (opts.algo == Algo::Reinsertion) {
            rp = ReinsertionParams::defaults(c, w.n);
            rp->wc = *wp;
        }
    }

    OrientedGraph g(w.n, c, cprime, m, opts.seed);
    std::optional<AmortizedAlgo> amortized;
    if (ap) amortized.emplace(g, *ap);

    std::optional<verify::Harness> harness;
    if (opts.verify && opts.algo != Algo::Amortized) {
        const int64_t logn = log2_ceil(w.n);
        const Rational cap_h =
            opts.algo == Algo::TwoStage
                ? Rational(5 * c)
                : Rational(2 * ((c + logn - 1) / logn) + (3 * c + logn - 1) / logn);
        verify::HarnessConfig cfg{wp->delta, wp->eps, wp->eta, cap_h, true};
        harness.emplace(g, cfg);
    }

    std::ostringstream csv;
    csv << metrics_header() << "\n";

    for (size_t bi = 0; bi < w.batches.size(); ++bi) {
        const Batch& b = w.batches[bi];
        MetricsRow row;
        row.batch_index = static_cast<int64_t>(bi);
        row.batch_size = static_cast<int64_t>(b.size());
        row.algorithm = algo_name(opts.algo);
        const uint64_t touches0 = touches();
        const auto t0 = std::chrono::steady_clock::now();
        UpdateStats st;
        try {
            g.validate_batch(b);
            if (harness && !b.empty()) harness->begin_batch(b);
            switch (opts.algo) {
                case Algo::Amortized:
                    st = amortized->update(b);
                    break;
                case Algo::TwoStage:
                    st = two_stage_update(g, b, *wp, harness ? &*harness : nullptr);
                    break;
                case Algo::Reinsertion:
                    st = reinsertion_update(g, b, *rp, harness ? &*harness : nullptr);
                    break;
            }
            if (harness && !b.empty()) harness->end_batch();
            if (opts.verify) {
                if (opts.algo == Algo::Amortized) {
                    if (Rational(g.max_out_degree()) > ap->bound())
                        throw Error("verify: amortized bound exceeded: max out-degree " +
                                    std::to_string(g.max_out_degree()));
                } else if (!g.rsl().special_empty()) {
                    throw Error("verify: special stratum not drained after the update");
                }
            }
        } catch (const Error& e) {
            res.verify_ok = false;
            res.violations.push_back("batch " + std::to_string(bi) + ": " + e.what());
            if (reports) {
                nlohmann::json j{{"batch", bi}, {"error", e.what()}};
                *reports << j.dump() << "\n";
            }
            break;
        }
        const auto t1 = std::chrono::steady_clock::now();
        row.max_outdegree = g.max_out_degree();
        row.flips = st.flips;
        row.edges_to_static = st.edges_to_static;
        row.skyline_threshold_min = st.min_threshold;
        row.recursion_depth = st.recursion_depth;
        row.element_touches = touches() - touches0;
        row.elapsed_ns = opts.deterministic
                             ? 0
                             : std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
        res.rows.push_back(row);
        csv << to_csv(row) << "\n";
        if (reports && harness) {
            nlohmann::json calls = nlohmann::json::array();
            for (const auto& cr : harness->call_reports()) {
                calls.push_back({{"batch_size", cr.batch_size},
                                 {"trivial", cr.trivial},
                                 {"bounded", cr.bounded},
                                 {"threshold", cr.threshold},
                                 {"max_outdegree", cr.max_outdegree},
                                 {"ok", cr.ok()}});
            }
            nlohmann::json j{{"batch", bi},
                             {"algorithm", algo_name(opts.algo)},
                             {"max_outdegree", row.max_outdegree},
                             {"promotion_checks", harness->promotion_checks()},
                             {"calls", std::move(calls)}};
            *reports << j.dump() << "\n";
        }
    }
    res.csv = csv.str();
    res.digest = runner_detail::orientation_digest(g);
    res.final_max_outdegree = g.max_out_degree();
    res.final_edges = g.num_edges();
    return res;
}

struct CounterStressResult {
    Rational max_weight;
    Rational bound;  // K * (Y + H * log2 n) with K pinned at 4
    bool within_bound = false;
    size_t moves = 0;
};

inline CounterStressResult counter_stress(int n, const Rational& y, const Rational& h, int moves,
                                          uint64_t seed) {
    auto seq = counter::greedy_adversary(n, y, h, moves, seed);
    counter::validate_sequence(seq, h);
    auto stats = counter::play_sequence(seq, h);
    CounterStressResult r;
    r.max_weight = stats.max_weight;
    r.bound = (y + h * Rational(log2_ceil(n))) * Rational(4);
    r.within_bound = !(r.max_weight > r.bound);
    r.moves = seq.moves.size();
    return r;
}

}  // namespace orient
