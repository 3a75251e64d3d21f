#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "orient/graph.hpp"
#include "orient/oracles.hpp"
#include "orient/skyline.hpp"
#include "orient/static_orient.hpp"

// Runtime verification of the potential framework: a reference orientation is
// recomputed per batch on the post-batch edge set and frozen for the call, so
// good/bad classifications and all potential deltas are well-defined. Every
// quantity lives in Z + Z*eps with eps rational, so checks are exact.

namespace orient::verify {

// value a + b*eps
struct PotVal {
    int64_t units = 0;
    int64_t epsu = 0;

    PotVal operator+(const PotVal& o) const { return {units + o.units, epsu + o.epsu}; }
    PotVal operator-(const PotVal& o) const { return {units - o.units, epsu - o.epsu}; }
    bool operator==(const PotVal& o) const = default;
};

inline bool leq(const PotVal& a, const PotVal& b, const Rational& eps) {
    // a.units + a.epsu*eps <= b.units + b.epsu*eps
    return static_cast<__int128>(a.units - b.units) * eps.den <=
           static_cast<__int128>(b.epsu - a.epsu) * eps.num;
}

inline bool lt(const PotVal& a, const PotVal& b, const Rational& eps) { return !leq(b, a, eps); }

inline PotVal pot_min(const PotVal& a, const PotVal& b, const Rational& eps) {
    return leq(a, b, eps) ? a : b;
}

inline std::string str(const PotVal& v, const Rational& eps) {
    return std::to_string(v.units) + (v.epsu ? (v.epsu > 0 ? "+" : "") + std::to_string(v.epsu) + "*" + eps.str() : "");
}

struct ReferenceOrientation {
    std::unordered_map<uint64_t, VertexId> tail;
    int64_t delta_ref = 0;

    static uint64_t key(VertexId a, VertexId b) {
        const uint64_t lo = static_cast<uint32_t>(std::min(a, b));
        const uint64_t hi = static_cast<uint32_t>(std::max(a, b));
        return (hi << 32) | lo;
    }

    // static (2+1)c orientation of the given edge set: delta_ref = 3c
    static ReferenceOrientation compute(const std::vector<std::pair<VertexId, VertexId>>& edges,
                                        int64_t c, uint64_t seed) {
        ReferenceOrientation ref;
        ref.delta_ref = 3 * c;
        auto r = static_orientation(edges, c, Rational(1), seed);
        ref.tail.reserve(edges.size() * 2);
        for (size_t i = 0; i < edges.size(); ++i) ref.tail[key(edges[i].first, edges[i].second)] = r.tails[i];
        return ref;
    }

    bool covers(VertexId a, VertexId b) const { return tail.count(key(a, b)) > 0; }

    VertexId tail_of(VertexId a, VertexId b) const {
        auto it = tail.find(key(a, b));
        if (it == tail.end()) throw Error("reference orientation does not cover the edge");
        return it->second;
    }
};

struct EdgeClass {
    EdgeId id;
    bool good;
    bool front;
};

// classes of v's out-edges, front bag first in peek order, then back bag
inline std::vector<EdgeClass> classify(const OrientedGraph& g, const ReferenceOrientation& ref,
                                       VertexId v, const std::unordered_set<EdgeId>* exclude = nullptr) {
    std::vector<EdgeClass> out;
    const auto& q = g.out_edges(v);
    auto emit = [&](EdgeId id, bool front) {
        if (exclude && exclude->count(id)) return;
        const auto& e = g.edge(id);
        out.push_back({id, ref.tail_of(e.u, e.v) == e.tail, front});
    };
    for (EdgeId id : q.front_bag().peek(q.front_bag().size())) emit(id, true);
    for (EdgeId id : q.back_bag().peek(q.back_bag().size())) emit(id, false);
    return out;
}

// Table pricing: good front 1+2e, good back 1-e, bad front 1, bad back 1+e
// for the first 3*delta bad back edges (in peek order) and 1 after.
inline PotVal price(const std::vector<EdgeClass>& classes, int64_t delta_p) {
    PotVal p;
    int64_t priced_bad_back = 0;
    for (const auto& c : classes) {
        p.units += 1;
        if (c.good && c.front)
            p.epsu += 2;
        else if (c.good && !c.front)
            p.epsu -= 1;
        else if (!c.good && !c.front && priced_bad_back < 3 * delta_p) {
            p.epsu += 1;
            ++priced_bad_back;
        }
    }
    return p;
}

inline PotVal potential_of(const OrientedGraph& g, const ReferenceOrientation& ref, VertexId v,
                           int64_t delta_p, const std::unordered_set<EdgeId>* exclude = nullptr) {
    return price(classify(g, ref, v, exclude), delta_p);
}

struct BoundsReport {
    bool ok = true;
    std::string detail;
};

// d+(v) - delta*eps <= p(v) <= d+(v) + 5*delta*eps per vertex, plus the
// max-potential vertex staying within beta = 6*delta*eps of the max-degree
// vertex's potential.
inline BoundsReport check_degree_potential_bounds(const OrientedGraph& g,
                                                  const ReferenceOrientation& ref,
                                                  const Rational& eps) {
    const int64_t d = ref.delta_ref;
    BoundsReport rep;
    PotVal maxp{INT64_MIN, 0};
    bool have = false;
    VertexId argmax_deg = 0;
    for (int v = 0; v < g.n(); ++v)
        if (g.out_degree(v) > g.out_degree(argmax_deg)) argmax_deg = v;
    PotVal p_of_maxdeg;
    for (int v = 0; v < g.n(); ++v) {
        const PotVal p = potential_of(g, ref, v, d);
        const PotVal lo{g.out_degree(v), -d};
        const PotVal hi{g.out_degree(v), 5 * d};
        if (!leq(lo, p, eps) || !leq(p, hi, eps)) {
            rep.ok = false;
            rep.detail = "potential-degree relation broken at vertex " + std::to_string(v) + ": p=" +
                         str(p, eps) + " d+=" + std::to_string(g.out_degree(v));
            return rep;
        }
        if (!have || lt(maxp, p, eps)) {
            maxp = p;
            have = true;
        }
        if (v == argmax_deg) p_of_maxdeg = p;
    }
    if (g.n() > 0) {
        const PotVal beta{0, 6 * d};
        if (!leq(maxp - p_of_maxdeg, beta, eps)) {
            rep.ok = false;
            rep.detail = "max potential exceeds the max-degree vertex's by more than beta";
        }
    }
    return rep;
}

struct CallReport {
    int64_t batch_size = 0;
    bool trivial = false;
    bool bounded = false;
    int64_t threshold = -1;
    int64_t max_outdegree = 0;
    PotVal release;          // sum of q - r over touched vertices
    std::string violation;   // empty when ok

    bool ok() const { return violation.empty(); }
};

struct HarnessConfig {
    int64_t delta = 0;   // algorithm delta (>= delta_ref)
    Rational eps;        // algorithm eps
    int64_t eta = 0;
    Rational cap_h;      // H in the (H,T)-bounded check: 5c or ceil(5c/log n)
    bool strict = true;  // throw on first violation
};

// GraphObserver + AlgoHooks in one: lazily captures pre-touch potentials so
// r and q are known exactly for every vertex an update call touches.
class Harness : public GraphObserver, public AlgoHooks {
public:
    Harness(OrientedGraph& g, HarnessConfig cfg) : g_(g), cfg_(cfg) {
        if (cfg_.eta < 1) throw Error("verify: eta must be positive");
    }

    const std::vector<CallReport>& call_reports() const { return calls_; }
    const std::vector<std::string>& violations() const { return violations_; }
    int64_t promotion_checks() const { return promotion_checks_; }
    const ReferenceOrientation& reference() const { return ref_; }

    // Freeze a reference on the post-batch edge set, before the update runs.
    void begin_batch(const Batch& b) {
        auto edges = g_.edge_list();
        doomed_.clear();
        if (b.kind == Batch::Kind::Insert) {
            for (const auto& [a, bb] : b.edges)
                edges.emplace_back(std::min(a, bb), std::max(a, bb));
        } else {
            std::unordered_set<uint64_t> gone;
            for (const auto& [a, bb] : b.edges) {
                gone.insert(ReferenceOrientation::key(a, bb));
                const EdgeId id = g_.find_edge(a, bb);
                if (id >= 0) doomed_.insert(id);
            }
            std::vector<std::pair<VertexId, VertexId>> kept;
            kept.reserve(edges.size());
            for (const auto& e : edges)
                if (!gone.count(ReferenceOrientation::key(e.first, e.second))) kept.push_back(e);
            edges.swap(kept);
        }
        ref_ = ReferenceOrientation::compute(edges, g_.arboricity_bound(), g_.next_seed());
        if (cfg_.delta < ref_.delta_ref)
            throw Error("verify: params delta " + std::to_string(cfg_.delta) +
                        " below the reference bound " + std::to_string(ref_.delta_ref));
        calls_.clear();
    }

    // After the whole update: per-vertex potential bounds + resolution lemma.
    void end_batch() {
        auto rep = check_degree_potential_bounds(g_, ref_, cfg_.eps);
        if (!rep.ok) fail(rep.detail);
    }

    // ---- AlgoHooks ----

    void on_call_begin(const Batch& b) override {
        frames_.push_back(Frame{});
        Frame& f = frames_.back();
        f.batch_size = static_cast<int64_t>(b.size());
        f.is_delete = b.kind == Batch::Kind::Delete;
        phase_ = Phase::Applying;
        g_.observer = this;
    }

    void on_batch_applied() override {
        Frame& f = frames_.back();
        // injection: each inserted edge contributes at most 1 + eps; deletes
        // contribute exactly nothing against the frozen reference
        PotVal injected{0, 0};
        for (auto& [v, before] : f.pre_batch) {
            const PotVal now = potential_now(v);
            injected = injected + (now - before);
            f.r[v] = now;
        }
        if (!f.is_delete) {
            const PotVal cap{f.batch_size, f.batch_size};
            if (!leq(injected, cap, cfg_.eps))
                fail("batch injected " + str(injected, cfg_.eps) + " > " + str(cap, cfg_.eps));
        } else {
            if (!(injected == PotVal{0, 0}))
                fail("delete batch changed surviving potential by " + str(injected, cfg_.eps));
        }
        phase_ = Phase::Running;
    }

    void on_skyline_op(bool is_flip, const SkylineDemands& s, bool sufficient) override {
        op_open_ = true;
        op_pre_.clear();
        op_is_flip_ = is_flip;
        op_sufficient_ = sufficient;
        op_x_ = s.x;
        Frame& f = frames_.back();
        if (f.threshold < 0 || s.threshold < f.threshold) f.threshold = s.threshold;
        check_special_drainage(s);
    }

    void on_skyline_op_end() override {
        PotVal delta{0, 0};
        for (auto& [v, before] : op_pre_) delta = delta + (potential_now(v) - before);
        if (op_sufficient_) {
            if (op_is_flip_) {
                // flipping a sufficient skyline releases at least x*eps
                const PotVal need{0, -op_x_};
                if (!leq(delta, need, cfg_.eps))
                    fail("skyline flip of size " + std::to_string(op_x_) + " released only " +
                         str(PotVal{0, 0} - delta, cfg_.eps));
            } else {
                if (!leq(delta, PotVal{0, 0}, cfg_.eps))
                    fail("static skyline orientation increased potential by " + str(delta, cfg_.eps));
            }
        }
        op_open_ = false;
        op_pre_.clear();
    }

    void on_call_end() override {
        Frame f = std::move(frames_.back());
        frames_.pop_back();
        phase_ = Phase::Idle;
        g_.observer = nullptr;
        if (f.batch_size == 0) return;  // empty updates terminate immediately, no call to judge
        CallReport rep;
        rep.batch_size = f.batch_size;
        rep.threshold = f.threshold;
        rep.max_outdegree = g_.max_out_degree();
        rep.trivial = rep.max_outdegree <= 8 * cfg_.delta;
        PotVal sum_delta{0, 0};
        bool floor_ok = true;
        std::string floor_detail;
        const PotVal tfloor{f.threshold, -cfg_.delta};
        for (auto& [v, r] : f.r) {
            const PotVal q = potential_now(v);
            sum_delta = sum_delta + (q - r);
            if (lt(q, pot_min(r, tfloor, cfg_.eps), cfg_.eps) && floor_ok) {
                floor_ok = false;
                floor_detail = "vertex " + std::to_string(v) + " fell to " + str(q, cfg_.eps) +
                               " below min(r=" + str(r, cfg_.eps) + ", T-delta*eps)";
            }
        }
        rep.release = sum_delta;
        if (f.threshold >= 0) {
            const PotVal need{0, -f.batch_size * cfg_.eta};
            const bool release_ok = leq(sum_delta, need, cfg_.eps);
            const bool window_ok =
                Rational(f.threshold) <= Rational(rep.max_outdegree) &&
                Rational(rep.max_outdegree) <= Rational(f.threshold) + cfg_.cap_h;
            rep.bounded = floor_ok && release_ok && window_ok;
            if (!rep.trivial && !rep.bounded) {
                std::string why = !floor_ok           ? floor_detail
                                  : !release_ok       ? "released " + str(PotVal{0, 0} - sum_delta, cfg_.eps) +
                                                      " < batch*eta*eps"
                                                      : "max out-degree " + std::to_string(rep.max_outdegree) +
                                                      " outside [T, T+H] at T=" + std::to_string(f.threshold);
                rep.violation = "call neither trivial nor (H,T)-bounded: " + why;
                fail(rep.violation);
            }
        } else if (!rep.trivial) {
            // no skyline was taken; only triviality can justify the call
            rep.violation = "call took no skyline but is not trivial";
            fail(rep.violation);
        }
        calls_.push_back(std::move(rep));
    }

    // ---- GraphObserver ----

    void before_pannier_touch(VertexId v) override {
        if (frames_.empty()) return;
        Frame& f = frames_.back();
        if (phase_ == Phase::Applying) {
            if (!f.pre_batch.count(v)) f.pre_batch.emplace(v, potential_now(v, f.is_delete));
        } else if (phase_ == Phase::Running) {
            if (!f.r.count(v)) f.r.emplace(v, potential_now(v));
            if (op_open_ && !op_pre_.count(v)) op_pre_.emplace(v, potential_now(v));
        }
    }

    void before_promotion(VertexId v) override {
        if (frames_.empty() || phase_ != Phase::Running) return;
        ++promotion_checks_;
        // queue-swap: promoting R >= 4*delta_ref back edges cannot raise p(v)
        int64_t goods = 0, bads = 0;
        const auto& back = g_.out_edges(v).back_bag();
        for (EdgeId id : back.peek(back.size())) {
            const auto& e = g_.edge(id);
            (ref_.tail_of(e.u, e.v) == e.tail ? goods : bads)++;
        }
        const int64_t r = goods + bads;
        if (r >= 4 * ref_.delta_ref) {
            const int64_t delta_epsu = 3 * goods - std::min(bads, 3 * ref_.delta_ref);
            if (delta_epsu > 0)
                fail("promotion of " + std::to_string(r) + " edges at vertex " + std::to_string(v) +
                     " raised p(v) by " + str(PotVal{0, delta_epsu}, cfg_.eps));
        }
    }

private:
    enum class Phase { Idle, Applying, Running };

    struct Frame {
        int64_t batch_size = 0;
        bool is_delete = false;
        int64_t threshold = -1;
        std::unordered_map<VertexId, PotVal> pre_batch;  // p, captured before first batch touch
        std::unordered_map<VertexId, PotVal> r;          // after batch application
    };

    OrientedGraph& g_;
    HarnessConfig cfg_;
    ReferenceOrientation ref_;
    std::vector<Frame> frames_;
    Phase phase_ = Phase::Idle;
    std::unordered_set<EdgeId> doomed_;
    std::unordered_map<VertexId, PotVal> op_pre_;
    bool op_open_ = false, op_is_flip_ = false, op_sufficient_ = false;
    int64_t op_x_ = 0;
    std::vector<CallReport> calls_;
    std::vector<std::string> violations_;
    int64_t promotion_checks_ = 0;

    PotVal potential_now(VertexId v, bool exclude_doomed = false) {
        return potential_of(g_, ref_, v, ref_.delta_ref, exclude_doomed ? &doomed_ : nullptr);
    }

    // every skyline must take all weight sitting in the special stratum
    void check_special_drainage(const SkylineDemands& s) {
        const auto& rsl = g_.rsl();
        if (rsl.special_empty()) return;
        const int64_t zcap = static_cast<int64_t>(rsl.main_strata()) * rsl.rounding();
        std::unordered_map<VertexId, int64_t> dm;
        for (const auto& [v, d] : s.demands) dm[v] = d;
        for (VertexId v : rsl.peek_stratum(rsl.main_strata() + 1,
                                           rsl.stratum_size(rsl.main_strata() + 1))) {
            const int64_t need = g_.out_degree(v) - zcap;
            auto it = dm.find(v);
            if (it == dm.end() || it->second < need)
                fail("skyline missed special-bag weight at vertex " + std::to_string(v));
        }
    }

    void fail(const std::string& msg) {
        violations_.push_back(msg);
        if (cfg_.strict) throw Error("verify: " + msg);
    }
};

}  // namespace orient::verify
