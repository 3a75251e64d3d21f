#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "orient/bag.hpp"
#include "orient/common.hpp"
#include "orient/prims.hpp"
#include "orient/rsl.hpp"

namespace orient {

using EdgeHandle = Bag<EdgeId>::Handle;

// An edge knows its endpoints (canonicalized u < v), the endpoint it points
// out of (the tail), and where its containers keep it. prev_tail records the
// orientation at extraction time while the edge is out being reoriented.
struct EdgeRecord {
    VertexId u = -1, v = -1;
    VertexId tail = -1;
    VertexId prev_tail = -1;
    EdgeHandle out_h;
    EdgeHandle inc_u_h, inc_v_h;
    bool alive = false;

    VertexId head() const { return tail == u ? v : u; }
    VertexId other(VertexId x) const { return x == u ? v : u; }
};

struct Batch {
    enum class Kind { Insert, Delete };
    Kind kind = Kind::Insert;
    std::vector<std::pair<VertexId, VertexId>> edges;

    size_t size() const { return edges.size(); }
    bool empty() const { return edges.empty(); }
};

struct FlipEvent {
    enum class Kind { Insert, Delete, Flip };
    Kind kind;
    VertexId u, v;        // canonical endpoints
    VertexId tail;        // tail after the event (for Delete: tail at removal)
    VertexId old_tail;    // Flip only
};

// Verification hooks. Production runs leave the observer null.
struct GraphObserver {
    virtual ~GraphObserver() = default;
    // fired before the first mutation of v's out-pannier in the current step
    virtual void before_pannier_touch(VertexId /*v*/) {}
    // fired just before a pop promotes v's back bag to be the front bag
    virtual void before_promotion(VertexId /*v*/) {}
};

// The mutable oriented-graph state every algorithm updates: per-vertex
// incidence bags and out-edge panniers, degree-keyed RSL, and the edge table.
// One mutating call at a time; reads are fine between calls.
class OrientedGraph {
public:
    OrientedGraph(int n, int64_t c, int64_t cprime, int m, uint64_t seed)
        : n_(n), c_(c), rsl_(n, cprime, m), out_(n), inc_(n), seed_(splitmix64(seed ^ 0x0913e57aULL)), touched_(n) {
        for (auto& b : inc_) b = std::make_unique<Bag<EdgeId>>();
        edge_lookup_.reserve(64);
    }

    int n() const { return n_; }
    int64_t arboricity_bound() const { return c_; }
    int64_t num_edges() const { return live_edges_; }
    int64_t out_degree(VertexId v) const { return out_[v].size(); }
    int64_t degree(VertexId v) const { return inc_[v]->size(); }
    const EdgeRecord& edge(EdgeId e) const { return edges_[e]; }
    RoughlySortedList& rsl() { return rsl_; }
    const RoughlySortedList& rsl() const { return rsl_; }
    const Pannier<EdgeId>& out_edges(VertexId v) const { return out_[v]; }

    GraphObserver* observer = nullptr;
    std::vector<FlipEvent>* event_log = nullptr;

    uint64_t next_seed() { return seed_ = splitmix64(seed_); }

    EdgeId find_edge(VertexId a, VertexId b) const {
        auto it = edge_lookup_.find(key(a, b));
        return it == edge_lookup_.end() ? -1 : it->second;
    }

    // exact current maximum out-degree, via the top of the RSL
    int64_t max_out_degree() const {
        const int top = rsl_.top_nonempty(rsl_.main_strata() + 2);
        if (top <= 0) return 0;
        int64_t best = 0;
        for (VertexId v : rsl_.peek_stratum(top, rsl_.stratum_size(top)))
            best = std::max(best, out_[v].size());
        return best;
    }

    std::vector<std::pair<VertexId, VertexId>> edge_list() const {
        std::vector<std::pair<VertexId, VertexId>> out;
        out.reserve(static_cast<size_t>(live_edges_));
        for (const auto& e : edges_)
            if (e.alive) out.emplace_back(e.u, e.v);
        return out;
    }

    void validate_batch(const Batch& b) const {
        std::unordered_map<uint64_t, int> dup;
        dup.reserve(b.edges.size() * 2);
        for (const auto& [a, bb] : b.edges) {
            if (a == bb) throw Error("batch: self-loop (" + pairstr(a, bb) + ")");
            if (a < 0 || bb < 0 || a >= n_ || bb >= n_)
                throw Error("batch: vertex out of range (" + pairstr(a, bb) + ")");
            if (!dup.emplace(key(a, bb), 0).second)
                throw Error("batch: duplicate edge (" + pairstr(a, bb) + ")");
            const bool present = find_edge(a, bb) >= 0;
            if (b.kind == Batch::Kind::Insert && present)
                throw Error("batch: insert of existing edge (" + pairstr(a, bb) + ")");
            if (b.kind == Batch::Kind::Delete && !present)
                throw Error("batch: delete of absent edge (" + pairstr(a, bb) + ")");
        }
    }

    // Inserts are oriented out of the lower-id endpoint and appended to that
    // tail's back bag; deletes unhook all three handles. Returns affected ids.
    std::vector<EdgeId> apply_batch(const Batch& b) {
        return b.kind == Batch::Kind::Insert ? insert_edges(b.edges) : delete_pairs(b.edges);
    }

    std::vector<EdgeId> insert_edges(const std::vector<std::pair<VertexId, VertexId>>& pairs) {
        begin_degree_step();
        std::vector<EdgeId> ids;
        ids.reserve(pairs.size());
        std::vector<std::pair<VertexId, EdgeId>> by_tail, by_inc;
        by_tail.reserve(pairs.size());
        by_inc.reserve(pairs.size() * 2);
        for (const auto& [a, bb] : pairs) {
            const EdgeId id = alloc_edge(std::min(a, bb), std::max(a, bb));
            EdgeRecord& e = edges_[id];
            e.tail = std::min(a, bb);  // arbitrary-orientation policy: lower id
            ids.push_back(id);
            by_tail.emplace_back(e.tail, id);
            by_inc.emplace_back(e.u, id);
            by_inc.emplace_back(e.v, id);
            edge_lookup_[key(e.u, e.v)] = id;
            if (event_log) event_log->push_back({FlipEvent::Kind::Insert, e.u, e.v, e.tail, -1});
        }
        live_edges_ += static_cast<int64_t>(pairs.size());
        for (const auto& g : prims::semisort_group(by_tail, next_seed())) {
            note_touch(g.key);
            auto hs = out_[g.key].insert_back(g.values);
            for (size_t i = 0; i < g.values.size(); ++i) edges_[g.values[i]].out_h = hs[i];
        }
        for (const auto& g : prims::semisort_group(by_inc, next_seed())) {
            auto hs = inc_[g.key]->batch_insert(g.values);
            for (size_t i = 0; i < g.values.size(); ++i) {
                EdgeRecord& e = edges_[g.values[i]];
                (e.u == g.key ? e.inc_u_h : e.inc_v_h) = hs[i];
            }
        }
        finish_degree_step();
        return ids;
    }

    std::vector<EdgeId> delete_pairs(const std::vector<std::pair<VertexId, VertexId>>& pairs) {
        std::vector<EdgeId> ids;
        ids.reserve(pairs.size());
        for (const auto& [a, bb] : pairs) {
            const EdgeId id = find_edge(a, bb);
            if (id < 0) throw Error("delete of absent edge (" + pairstr(a, bb) + ")");
            ids.push_back(id);
        }
        remove_edges(ids);
        return ids;
    }

    void remove_edges(const std::vector<EdgeId>& ids) {
        begin_degree_step();
        std::vector<std::pair<VertexId, EdgeId>> by_tail, by_inc;
        by_tail.reserve(ids.size());
        by_inc.reserve(ids.size() * 2);
        for (EdgeId id : ids) {
            EdgeRecord& e = edges_[id];
            if (!e.alive) throw Error("remove of dead edge id " + std::to_string(id));
            by_tail.emplace_back(e.tail, id);
            by_inc.emplace_back(e.u, id);
            by_inc.emplace_back(e.v, id);
            if (event_log) event_log->push_back({FlipEvent::Kind::Delete, e.u, e.v, e.tail, -1});
        }
        for (const auto& g : prims::semisort_group(by_tail, next_seed())) {
            note_touch(g.key);
            std::vector<EdgeHandle> hs;
            hs.reserve(g.values.size());
            for (EdgeId id : g.values) hs.push_back(edges_[id].out_h);
            out_[g.key].delete_handles(hs);
        }
        for (const auto& g : prims::semisort_group(by_inc, next_seed())) {
            std::vector<EdgeHandle> hs;
            hs.reserve(g.values.size());
            for (EdgeId id : g.values)
                hs.push_back(edges_[id].u == g.key ? edges_[id].inc_u_h : edges_[id].inc_v_h);
            inc_[g.key]->batch_delete(hs);
        }
        for (EdgeId id : ids) {
            EdgeRecord& e = edges_[id];
            edge_lookup_.erase(key(e.u, e.v));
            e.alive = false;
            free_edges_.push_back(id);
        }
        live_edges_ -= static_cast<int64_t>(ids.size());
        finish_degree_step();
    }

    // Reverse each edge: out of the old tail's pannier (front or back,
    // wherever its handle lives), into the new tail's back bag.
    void flip_edges(const std::vector<EdgeId>& ids) {
        begin_degree_step();
        extract_from_tails(ids);
        std::vector<std::pair<VertexId, EdgeId>> by_new;
        by_new.reserve(ids.size());
        for (EdgeId id : ids) {
            EdgeRecord& e = edges_[id];
            const VertexId nt = e.other(e.tail);
            if (event_log) event_log->push_back({FlipEvent::Kind::Flip, e.u, e.v, nt, e.tail});
            e.tail = nt;
            by_new.emplace_back(nt, id);
        }
        flips_ += static_cast<int64_t>(ids.size());
        insert_out_back(by_new);
        finish_degree_step();
    }

    int64_t total_flips() const { return flips_; }

    // --- skyline/static-orientation support -------------------------------

    struct Popped {
        EdgeId id;
        VertexId from;
    };

    // Pops `demand` out-edges per vertex in pannier order (front first, the
    // back promoted when the front runs dry). Edges leave all out containers;
    // prev_tail marks where each came from until it is reinserted.
    std::vector<Popped> pop_out_edges(const std::vector<std::pair<VertexId, int64_t>>& demands) {
        std::vector<Popped> out;
        for (const auto& [v, k] : demands) {
            if (k <= 0) continue;
            note_touch(v);
            if (observer && out_[v].pop_would_promote(k)) observer->before_promotion(v);
            auto res = out_[v].batch_pop(k);
            for (EdgeId id : res.values) {
                edges_[id].prev_tail = v;
                edges_[id].out_h = EdgeHandle{};
                out.push_back({id, v});
            }
        }
        return out;
    }

    // Reinsert edges into their tails' back bags (tail must be current).
    void insert_out_back(const std::vector<std::pair<VertexId, EdgeId>>& by_vertex) {
        for (const auto& g : prims::semisort_group(by_vertex, next_seed())) {
            note_touch(g.key);
            auto hs = out_[g.key].insert_back(g.values);
            for (size_t i = 0; i < g.values.size(); ++i) edges_[g.values[i]].out_h = hs[i];
        }
    }

    // Reinsert unchanged extracted edges into the same (current) front bags.
    void insert_out_front(const std::vector<std::pair<VertexId, EdgeId>>& by_vertex) {
        for (const auto& g : prims::semisort_group(by_vertex, next_seed())) {
            note_touch(g.key);
            auto hs = out_[g.key].insert_front(g.values);
            for (size_t i = 0; i < g.values.size(); ++i) edges_[g.values[i]].out_h = hs[i];
        }
    }

    void clear_prev_tail(const std::vector<EdgeId>& ids) {
        for (EdgeId id : ids) edges_[id].prev_tail = -1;
    }

    // Valid only while the edge is extracted; container handles are rebuilt
    // by the reinsert that follows.
    void set_tail(EdgeId id, VertexId t) { edges_[id].tail = t; }

    void log_flip(EdgeId id, VertexId old_tail, VertexId new_tail) {
        ++flips_;
        if (event_log)
            event_log->push_back({FlipEvent::Kind::Flip, edges_[id].u, edges_[id].v, new_tail, old_tail});
    }

    // A degree step brackets one batch mutation: every vertex whose pannier
    // is touched gets its out-degree snapshotted once, and the RSL is synced
    // with old -> new values when the step finishes.
    void begin_degree_step() {
        if (step_open_) return;  // nested ops share the outer step
        step_open_ = true;
        touched_.clear();
        touched_list_.clear();
    }

    void finish_degree_step() {
        if (!step_open_) return;
        step_open_ = false;
        std::vector<std::tuple<VertexId, int64_t, int64_t>> ups;
        ups.reserve(touched_list_.size());
        for (const auto& [v, oldd] : touched_list_) {
            const int64_t cur = out_[v].size();
            if (cur != oldd) ups.emplace_back(v, oldd, cur);
        }
        rsl_.batch_update(ups);
    }

    bool step_open() const { return step_open_; }

    void check_consistency() const {  // test support: degree + containment invariants
        int64_t sum = 0;
        for (int v = 0; v < n_; ++v) {
            sum += out_[v].size();
            if (rsl_.value(v) != out_[v].size())
                throw Error("consistency: RSL value mismatch at vertex " + std::to_string(v));
        }
        if (sum != live_edges_) throw Error("consistency: sum of out-degrees != edge count");
        for (const auto& e : edges_) {
            if (!e.alive) continue;
            if (!out_[e.tail].front_bag().is_live(e.out_h) && !out_[e.tail].back_bag().is_live(e.out_h))
                throw Error("consistency: out-handle dead");
            if (!inc_[e.u]->is_live(e.inc_u_h) || !inc_[e.v]->is_live(e.inc_v_h))
                throw Error("consistency: incidence handle dead");
        }
    }

private:
    int n_;
    int64_t c_;
    RoughlySortedList rsl_;
    std::vector<Pannier<EdgeId>> out_;
    std::vector<std::unique_ptr<Bag<EdgeId>>> inc_;
    std::vector<EdgeRecord> edges_;
    std::vector<EdgeId> free_edges_;
    std::unordered_map<uint64_t, EdgeId> edge_lookup_;
    int64_t live_edges_ = 0;
    int64_t flips_ = 0;
    uint64_t seed_;
    bool step_open_ = false;
    StampSet touched_;
    std::vector<std::pair<VertexId, int64_t>> touched_list_;

    static uint64_t key(VertexId a, VertexId b) {
        const uint64_t lo = static_cast<uint32_t>(std::min(a, b));
        const uint64_t hi = static_cast<uint32_t>(std::max(a, b));
        return (hi << 32) | lo;
    }

    static std::string pairstr(VertexId a, VertexId b) {
        return std::to_string(a) + "," + std::to_string(b);
    }

    EdgeId alloc_edge(VertexId u, VertexId v) {
        EdgeId id;
        if (!free_edges_.empty()) {
            id = free_edges_.back();
            free_edges_.pop_back();
        } else {
            id = static_cast<EdgeId>(edges_.size());
            edges_.emplace_back();
        }
        EdgeRecord& e = edges_[id];
        e = EdgeRecord{};
        e.u = u;
        e.v = v;
        e.alive = true;
        return id;
    }

    void note_touch(VertexId v) {
        if (observer) observer->before_pannier_touch(v);
        if (step_open_ && touched_.insert(static_cast<size_t>(v)))
            touched_list_.emplace_back(v, out_[v].size());
    }

    void extract_from_tails(const std::vector<EdgeId>& ids) {
        std::vector<std::pair<VertexId, EdgeId>> by_tail;
        by_tail.reserve(ids.size());
        for (EdgeId id : ids) by_tail.emplace_back(edges_[id].tail, id);
        for (const auto& g : prims::semisort_group(by_tail, next_seed())) {
            note_touch(g.key);
            std::vector<EdgeHandle> hs;
            hs.reserve(g.values.size());
            for (EdgeId id : g.values) hs.push_back(edges_[id].out_h);
            out_[g.key].delete_handles(hs);
        }
    }
};

}  // namespace orient
