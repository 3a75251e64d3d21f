#pragma once

#include <set>
#include <vector>

#include "orient/graph.hpp"
#include "orient/report.hpp"

namespace orient::apps {

// Batch-dynamic maximal matching over the maintained orientation. Each vertex
// tracks its unmatched in-neighbors (I_v) so a deletion can hunt for a
// replacement through out-neighbors first and in-neighbors second. The
// orientation update's event log keeps I_v consistent across flips.
class MaximalMatching {
public:
    explicit MaximalMatching(int n, uint64_t seed) : partner_(n, -1), in_unmatched_(n), rng_(seed) {}

    VertexId partner(VertexId v) const { return partner_[v]; }
    bool matched(VertexId v) const { return partner_[v] >= 0; }
    int64_t matched_pairs() const { return pairs_; }

    // consume the orientation's event stream for one batch, then restore
    // maximality; events must be in execution order
    void update(const OrientedGraph& g, const Batch& b, const std::vector<FlipEvent>& events) {
        std::vector<VertexId> freed;
        for (const auto& ev : events) {
            switch (ev.kind) {
                case FlipEvent::Kind::Insert:
                    if (!matched(ev.tail)) in_unmatched_[other(ev, ev.tail)].insert(ev.tail);
                    break;
                case FlipEvent::Kind::Delete: {
                    in_unmatched_[other(ev, ev.tail)].erase(ev.tail);
                    // a deleted matched edge frees both endpoints
                    if (partner_[ev.u] == ev.v && partner_[ev.v] == ev.u) {
                        unmatch(ev.u, ev.v, g);
                        freed.push_back(ev.u);
                        freed.push_back(ev.v);
                    }
                    break;
                }
                case FlipEvent::Kind::Flip:
                    in_unmatched_[other(ev, ev.old_tail)].erase(ev.old_tail);
                    if (!matched(ev.tail)) in_unmatched_[other(ev, ev.tail)].insert(ev.tail);
                    break;
            }
        }

        if (b.kind == Batch::Kind::Insert) {
            // static maximal matching on inserted edges between unmatched
            // vertices, greedy over randomly prioritized edges
            std::vector<std::pair<uint64_t, size_t>> prio;
            prio.reserve(b.edges.size());
            for (size_t i = 0; i < b.edges.size(); ++i) prio.emplace_back(rng_.next(), i);
            std::sort(prio.begin(), prio.end());
            for (const auto& [r, i] : prio) {
                const auto& [a, bb] = b.edges[i];
                if (!matched(a) && !matched(bb) && g.find_edge(a, bb) >= 0) match(a, bb, g);
            }
        }
        // vertices freed by deletions (including edges the update removed and
        // re-added internally) hunt for replacements
        for (VertexId v : freed) {
            if (matched(v)) continue;
            rematch(v, g);
        }
    }

    // exact predicates: valid matching, I_v consistency, maximality
    void check(const OrientedGraph& g) const {
        for (int v = 0; v < static_cast<int>(partner_.size()); ++v) {
            if (partner_[v] >= 0) {
                if (partner_[partner_[v]] != v) throw Error("matching: asymmetric partners");
                if (g.find_edge(v, partner_[v]) < 0) throw Error("matching: matched non-edge");
            }
        }
        for (int v = 0; v < g.n(); ++v) {
            for (EdgeId id : g.out_edges(v).peek(g.out_edges(v).size())) {
                const auto& e = g.edge(id);
                const VertexId head = e.other(v);
                if (!matched(v) && !matched(head))
                    throw Error("matching: edge " + std::to_string(e.u) + "," + std::to_string(e.v) +
                                " has both endpoints unmatched");
                const bool listed = in_unmatched_[head].count(v) > 0;
                if (listed != !matched(v)) throw Error("matching: I_v out of sync");
            }
        }
    }

private:
    std::vector<VertexId> partner_;
    std::vector<std::set<VertexId>> in_unmatched_;  // I_v
    Rng rng_;
    int64_t pairs_ = 0;

    static VertexId other(const FlipEvent& ev, VertexId x) { return x == ev.u ? ev.v : ev.u; }

    void set_status(VertexId v, bool now_matched, const OrientedGraph& g) {
        for (EdgeId id : g.out_edges(v).peek(g.out_edges(v).size())) {
            const VertexId head = g.edge(id).other(v);
            if (now_matched)
                in_unmatched_[head].erase(v);
            else
                in_unmatched_[head].insert(v);
        }
    }

    void match(VertexId a, VertexId b, const OrientedGraph& g) {
        partner_[a] = b;
        partner_[b] = a;
        ++pairs_;
        set_status(a, true, g);
        set_status(b, true, g);
    }

    void unmatch(VertexId a, VertexId b, const OrientedGraph& g) {
        partner_[a] = -1;
        partner_[b] = -1;
        --pairs_;
        set_status(a, false, g);
        set_status(b, false, g);
    }

    void rematch(VertexId v, const OrientedGraph& g) {
        // out-neighbors first
        for (EdgeId id : g.out_edges(v).peek(g.out_edges(v).size())) {
            const VertexId w = g.edge(id).other(v);
            if (!matched(w)) {
                match(v, w, g);
                return;
            }
        }
        // then any unmatched in-neighbor
        if (!in_unmatched_[v].empty()) {
            const VertexId w = *in_unmatched_[v].begin();
            match(v, w, g);
        }
    }
};

// Palette coloring over a maintained orientation whose out-degrees stay at or
// below degree_bound: a fixed random palette per vertex (each of
// K_pal*degree_bound*log n pool colors kept with probability
// 1/(2*degree_bound)); a vertex is recolored only when its out-neighborhood
// changes, picking any palette color absent from every out-neighbor's
// palette. Exhaustion is surfaced, never papered over.
class PaletteColoring {
public:
    PaletteColoring(int n, int64_t degree_bound, int64_t k_pal, uint64_t seed) : color_(n, -1) {
        if (degree_bound < 1) throw Error("coloring: degree bound must be positive");
        pool_ = k_pal * degree_bound * log2_ceil(n);
        palette_.resize(n);
        Rng rng(seed);
        for (int v = 0; v < n; ++v) {
            for (int64_t col = 0; col < pool_; ++col)
                if (rng.chance(1, static_cast<uint64_t>(2 * degree_bound)))
                    palette_[v].push_back(static_cast<int32_t>(col));
            if (palette_[v].empty()) throw Error("coloring: palette exhaustion at vertex " + std::to_string(v));
            color_[v] = palette_[v].front();  // the graph starts empty, so any palette color works
        }
    }

    int64_t pool_size() const { return pool_; }
    int64_t palette_size(VertexId v) const { return static_cast<int64_t>(palette_[v].size()); }
    int32_t color(VertexId v) const { return color_[v]; }
    int64_t recolorings() const { return recolorings_; }

    // vertices whose out-neighborhood changed in this batch
    static std::vector<VertexId> changed_vertices(const std::vector<FlipEvent>& events, uint64_t seed) {
        std::vector<VertexId> out;
        for (const auto& ev : events) {
            out.push_back(ev.tail);
            if (ev.kind == FlipEvent::Kind::Flip) out.push_back(ev.old_tail);
        }
        return prims::remove_duplicates(out, seed);
    }

    void update(const OrientedGraph& g, const std::vector<VertexId>& changed) {
        for (VertexId v : changed) recolor(g, v);
    }

    void check_proper(const OrientedGraph& g) const {
        for (const auto& [u, v] : g.edge_list()) {
            if (color_[u] < 0 || color_[v] < 0) throw Error("coloring: uncolored endpoint");
            if (color_[u] == color_[v])
                throw Error("coloring: edge " + std::to_string(u) + "," + std::to_string(v) +
                            " is monochromatic");
        }
    }

private:
    int64_t pool_ = 0;
    std::vector<std::vector<int32_t>> palette_;
    std::vector<int32_t> color_;
    int64_t recolorings_ = 0;

    bool in_palette(VertexId v, int32_t col) const {
        return std::binary_search(palette_[v].begin(), palette_[v].end(), col);
    }

    bool clashes(const OrientedGraph& g, VertexId v, int32_t col) const {
        for (EdgeId id : g.out_edges(v).peek(g.out_edges(v).size()))
            if (in_palette(g.edge(id).other(v), col)) return true;
        return false;
    }

    void recolor(const OrientedGraph& g, VertexId v) {
        if (color_[v] >= 0 && !clashes(g, v, color_[v])) return;  // keep a still-valid color
        for (int32_t col : palette_[v]) {
            if (!clashes(g, v, col)) {
                color_[v] = col;
                ++recolorings_;
                return;
            }
        }
        throw Error("coloring: palette exhaustion at vertex " + std::to_string(v));
    }
};

}  // namespace orient::apps
