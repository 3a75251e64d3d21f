#pragma once

#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "orient/common.hpp"
#include "orient/graph.hpp"

namespace orient {

// A workload is a header plus an ordered list of single-kind batches. The
// generators keep every prefix inside the declared arboricity bound by
// partitioning live edges into at most c explicit forests (the Nash-Williams
// certificate); the partition is emitted as comment lines in the file header.
struct Workload {
    int n = 0;
    int64_t c = 1;
    uint64_t seed = 0;
    std::string kind;
    std::vector<Batch> batches;

    int64_t total_inserts() const {
        int64_t s = 0;
        for (const auto& b : batches)
            if (b.kind == Batch::Kind::Insert) s += static_cast<int64_t>(b.size());
        return s;
    }
    int64_t total_deletes() const {
        int64_t s = 0;
        for (const auto& b : batches)
            if (b.kind == Batch::Kind::Delete) s += static_cast<int64_t>(b.size());
        return s;
    }
};

namespace workload_detail {

// live edges partitioned into <= c forests; union-find per forest is rebuilt
// from scratch after deletions (subgraphs of forests stay forests, so a
// conservative stale structure would also be sound, but rebuilds keep the
// generators from starving)
class ForestPartition {
public:
    ForestPartition(int n, int64_t c) : n_(n), parents_(static_cast<size_t>(c)) {
        for (auto& p : parents_) reset(p);
    }

    bool contains(VertexId a, VertexId b) const { return forest_of_.count(key(a, b)) > 0; }
    int64_t live_count() const { return static_cast<int64_t>(forest_of_.size()); }

    // returns false when the edge would close a cycle in every forest
    bool try_insert(VertexId a, VertexId b) {
        if (a == b || contains(a, b)) return false;
        for (size_t f = 0; f < parents_.size(); ++f) {
            const int ra = find(parents_[f], a), rb = find(parents_[f], b);
            if (ra != rb) {
                parents_[f][ra] = rb;
                forest_of_[key(a, b)] = static_cast<int>(f);
                return true;
            }
        }
        return false;
    }

    void remove(VertexId a, VertexId b) {
        auto it = forest_of_.find(key(a, b));
        if (it == forest_of_.end()) throw Error("workload generator: removing an absent edge");
        dirty_.insert(it->second);
        forest_of_.erase(it);
    }

    void rebuild_dirty() {
        if (dirty_.empty()) return;
        for (int f : dirty_) reset(parents_[f]);
        for (const auto& [k, f] : forest_of_) {
            if (!dirty_.count(f)) continue;
            auto& p = parents_[f];
            p[find(p, static_cast<VertexId>(k >> 32))] = find(p, static_cast<VertexId>(k & 0xffffffff));
        }
        dirty_.clear();
    }

    std::vector<std::pair<VertexId, VertexId>> live_edges() const {
        std::vector<std::pair<VertexId, VertexId>> out;
        out.reserve(forest_of_.size());
        for (const auto& [k, f] : forest_of_)
            out.emplace_back(static_cast<VertexId>(k & 0xffffffff), static_cast<VertexId>(k >> 32));
        return out;
    }

private:
    int n_;
    std::vector<std::vector<int>> parents_;
    std::unordered_map<uint64_t, int> forest_of_;
    std::set<int> dirty_;

    static uint64_t key(VertexId a, VertexId b) {
        const uint64_t lo = static_cast<uint32_t>(std::min(a, b));
        const uint64_t hi = static_cast<uint32_t>(std::max(a, b));
        return (hi << 32) | lo;
    }

    void reset(std::vector<int>& p) {
        p.resize(n_);
        for (int i = 0; i < n_; ++i) p[i] = i;
    }

    static int find(std::vector<int>& p, int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
};

}  // namespace workload_detail

inline Workload gen_workload(const std::string& kind, int n, int64_t c, int batches, int batch_size,
                             uint64_t seed) {
    if (n < 4 || c < 1 || batches < 1 || batch_size < 1)
        throw Error("workload generator: infeasible parameters");
    if (kind != "forest-stars" && kind != "k-forest-union" && kind != "sliding-window" &&
        kind != "adversarial-hub")
        throw Error("workload generator: unknown kind '" + kind + "'");
    Workload w;
    w.n = n;
    w.c = c;
    w.seed = seed;
    w.kind = kind;
    Rng rng(seed ^ splitmix64(static_cast<uint64_t>(n) * 31 + static_cast<uint64_t>(c)));
    workload_detail::ForestPartition part(n, c);

    std::vector<std::pair<VertexId, VertexId>> live;  // for random deletion picks
    auto commit_insert = [&](Batch& b, VertexId a, VertexId bb) {
        b.edges.emplace_back(a, bb);
        live.emplace_back(a, bb);
    };
    auto make_delete = [&](int want) {
        Batch b;
        b.kind = Batch::Kind::Delete;
        const int take = static_cast<int>(std::min<int64_t>(want, static_cast<int64_t>(live.size())));
        for (int i = 0; i < take; ++i) {
            const size_t at = rng.below(live.size());
            b.edges.push_back(live[at]);
            part.remove(live[at].first, live[at].second);
            live[at] = live.back();
            live.pop_back();
        }
        part.rebuild_dirty();
        return b;
    };

    const int core = std::max(16, std::min(n / 2, 80 * batch_size));
    std::vector<std::vector<std::pair<VertexId, VertexId>>> window;  // sliding-window bookkeeping

    for (int bi = 0; bi < batches; ++bi) {
        Batch b;
        if (kind == "forest-stars") {
            if (bi % 3 == 2 && !live.empty()) {
                b = make_delete(batch_size);
            } else {
                b.kind = Batch::Kind::Insert;
                const VertexId center = static_cast<VertexId>(rng.below(n));
                int guard = 0;
                while (static_cast<int>(b.size()) < batch_size && ++guard < 50 * batch_size) {
                    const VertexId leaf = static_cast<VertexId>(rng.below(n));
                    if (leaf == center) continue;
                    if (part.try_insert(center, leaf)) commit_insert(b, center, leaf);
                }
            }
        } else if (kind == "k-forest-union") {
            if (bi % 4 == 3 && !live.empty()) {
                b = make_delete(batch_size);
            } else {
                b.kind = Batch::Kind::Insert;
                int guard = 0;
                while (static_cast<int>(b.size()) < batch_size && ++guard < 80 * batch_size) {
                    const VertexId a = static_cast<VertexId>(rng.below(n));
                    const VertexId bb = static_cast<VertexId>(rng.below(n));
                    if (a == bb) continue;
                    if (part.try_insert(a, bb)) commit_insert(b, a, bb);
                }
            }
        } else if (kind == "sliding-window") {
            const size_t window_cap = 8;
            if (window.size() >= window_cap) {
                b.kind = Batch::Kind::Delete;
                for (const auto& e : window.front()) {
                    if (!part.contains(e.first, e.second)) continue;
                    b.edges.push_back(e);
                    part.remove(e.first, e.second);
                    for (size_t i = 0; i < live.size(); ++i)
                        if (live[i] == e) {
                            live[i] = live.back();
                            live.pop_back();
                            break;
                        }
                }
                part.rebuild_dirty();
                window.erase(window.begin());
            } else {
                b.kind = Batch::Kind::Insert;
                int guard = 0;
                while (static_cast<int>(b.size()) < batch_size && ++guard < 80 * batch_size) {
                    const VertexId a = static_cast<VertexId>(rng.below(n));
                    const VertexId bb = static_cast<VertexId>(rng.below(n));
                    if (a == bb) continue;
                    if (part.try_insert(a, bb)) commit_insert(b, a, bb);
                }
                window.push_back(b.edges);
            }
        } else {  // adversarial-hub: pack a small dense core at full arboricity
                  // so skyline flips keep landing on other high-degree
                  // vertices and the induced thresholds ratchet upward
            if (bi % 7 == 6 && !live.empty()) {
                b = make_delete(2 * batch_size);
            } else {
                b.kind = Batch::Kind::Insert;
                int guard = 0;
                while (static_cast<int>(b.size()) < batch_size && ++guard < 120 * batch_size) {
                    const VertexId a = static_cast<VertexId>(rng.below(core));
                    const VertexId bb = static_cast<VertexId>(rng.below(core));
                    if (a == bb) continue;
                    if (part.try_insert(a, bb)) commit_insert(b, a, bb);
                }
            }
        }
        if (b.empty() && b.kind == Batch::Kind::Insert && live.empty())
            throw Error("workload generator: infeasible parameters (cannot place edges)");
        w.batches.push_back(std::move(b));
    }
    return w;
}

inline void write_workload(const Workload& w, std::ostream& os) {
    os << "# kind=" << w.kind << " certificate=forest-partition forests<=" << w.c << "\n";
    os << "H n=" << w.n << " c=" << w.c << " seed=" << w.seed << "\n";
    for (const auto& b : w.batches) {
        os << "B " << b.size() << "\n";
        for (const auto& [a, bb] : b.edges)
            os << (b.kind == Batch::Kind::Insert ? "+ " : "- ") << a << " " << bb << "\n";
    }
}

inline std::string workload_to_string(const Workload& w) {
    std::ostringstream os;
    write_workload(w, os);
    return os.str();
}

inline Workload read_workload(std::istream& is) {
    Workload w;
    std::string line;
    bool have_header = false;
    Batch cur;
    int64_t remaining = 0;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "H") {
            std::string kv;
            while (ls >> kv) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) throw Error("workload file: malformed header field " + kv);
                const std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
                if (k == "n")
                    w.n = std::stoi(v);
                else if (k == "c")
                    w.c = std::stoll(v);
                else if (k == "seed")
                    w.seed = std::stoull(v);
                else
                    throw Error("workload file: unknown header field " + k);
            }
            have_header = true;
        } else if (tag == "B") {
            if (remaining > 0) throw Error("workload file: batch shorter than its declared size");
            if (!(ls >> remaining) || remaining < 0) throw Error("workload file: bad batch size");
            cur = Batch{};
            if (remaining == 0) w.batches.push_back(Batch{});
        } else if (tag == "+" || tag == "-") {
            if (!have_header) throw Error("workload file: edge line before header");
            if (remaining <= 0) throw Error("workload file: edge line outside a batch");
            VertexId a, b;
            if (!(ls >> a >> b)) throw Error("workload file: malformed edge line");
            const auto kind = tag == "+" ? Batch::Kind::Insert : Batch::Kind::Delete;
            if (cur.edges.empty())
                cur.kind = kind;
            else if (cur.kind != kind)
                throw Error("workload file: mixed insert/delete within one batch");
            cur.edges.emplace_back(a, b);
            if (--remaining == 0) w.batches.push_back(std::move(cur));
        } else {
            throw Error("workload file: unknown line tag '" + tag + "'");
        }
    }
    if (remaining > 0) throw Error("workload file: truncated batch");
    if (!have_header) throw Error("workload file: missing header");
    return w;
}

}  // namespace orient
