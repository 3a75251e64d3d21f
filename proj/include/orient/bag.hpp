#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "orient/common.hpp"
#include "orient/skew.hpp"

namespace orient {

// Unordered container backed by a skew binary number whose digits are perfect
// binary trees. Supports batch insert, delete-by-handle, pop, and a
// deterministic side-effect-free peek; no membership queries. Every batch
// operation touches O(batch + log size) slots, with no amortization.
//
// Handles stay valid across restructuring: a handle points at a cell, and the
// cell follows its element when hole-filling moves it to a new tree node.
template <class T>
class Bag {
public:
    struct Handle {
        const Bag* bag = nullptr;
        int32_t cell = -1;
        uint32_t gen = 0;

        bool operator==(const Handle&) const = default;
    };

    Bag() = default;
    Bag(const Bag&) = delete;
    Bag& operator=(const Bag&) = delete;
    Bag(Bag&&) = delete;  // handles capture the bag address
    Bag& operator=(Bag&&) = delete;

    int64_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    skew::Weights weights() const {
        skew::Weights w;
        w.reserve(digits_.size());
        for (const Digit& d : digits_) w.push_back(d.weight);
        return w;
    }

    bool is_live(const Handle& h) const {
        return h.bag == this && h.cell >= 0 && static_cast<size_t>(h.cell) < cells_.size() &&
               cells_[h.cell].gen == h.gen && cells_[h.cell].node >= 0;
    }

    const T& get(const Handle& h) const {
        if (!is_live(h)) throw Error("Bag: dereference of dead handle (cell " + std::to_string(h.cell) + ")");
        return nodes_[cells_[h.cell].node].val;
    }

    std::vector<Handle> batch_insert(const std::vector<T>& items) {
        const int64_t n = static_cast<int64_t>(items.size());
        std::vector<Handle> out(items.size());
        if (n == 0) return out;
        int64_t consumed = 0;
        auto take = [&]() -> int32_t {
            const int32_t node = alloc_node(items[consumed]);
            out[consumed] = make_handle(node);
            ++consumed;
            touch();
            return node;
        };

        // mirror skew::add(weights, n)
        int64_t x = n;
        if (digits_.empty()) {
            append_init_digits(x, take);
            size_ += n;
            return out;
        }
        while (x >= digits_.front().weight) {
            if (digits_.size() > 1 && digits_[0].weight == digits_[1].weight) {
                merge_front_pair(take());
                x -= 1;
            } else {
                const int64_t w = digits_.front().weight;
                digits_.insert(digits_.begin(), Digit{build_tree(w, take), w});
                x -= w;
            }
        }
        while (x > 0 && digits_.size() > 1 && digits_[0].weight == digits_[1].weight) {
            merge_front_pair(take());
            x -= 1;
        }
        append_init_digits(x, take);
        size_ += n;
        return out;
    }

    // Returns up to k elements, front digits first, walking the left spine of
    // the last digit touched. Deterministic; repeated calls agree.
    std::vector<T> peek(int64_t k) const {
        std::vector<T> out;
        peek_impl(k, [&](int32_t node) { out.push_back(nodes_[node].val); });
        return out;
    }

    std::vector<Handle> peek_handles(int64_t k) const {
        std::vector<Handle> out;
        peek_impl(k, [&](int32_t node) {
            out.push_back(Handle{this, nodes_[node].cell, cells_[nodes_[node].cell].gen});
        });
        return out;
    }

    std::vector<T> batch_pop(int64_t k) {
        if (k < 0 || k > size_) throw Error("Bag: pop of " + std::to_string(k) + " from size " + std::to_string(size_));
        std::vector<int32_t> picked;
        std::vector<T> out;
        out.reserve(static_cast<size_t>(k));
        peek_impl(k, [&](int32_t node) {
            picked.push_back(node);
            out.push_back(nodes_[node].val);
        });
        delete_nodes(picked);
        return out;
    }

    void batch_delete(const std::vector<Handle>& handles) {
        std::vector<int32_t> nodes;
        nodes.reserve(handles.size());
        for (const Handle& h : handles) {
            if (!is_live(h)) throw Error("Bag: delete of dead handle (cell " + std::to_string(h.cell) + ")");
            nodes.push_back(cells_[h.cell].node);
        }
        delete_nodes(nodes);
    }

private:
    struct Node {
        T val;
        int32_t left = -1;
        int32_t right = -1;
        int32_t cell = -1;
        uint8_t mark = 0;  // bit 0: slated for deletion, bit 1: structurally removed
    };
    struct Cell {
        int32_t node = -1;
        uint32_t gen = 0;
    };
    struct Digit {
        int32_t root;
        int64_t weight;
    };

    std::vector<Digit> digits_;  // index 0 = front = smallest weight
    std::vector<Node> nodes_;
    std::vector<int32_t> free_nodes_;
    std::vector<Cell> cells_;
    std::vector<int32_t> free_cells_;
    int64_t size_ = 0;

    int32_t alloc_node(const T& v) {
        int32_t idx;
        if (!free_nodes_.empty()) {
            idx = free_nodes_.back();
            free_nodes_.pop_back();
        } else {
            idx = static_cast<int32_t>(nodes_.size());
            nodes_.emplace_back();
        }
        Node& n = nodes_[idx];
        n.val = v;
        n.left = n.right = -1;
        n.mark = 0;
        int32_t cell;
        if (!free_cells_.empty()) {
            cell = free_cells_.back();
            free_cells_.pop_back();
        } else {
            cell = static_cast<int32_t>(cells_.size());
            cells_.emplace_back();
        }
        cells_[cell].node = idx;
        n.cell = cell;
        return idx;
    }

    Handle make_handle(int32_t node) const {
        const int32_t cell = nodes_[node].cell;
        return Handle{this, cell, cells_[cell].gen};
    }

    void merge_front_pair(int32_t new_root) {
        Node& r = nodes_[new_root];
        r.left = digits_[0].root;
        r.right = digits_[1].root;
        const int64_t w = 1 + digits_[0].weight + digits_[1].weight;
        digits_.erase(digits_.begin());
        digits_[0] = Digit{new_root, w};
    }

    template <class Take>
    int32_t build_tree(int64_t weight, Take&& take) {
        const int32_t root = take();
        if (weight > 1) {
            const int64_t half = (weight - 1) / 2;
            nodes_[root].left = build_tree(half, take);
            nodes_[root].right = build_tree(half, take);
        }
        return root;
    }

    template <class Take>
    void append_init_digits(int64_t x, Take&& take) {
        const skew::Weights ws = skew::init(x);
        std::vector<Digit> built;
        built.reserve(ws.size());
        for (int64_t w : ws) built.push_back(Digit{build_tree(w, take), w});
        digits_.insert(digits_.begin(), built.begin(), built.end());
    }

    template <class Emit>
    void peek_impl(int64_t k, Emit&& emit) const {
        if (k > size_) k = size_;
        for (const Digit& d : digits_) {
            if (k <= 0) break;
            if (k >= d.weight) {
                emit_subtree(d.root, d.weight, emit);
                k -= d.weight;
            } else {
                // smallest left-spine subtree holding at least k slots
                int32_t node = d.root;
                int64_t w = d.weight;
                while (w > 1 && (w - 1) / 2 >= k) {
                    node = nodes_[node].left;
                    w = (w - 1) / 2;
                    touch();
                }
                int64_t need = k;
                emit_subtree_limited(node, need, emit);
                k = 0;
            }
        }
    }

    template <class Emit>
    void emit_subtree(int32_t node, int64_t count, Emit&& emit) const {
        int64_t need = count;
        emit_subtree_limited(node, need, emit);
    }

    template <class Emit>
    void emit_subtree_limited(int32_t node, int64_t& need, Emit&& emit) const {
        if (node < 0 || need <= 0) return;
        emit(node);
        touch();
        --need;
        emit_subtree_limited(nodes_[node].left, need, emit);
        emit_subtree_limited(nodes_[node].right, need, emit);
    }

    void collect_removed(int32_t node, std::vector<int32_t>& removed) {
        if (node < 0) return;
        nodes_[node].mark |= 2;
        removed.push_back(node);
        touch();
        collect_removed(nodes_[node].left, removed);
        collect_removed(nodes_[node].right, removed);
    }

    void delete_nodes(const std::vector<int32_t>& targets) {
        const int64_t x = static_cast<int64_t>(targets.size());
        if (x == 0) return;
        for (int32_t n : targets) {
            if (nodes_[n].mark & 1) {
                for (int32_t m : targets) nodes_[m].mark = 0;
                throw Error("Bag: duplicate handle in batch delete (cell " + std::to_string(nodes_[n].cell) + ")");
            }
            nodes_[n].mark |= 1;
        }
        // capture dying cells before holes get overwritten
        std::vector<int32_t> dead_cells;
        dead_cells.reserve(targets.size());
        for (int32_t n : targets) dead_cells.push_back(nodes_[n].cell);

        // structural removal, as in skew::subtract
        std::vector<int32_t> removed;
        int64_t left = x;
        while (left > 0) {
            Digit d = digits_.front();
            if (left >= d.weight) {
                digits_.erase(digits_.begin());
                collect_removed(d.root, removed);
                left -= d.weight;
            } else {
                const Node& r = nodes_[d.root];
                const int64_t half = (d.weight - 1) / 2;
                const int32_t lchild = r.left;
                const int32_t rchild = r.right;
                digits_.front() = Digit{rchild, half};
                digits_.insert(digits_.begin(), Digit{lchild, half});
                nodes_[d.root].mark |= 2;
                removed.push_back(d.root);
                touch();
                left -= 1;
            }
        }

        // survivors displaced by removal fill the holes left by deletions
        std::vector<int32_t> survivors;
        for (int32_t n : removed)
            if (!(nodes_[n].mark & 1)) survivors.push_back(n);
        std::vector<int32_t> holes;
        for (int32_t n : targets)
            if (!(nodes_[n].mark & 2)) holes.push_back(n);
        for (size_t i = 0; i < survivors.size(); ++i) {
            const int32_t s = survivors[i];
            const int32_t h = holes[i];
            nodes_[h].val = nodes_[s].val;
            nodes_[h].cell = nodes_[s].cell;
            cells_[nodes_[s].cell].node = h;
            touch();
        }
        for (int32_t h : holes) nodes_[h].mark = 0;
        for (int32_t c : dead_cells) {
            cells_[c].node = -1;
            ++cells_[c].gen;
            free_cells_.push_back(c);
        }
        for (int32_t n : removed) {
            nodes_[n].mark = 0;
            free_nodes_.push_back(n);
        }
        size_ -= x;
    }
};

// A front bag and a back bag; pops drain the front completely before the back
// bag is promoted to be the new front. A weakened FIFO.
template <class T>
class Pannier {
public:
    using Handle = typename Bag<T>::Handle;

    Pannier() : front_(std::make_unique<Bag<T>>()), back_(std::make_unique<Bag<T>>()) {}

    int64_t size() const { return front_->size() + back_->size(); }
    int64_t front_size() const { return front_->size(); }
    int64_t back_size() const { return back_->size(); }

    const Bag<T>& front_bag() const { return *front_; }
    const Bag<T>& back_bag() const { return *back_; }

    bool in_front(const Handle& h) const { return h.bag == front_.get(); }
    bool in_back(const Handle& h) const { return h.bag == back_.get(); }

    std::vector<Handle> insert_front(const std::vector<T>& items) { return front_->batch_insert(items); }
    std::vector<Handle> insert_back(const std::vector<T>& items) { return back_->batch_insert(items); }

    // True when the next batch_pop(k) will promote the back bag.
    bool pop_would_promote(int64_t k) const { return k > front_->size(); }

    struct PopResult {
        std::vector<T> values;
        bool promoted = false;
    };

    PopResult batch_pop(int64_t k) {
        if (k < 0 || k > size()) throw Error("Pannier: pop of " + std::to_string(k) + " from size " + std::to_string(size()));
        PopResult res;
        if (k <= front_->size()) {
            res.values = front_->batch_pop(k);
            return res;
        }
        res.values = front_->batch_pop(front_->size());
        front_ = std::move(back_);
        back_ = std::make_unique<Bag<T>>();
        res.promoted = true;
        auto rest = front_->batch_pop(k - static_cast<int64_t>(res.values.size()));
        res.values.insert(res.values.end(), rest.begin(), rest.end());
        return res;
    }

    std::vector<T> peek(int64_t k) const {
        std::vector<T> out = front_->peek(k);
        if (static_cast<int64_t>(out.size()) < k) {
            auto rest = back_->peek(k - static_cast<int64_t>(out.size()));
            out.insert(out.end(), rest.begin(), rest.end());
        }
        return out;
    }

    void delete_handles(const std::vector<Handle>& handles) {
        std::vector<Handle> in_f, in_b;
        for (const Handle& h : handles) {
            if (h.bag == front_.get())
                in_f.push_back(h);
            else if (h.bag == back_.get())
                in_b.push_back(h);
            else
                throw Error("Pannier: handle does not belong to this pannier");
        }
        if (!in_f.empty()) front_->batch_delete(in_f);
        if (!in_b.empty()) back_->batch_delete(in_b);
    }

private:
    std::unique_ptr<Bag<T>> front_, back_;
};

}  // namespace orient
