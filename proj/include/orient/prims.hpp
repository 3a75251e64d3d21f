#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "orient/common.hpp"

// Parallel-primitive contracts: pure functions over immutable inputs with
// freshly allocated outputs, so results never depend on a schedule. Each one
// charges the element-touch counter with the slots it actually moves.

namespace orient::prims {

// When set, every semisort call site degrades to a stable comparison sort
// keyed on the group key, making group order key-sorted and seed-independent.
inline bool deterministic_mode = false;

template <class T, class Op>
std::pair<std::vector<T>, T> scan(const std::vector<T>& a, Op op, T identity) {
    std::vector<T> out(a.size());
    T acc = identity;
    for (size_t i = 0; i < a.size(); ++i) {
        out[i] = acc;
        acc = op(acc, a[i]);
    }
    touch(a.size());
    return {std::move(out), acc};
}

template <class T, class Op>
T reduce(const std::vector<T>& a, Op op, T identity) {
    T acc = identity;
    for (const T& x : a) acc = op(acc, x);
    touch(a.size());
    return acc;
}

template <class T, class Pred>
std::vector<T> filter(const std::vector<T>& a, Pred p) {
    std::vector<T> out;
    for (const T& x : a)
        if (p(x)) out.push_back(x);
    touch(a.size());
    return out;
}

template <class T, class U, class F>
std::vector<U> map(const std::vector<T>& a, F f) {
    std::vector<U> out;
    out.reserve(a.size());
    for (const T& x : a) out.push_back(f(x));
    touch(a.size());
    return out;
}

template <class K, class V>
struct Group {
    K key;
    std::vector<V> values;
};

// Deterministic stable sort; counted at n * ceil(log2(n+1)) touches.
template <class T, class Cmp>
std::vector<T> stable_sorted(std::vector<T> a, Cmp cmp) {
    std::stable_sort(a.begin(), a.end(), cmp);
    touch(a.size() * static_cast<uint64_t>(log2_ceil(static_cast<int64_t>(a.size()) + 1)));
    return a;
}

template <class T>
std::vector<T> stable_sorted(std::vector<T> a) {
    return stable_sorted(std::move(a), std::less<T>());
}

namespace detail {

inline size_t next_pow2(size_t x) {
    size_t p = 1;
    while (p < x) p <<= 1;
    return p;
}

}  // namespace detail

// Groups pairs by key. Randomized mode buckets by a seeded hash (expected
// O(n) touches); deterministic mode routes through stable_sorted so groups
// come out key-sorted. Within a group, values keep input order.
template <class K, class V>
std::vector<Group<K, V>> semisort_group(const std::vector<std::pair<K, V>>& pairs, uint64_t seed) {
    std::vector<Group<K, V>> groups;
    const size_t n = pairs.size();
    if (n == 0) return groups;

    if (deterministic_mode) {
        std::vector<size_t> idx(n);
        for (size_t i = 0; i < n; ++i) idx[i] = i;
        idx = stable_sorted(std::move(idx), [&](size_t a, size_t b) { return pairs[a].first < pairs[b].first; });
        for (size_t i = 0; i < n;) {
            size_t j = i;
            Group<K, V> g;
            g.key = pairs[idx[i]].first;
            while (j < n && pairs[idx[j]].first == g.key) g.values.push_back(pairs[idx[j++]].second);
            groups.push_back(std::move(g));
            i = j;
        }
        touch(n);
        return groups;
    }

    const size_t nbuckets = detail::next_pow2(n * 2);
    const size_t mask = nbuckets - 1;
    std::vector<uint32_t> bucket_of(n);
    std::vector<uint32_t> count(nbuckets + 1, 0);
    for (size_t i = 0; i < n; ++i) {
        bucket_of[i] = static_cast<uint32_t>(splitmix64(static_cast<uint64_t>(std::hash<K>{}(pairs[i].first)) ^ seed) & mask);
        ++count[bucket_of[i] + 1];
    }
    for (size_t b = 0; b < nbuckets; ++b) count[b + 1] += count[b];
    std::vector<uint32_t> slot(n);
    {
        std::vector<uint32_t> cursor(count.begin(), count.end() - 1);
        for (size_t i = 0; i < n; ++i) slot[cursor[bucket_of[i]]++] = static_cast<uint32_t>(i);
    }
    touch(2 * n);

    std::vector<char> claimed(n, 0);
    for (size_t b = 0; b < nbuckets; ++b) {
        for (uint32_t s = count[b]; s < count[b + 1]; ++s) {
            uint32_t i = slot[s];
            if (claimed[i]) continue;
            Group<K, V> g;
            g.key = pairs[i].first;
            for (uint32_t t = s; t < count[b + 1]; ++t) {
                uint32_t j = slot[t];
                touch();
                if (!claimed[j] && pairs[j].first == g.key) {
                    claimed[j] = 1;
                    g.values.push_back(pairs[j].second);
                }
            }
            groups.push_back(std::move(g));
        }
    }
    return groups;
}

// semisort with unit values: one representative per key.
template <class K>
std::vector<K> remove_duplicates(const std::vector<K>& a, uint64_t seed) {
    std::vector<std::pair<K, char>> pairs;
    pairs.reserve(a.size());
    for (const K& k : a) pairs.emplace_back(k, 0);
    auto groups = semisort_group(pairs, seed);
    std::vector<K> out;
    out.reserve(groups.size());
    for (auto& g : groups) out.push_back(g.key);
    return out;
}

}  // namespace orient::prims
