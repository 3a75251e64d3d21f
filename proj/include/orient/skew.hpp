#pragma once

#include <cstdint>
#include <vector>

#include "orient/common.hpp"

// Skew binary numbers: a list of digit weights, each of the form 2^(i+1)-1,
// nondecreasing from the front, with at most the first two equal. Every
// natural number has exactly one such representation. The bag mirrors these
// transitions structurally; this module is the value-level arithmetic.

namespace orient::skew {

using Weights = std::vector<int64_t>;  // front (index 0) holds the smallest digit

inline bool weight_ok(int64_t w) {
    // w == 2^(i+1) - 1  <=>  w+1 is a power of two and w >= 1
    return w >= 1 && ((w + 1) & w) == 0;
}

inline bool is_valid(const Weights& l) {
    for (size_t i = 0; i < l.size(); ++i) {
        if (!weight_ok(l[i])) return false;
        if (i + 1 < l.size()) {
            if (l[i] > l[i + 1]) return false;
            if (i > 0 && l[i] == l[i + 1]) return false;  // only the first two may tie
        }
    }
    return true;
}

inline int64_t value(const Weights& l) {
    int64_t s = 0;
    for (int64_t w : l) s += w;
    return s;
}

inline Weights init(int64_t x) {
    if (x < 0) throw Error("skew::init: negative value");
    Weights l;
    int64_t i = log2_ceil(x) + 2;
    while (x > 0) {
        const int64_t w = (int64_t(1) << i) - 1;
        if (2 * w == x) {
            l.insert(l.begin(), 2, w);
            x = 0;
        } else if (w <= x) {
            l.insert(l.begin(), w);
            x -= w;
        }
        --i;
    }
    return l;
}

inline Weights add(Weights l, int64_t x) {
    if (x < 0) throw Error("skew::add: negative increment");
    if (x == 0) return l;
    if (l.empty()) return init(x);

    while (x >= l.front()) {
        if (l.size() > 1 && l[0] == l[1]) {
            const int64_t merged = 1 + l[0] + l[1];
            l.erase(l.begin());
            l[0] = merged;
            x -= 1;
        } else {
            const int64_t w = l.front();
            l.insert(l.begin(), w);
            x -= w;
        }
    }
    // x < front; merge a leading tie while elements remain to pay for roots
    while (x > 0 && l.size() > 1 && l[0] == l[1]) {
        const int64_t merged = 1 + l[0] + l[1];
        l.erase(l.begin());
        l[0] = merged;
        x -= 1;
    }
    Weights head = init(x);
    l.insert(l.begin(), head.begin(), head.end());
    return l;
}

inline Weights subtract(Weights l, int64_t x) {
    if (x < 0) throw Error("skew::subtract: negative decrement");
    if (x > value(l)) throw Error("skew::subtract: underflow");
    while (x > 0) {
        const int64_t w = l.front();
        if (x >= w) {
            l.erase(l.begin());
            x -= w;
        } else {
            const int64_t half = (w - 1) / 2;
            l.front() = half;
            l.insert(l.begin(), half);
            x -= 1;
        }
    }
    return l;
}

}  // namespace orient::skew
