#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace orient {

using VertexId = int32_t;
using EdgeId = int32_t;

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Global element-touch counter. Every primitive and container operation adds
// the number of element slots it reads or writes; the harness asserts
// per-call budgets against it, so increments must not be amortized away.
inline uint64_t g_element_touches = 0;

inline void touch(uint64_t k = 1) { g_element_touches += k; }
inline uint64_t touches() { return g_element_touches; }

// ceil(log2(max(x, 2))); the "log n" of every parameter formula.
inline int64_t log2_ceil(int64_t x) {
    if (x < 2) x = 2;
    int64_t r = 0;
    int64_t p = 1;
    while (p < x) {
        p <<= 1;
        ++r;
    }
    return r == 0 ? 1 : r;
}

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Small deterministic generator; identical streams on every platform.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed = 0) : state(splitmix64(seed ^ 0x853c49e6748fea9bULL)) {}

    uint64_t next() {
        state = splitmix64(state);
        return state;
    }

    // uniform in [0, n)
    uint64_t below(uint64_t n) {
        if (n == 0) throw Error("Rng::below(0)");
        return next() % n;
    }

    int64_t range(int64_t lo, int64_t hi) {  // inclusive
        return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    bool chance(uint64_t num, uint64_t den) { return below(den) < num; }
};

// Exact rational with int64 components, normalized, den > 0.
struct Rational {
    int64_t num = 0;
    int64_t den = 1;

    Rational() = default;
    Rational(int64_t n) : num(n), den(1) {}
    Rational(int64_t n, int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw Error("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    static Rational of(int64_t n, int64_t d) { return Rational(n, d); }

    Rational operator+(const Rational& o) const {
        return Rational(checked(static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den),
                        checked(static_cast<__int128>(den) * o.den));
    }
    Rational operator-(const Rational& o) const {
        return Rational(checked(static_cast<__int128>(num) * o.den - static_cast<__int128>(o.num) * den),
                        checked(static_cast<__int128>(den) * o.den));
    }
    Rational operator*(const Rational& o) const {
        return Rational(checked(static_cast<__int128>(num) * o.num), checked(static_cast<__int128>(den) * o.den));
    }
    Rational operator/(const Rational& o) const {
        if (o.num == 0) throw Error("Rational: division by zero");
        return Rational(checked(static_cast<__int128>(num) * o.den), checked(static_cast<__int128>(den) * o.num));
    }
    Rational operator-() const { return Rational(-num, den); }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
    }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    int64_t floor() const {
        int64_t q = num / den;
        if (num % den != 0 && num < 0) --q;
        return q;
    }
    int64_t ceil() const {
        int64_t q = num / den;
        if (num % den != 0 && num > 0) ++q;
        return q;
    }

    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }

private:
    static int64_t checked(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN) throw Error("Rational: overflow");
        return static_cast<int64_t>(v);
    }
};

// Reusable O(1)-reset membership stamp over a dense id range.
class StampSet {
public:
    explicit StampSet(size_t n = 0) : stamp_(n, 0) {}

    void resize(size_t n) { stamp_.assign(n, 0); cur_ = 1; }

    void clear() {
        if (++cur_ == 0) {
            std::fill(stamp_.begin(), stamp_.end(), 0);
            cur_ = 1;
        }
    }

    bool insert(size_t i) {
        if (stamp_[i] == cur_) return false;
        stamp_[i] = cur_;
        return true;
    }

    bool contains(size_t i) const { return stamp_[i] == cur_; }

private:
    std::vector<uint32_t> stamp_;
    uint32_t cur_ = 1;
};

}  // namespace orient
