#pragma once

// Shared test utilities: a deterministic PRNG (independent of std::
// distribution implementations) and small independent oracles used to freeze
// expected values.

#include <cstdint>
#include <vector>

#include "ccc/lattice.hpp"
#include "ccc/numeric.hpp"

namespace ccctest {

using ccc::Int;
using ccc::IntMat;
using ccc::IntVec;
using ccc::Rat;
using ccc::RatVec;

class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    uint64_t next() {
        state_ ^= state_ << 13;
        state_ ^= state_ >> 7;
        state_ ^= state_ << 17;
        return state_;
    }

    // Uniform-ish integer in [lo, hi]; exact distribution is irrelevant for
    // the property tests, determinism is not.
    long pick(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
    }

private:
    uint64_t state_;
};

inline IntVec iv(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.push_back(Int(x));
    return v;
}

inline RatVec rv(std::initializer_list<long> xs) {
    RatVec v;
    for (long x : xs) v.push_back(Rat(x));
    return v;
}

inline Rat rq(long num, long den) { return Rat(Int(num), Int(den)); }

inline IntMat im(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<IntVec> rs;
    int cols = 0;
    for (const auto& r : rows) {
        rs.push_back(iv(r));
        cols = static_cast<int>(r.size());
    }
    return IntMat::from_rows(rs, cols);
}

inline IntMat random_matrix(Rng& rng, int rows, int cols, long lo = -6, long hi = 6) {
    IntMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = Int(rng.pick(lo, hi));
    return m;
}

// Product of random elementary operations; determinant is +-1 by
// construction.
inline IntMat random_unimodular(Rng& rng, int n, int ops = 8) {
    IntMat m = IntMat::identity(n);
    if (n == 0) return m;
    for (int k = 0; k < ops; ++k) {
        int kind = static_cast<int>(rng.pick(0, 2));
        int i = static_cast<int>(rng.pick(0, n - 1));
        int j = static_cast<int>(rng.pick(0, n - 1));
        if (kind == 0 && i != j) {
            Int c(rng.pick(-3, 3));
            for (int t = 0; t < n; ++t) m.at(i, t) += c * m.at(j, t);
        } else if (kind == 1 && i != j) {
            for (int t = 0; t < n; ++t) std::swap(m.at(i, t), m.at(j, t));
        } else if (kind == 2) {
            for (int t = 0; t < n; ++t) m.at(i, t) = -m.at(i, t);
        }
    }
    return m;
}

// Laplace-expansion determinant, kept independent of the library's Bareiss
// implementation on purpose (oracle).
inline Int laplace_det(const IntMat& a) {
    int n = a.rows;
    if (n == 0) return Int(1);
    if (n == 1) return a.at(0, 0);
    Int s = 0;
    for (int j = 0; j < n; ++j) {
        if (a.at(0, j) == 0) continue;
        IntMat minor(n - 1, n - 1);
        for (int i = 1; i < n; ++i) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(i - 1, cc++) = a.at(i, c);
            }
        }
        Int term = a.at(0, j) * laplace_det(minor);
        s += (j % 2 == 0) ? term : Int(-term);
    }
    return s;
}

// Invariant factors via gcds of k x k minors: d_k = g_k / g_{k-1}. Oracle for
// the Smith normal form.
inline std::vector<Int> minor_gcd_factors(const IntMat& a) {
    int n = std::min(a.rows, a.cols);
    std::vector<Int> factors;
    Int prev = 1;
    for (int k = 1; k <= n; ++k) {
        // all k-subsets of rows and columns
        std::vector<int> ridx(k), cidx(k);
        for (int i = 0; i < k; ++i) ridx[i] = i, cidx[i] = i;
        Int g = 0;
        auto advance = [](std::vector<int>& idx, int limit) {
            int k2 = static_cast<int>(idx.size());
            int i = k2 - 1;
            while (i >= 0 && idx[i] == limit - k2 + i) --i;
            if (i < 0) return false;
            ++idx[i];
            for (int j = i + 1; j < k2; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        };
        for (;;) {
            for (int i = 0; i < k; ++i) cidx[i] = i;
            for (;;) {
                IntMat sub(k, k);
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) sub.at(i, j) = a.at(ridx[i], cidx[j]);
                g = ccc::int_gcd(g, laplace_det(sub));
                if (!advance(cidx, a.cols)) break;
            }
            if (!advance(ridx, a.rows)) break;
        }
        if (g == 0) break; // rank is k-1
        factors.push_back(g / prev);
        prev = g;
    }
    return factors;
}

} // namespace ccctest
