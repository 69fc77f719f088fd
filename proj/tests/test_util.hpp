#pragma once

// Shared helpers for the test suites. The Dense type is an independent
// oracle: it carries full d x d matrices and checks the packed NT routines
// against plain matrix arithmetic (1 + L representation), including
// Gaussian inversion instead of the Neumann series.

#include <vector>

#include "ntaut/gf.hpp"
#include "ntaut/ntcore.hpp"
#include "ntaut/rand.hpp"

namespace ntest {

using namespace ntaut;

inline NtMat random_mat(Rng& rng, const Gf& f, int d) {
    NtMat m(f, d);
    for (auto& v : m.packed()) v = static_cast<uint8_t>(rng.below(f.q()));
    return m;
}

inline GfElem random_elem(Rng& rng, const Gf& f) { return f.el(static_cast<int>(rng.below(f.q()))); }

inline GfElem random_nonzero(Rng& rng, const Gf& f) {
    return f.el(1 + static_cast<int>(rng.below(f.q() - 1)));
}

// Dense d x d matrix over a Gf, row-major, 1-based access.
struct Dense {
    Gf f;
    int d;
    std::vector<int> a;

    Dense(const Gf& ff, int dd) : f(ff), d(dd), a(static_cast<size_t>(dd) * dd, 0) {}

    static Dense identity(const Gf& f, int d) {
        Dense m(f, d);
        for (int i = 1; i <= d; ++i) m.set(i, i, 1);
        return m;
    }
    static Dense from_group_elem(const NtMat& l) {
        Dense m = identity(l.field(), l.dim());
        for (int i = 2; i <= l.dim(); ++i)
            for (int j = 1; j < i; ++j) m.set(i, j, l.at_idx(i, j));
        return m;
    }

    int at(int i, int j) const { return a[static_cast<size_t>(i - 1) * d + (j - 1)]; }
    void set(int i, int j, int v) { a[static_cast<size_t>(i - 1) * d + (j - 1)] = v; }

    Dense mul(const Dense& o) const {
        Dense r(f, d);
        for (int i = 1; i <= d; ++i)
            for (int j = 1; j <= d; ++j) {
                int acc = 0;
                for (int t = 1; t <= d; ++t) acc = f.add(acc, f.mul(at(i, t), o.at(t, j)));
                r.set(i, j, acc);
            }
        return r;
    }

    Dense transpose() const {
        Dense r(f, d);
        for (int i = 1; i <= d; ++i)
            for (int j = 1; j <= d; ++j) r.set(j, i, at(i, j));
        return r;
    }

    // Inverse by Gauss-Jordan elimination; requires invertibility.
    Dense inverse() const {
        Dense m = *this;
        Dense r = identity(f, d);
        for (int col = 1; col <= d; ++col) {
            int piv = 0;
            for (int i = col; i <= d; ++i)
                if (m.at(i, col) != 0) {
                    piv = i;
                    break;
                }
            if (!piv) throw std::runtime_error("dense oracle: singular matrix");
            if (piv != col)
                for (int j = 1; j <= d; ++j) {
                    std::swap(m.a[(piv - 1) * d + j - 1], m.a[(col - 1) * d + j - 1]);
                    std::swap(r.a[(piv - 1) * d + j - 1], r.a[(col - 1) * d + j - 1]);
                }
            int inv = f.inv(m.at(col, col));
            for (int j = 1; j <= d; ++j) {
                m.set(col, j, f.mul(m.at(col, j), inv));
                r.set(col, j, f.mul(r.at(col, j), inv));
            }
            for (int i = 1; i <= d; ++i) {
                if (i == col) continue;
                int c = m.at(i, col);
                if (!c) continue;
                for (int j = 1; j <= d; ++j) {
                    m.set(i, j, f.sub(m.at(i, j), f.mul(c, m.at(col, j))));
                    r.set(i, j, f.sub(r.at(i, j), f.mul(c, r.at(col, j))));
                }
            }
        }
        return r;
    }

    // Reflect across the antidiagonal: J M J with J the reversal permutation.
    Dense antitranspose_conj() const {
        Dense r(f, d);
        for (int i = 1; i <= d; ++i)
            for (int j = 1; j <= d; ++j) r.set(i, j, at(d + 1 - i, d + 1 - j));
        return r;
    }

    NtMat to_nt() const {
        NtMat m(f, d);
        for (int i = 1; i <= d; ++i)
            for (int j = 1; j <= d; ++j) {
                int v = at(i, j);
                int want = (i == j) ? 1 : 0;
                if (i >= j) {
                    if (i == j) {
                        if (v != want) throw std::runtime_error("dense oracle: not unitriangular");
                    } else {
                        m.set_idx(i, j, v);
                    }
                } else if (v != 0) {
                    throw std::runtime_error("dense oracle: nonzero above diagonal");
                }
            }
        return m;
    }
};

} // namespace ntest
