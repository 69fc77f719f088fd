#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "errors.hpp"

namespace ntaut {

// Vector over the prime field Z_p, entries 0..p-1.
using PrimeVec = std::vector<uint8_t>;

namespace detail {
inline int mod_inv(int a, int p) {
    int r = 1, base = a % p, e = p - 2;
    while (e > 0) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return r;
}
} // namespace detail

// Subspace of Z_p^n kept in reduced row echelon form. The basis is
// canonical, so equality of subspaces is row-wise equality.
class PrimeSubspace {
public:
    PrimeSubspace(int p, size_t n) : p_(p), n_(n) {}

    int p() const { return p_; }
    size_t ncols() const { return n_; }
    size_t dim() const { return rows_.size(); }
    const std::vector<PrimeVec>& basis() const { return rows_; }

    // Reduce v against the current basis; the result has zeros in every
    // pivot column.
    PrimeVec reduce(PrimeVec v) const {
        for (size_t r = 0; r < rows_.size(); ++r) {
            int c = v[pivots_[r]] % p_;
            if (c == 0) continue;
            for (size_t j = 0; j < n_; ++j)
                v[j] = static_cast<uint8_t>(((v[j] - c * rows_[r][j]) % p_ + p_) % p_);
        }
        return v;
    }

    bool contains(const PrimeVec& v) const {
        PrimeVec r = reduce(v);
        for (uint8_t x : r)
            if (x % p_) return false;
        return true;
    }

    // Insert v; returns true when the dimension grew.
    bool insert(const PrimeVec& v) {
        if (v.size() != n_) throw DimensionMismatch("vector length does not match subspace");
        PrimeVec r = reduce(v);
        size_t piv = n_;
        for (size_t j = 0; j < n_; ++j)
            if (r[j] % p_) {
                piv = j;
                break;
            }
        if (piv == n_) return false;
        const int inv = detail::mod_inv(r[piv], p_);
        for (size_t j = 0; j < n_; ++j) r[j] = static_cast<uint8_t>(r[j] * inv % p_);
        // clear the new pivot column from existing rows
        for (size_t i = 0; i < rows_.size(); ++i) {
            int c = rows_[i][piv];
            if (c == 0) continue;
            for (size_t j = 0; j < n_; ++j)
                rows_[i][j] = static_cast<uint8_t>(((rows_[i][j] - c * r[j]) % p_ + p_) % p_);
        }
        // keep rows ordered by pivot
        size_t at = 0;
        while (at < pivots_.size() && pivots_[at] < piv) ++at;
        rows_.insert(rows_.begin() + at, std::move(r));
        pivots_.insert(pivots_.begin() + at, piv);
        return true;
    }

    bool operator==(const PrimeSubspace& o) const {
        return p_ == o.p_ && n_ == o.n_ && rows_ == o.rows_;
    }
    bool operator!=(const PrimeSubspace& o) const { return !(*this == o); }

    bool contains_subspace(const PrimeSubspace& o) const {
        for (const auto& r : o.rows_)
            if (!contains(r)) return false;
        return true;
    }

    static PrimeSubspace span(int p, size_t n, const std::vector<PrimeVec>& vecs) {
        PrimeSubspace s(p, n);
        for (const auto& v : vecs) s.insert(v);
        return s;
    }

private:
    int p_;
    size_t n_;
    std::vector<PrimeVec> rows_;
    std::vector<size_t> pivots_;
};

// Dense linear algebra over Z_p used for the exact solves.
struct PrimeLin {
    // Reduced row echelon form in place; returns pivot columns.
    static std::vector<size_t> rref(std::vector<PrimeVec>& m, int p) {
        std::vector<size_t> pivots;
        if (m.empty()) return pivots;
        const size_t ncols = m[0].size();
        size_t row = 0;
        for (size_t col = 0; col < ncols && row < m.size(); ++col) {
            size_t sel = m.size();
            for (size_t r = row; r < m.size(); ++r)
                if (m[r][col] % p) {
                    sel = r;
                    break;
                }
            if (sel == m.size()) continue;
            std::swap(m[row], m[sel]);
            const int inv = detail::mod_inv(m[row][col], p);
            for (size_t j = 0; j < ncols; ++j) m[row][j] = static_cast<uint8_t>(m[row][j] * inv % p);
            for (size_t r = 0; r < m.size(); ++r) {
                if (r == row) continue;
                int c = m[r][col];
                if (c == 0) continue;
                for (size_t j = 0; j < ncols; ++j)
                    m[r][j] = static_cast<uint8_t>(((m[r][j] - c * m[row][j]) % p + p) % p);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    // One solution of A x = b, or nullopt when inconsistent. Free
    // variables are set to zero (lowest-index pivoting, deterministic).
    static std::optional<PrimeVec> solve(const std::vector<PrimeVec>& a, const PrimeVec& b, int p) {
        const size_t ncols = a.empty() ? 0 : a[0].size();
        std::vector<PrimeVec> aug(a.size(), PrimeVec(ncols + 1));
        for (size_t r = 0; r < a.size(); ++r) {
            for (size_t j = 0; j < ncols; ++j) aug[r][j] = a[r][j];
            aug[r][ncols] = b[r];
        }
        auto pivots = rref(aug, p);
        for (size_t r = 0; r < pivots.size(); ++r)
            if (pivots[r] == ncols) return std::nullopt;
        PrimeVec x(ncols, 0);
        for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][ncols];
        return x;
    }

    // Basis of the null space of A.
    static std::vector<PrimeVec> nullspace(std::vector<PrimeVec> a, int p, size_t ncols) {
        auto pivots = rref(a, p);
        std::vector<bool> is_pivot(ncols, false);
        for (size_t c : pivots) is_pivot[c] = true;
        std::vector<PrimeVec> out;
        for (size_t free_col = 0; free_col < ncols; ++free_col) {
            if (is_pivot[free_col]) continue;
            PrimeVec v(ncols, 0);
            v[free_col] = 1;
            for (size_t r = 0; r < pivots.size(); ++r) {
                int c = a[r][free_col];
                v[pivots[r]] = static_cast<uint8_t>(((-c) % p + p) % p);
            }
            out.push_back(std::move(v));
        }
        return out;
    }

    static size_t rank(std::vector<PrimeVec> a, int p) { return rref(a, p).size(); }
};

} // namespace ntaut
