#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gf.hpp"
#include "subspace.hpp"

namespace ntaut {

// Matrix unit x*e_{i,j}, i > j, positions 1-based.
struct RootElem {
    int i;
    int j;
    GfElem x;
};

// Element of NT(d, F): strictly lower triangular d x d matrix, stored as a
// packed row-major array of the d(d-1)/2 below-diagonal entries. On/above
// diagonal entries are not representable. The same object stands for a
// group element of UT(d, F) under the operation a.b = a + b + ab.
class NtMat {
public:
    NtMat(Gf f, int d) : f_(std::move(f)), d_(d) {
        if (d_ < 2) throw DimensionTooSmall("NT(d, F) needs d >= 2");
        e_.assign(static_cast<size_t>(d_) * (d_ - 1) / 2, 0);
    }

    static NtMat zero(const Gf& f, int d) { return NtMat(f, d); }

    static NtMat from_root(const Gf& f, int d, const RootElem& r) {
        NtMat m(f, d);
        f.check_same(r.x.field());
        m.set(r.i, r.j, r.x);
        return m;
    }

    const Gf& field() const { return f_; }
    int dim() const { return d_; }
    size_t packed_size() const { return e_.size(); }

    static size_t pos_index(int d, int i, int j) {
        if (i <= j || j < 1 || i > d) throw IndexOutOfRange("position (" + std::to_string(i) + "," + std::to_string(j) + ") not strictly lower");
        return static_cast<size_t>(i - 1) * (i - 2) / 2 + (j - 1);
    }

    int at_idx(int i, int j) const { return e_[pos_index(d_, i, j)]; }
    GfElem at(int i, int j) const { return f_.el(at_idx(i, j)); }
    void set_idx(int i, int j, int v) { e_[pos_index(d_, i, j)] = static_cast<uint8_t>(v); }
    void set(int i, int j, const GfElem& x) {
        f_.check_same(x.field());
        set_idx(i, j, x.idx());
    }

    const std::vector<uint8_t>& packed() const { return e_; }
    std::vector<uint8_t>& packed() { return e_; }

    bool is_zero() const {
        for (uint8_t v : e_)
            if (v) return false;
        return true;
    }

    bool operator==(const NtMat& o) const { return d_ == o.d_ && f_ == o.f_ && e_ == o.e_; }
    bool operator!=(const NtMat& o) const { return !(*this == o); }

    NtMat operator+(const NtMat& o) const {
        check_compat(o);
        NtMat r(f_, d_);
        for (size_t t = 0; t < e_.size(); ++t) r.e_[t] = static_cast<uint8_t>(f_.add(e_[t], o.e_[t]));
        return r;
    }
    NtMat operator-(const NtMat& o) const {
        check_compat(o);
        NtMat r(f_, d_);
        for (size_t t = 0; t < e_.size(); ++t) r.e_[t] = static_cast<uint8_t>(f_.sub(e_[t], o.e_[t]));
        return r;
    }
    NtMat operator-() const {
        NtMat r(f_, d_);
        for (size_t t = 0; t < e_.size(); ++t) r.e_[t] = static_cast<uint8_t>(f_.neg(e_[t]));
        return r;
    }
    NtMat scaled(const GfElem& c) const {
        f_.check_same(c.field());
        NtMat r(f_, d_);
        for (size_t t = 0; t < e_.size(); ++t) r.e_[t] = static_cast<uint8_t>(f_.mul(e_[t], c.idx()));
        return r;
    }

    void check_compat(const NtMat& o) const {
        if (d_ != o.d_) throw DimensionMismatch("matrix sizes differ");
        f_.check_same(o.f_);
    }

private:
    Gf f_;
    int d_;
    std::vector<uint8_t> e_;
};

// Ordinary matrix product; strictly lower times strictly lower stays
// strictly lower, and any product of d factors vanishes.
inline NtMat ring_mul(const NtMat& a, const NtMat& b) {
    a.check_compat(b);
    const Gf& f = a.field();
    const int d = a.dim();
    NtMat c(f, d);
    for (int i = 3; i <= d; ++i)
        for (int j = 1; j <= i - 2; ++j) {
            int acc = 0;
            for (int t = j + 1; t <= i - 1; ++t) {
                int av = a.at_idx(i, t);
                if (!av) continue;
                int bv = b.at_idx(t, j);
                if (!bv) continue;
                acc = f.add(acc, f.mul(av, bv));
            }
            c.set_idx(i, j, acc);
        }
    return c;
}

// Group operation of UT(d, F) on NT coordinates: a.b = a + b + ab.
inline NtMat group_mul(const NtMat& a, const NtMat& b) {
    NtMat r = a + b;
    NtMat ab = ring_mul(a, b);
    return r + ab;
}

// Two-sided inverse under the group operation, by the finite Neumann
// series c = -a + a^2 - a^3 + ...
inline NtMat group_inv(const NtMat& a) {
    NtMat acc = -a;
    NtMat term = a;
    int sign = -1;
    for (int m = 2; m < a.dim(); ++m) {
        term = ring_mul(term, a);
        if (term.is_zero()) break;
        sign = -sign;
        acc = (sign > 0) ? acc + term : acc - term;
    }
    return acc;
}

// Group commutator a^{-1} . b^{-1} . a . b.
inline NtMat commutator(const NtMat& a, const NtMat& b) {
    return group_mul(group_mul(group_inv(a), group_inv(b)), group_mul(a, b));
}

// Lie bracket a*b = ab - ba.
inline NtMat bracket(const NtMat& a, const NtMat& b) {
    return ring_mul(a, b) - ring_mul(b, a);
}

// Conjugate of L by the root element r under the group operation. The
// result always equals L + (L * r); that identity is asserted here.
inline NtMat conj_by_root(const NtMat& l, const RootElem& r) {
    NtMat rm = NtMat::from_root(l.field(), l.dim(), r);
    NtMat viaProduct = group_mul(group_mul(-rm, l), rm);
    NtMat viaBracket = l + bracket(l, rm);
    if (viaProduct != viaBracket) throw Error("conjugation identity 1+L+(L*e_ij) violated (defect)");
    return viaProduct;
}

// Positions (i, j) in canonical order: subdiagonal i-j = 1..d-1 ascending,
// row i ascending inside a subdiagonal.
inline std::vector<std::pair<int, int>> canonical_positions(int d) {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<size_t>(d) * (d - 1) / 2);
    for (int k = 1; k <= d - 1; ++k)
        for (int i = k + 1; i <= d; ++i) out.emplace_back(i, i - k);
    return out;
}

// Basis roots of Gamma_k = { M : m_{i,j} = 0 for i-j < k }. Gamma_d = 0.
inline std::vector<RootElem> gamma_basis(const Gf& f, int d, int k) {
    if (k < 1 || k > d) throw IndexOutOfRange("Gamma index outside 1..d");
    std::vector<RootElem> out;
    for (int s = k; s <= d - 1; ++s)
        for (int i = s + 1; i <= d; ++i) out.push_back(RootElem{i, i - s, f.one()});
    return out;
}

inline bool gamma_member(const NtMat& a, int k) {
    if (k < 1 || k > a.dim()) throw IndexOutOfRange("Gamma index outside 1..d");
    for (int i = 2; i <= a.dim(); ++i)
        for (int j = std::max(1, i - k + 1); j <= i - 1; ++j)
            if (a.at_idx(i, j)) return false;
    return true;
}

// Coordinates of an NtMat over the prime field: for each packed position,
// the k base-p digits of the entry.
inline PrimeVec to_coords(const NtMat& m) {
    const Gf& f = m.field();
    PrimeVec v(m.packed_size() * f.k());
    for (size_t t = 0; t < m.packed_size(); ++t)
        for (int s = 0; s < f.k(); ++s) v[t * f.k() + s] = static_cast<uint8_t>(f.digit(m.packed()[t], s));
    return v;
}

inline NtMat from_coords(const Gf& f, int d, const PrimeVec& v) {
    NtMat m(f, d);
    for (size_t t = 0; t < m.packed_size(); ++t) {
        std::vector<int> digits(f.k());
        for (int s = 0; s < f.k(); ++s) digits[s] = v[t * f.k() + s];
        m.packed()[t] = static_cast<uint8_t>(f.from_digits(digits));
    }
    return m;
}

inline size_t coord_count(const Gf& f, int d) { return static_cast<size_t>(d) * (d - 1) / 2 * f.k(); }

// Gamma_k as a prime-field subspace.
inline PrimeSubspace gamma_subspace(const Gf& f, int d, int k) {
    PrimeSubspace s(f.p(), coord_count(f, d));
    for (const RootElem& r : gamma_basis(f, d, k))
        for (int t = 0; t < f.k(); ++t) {
            NtMat m = NtMat::from_root(f, d, RootElem{r.i, r.j, f.el(f.basis_elem(t))});
            s.insert(to_coords(m));
        }
    return s;
}

inline PrimeSubspace full_space(const Gf& f, int d) { return gamma_subspace(f, d, 1); }

// Prime-field basis of NT(d, F): b_t * e_{i,j} over canonical positions.
inline std::vector<NtMat> prime_basis_mats(const Gf& f, int d) {
    std::vector<NtMat> out;
    for (auto [i, j] : canonical_positions(d))
        for (int t = 0; t < f.k(); ++t)
            out.push_back(NtMat::from_root(f, d, RootElem{i, j, f.el(f.basis_elem(t))}));
    return out;
}

// Simple-root generators b_t * e_{i+1,i} of UT(d, F), i ascending then t.
inline std::vector<NtMat> generator_mats(const Gf& f, int d) {
    std::vector<NtMat> out;
    for (int i = 1; i <= d - 1; ++i)
        for (int t = 0; t < f.k(); ++t)
            out.push_back(NtMat::from_root(f, d, RootElem{i + 1, i, f.el(f.basis_elem(t))}));
    return out;
}

// Lower central series G_1 = UT, G_{m+1} = [G_1, G_m], returned as the d
// subspaces G_1..G_d (G_d = 0). Spanned by commutators of basis elements.
inline std::vector<PrimeSubspace> lower_central_series(const Gf& f, int d) {
    std::vector<PrimeSubspace> out;
    out.push_back(full_space(f, d));
    std::vector<NtMat> whole = prime_basis_mats(f, d);
    std::vector<NtMat> cur = whole;
    for (int m = 2; m <= d; ++m) {
        PrimeSubspace next(f.p(), coord_count(f, d));
        std::vector<NtMat> next_basis;
        for (const NtMat& g : whole)
            for (const NtMat& h : cur) {
                NtMat c = commutator(g, h);
                if (next.insert(to_coords(c))) next_basis.push_back(c);
            }
        out.push_back(next);
        cur = std::move(next_basis);
    }
    return out;
}

// Upper central series Z_0 = 0, Z_{m+1} = { z : [z, g] in Z_m for every
// simple-root generator g }, returned as Z_0..Z_{d-1}. Membership of the
// commutator is equivalent to membership of the ring bracket z*g for the
// Gamma-shaped terms that arise here, which makes each step an exact
// linear solve over Z_p.
inline std::vector<PrimeSubspace> upper_central_series(const Gf& f, int d) {
    const size_t n = coord_count(f, d);
    std::vector<PrimeSubspace> out;
    out.emplace_back(f.p(), n);
    std::vector<NtMat> gens = generator_mats(f, d);
    for (int m = 1; m <= d - 1; ++m) {
        const PrimeSubspace& prev = out.back();
        // Constraint matrix: rows indexed by (generator, coordinate),
        // columns by the unknown z-coordinates.
        std::vector<PrimeVec> constraint(gens.size() * n, PrimeVec(n, 0));
        for (size_t col = 0; col < n; ++col) {
            PrimeVec unit(n, 0);
            unit[col] = 1;
            NtMat z = from_coords(f, d, unit);
            for (size_t gi = 0; gi < gens.size(); ++gi) {
                PrimeVec residual = prev.reduce(to_coords(bracket(z, gens[gi])));
                for (size_t r = 0; r < n; ++r) constraint[gi * n + r][col] = residual[r];
            }
        }
        std::vector<PrimeVec> kernel = PrimeLin::nullspace(std::move(constraint), f.p(), n);
        PrimeSubspace z(f.p(), n);
        for (auto& v : kernel) z.insert(v);
        out.push_back(std::move(z));
    }
    return out;
}

// Canonical factorization of g into root elements: subdiagonal ascending,
// row ascending, zero coefficients omitted. The ordered product of the
// returned roots under the group operation equals g; coefficients are read
// greedily because factors on subdiagonal k only disturb entries deeper
// than k.
inline std::vector<RootElem> root_factorize(const NtMat& g) {
    const Gf& f = g.field();
    const int d = g.dim();
    std::vector<RootElem> word;
    NtMat residual = g;
    for (int k = 1; k <= d - 1; ++k) {
        NtMat stage(f, d);
        bool any = false;
        for (int i = k + 1; i <= d; ++i) {
            int v = residual.at_idx(i, i - k);
            if (!v) continue;
            RootElem r{i, i - k, f.el(v)};
            word.push_back(r);
            stage = group_mul(stage, NtMat::from_root(f, d, r));
            any = true;
        }
        if (any) residual = group_mul(group_inv(stage), residual);
    }
    if (!residual.is_zero()) throw Error("root factorization left a residual (defect)");
    return word;
}

// Text form used across file formats: "d=<n>" then one line per row
// i = 2..d with the packed entry indices of that row.
inline std::string mat_to_text(const NtMat& m) {
    std::string out = "d=" + std::to_string(m.dim()) + "\n";
    for (int i = 2; i <= m.dim(); ++i) {
        for (int j = 1; j <= i - 1; ++j) {
            if (j > 1) out += ' ';
            out += std::to_string(m.at_idx(i, j));
        }
        out += '\n';
    }
    return out;
}

} // namespace ntaut
