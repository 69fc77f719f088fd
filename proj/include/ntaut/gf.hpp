#pragma once

#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace ntaut {

namespace detail {

// Polynomial helpers over Z_p. Coefficient vectors are little-endian
// (constant term first) and not necessarily normalized.

inline int poly_deg(const std::vector<int>& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i] != 0) return i;
    return -1;
}

inline std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b, int p) {
    std::vector<int> c(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return c;
}

// Remainder of a modulo the monic polynomial m.
inline std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& m, int p) {
    const int dm = poly_deg(m);
    for (int i = poly_deg(a); i >= dm; --i) {
        int c = a[i] % p;
        if (c == 0) continue;
        for (int j = 0; j <= dm; ++j) {
            int& t = a[i - dm + j];
            t = ((t - c * m[j]) % p + p) % p;
        }
    }
    a.resize(dm > 0 ? dm : 1, 0);
    return a;
}

struct GfData {
    int p = 0;
    int k = 0;
    int q = 0;
    std::vector<int> modulus;           // c0..ck, monic; empty for k == 1
    std::vector<uint8_t> add_tab;       // q*q
    std::vector<uint8_t> mul_tab;       // q*q
    std::vector<uint8_t> neg_tab;       // q
    std::vector<uint8_t> inv_tab;       // q, entry 0 unused
    std::vector<std::vector<uint8_t>> frob_tab;  // frob_tab[j][a] = a^(p^j)
};

} // namespace detail

class GfElem;
class FieldAut;

// A finite field GF(p^k), q = p^k <= 81. Elements are canonical integer
// indices 0..q-1 whose base-p digits are the polynomial coefficients,
// constant term least significant. Immutable; handles share state.
class Gf {
public:
    static constexpr int kMaxOrder = 81;

    Gf() = default;

    static Gf make(int p, int k) {
        if (p < 2 || !is_prime(p)) throw NonPrime("p = " + std::to_string(p) + " is not prime");
        if (k < 1 || k > 4) throw DegreeOutOfRange("extension degree k must be in 1..4, got " + std::to_string(k));
        long long q = 1;
        for (int i = 0; i < k; ++i) q *= p;
        if (q > kMaxOrder)
            throw DegreeOutOfRange("field order " + std::to_string(q) + " exceeds the desk-scale bound " +
                                   std::to_string(kMaxOrder));
        auto data = std::make_shared<detail::GfData>();
        data->p = p;
        data->k = k;
        data->q = static_cast<int>(q);
        if (k > 1) data->modulus = least_irreducible(p, k);
        build_tables(*data);
        Gf f;
        f.d_ = std::move(data);
        return f;
    }

    bool valid() const { return static_cast<bool>(d_); }
    int p() const { return d_->p; }
    int k() const { return d_->k; }
    int q() const { return d_->q; }
    const std::vector<int>& modulus() const { return d_->modulus; }

    bool operator==(const Gf& o) const {
        if (d_ == o.d_) return true;
        if (!d_ || !o.d_) return false;
        return d_->p == o.d_->p && d_->k == o.d_->k && d_->modulus == o.d_->modulus;
    }
    bool operator!=(const Gf& o) const { return !(*this == o); }

    int add(int a, int b) const { return d_->add_tab[a * d_->q + b]; }
    int sub(int a, int b) const { return d_->add_tab[a * d_->q + d_->neg_tab[b]]; }
    int mul(int a, int b) const { return d_->mul_tab[a * d_->q + b]; }
    int neg(int a) const { return d_->neg_tab[a]; }
    int inv(int a) const {
        if (a == 0) throw DivisionByZero("inverse of zero in GF(" + std::to_string(d_->q) + ")");
        return d_->inv_tab[a];
    }
    int pow(int a, long long e) const {
        if (a == 0) return e == 0 ? 1 : 0;
        const long long ord = d_->q - 1;
        e %= ord;
        if (e < 0) e += ord;
        int r = 1, base = a;
        while (e > 0) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }
    int frob(int a, int j) const {
        if (j < 0 || j >= d_->k)
            throw ExponentOutOfRange("Frobenius exponent " + std::to_string(j) + " outside 0.." +
                                     std::to_string(d_->k - 1));
        return d_->frob_tab[j][a];
    }

    // Base-p digit t (0-based) of the canonical encoding of a.
    int digit(int a, int t) const {
        for (int i = 0; i < t; ++i) a /= d_->p;
        return a % d_->p;
    }
    int from_digits(const std::vector<int>& digits) const {
        int v = 0;
        for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) v = v * d_->p + (digits[i] % d_->p + d_->p) % d_->p;
        return v;
    }
    // Index of the prime-basis element b_t = x^t (t = 0..k-1).
    int basis_elem(int t) const {
        int v = 1;
        for (int i = 0; i < t; ++i) v *= d_->p;
        return v;
    }

    GfElem el(int idx) const;
    GfElem zero() const;
    GfElem one() const;
    std::vector<FieldAut> automorphisms() const;

    // Textual field header, e.g. "p=3 k=2 poly=1,0,1".
    std::string describe() const {
        std::ostringstream os;
        os << "p=" << d_->p << " k=" << d_->k;
        if (d_->k > 1) {
            os << " poly=";
            for (size_t i = 0; i < d_->modulus.size(); ++i) {
                if (i) os << ',';
                os << d_->modulus[i];
            }
        }
        return os.str();
    }

    void check_same(const Gf& o) const {
        if (*this != o) throw FieldMismatch("operands belong to different fields");
    }

private:
    std::shared_ptr<const detail::GfData> d_;

    static bool is_prime(int n) {
        if (n < 2) return false;
        for (int i = 2; i * i <= n; ++i)
            if (n % i == 0) return false;
        return true;
    }

    // Lexicographically-least monic irreducible polynomial of degree k,
    // scanning candidates by ascending integer encoding of the low k
    // coefficients. Irreducibility by trial division against every monic
    // polynomial of degree 1..k/2.
    static std::vector<int> least_irreducible(int p, int k) {
        long long span = 1;
        for (int i = 0; i < k; ++i) span *= p;
        for (long long m = 0; m < span; ++m) {
            std::vector<int> cand(k + 1, 0);
            long long v = m;
            for (int i = 0; i < k; ++i) {
                cand[i] = static_cast<int>(v % p);
                v /= p;
            }
            cand[k] = 1;
            if (is_irreducible(cand, p, k)) return cand;
        }
        throw Error("no irreducible polynomial found (defect)");
    }

    static bool is_irreducible(const std::vector<int>& cand, int p, int k) {
        for (int deg = 1; deg <= k / 2; ++deg) {
            long long span = 1;
            for (int i = 0; i < deg; ++i) span *= p;
            for (long long m = 0; m < span; ++m) {
                std::vector<int> div(deg + 1, 0);
                long long v = m;
                for (int i = 0; i < deg; ++i) {
                    div[i] = static_cast<int>(v % p);
                    v /= p;
                }
                div[deg] = 1;
                if (detail::poly_deg(detail::poly_mod(cand, div, p)) < 0) return false;
            }
        }
        return true;
    }

    static void build_tables(detail::GfData& d) {
        const int q = d.q, p = d.p, k = d.k;
        auto digits_of = [&](int a) {
            std::vector<int> v(k);
            for (int t = 0; t < k; ++t) {
                v[t] = a % p;
                a /= p;
            }
            return v;
        };
        auto index_of = [&](const std::vector<int>& v) {
            int r = 0;
            for (int t = k - 1; t >= 0; --t) r = r * p + v[t];
            return r;
        };
        d.add_tab.resize(q * q);
        d.mul_tab.resize(q * q);
        d.neg_tab.resize(q);
        for (int a = 0; a < q; ++a) {
            auto da = digits_of(a);
            std::vector<int> nn(k);
            for (int t = 0; t < k; ++t) nn[t] = (p - da[t]) % p;
            d.neg_tab[a] = static_cast<uint8_t>(index_of(nn));
            for (int b = 0; b < q; ++b) {
                auto db = digits_of(b);
                std::vector<int> s(k);
                for (int t = 0; t < k; ++t) s[t] = (da[t] + db[t]) % p;
                d.add_tab[a * q + b] = static_cast<uint8_t>(index_of(s));
                std::vector<int> prod = detail::poly_mul(da, db, p);
                if (k > 1) prod = detail::poly_mod(prod, d.modulus, p);
                prod.resize(k, 0);
                d.mul_tab[a * q + b] = static_cast<uint8_t>(index_of(prod));
            }
        }
        d.inv_tab.assign(q, 0);
        for (int a = 1; a < q; ++a) {
            int r = 1, base = a;
            long long e = q - 2;
            while (e > 0) {
                if (e & 1) r = d.mul_tab[r * q + base];
                base = d.mul_tab[base * q + base];
                e >>= 1;
            }
            d.inv_tab[a] = static_cast<uint8_t>(r);
        }
        d.frob_tab.assign(k, std::vector<uint8_t>(q));
        for (int a = 0; a < q; ++a) d.frob_tab[0][a] = static_cast<uint8_t>(a);
        for (int j = 1; j < k; ++j)
            for (int a = 0; a < q; ++a) {
                int x = d.frob_tab[j - 1][a];
                int r = 1;
                for (int i = 0; i < p; ++i) r = (i == 0) ? x : d.mul_tab[r * q + x];
                d.frob_tab[j][a] = static_cast<uint8_t>(r);
            }
    }
};

// One element of a Gf; carries its owning field.
class GfElem {
public:
    GfElem() = default;
    GfElem(Gf f, int idx) : f_(std::move(f)), v_(idx) {
        if (v_ < 0 || v_ >= f_.q()) throw IndexOutOfRange("element index outside 0..q-1");
    }

    int idx() const { return v_; }
    const Gf& field() const { return f_; }
    bool is_zero() const { return v_ == 0; }

    GfElem operator+(const GfElem& o) const { return with(f_.add(v_, checked(o))); }
    GfElem operator-(const GfElem& o) const { return with(f_.sub(v_, checked(o))); }
    GfElem operator*(const GfElem& o) const { return with(f_.mul(v_, checked(o))); }
    GfElem operator/(const GfElem& o) const { return with(f_.mul(v_, f_.inv(checked(o)))); }
    GfElem operator-() const { return with(f_.neg(v_)); }
    GfElem inverse() const { return with(f_.inv(v_)); }
    GfElem frobenius(int j) const { return with(f_.frob(v_, j)); }
    GfElem pow(long long e) const { return with(f_.pow(v_, e)); }

    bool operator==(const GfElem& o) const { return f_ == o.f_ && v_ == o.v_; }
    bool operator!=(const GfElem& o) const { return !(*this == o); }

private:
    Gf f_;
    int v_ = 0;

    GfElem with(int idx) const {
        GfElem e;
        e.f_ = f_;
        e.v_ = idx;
        return e;
    }
    int checked(const GfElem& o) const {
        f_.check_same(o.f_);
        return o.v_;
    }
};

// A field automorphism of GF(p^k): the Frobenius power x -> x^(p^j).
class FieldAut {
public:
    FieldAut(Gf f, int j) : f_(std::move(f)), j_(j) {
        if (j_ < 0 || j_ >= f_.k()) throw ExponentOutOfRange("Frobenius exponent outside 0..k-1");
    }
    int exponent() const { return j_; }
    const Gf& field() const { return f_; }
    int apply_idx(int a) const { return f_.frob(a, j_); }
    GfElem operator()(const GfElem& a) const {
        f_.check_same(a.field());
        return f_.el(f_.frob(a.idx(), j_));
    }
    FieldAut compose(const FieldAut& o) const { return FieldAut(f_, (j_ + o.j_) % f_.k()); }
    bool operator==(const FieldAut& o) const { return f_ == o.f_ && j_ == o.j_; }

private:
    Gf f_;
    int j_;
};

inline GfElem Gf::el(int idx) const { return GfElem(*this, idx); }
inline GfElem Gf::zero() const { return GfElem(*this, 0); }
inline GfElem Gf::one() const { return GfElem(*this, 1); }

inline std::vector<FieldAut> Gf::automorphisms() const {
    std::vector<FieldAut> out;
    out.reserve(k());
    for (int j = 0; j < k(); ++j) out.emplace_back(*this, j);
    return out;
}

} // namespace ntaut
