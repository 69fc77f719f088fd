#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ideals.hpp"
#include "ntcore.hpp"
#include "rand.hpp"

namespace ntaut {

struct VerifyPolicy {
    enum class Kind { Exhaustive, Sampled };
    Kind kind = Kind::Exhaustive;
    uint64_t samples = 10000;
    uint64_t seed = 0xC0FFEE;

    static VerifyPolicy exhaustive() { return VerifyPolicy{Kind::Exhaustive, 0, 0}; }
    static VerifyPolicy sampled(uint64_t n, uint64_t seed) { return VerifyPolicy{Kind::Sampled, n, seed}; }

    std::string text() const {
        if (kind == Kind::Exhaustive) return "exhaustive";
        std::ostringstream os;
        os << "sampled(" << samples << "," << seed << ")";
        return os.str();
    }
};

struct VerifyReport {
    bool passed = false;
    std::string policy_text;
    uint64_t seed = 0;
    uint64_t relation_instances = 0;
    uint64_t pairs_checked = 0;
    std::string witness;  // empty when passed
};

enum class VerifiedState { Unchecked, Passed, Failed };

// An automorphism candidate of UT(d, F), stored as the images of the
// minimal generators b_t e_{i+1,i} over the prime-field basis {b_t} of F.
// Extension to arbitrary coefficients walks the base-p digits, so the
// additive relation (x e).(y e) = (x+y) e holds by construction; images of
// deeper roots come from the commutator recursion
// x e_{i,j} = [x e_{i,j+1}, e_{j+1,j}].
class AutMap {
public:
    static AutMap from_images(const Gf& f, int d, std::vector<NtMat> images) {
        if (d < 2) throw DimensionTooSmall("automorphisms need d >= 2");
        if (images.size() != static_cast<size_t>(d - 1) * f.k())
            throw MalformedAutMap("expected (d-1)*k generator images, got " + std::to_string(images.size()));
        for (const NtMat& m : images) {
            if (m.dim() != d) throw MalformedAutMap("generator image has wrong size");
            if (m.field() != f) throw MalformedAutMap("generator image over a different field");
        }
        return AutMap(f, d, std::move(images));
    }

    static AutMap identity(const Gf& f, int d) {
        std::vector<NtMat> imgs;
        for (int i = 1; i <= d - 1; ++i)
            for (int t = 0; t < f.k(); ++t)
                imgs.push_back(NtMat::from_root(f, d, RootElem{i + 1, i, f.el(f.basis_elem(t))}));
        return from_images(f, d, std::move(imgs));
    }

    const Gf& field() const { return f_; }
    int dim() const { return d_; }

    // Stored image of the generator b_t e_{i+1,i}, i in 1..d-1, t in 0..k-1.
    const NtMat& image(int i, int t) const {
        if (i < 1 || i > d_ - 1 || t < 0 || t >= f_.k()) throw IndexOutOfRange("generator index out of range");
        return imgs_[static_cast<size_t>(i - 1) * f_.k() + t];
    }
    const std::vector<NtMat>& images() const { return imgs_; }

    VerifiedState verified() const { return state_; }
    const std::string& verified_info() const { return state_info_; }
    void set_verified(VerifiedState s, std::string info) {
        state_ = s;
        state_info_ = std::move(info);
    }

    // Image of x e_{i,j} derived from the stored generator images.
    NtMat derived_root_image(const RootElem& r) const {
        f_.check_same(r.x.field());
        return derived(r.x.idx(), r.i, r.j);
    }

    // Extension along the canonical root factorization.
    NtMat apply(const NtMat& g) const {
        if (g.dim() != d_) throw DimensionMismatch("element size does not match the automorphism");
        f_.check_same(g.field());
        NtMat out(f_, d_);
        for (const RootElem& r : root_factorize(g)) out = group_mul(out, derived(r.x.idx(), r.i, r.j));
        return out;
    }

    bool operator==(const AutMap& o) const { return d_ == o.d_ && f_ == o.f_ && imgs_ == o.imgs_; }
    bool operator!=(const AutMap& o) const { return !(*this == o); }

private:
    Gf f_;
    int d_;
    std::vector<NtMat> imgs_;
    VerifiedState state_ = VerifiedState::Unchecked;
    std::string state_info_ = "unchecked";
    mutable std::vector<std::optional<NtMat>> cache_;

    AutMap(Gf f, int d, std::vector<NtMat> images)
        : f_(std::move(f)), d_(d), imgs_(std::move(images)) {
        cache_.resize(static_cast<size_t>(d_) * (d_ - 1) / 2 * f_.q());
    }

    NtMat derived(int x, int i, int j) const {
        if (x == 0) return NtMat(f_, d_);
        size_t slot = NtMat::pos_index(d_, i, j) * f_.q() + x;
        if (cache_[slot]) return *cache_[slot];
        NtMat out(f_, d_);
        if (i - j == 1) {
            for (int t = 0; t < f_.k(); ++t) {
                int c = f_.digit(x, t);
                for (int rep = 0; rep < c; ++rep) out = group_mul(out, image(j, t));
            }
        } else {
            out = commutator(derived(x, i, j + 1), derived(1, j + 1, j));
        }
        cache_[slot] = out;
        return out;
    }
};

// Composition in application order: (phi; psi) applies phi first.
inline AutMap compose(const AutMap& phi, const AutMap& psi) {
    if (phi.dim() != psi.dim()) throw DimensionMismatch("composing automorphisms of different sizes");
    phi.field().check_same(psi.field());
    std::vector<NtMat> imgs;
    imgs.reserve(phi.images().size());
    for (const NtMat& m : phi.images()) imgs.push_back(psi.apply(m));
    return AutMap::from_images(phi.field(), phi.dim(), std::move(imgs));
}

inline bool aut_eq(const AutMap& a, const AutMap& b) { return a == b; }

// ---- the six constructors -------------------------------------------------

// Canonical flip g -> J (g^-1)^T J with J the antidiagonal permutation.
// On generators: x e_{i+1,i} -> (-x) e_{d-i+1,d-i}. Over fields of
// characteristic 2 this is the literal antidiagonal reflection; in odd
// characteristic the two differ by the alternating diagonal automorphism.
inline AutMap make_flip(const Gf& f, int d) {
    std::vector<NtMat> imgs;
    for (int i = 1; i <= d - 1; ++i)
        for (int t = 0; t < f.k(); ++t)
            imgs.push_back(NtMat::from_root(f, d, RootElem{d - i + 1, d - i, -f.el(f.basis_elem(t))}));
    return AutMap::from_images(f, d, std::move(imgs));
}

// Conjugation by the diagonal matrix D: x e_{i,j} -> d_i^{-1} x d_j e_{i,j}.
inline AutMap make_diag(const Gf& f, int d, const std::vector<GfElem>& diag) {
    if (static_cast<int>(diag.size()) != d) throw DimensionMismatch("diagonal needs d entries");
    for (const GfElem& e : diag) {
        f.check_same(e.field());
        if (e.is_zero()) throw ZeroDiagonalEntry("diagonal entries must be nonzero");
    }
    std::vector<NtMat> imgs;
    for (int i = 1; i <= d - 1; ++i)
        for (int t = 0; t < f.k(); ++t) {
            GfElem coeff = diag[i].inverse() * f.el(f.basis_elem(t)) * diag[i - 1];
            imgs.push_back(NtMat::from_root(f, d, RootElem{i + 1, i, coeff}));
        }
    return AutMap::from_images(f, d, std::move(imgs));
}

// Entrywise field automorphism x -> x^(p^j).
inline AutMap make_field(const Gf& f, int d, int j) {
    if (j < 0 || j >= f.k()) throw ExponentOutOfRange("Frobenius exponent outside 0..k-1");
    std::vector<NtMat> imgs;
    for (int i = 1; i <= d - 1; ++i)
        for (int t = 0; t < f.k(); ++t)
            imgs.push_back(NtMat::from_root(f, d, RootElem{i + 1, i, f.el(f.frob(f.basis_elem(t), j))}));
    return AutMap::from_images(f, d, std::move(imgs));
}

// Inner automorphism x -> g^-1 . x . g.
inline AutMap make_inner(const NtMat& g) {
    const Gf& f = g.field();
    const int d = g.dim();
    NtMat u = group_inv(g);
    std::vector<NtMat> imgs;
    for (int i = 1; i <= d - 1; ++i)
        for (int t = 0; t < f.k(); ++t) {
            NtMat gen = NtMat::from_root(f, d, RootElem{i + 1, i, f.el(f.basis_elem(t))});
            imgs.push_back(group_mul(group_mul(u, gen), g));
        }
    return AutMap::from_images(f, d, std::move(imgs));
}

// Additive maps F -> F per generator position, given by their values on
// the prime basis: lambda[i-1][t] = Lambda_i(b_t).
using CentralMaps = std::vector<std::vector<GfElem>>;

// Central automorphism x e_{i+1,i} -> x e_{i+1,i} + Lambda_i(x) e_{d,1}.
inline AutMap make_central(const Gf& f, int d, const CentralMaps& lambda) {
    if (d < 3) throw DimensionTooSmall("central automorphisms need d >= 3");
    if (static_cast<int>(lambda.size()) != d - 1) throw MalformedAutMap("need d-1 additive maps");
    std::vector<NtMat> imgs;
    for (int i = 1; i <= d - 1; ++i) {
        if (static_cast<int>(lambda[i - 1].size()) != f.k())
            throw MalformedAutMap("additive map needs k prime-basis values");
        for (int t = 0; t < f.k(); ++t) {
            const GfElem& v = lambda[i - 1][t];
            f.check_same(v.field());
            NtMat img = NtMat::from_root(f, d, RootElem{i + 1, i, f.el(f.basis_elem(t))});
            img.set(d, 1, img.at(d, 1) + v);
            imgs.push_back(std::move(img));
        }
    }
    return AutMap::from_images(f, d, std::move(imgs));
}

inline CentralMaps zero_central_maps(const Gf& f, int d) {
    return CentralMaps(d - 1, std::vector<GfElem>(f.k(), f.zero()));
}

// Extremal automorphism, odd characteristic:
//   x e_{2,1}   -> x e_{2,1}   + a1 x e_{d,2}   + (a1/2) x^2 e_{d,1}
//   x e_{d,d-1} -> x e_{d,d-1} + a2 x e_{d-1,1} + (a2/2) x^2 e_{d,1}
// The quadratic part is the canonical solution of
// (x+y)^l - x^l - y^l = a x y; any other choice differs by a central
// automorphism.
inline AutMap make_extremal_odd(const Gf& f, int d, const GfElem& a1, const GfElem& a2) {
    if (f.p() == 2) throw EvenCharacteristic("odd-characteristic extremal over a characteristic-2 field");
    if (d < 5) throw DimensionTooSmall("extremal automorphisms need d >= 5");
    f.check_same(a1.field());
    f.check_same(a2.field());
    GfElem half = f.el(2).inverse();
    std::vector<NtMat> imgs;
    for (int i = 1; i <= d - 1; ++i)
        for (int t = 0; t < f.k(); ++t) {
            GfElem x = f.el(f.basis_elem(t));
            NtMat img = NtMat::from_root(f, d, RootElem{i + 1, i, x});
            if (i == 1) {
                img.set(d, 2, img.at(d, 2) + a1 * x);
                img.set(d, 1, img.at(d, 1) + a1 * half * x * x);
            } else if (i == d - 1) {
                img.set(d - 1, 1, img.at(d - 1, 1) + a2 * x);
                img.set(d, 1, img.at(d, 1) + a2 * half * x * x);
            }
            imgs.push_back(std::move(img));
        }
    return AutMap::from_images(f, d, std::move(imgs));
}

// Extremal automorphism over GF(2):
//   x e_{2,1} -> x e_{2,1} + a1 x e_{d,3},  x e_{d,d-1} -> x e_{d,d-1} + a2 x e_{d-2,1}.
// The shape is an automorphism over no other field. The second deviation
// sits at (d-2,1), the antidiagonal mirror of (d,3); a deviation at
// (d-1,1) cannot be one because e_{d,d-1} + a e_{d-1,1} squares to
// a e_{d,1} and so is not an involution.
inline AutMap make_extremal_even(const Gf& f, int d, const GfElem& a1, const GfElem& a2) {
    if (f.q() != 2) throw NotGF2("even-characteristic extremal automorphisms exist only over GF(2)");
    if (d < 5) throw DimensionTooSmall("extremal automorphisms need d >= 5");
    f.check_same(a1.field());
    f.check_same(a2.field());
    std::vector<NtMat> imgs;
    for (int i = 1; i <= d - 1; ++i) {
        GfElem x = f.one();
        NtMat img = NtMat::from_root(f, d, RootElem{i + 1, i, x});
        if (i == 1) img.set(d, 3, img.at(d, 3) + a1 * x);
        if (i == d - 1) img.set(d - 2, 1, img.at(d - 2, 1) + a2 * x);
        imgs.push_back(std::move(img));
    }
    return AutMap::from_images(f, d, std::move(imgs));
}

// ---- verification ----------------------------------------------------------

// Prime-field matrix of the action on UT/Gamma_2; column (i,t) holds the
// first-subdiagonal digits of the image of b_t e_{i+1,i}.
inline std::vector<PrimeVec> abelianization_matrix(const AutMap& phi) {
    const Gf& f = phi.field();
    const int d = phi.dim();
    const size_t n = static_cast<size_t>(d - 1) * f.k();
    std::vector<PrimeVec> m(n, PrimeVec(n, 0));
    for (int i = 1; i <= d - 1; ++i)
        for (int t = 0; t < f.k(); ++t) {
            size_t col = static_cast<size_t>(i - 1) * f.k() + t;
            for (int ii = 1; ii <= d - 1; ++ii) {
                int entry = phi.image(i, t).at_idx(ii + 1, ii);
                for (int s = 0; s < f.k(); ++s)
                    m[static_cast<size_t>(ii - 1) * f.k() + s][col] = static_cast<uint8_t>(f.digit(entry, s));
            }
        }
    return m;
}

namespace detail {

inline std::string describe_pair(const NtMat& a, const NtMat& b) {
    std::ostringstream os;
    os << "a:\n" << mat_to_text(a) << "b:\n" << mat_to_text(b);
    return os.str();
}

// Core structural checks: invertibility on the abelianization, order p of
// every stored generator image, and every instance of the commutator
// relation on derived root images over prime-basis coefficient pairs.
// Additivity of same-position products is otherwise structural: the
// extension walks base-p digits, so only the wrap-around p.(b_t e) = 0
// carries information, and that is the order-p check.
inline bool check_relations(const AutMap& phi, VerifyReport& rep) {
    const Gf& f = phi.field();
    const int d = phi.dim();
    auto ab = abelianization_matrix(phi);
    const size_t n = ab.size();
    if (PrimeLin::rank(ab, f.p()) != n) {
        rep.witness = "abelianization matrix is singular";
        return false;
    }
    for (int i = 1; i <= d - 1; ++i)
        for (int t = 0; t < f.k(); ++t) {
            NtMat pw(f, d);
            for (int rep_count = 0; rep_count < f.p(); ++rep_count) pw = group_mul(pw, phi.image(i, t));
            ++rep.relation_instances;
            if (!pw.is_zero()) {
                rep.witness = "image of generator (" + std::to_string(i) + "," + std::to_string(t) +
                              ") does not have order dividing p";
                return false;
            }
        }
    auto pos = canonical_positions(d);
    for (auto [i, j] : pos)
        for (auto [k, l] : pos)
            for (int s = 0; s < f.k(); ++s)
                for (int t = 0; t < f.k(); ++t) {
                    GfElem x = f.el(f.basis_elem(s)), y = f.el(f.basis_elem(t));
                    NtMat lhs = commutator(phi.derived_root_image(RootElem{i, j, x}),
                                           phi.derived_root_image(RootElem{k, l, y}));
                    NtMat rhs(f, d);
                    if (j == k) rhs = phi.derived_root_image(RootElem{i, l, x * y});
                    else if (i == l) rhs = phi.derived_root_image(RootElem{k, j, -(x * y)});
                    ++rep.relation_instances;
                    if (lhs != rhs) {
                        std::ostringstream os;
                        os << "relation [" << x.idx() << "*e_{" << i << "," << j << "}, " << y.idx() << "*e_{"
                           << k << "," << l << "}] broken";
                        rep.witness = os.str();
                        return false;
                    }
                }
    return true;
}

inline uint64_t group_order(const Gf& f, int d, uint64_t cap) {
    uint64_t order = 1;
    for (int t = 0; t < d * (d - 1) / 2; ++t) {
        order *= f.q();
        if (order > cap) return 0;  // overflowed the cap
    }
    return order;
}

} // namespace detail

// Relation-level verification plus, under the chosen policy, direct
// homomorphism checks: exhaustive over all ordered pairs of group elements
// (group order capped at 2^20) or deterministic seeded sampling.
inline VerifyReport verify(const AutMap& phi, const VerifyPolicy& policy) {
    const Gf& f = phi.field();
    const int d = phi.dim();
    VerifyReport rep;
    rep.policy_text = policy.text();
    rep.seed = (policy.kind == VerifyPolicy::Kind::Sampled) ? policy.seed : 0;
    if (!detail::check_relations(phi, rep)) return rep;

    if (policy.kind == VerifyPolicy::Kind::Exhaustive) {
        uint64_t order = detail::group_order(f, d, 1ULL << 20);
        if (order == 0)
            throw TooLarge("exhaustive verification allowed only for group order <= 2^20");
        // enumerate all elements once, filing images by packed key
        std::vector<NtMat> elems;
        elems.reserve(order);
        std::vector<NtMat> images;
        images.reserve(order);
        NtMat m(f, d);
        const int q = f.q();
        auto key_of = [&](const NtMat& x) {
            uint64_t key = 0;
            for (size_t t = x.packed_size(); t-- > 0;) key = key * q + x.packed()[t];
            return key;
        };
        while (true) {
            elems.push_back(m);
            images.push_back(phi.apply(m));
            size_t t = 0;
            for (; t < m.packed_size(); ++t) {
                if (m.packed()[t] + 1 < q) {
                    ++m.packed()[t];
                    break;
                }
                m.packed()[t] = 0;
            }
            if (t == m.packed_size()) break;
        }
        for (uint64_t a = 0; a < order; ++a)
            for (uint64_t b = 0; b < order; ++b) {
                NtMat prod = group_mul(elems[a], elems[b]);
                ++rep.pairs_checked;
                if (images[key_of(prod)] != group_mul(images[a], images[b])) {
                    rep.witness = detail::describe_pair(elems[a], elems[b]);
                    return rep;
                }
            }
    } else {
        Rng rng(policy.seed);
        for (uint64_t s = 0; s < policy.samples; ++s) {
            NtMat a(f, d), b(f, d);
            for (auto& v : a.packed()) v = static_cast<uint8_t>(rng.below(f.q()));
            for (auto& v : b.packed()) v = static_cast<uint8_t>(rng.below(f.q()));
            ++rep.pairs_checked;
            if (phi.apply(group_mul(a, b)) != group_mul(phi.apply(a), phi.apply(b))) {
                rep.witness = detail::describe_pair(a, b);
                return rep;
            }
        }
    }
    rep.passed = true;
    return rep;
}

// The deterministic core of verify (no pair policy); decompose gates on it.
inline bool verify_relations_only(const AutMap& phi, std::string* witness = nullptr) {
    VerifyReport rep;
    bool ok = detail::check_relations(phi, rep);
    if (!ok && witness) *witness = rep.witness;
    return ok;
}

// Image of an F_p-subspace under the automorphism, as a subspace.
inline PrimeSubspace apply_span(const AutMap& phi, const PrimeSubspace& space) {
    PrimeSubspace out(space.p(), space.ncols());
    for (const PrimeVec& row : space.basis())
        out.insert(to_coords(phi.apply(from_coords(phi.field(), phi.dim(), row))));
    return out;
}

} // namespace ntaut
