#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ntcore.hpp"
#include "rand.hpp"

namespace ntaut {

// Classification tag of a subspace descriptor.
struct IdealTag {
    enum class Kind { Partition, Mab2, Mab3, Custom };
    Kind kind = Kind::Custom;
    int a = 0;       // Partition: i, Mab2: m, Mab3: i
    int b = 0;       // Partition: j
    int c_idx = 0;   // Mab2/Mab3: parameter c as an element index

    std::string text() const {
        switch (kind) {
            case Kind::Partition: return "partition:" + std::to_string(a) + "," + std::to_string(b);
            case Kind::Mab2: return "mab2:" + std::to_string(a) + "," + std::to_string(c_idx);
            case Kind::Mab3: return "mab3:" + std::to_string(a) + "," + std::to_string(c_idx);
            case Kind::Custom: return "custom";
        }
        return "custom";
    }
};

// An F_p-subspace of NT(d, F) with a reduced echelon basis and a
// classification tag.
class IdealDesc {
public:
    IdealDesc(Gf f, int d, PrimeSubspace space, IdealTag tag)
        : f_(std::move(f)), d_(d), space_(std::move(space)), tag_(tag) {}

    static IdealDesc custom(const Gf& f, int d, const std::vector<NtMat>& basis) {
        PrimeSubspace s(f.p(), coord_count(f, d));
        for (const NtMat& m : basis) {
            if (m.dim() != d) throw DimensionMismatch("basis element has wrong size");
            f.check_same(m.field());
            s.insert(to_coords(m));
        }
        return IdealDesc(f, d, std::move(s), IdealTag{});
    }

    const Gf& field() const { return f_; }
    int dim_d() const { return d_; }
    const PrimeSubspace& space() const { return space_; }
    const IdealTag& tag() const { return tag_; }
    size_t dim_fp() const { return space_.dim(); }

    std::vector<NtMat> basis_mats() const {
        std::vector<NtMat> out;
        out.reserve(space_.dim());
        for (const PrimeVec& row : space_.basis()) out.push_back(from_coords(f_, d_, row));
        return out;
    }

    bool contains(const NtMat& m) const { return space_.contains(to_coords(m)); }

    bool operator==(const IdealDesc& o) const { return d_ == o.d_ && f_ == o.f_ && space_ == o.space_; }
    bool operator!=(const IdealDesc& o) const { return !(*this == o); }

private:
    Gf f_;
    int d_;
    PrimeSubspace space_;
    IdealTag tag_;
};

// Partition subspace N_{i,j}: rows >= i, columns <= j. An abelian two-sided
// ring ideal whenever i > j; the degenerate shapes with i <= j are allowed
// because centralizers of partitions land there (e.g. C(N_{3,1}) = N_{2,2}).
inline IdealDesc partition(const Gf& f, int d, int i, int j) {
    if (i < 1 || i > d || j < 1 || j > d) throw IndexOutOfRange("partition position outside 1..d");
    PrimeSubspace s(f.p(), coord_count(f, d));
    for (int r = std::max(i, 2); r <= d; ++r)
        for (int c = 1; c <= std::min(j, r - 1); ++c)
            for (int t = 0; t < f.k(); ++t)
                s.insert(to_coords(NtMat::from_root(f, d, RootElem{r, c, f.el(f.basis_elem(t))})));
    return IdealDesc(f, d, std::move(s), IdealTag{IdealTag::Kind::Partition, i, j, 0});
}

// Family (7): N_{m+1,m-1} together with the F-line x(e_{m,1} + c e_{d,m}).
inline IdealDesc mab2(const Gf& f, int d, int m, const GfElem& c) {
    if (d < 5) throw DimensionTooSmall("exceptional families need d >= 5");
    if (m < 2 || m > d - 1) throw IndexOutOfRange("mab2 position m outside 2..d-1");
    f.check_same(c.field());
    PrimeSubspace s = partition(f, d, m + 1, m - 1).space();
    for (int t = 0; t < f.k(); ++t) {
        GfElem x = f.el(f.basis_elem(t));
        NtMat v = NtMat::from_root(f, d, RootElem{m, 1, x});
        v.set(d, m, x * c);
        s.insert(to_coords(v));
    }
    return IdealDesc(f, d, std::move(s), IdealTag{IdealTag::Kind::Mab2, m, 0, c.idx()});
}

// Family (8), characteristic 2 only: N_{i+2,i-1} together with the lines
// a(e_{i+1,1} + c e_{d,i}) and x(e_{i,1} + c e_{d,i+1}). The e_{d,i}
// coefficient is coupled to the e_{i+1,1} one; with the two lines
// independent the span would not be abelian (e_{d,i} e_{i,1} = e_{d,1}).
inline IdealDesc mab3(const Gf& f, int d, int i, const GfElem& c) {
    if (f.p() != 2)
        throw WrongCharacteristic("family (8) exists only in characteristic 2, field has p = " +
                                  std::to_string(f.p()));
    if (d < 5) throw DimensionTooSmall("exceptional families need d >= 5");
    if (i < 2 || i > d - 2) throw IndexOutOfRange("mab3 position i outside 2..d-2");
    f.check_same(c.field());
    PrimeSubspace s = partition(f, d, i + 2, i - 1).space();
    for (int t = 0; t < f.k(); ++t) {
        GfElem x = f.el(f.basis_elem(t));
        NtMat u = NtMat::from_root(f, d, RootElem{i + 1, 1, x});
        u.set(d, i, x * c);
        s.insert(to_coords(u));
        NtMat v = NtMat::from_root(f, d, RootElem{i, 1, x});
        v.set(d, i + 1, x * c);
        s.insert(to_coords(v));
    }
    return IdealDesc(f, d, std::move(s), IdealTag{IdealTag::Kind::Mab3, i, 0, c.idx()});
}

// The centralizer { M : M B = B M for every B in s }, identical in the
// ring, the group and the Lie ring. Exact null-space computation.
inline IdealDesc centralizer(const IdealDesc& s) {
    const Gf& f = s.field();
    const int d = s.dim_d();
    const size_t n = coord_count(f, d);
    std::vector<NtMat> basis = s.basis_mats();
    std::vector<PrimeVec> constraint(basis.size() * n, PrimeVec(n, 0));
    for (size_t col = 0; col < n; ++col) {
        PrimeVec unit(n, 0);
        unit[col] = 1;
        NtMat z = from_coords(f, d, unit);
        for (size_t bi = 0; bi < basis.size(); ++bi) {
            PrimeVec w = to_coords(bracket(z, basis[bi]));
            for (size_t r = 0; r < n; ++r) constraint[bi * n + r][col] = w[r];
        }
    }
    auto kernel = PrimeLin::nullspace(std::move(constraint), f.p(), n);
    PrimeSubspace out(f.p(), n);
    for (auto& v : kernel) out.insert(v);
    return IdealDesc(f, d, std::move(out), IdealTag{});
}

inline bool is_abelian_space(const Gf& f, int d, const PrimeSubspace& space) {
    std::vector<NtMat> basis;
    for (const PrimeVec& row : space.basis()) basis.push_back(from_coords(f, d, row));
    for (size_t a = 0; a < basis.size(); ++a)
        for (size_t b = a + 1; b < basis.size(); ++b)
            if (!bracket(basis[a], basis[b]).is_zero()) return false;
    return true;
}

inline bool is_abelian(const IdealDesc& s) { return is_abelian_space(s.field(), s.dim_d(), s.space()); }

inline bool is_lie_ideal_space(const Gf& f, int d, const PrimeSubspace& space) {
    std::vector<NtMat> roots = prime_basis_mats(f, d);
    for (const PrimeVec& row : space.basis()) {
        NtMat b = from_coords(f, d, row);
        for (const NtMat& r : roots)
            if (!space.contains(to_coords(bracket(b, r)))) return false;
    }
    return true;
}

inline bool is_lie_ideal(const IdealDesc& s) { return is_lie_ideal_space(s.field(), s.dim_d(), s.space()); }

inline bool is_mul_closed(const IdealDesc& s) {
    std::vector<NtMat> basis = s.basis_mats();
    for (const NtMat& a : basis)
        for (const NtMat& b : basis)
            if (!s.contains(group_mul(a, b))) return false;
    return true;
}

// Normal subgroup test: closure under the group operation and inverses,
// then stability of the basis under conjugation by every root element.
inline bool is_normal_subgroup(const IdealDesc& s) {
    if (!is_mul_closed(s)) throw NotASubgroup("subspace is not closed under the group operation");
    const Gf& f = s.field();
    const int d = s.dim_d();
    std::vector<NtMat> basis = s.basis_mats();
    for (const NtMat& a : basis)
        if (!s.contains(group_inv(a))) return false;
    for (const NtMat& a : basis)
        for (auto [i, j] : canonical_positions(d))
            for (int t = 0; t < f.k(); ++t)
                if (!s.contains(conj_by_root(a, RootElem{i, j, f.el(f.basis_elem(t))}))) return false;
    return true;
}

// Cross-validation of the Levchuk correspondence on one subspace:
// Lie-ideal-ness must agree with (group closure and normality).
inline bool correspondence_check(const IdealDesc& s) {
    bool lie = is_lie_ideal(s);
    bool grp = false;
    if (is_mul_closed(s)) grp = is_normal_subgroup(s);
    return lie == grp;
}

// Smallest Lie ideal containing the given space: close under brackets with
// the prime-basis roots.
inline PrimeSubspace lie_ideal_closure(const Gf& f, int d, PrimeSubspace space) {
    std::vector<NtMat> roots = prime_basis_mats(f, d);
    std::deque<NtMat> work;
    for (const PrimeVec& row : space.basis()) work.push_back(from_coords(f, d, row));
    while (!work.empty()) {
        NtMat m = work.front();
        work.pop_front();
        for (const NtMat& r : roots) {
            NtMat br = bracket(m, r);
            if (br.is_zero()) continue;
            if (space.insert(to_coords(br))) work.push_back(br);
        }
    }
    return space;
}

namespace detail {

// Vectors extending sub to sup (both echelonized), i.e. a basis of a
// complement of sub inside sup.
inline std::vector<PrimeVec> complement_basis(const PrimeSubspace& sub, const PrimeSubspace& sup) {
    std::vector<PrimeVec> out;
    PrimeSubspace grow = sub;
    for (const PrimeVec& row : sup.basis())
        if (grow.insert(row)) out.push_back(row);
    return out;
}

// Enumerates the nonzero F_p-combinations of the given vectors.
template <typename Fn>
void for_each_nonzero_combo(const std::vector<PrimeVec>& vecs, int p, size_t n, Fn&& fn) {
    std::vector<int> digits(vecs.size(), 0);
    while (true) {
        size_t t = 0;
        for (; t < digits.size(); ++t) {
            if (digits[t] + 1 < p) {
                ++digits[t];
                break;
            }
            digits[t] = 0;
        }
        if (t == digits.size()) break;
        PrimeVec v(n, 0);
        for (size_t s = 0; s < vecs.size(); ++s) {
            if (!digits[s]) continue;
            for (size_t j = 0; j < n; ++j) v[j] = static_cast<uint8_t>((v[j] + digits[s] * vecs[s][j]) % p);
        }
        fn(v);
    }
}

} // namespace detail

// Maximality test for an abelian Lie ideal: any abelian ideal strictly
// containing s lies inside C(s), so s is maximal exactly when, for every
// nonzero coset representative v of C(s)/s, the smallest Lie ideal
// containing s and v is not abelian.
inline bool maximality_oracle(const IdealDesc& s, uint64_t coset_bound = (1ULL << 20)) {
    const Gf& f = s.field();
    const int d = s.dim_d();
    if (!is_abelian(s) || !is_lie_ideal(s)) return false;
    IdealDesc c = centralizer(s);
    if (c.space() == s.space()) return true;
    auto comp = detail::complement_basis(s.space(), c.space());
    uint64_t reps = 1;
    for (size_t t = 0; t < comp.size(); ++t) {
        reps *= f.p();
        if (reps > coset_bound)
            throw TooLarge("coset space of size p^" + std::to_string(comp.size()) +
                           " exceeds the configured bound");
    }
    bool maximal = true;
    detail::for_each_nonzero_combo(comp, f.p(), coord_count(f, d), [&](const PrimeVec& v) {
        if (!maximal) return;
        PrimeSubspace grown = s.space();
        grown.insert(v);
        PrimeSubspace closed = lie_ideal_closure(f, d, std::move(grown));
        if (is_abelian_space(f, d, closed)) maximal = false;
    });
    return maximal;
}

namespace detail {

inline uint64_t mat_key(const NtMat& m) {
    uint64_t key = 0;
    for (uint8_t v : m.packed()) key = key * m.field().q() + v;
    return key;
}

// Normal closure of the subgroup generated by `seed` inside UT(d, F),
// by worklist closure under products, inverses and conjugation by the
// simple-root generators. Only for tiny groups.
inline std::vector<NtMat> normal_group_closure(const Gf& f, int d, const std::vector<NtMat>& seed) {
    std::vector<NtMat> elems;
    std::unordered_set<uint64_t> seen;
    std::deque<NtMat> work;
    auto push = [&](const NtMat& m) {
        uint64_t key = mat_key(m);
        if (seen.insert(key).second) {
            elems.push_back(m);
            work.push_back(m);
        }
    };
    push(NtMat(f, d));
    for (const NtMat& m : seed) push(m);
    std::vector<NtMat> gens = generator_mats(f, d);
    while (!work.empty()) {
        NtMat x = work.front();
        work.pop_front();
        push(group_inv(x));
        for (const NtMat& g : gens) push(group_mul(group_mul(group_inv(g), x), g));
        for (size_t t = 0; t < elems.size(); ++t) {
            push(group_mul(x, elems[t]));
            push(group_mul(elems[t], x));
            if (work.size() > (1ULL << 21)) throw TooLarge("group closure exceeded the desk-scale bound");
        }
    }
    return elems;
}

} // namespace detail

// Group-side twin of the maximality oracle: the grown set is closed as a
// normal subgroup and tested for commutativity. Exposed so the
// correspondence can be cross-checked without going through Lie ideals.
inline bool group_maximality_oracle(const IdealDesc& s, uint64_t coset_bound = (1ULL << 12)) {
    const Gf& f = s.field();
    const int d = s.dim_d();
    uint64_t order = 1;
    for (size_t t = 0; t < coord_count(f, d) / f.k(); ++t) {
        order *= f.q();
        if (order > (1ULL << 12)) throw TooLarge("group order too large for the group-side oracle");
    }
    if (!is_abelian(s) || !is_mul_closed(s) || !is_normal_subgroup(s)) return false;
    IdealDesc c = centralizer(s);
    if (c.space() == s.space()) return true;
    auto comp = detail::complement_basis(s.space(), c.space());
    uint64_t reps = 1;
    for (size_t t = 0; t < comp.size(); ++t) {
        reps *= f.p();
        if (reps > coset_bound) throw TooLarge("coset space exceeds the group-side oracle bound");
    }
    std::vector<NtMat> base = s.basis_mats();
    bool maximal = true;
    detail::for_each_nonzero_combo(comp, f.p(), coord_count(f, d), [&](const PrimeVec& v) {
        if (!maximal) return;
        std::vector<NtMat> seed = base;
        seed.push_back(from_coords(f, d, v));
        std::vector<NtMat> closure = detail::normal_group_closure(f, d, seed);
        bool abelian = true;
        for (size_t a = 0; a < closure.size() && abelian; ++a)
            for (size_t b = a + 1; b < closure.size(); ++b)
                if (group_mul(closure[a], closure[b]) != group_mul(closure[b], closure[a])) {
                    abelian = false;
                    break;
                }
        if (abelian) maximal = false;
    });
    return maximal;
}

struct MabCandidate {
    IdealDesc desc;
    bool oracle_maximal;
};

// All tagged maximal-abelian-ideal candidates for UT(d, F): family (6) for
// every i, family (7) for every interior position and c in F, family (8)
// in characteristic 2. Non-maximal instances are emitted with a false
// verdict rather than dropped.
inline std::vector<MabCandidate> mab_enumerate(const Gf& f, int d, uint64_t coset_bound = (1ULL << 20)) {
    if (d < 5) throw DimensionTooSmall("classification needs d >= 5");
    std::vector<MabCandidate> out;
    for (int i = 1; i <= d - 1; ++i) {
        IdealDesc desc = partition(f, d, i + 1, i);
        bool verdict = maximality_oracle(desc, coset_bound);
        out.push_back(MabCandidate{std::move(desc), verdict});
    }
    for (int m = 2; m <= d - 1; ++m)
        for (int c = 0; c < f.q(); ++c) {
            IdealDesc desc = mab2(f, d, m, f.el(c));
            bool verdict = maximality_oracle(desc, coset_bound);
            out.push_back(MabCandidate{std::move(desc), verdict});
        }
    if (f.p() == 2)
        for (int i = 2; i <= d - 2; ++i)
            for (int c = 0; c < f.q(); ++c) {
                IdealDesc desc = mab3(f, d, i, f.el(c));
                bool verdict = maximality_oracle(desc, coset_bound);
                out.push_back(MabCandidate{std::move(desc), verdict});
            }
    return out;
}

struct Lemma1Report {
    uint64_t checked_h2 = 0;
    uint64_t checked_annihilator = 0;
    uint64_t checked_symmetry = 0;
    bool exhaustive = false;
    uint64_t seed = 0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

// Lemma 1 checks on a maximal abelian ideal: products of members lie in
// N_{d,1}, H^2 annihilates every root on both sides, and the symmetric sum
// a g b + b g a vanishes. Exhaustive over basis pairs and all roots at
// small scale, seeded samples otherwise.
inline Lemma1Report lemma1_suite(const IdealDesc& s, uint64_t samples = 2000, uint64_t seed = 0xC0FFEE) {
    const Gf& f = s.field();
    const int d = s.dim_d();
    Lemma1Report rep;
    rep.seed = seed;
    rep.exhaustive = (d == 5 && f.q() <= 3);
    std::vector<NtMat> basis = s.basis_mats();
    auto note = [&](const std::string& what) {
        if (rep.violations.size() < 32) rep.violations.push_back(what);
    };
    auto in_nd1 = [&](const NtMat& m) {
        for (auto [i, j] : canonical_positions(d))
            if (!(i == d && j == 1) && m.at_idx(i, j)) return false;
        return true;
    };
    auto check_triple = [&](const NtMat& alpha, const NtMat& beta, const NtMat& gamma) {
        NtMat ab = ring_mul(alpha, beta);
        ++rep.checked_h2;
        if (!in_nd1(ab)) note("H^2 escaped N_{d,1}");
        ++rep.checked_annihilator;
        if (!ring_mul(ab, gamma).is_zero() || !ring_mul(gamma, ab).is_zero())
            note("H^2 failed to annihilate a root");
        ++rep.checked_symmetry;
        NtMat sym = ring_mul(ring_mul(alpha, gamma), beta) + ring_mul(ring_mul(beta, gamma), alpha);
        if (!sym.is_zero()) note("a g b + b g a != 0");
    };
    if (rep.exhaustive) {
        for (const NtMat& alpha : basis)
            for (const NtMat& beta : basis)
                for (auto [i, j] : canonical_positions(d))
                    for (int x = 1; x < f.q(); ++x)
                        check_triple(alpha, beta, NtMat::from_root(f, d, RootElem{i, j, f.el(x)}));
    } else {
        Rng rng(seed);
        auto pos = canonical_positions(d);
        for (uint64_t t = 0; t < samples; ++t) {
            NtMat alpha(f, d), beta(f, d);
            for (const NtMat& b : basis) {
                alpha = alpha + b.scaled(f.el(static_cast<int>(rng.below(f.p()))));
                beta = beta + b.scaled(f.el(static_cast<int>(rng.below(f.p()))));
            }
            auto [i, j] = pos[rng.below(pos.size())];
            NtMat gamma = NtMat::from_root(f, d, RootElem{i, j, f.el(1 + static_cast<int>(rng.below(f.q() - 1)))});
            check_triple(alpha, beta, gamma);
        }
    }
    return rep;
}

} // namespace ntaut
