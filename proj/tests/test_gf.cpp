#include <catch2/catch_amalgamated.hpp>

#include "ntaut/gf.hpp"

using namespace ntaut;

namespace {

// Independent check used to pin the GF(9) modulus: a monic quadratic over
// Z_3 is irreducible exactly when it has no root in {0, 1, 2}.
std::vector<int> least_irreducible_quadratic_z3() {
    for (int m = 0; m < 9; ++m) {
        int c0 = m % 3, c1 = m / 3;
        bool has_root = false;
        for (int x = 0; x < 3; ++x)
            if ((x * x + c1 * x + c0) % 3 == 0) has_root = true;
        if (!has_root) return {c0, c1, 1};
    }
    return {};
}

} // namespace

TEST_CASE("field construction picks the canonical modulus") {
    Gf f2 = Gf::make(2, 1);
    CHECK(f2.q() == 2);
    CHECK(f2.modulus().empty());

    Gf f4 = Gf::make(2, 2);
    CHECK(f4.q() == 4);
    CHECK(f4.modulus() == std::vector<int>{1, 1, 1});  // t^2 + t + 1

    Gf f9 = Gf::make(3, 2);
    std::vector<int> expect = least_irreducible_quadratic_z3();
    REQUIRE_FALSE(expect.empty());
    CHECK(f9.modulus() == expect);
    CHECK(f9.modulus() == std::vector<int>{1, 0, 1});  // t^2 + 1, frozen from the enumeration
}

TEST_CASE("field construction rejects bad parameters") {
    CHECK_THROWS_AS(Gf::make(4, 1), NonPrime);
    CHECK_THROWS_AS(Gf::make(1, 1), NonPrime);
    CHECK_THROWS_AS(Gf::make(2, 0), DegreeOutOfRange);
    CHECK_THROWS_AS(Gf::make(2, 5), DegreeOutOfRange);
    CHECK_THROWS_AS(Gf::make(5, 3), DegreeOutOfRange);   // 125 > 81
    CHECK_THROWS_AS(Gf::make(101, 1), DegreeOutOfRange); // order above the desk-scale bound
}

TEST_CASE("basic arithmetic values") {
    Gf f2 = Gf::make(2, 1);
    CHECK((f2.one() + f2.one()).is_zero());

    Gf f3 = Gf::make(3, 1);
    CHECK(f3.el(2).inverse() == f3.el(2));  // 2*2 = 4 = 1 mod 3

    Gf f4 = Gf::make(2, 2);
    GfElem t = f4.el(2);
    CHECK(t * t == f4.el(3));  // t^2 = t + 1 mod t^2+t+1
}

TEST_CASE("division by zero and field mismatch raise") {
    Gf f3 = Gf::make(3, 1);
    Gf f5 = Gf::make(5, 1);
    CHECK_THROWS_AS(f3.el(1) / f3.el(0), DivisionByZero);
    CHECK_THROWS_AS(f3.el(1) + f5.el(1), FieldMismatch);
}

TEST_CASE("field axioms hold exhaustively at desk scale") {
    // every realizable order up to 64, plus GF(81) for the k = 4 corner
    std::vector<std::pair<int, int>> configs = {{2, 1}, {3, 1}, {5, 1},  {7, 1}, {2, 2}, {2, 3},
                                                {2, 4}, {3, 2}, {3, 3},  {5, 2}, {7, 2}, {61, 1},
                                                {3, 4}};
    for (auto [p, k] : configs) {
        Gf f = Gf::make(p, k);
        const int q = f.q();
        INFO("GF(" << q << ")");
        for (int a = 0; a < q; ++a) {
            CHECK(f.add(a, 0) == a);
            CHECK(f.mul(a, 1) == a);
            CHECK(f.add(a, f.neg(a)) == 0);
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
        }
        bool ok = true;
        for (int a = 0; a < q && ok; ++a)
            for (int b = 0; b < q && ok; ++b) {
                if (f.add(a, b) != f.add(b, a)) ok = false;
                if (f.mul(a, b) != f.mul(b, a)) ok = false;
                for (int c = 0; c < q; ++c) {
                    if (f.add(f.add(a, b), c) != f.add(a, f.add(b, c))) ok = false;
                    if (f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c))) ok = false;
                    if (f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c))) ok = false;
                    if (!ok) break;
                }
            }
        CHECK(ok);
    }
}

TEST_CASE("frobenius maps are field automorphisms") {
    for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {2, 4}, {5, 2}}) {
        Gf f = Gf::make(p, k);
        INFO("GF(" << f.q() << ")");
        for (int j = 0; j < k; ++j) {
            for (int a = 0; a < f.q(); ++a)
                for (int b = 0; b < f.q(); ++b) {
                    CHECK(f.frob(f.add(a, b), j) == f.add(f.frob(a, j), f.frob(b, j)));
                    CHECK(f.frob(f.mul(a, b), j) == f.mul(f.frob(a, j), f.frob(b, j)));
                }
        }
        auto auts = f.automorphisms();
        REQUIRE(static_cast<int>(auts.size()) == k);
        for (size_t i = 0; i < auts.size(); ++i)
            for (size_t j = i + 1; j < auts.size(); ++j) {
                bool distinct = false;
                for (int a = 0; a < f.q(); ++a)
                    if (auts[i].apply_idx(a) != auts[j].apply_idx(a)) distinct = true;
                CHECK(distinct);
            }
        // closure under composition
        for (const auto& s : auts)
            for (const auto& t : auts) {
                FieldAut c = s.compose(t);
                for (int a = 0; a < f.q(); ++a) CHECK(c.apply_idx(a) == s.apply_idx(t.apply_idx(a)));
            }
    }
}

TEST_CASE("specific frobenius values") {
    Gf f2 = Gf::make(2, 1);
    CHECK(f2.automorphisms().size() == 1);

    Gf f4 = Gf::make(2, 2);
    GfElem t = f4.el(2);
    CHECK(t.frobenius(1) == f4.el(3));  // t^2 reduced mod t^2+t+1 is t+1

    Gf f9 = Gf::make(3, 2);
    for (int a = 0; a < 9; ++a) CHECK(f9.frob(f9.frob(a, 1), 1) == a);
}

TEST_CASE("encodings round-trip") {
    for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {5, 1}, {3, 4}}) {
        Gf f = Gf::make(p, k);
        for (int a = 0; a < f.q(); ++a) {
            std::vector<int> digits(k);
            for (int t = 0; t < k; ++t) digits[t] = f.digit(a, t);
            CHECK(f.from_digits(digits) == a);
        }
        for (int t = 0; t < k; ++t) {
            int b = f.basis_elem(t);
            for (int s = 0; s < k; ++s) CHECK(f.digit(b, s) == (s == t ? 1 : 0));
        }
    }
}

TEST_CASE("frobenius exponent bounds") {
    Gf f4 = Gf::make(2, 2);
    CHECK_THROWS_AS(f4.frob(1, 2), ExponentOutOfRange);
    CHECK_THROWS_AS(f4.frob(1, -1), ExponentOutOfRange);
}
