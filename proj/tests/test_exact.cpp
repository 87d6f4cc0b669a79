#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "twocover/intfactor.hpp"
#include "twocover/qpoly.hpp"
#include "twocover/zfactor.hpp"
#include "twocover/f2.hpp"
#include "twocover/modular.hpp"
#include "twocover/residue.hpp"

using namespace twocover;

TEST_CASE("factor_integer on the paper discriminants") {
    // 569 * 4517 (the printed decimal expansion in the source carries a typo)
    auto f = factor_integer(Integer(2570173));
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].p == 569);
    CHECK(f.factors[0].e == 1);
    CHECK(f.factors[1].p == 4517);
    CHECK(f.factors[1].e == 1);
    CHECK(f.complete);
    CHECK(f.all_certified());

    auto g = factor_integer(Integer(6037072));
    REQUIRE(g.factors.size() == 3);
    CHECK(g.factors[0].p == 2);
    CHECK(g.factors[0].e == 4);
    CHECK(g.factors[1].p == 127);
    CHECK(g.factors[2].p == 2971);
    CHECK(g.reassemble() == 6037072);

    auto one = factor_integer(Integer(1));
    CHECK(one.factors.empty());
    CHECK(one.sign == 1);

    auto neg = factor_integer(Integer(-12));
    CHECK(neg.sign == -1);
    CHECK(neg.reassemble() == -12);
}

TEST_CASE("factor_integer larger composites") {
    // 2^30 * 5^2 * 1361 * 97103 style product
    Integer n = pow(Integer(2), 8) * 25 * 1361 * 97103;
    auto f = factor_integer(n);
    REQUIRE(f.complete);
    CHECK(f.reassemble() == n);
    REQUIRE(f.factors.size() == 4);
    CHECK(f.factors[3].p == 97103);
}

TEST_CASE("resultants") {
    QPoly f = QPoly::from_int_coeffs({-1, 0, 1});   // x^2 - 1
    QPoly g = QPoly::from_int_coeffs({-2, 1});      // x - 2
    CHECK(resultant(f, g) == 3);

    QPoly h = QPoly::from_int_coeffs({1, 0, 1});    // x^2 + 1
    CHECK(resultant(h, h) == 0);

    QPoly a = QPoly::from_int_coeffs({-2, 0, 1});       // x^2 - 2
    QPoly b = QPoly::from_int_coeffs({-1, -1, 0, 1});   // x^3 - x - 1
    CHECK(resultant(a, b) == -1);
}

TEST_CASE("resultant multiplicativity property") {
    SplitMix64 rng(12345);
    for (int iter = 0; iter < 30; ++iter) {
        auto rnd = [&](int d) {
            std::vector<Rational> c;
            for (int i = 0; i <= d; ++i)
                c.emplace_back(static_cast<long>(rng.below(19)) - 9);
            return QPoly(std::move(c));
        };
        QPoly f = rnd(static_cast<int>(rng.below(5)) + 1);
        QPoly g = rnd(static_cast<int>(rng.below(5)) + 1);
        QPoly h = rnd(static_cast<int>(rng.below(5)) + 1);
        if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
        CHECK(resultant(f * g, h) == resultant(f, h) * resultant(g, h));
    }
}

TEST_CASE("discriminants") {
    // disc(x^2 + bx + c) = b^2 - 4c
    ZPoly f = ZPoly::from_int_coeffs({7, 3, 1});
    CHECK(discriminant(f) == 9 - 28);
    // disc(x^3 + px + q) = -4p^3 - 27q^2; p = q = -1
    ZPoly g = ZPoly::from_int_coeffs({-1, -1, 0, 1});
    CHECK(discriminant(g) == -23);
}

TEST_CASE("zpoly gcd") {
    ZPoly a = ZPoly::from_int_coeffs({-1, 0, 1});  // (x-1)(x+1)
    ZPoly b = ZPoly::from_int_coeffs({1, 2, 1});   // (x+1)^2
    ZPoly g = gcd(a, b);
    CHECK(g == ZPoly::from_int_coeffs({1, 1}));

    ZPoly c = ZPoly::from_int_coeffs({1, 0, 1});
    ZPoly d = ZPoly::from_int_coeffs({2, 1});
    CHECK(gcd(c, d).degree() == 0);
}

TEST_CASE("factor_rational_poly basics") {
    // x^4 - 1 = (x-1)(x+1)(x^2+1)
    QPoly f = QPoly::from_int_coeffs({-1, 0, 0, 0, 1});
    auto fac = factor_rational_poly(f);
    REQUIRE(fac.factors.size() == 3);
    CHECK(fac.content == 1);
    CHECK(fac.factors[0].factor.degree() == 1);
    CHECK(fac.factors[1].factor.degree() == 1);
    CHECK(fac.factors[2].factor.degree() == 2);
    CHECK(fac.reassemble() == f);

    // x^2 + 5 irreducible
    QPoly g = QPoly::from_int_coeffs({5, 0, 1});
    auto gf = factor_rational_poly(g);
    REQUIRE(gf.factors.size() == 1);
    CHECK(gf.factors[0].factor == g);

    // multiplicities: (x-1)^2 (x+2)
    QPoly h = QPoly::from_int_coeffs({1, -2, 1}) * QPoly::from_int_coeffs({2, 1});
    auto hf = factor_rational_poly(h);
    REQUIRE(hf.factors.size() == 2);
    bool saw_sq = false;
    for (auto& qf : hf.factors)
        if (qf.multiplicity == 2) saw_sq = true;
    CHECK(saw_sq);
    CHECK(hf.reassemble() == h);
}

TEST_CASE("factor_rational_poly roundtrip on random products") {
    SplitMix64 rng(999);
    for (int iter = 0; iter < 15; ++iter) {
        QPoly f = QPoly::one();
        int nf = 1 + static_cast<int>(rng.below(3));
        for (int i = 0; i < nf; ++i) {
            int d = 1 + static_cast<int>(rng.below(3));
            std::vector<Rational> c;
            for (int j = 0; j <= d; ++j) c.emplace_back(static_cast<long>(rng.below(11)) - 5);
            QPoly g(std::move(c));
            if (g.degree() < 1) g = QPoly::from_int_coeffs({1, 1});
            f = f * g;
        }
        if (f.degree() < 1) continue;
        auto fac = factor_rational_poly(f);
        CHECK(fac.reassemble() == f);
        for (auto& qf : fac.factors) CHECK(qf.factor.lc() == 1);
    }
}

TEST_CASE("f2 matrix basics") {
    // left kernel of rows {(1,0),(0,1),(0,1)} = span{(0,1,1)}
    F2Matrix m = F2Matrix::from_rows({{1, 0}, {0, 1}, {0, 1}}, 2);
    F2Matrix lk = m.left_kernel();
    REQUIRE(lk.rows() == 1);
    CHECK(lk.row(0) == F2Vec{0, 1, 1});

    // rank-nullity
    SplitMix64 rng(77);
    for (int iter = 0; iter < 20; ++iter) {
        size_t r = 1 + rng.below(6), c = 1 + rng.below(6);
        F2Matrix a(r, c);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j) a.set(i, j, rng.below(2));
        F2Matrix k = a.kernel();
        CHECK(a.rank() + k.rows() == c);
        // kernel composed with matrix = 0
        for (size_t i = 0; i < k.rows(); ++i) {
            F2Vec v = k.row(i);
            CHECK(f2_is_zero(a.apply(v)));
        }
    }
}

TEST_CASE("f2 subspace canonicality and ops") {
    // two different generating sets of the same space
    F2Subspace s1 = F2Subspace::span({{1, 1, 0}, {0, 1, 1}}, 3);
    F2Subspace s2 = F2Subspace::span({{1, 0, 1}, {1, 1, 0}, {0, 1, 1}}, 3);
    CHECK(s1 == s2);

    CHECK(s1.intersect(s1) == s1);

    // orthocomplement of span{(1,1)} under identity = span{(1,1)}
    F2Subspace t = F2Subspace::span({{1, 1}}, 2);
    F2Subspace oc = t.orthocomplement(F2Matrix::identity(2));
    CHECK(oc == t);

    // intersect associativity / order independence on random subspaces
    SplitMix64 rng(4242);
    for (int iter = 0; iter < 20; ++iter) {
        auto rnd_space = [&]() {
            std::vector<F2Vec> gens;
            for (int i = 0; i < 3; ++i) {
                F2Vec v(5);
                for (auto& x : v) x = static_cast<uint8_t>(rng.below(2));
                gens.push_back(v);
            }
            return F2Subspace::span(gens, 5);
        };
        F2Subspace a = rnd_space(), b = rnd_space(), c = rnd_space();
        CHECK(a.intersect(b) == b.intersect(a));
        CHECK(a.intersect(b).intersect(c) == a.intersect(b.intersect(c)));
    }
}

TEST_CASE("modular utilities") {
    Fp64 F(modular_prime(0));
    CHECK(F.mul(F.inv(7), 7) == 1);
    // interpolation round trip
    std::vector<uint64_t> xs{1, 2, 3, 4, 5}, ys;
    P64 poly{3, 0, 2, 5};  // 3 + 2x^2 + 5x^3
    for (auto x : xs) ys.push_back(p64_eval(F, poly, x));
    P64 back = p64_interpolate(F, xs, ys);
    CHECK(back == poly);

    // rational reconstruction
    Integer m = pow(Integer(2), 61) - 1;  // any big modulus
    Rational target(-22, 7);
    Integer r = mod(Integer(-22) * invmod(Integer(7), m), m);
    Integer num, den;
    REQUIRE(rational_reconstruct(r, m, num, den));
    CHECK(num == -22);
    CHECK(den == 7);
}

TEST_CASE("residue field F_q basics") {
    ResidueField F9(Integer(3), 2);
    CHECK(F9.q() == 9);
    auto g = F9.gen();
    // multiplicative order of the full unit group divides 8
    CHECK(F9.eq(F9.pow(g, 8), F9.one()));
    // characters: exactly (q-1)/2 squares among units
    int squares = 0;
    for (Integer i = 1; i < 9; ++i)
        if (F9.quadratic_character(F9.by_index(i)) == 1) ++squares;
    CHECK(squares == 4);
    // sqrt round trip
    for (Integer i = 1; i < 9; ++i) {
        auto a = F9.by_index(i);
        auto sq = F9.mul(a, a);
        auto r = F9.sqrt(sq);
        CHECK(F9.eq(F9.mul(r, r), sq));
    }
}

TEST_CASE("residue field char 2") {
    ResidueField F8(Integer(2), 3);
    // every element has a unique square root
    for (Integer i = 0; i < 8; ++i) {
        auto a = F8.by_index(i);
        auto r = F8.sqrt(a);
        CHECK(F8.eq(F8.mul(r, r), a));
    }
    // artin-schreier t^2 + t = c solvable iff Tr(c) = 0
    int solvable = 0;
    for (Integer i = 0; i < 8; ++i) {
        auto c = F8.by_index(i);
        ResidueField::Elt t;
        if (F8.artin_schreier_solve(F8.one(), c, t)) {
            ++solvable;
            auto lhs = F8.add(F8.mul(t, t), t);
            CHECK(F8.eq(lhs, c));
        }
    }
    CHECK(solvable == 4);
    auto s = F8.element_of_trace_one();
    CHECK(F8.trace_abs(s) == 1);
}

TEST_CASE("residue field polynomial factorization") {
    ResidueField F5(Integer(5), 1);
    // x^4 - 1 factors into 4 linears over F_5
    auto g = F5.from_zpoly(ZPoly::from_int_coeffs({-1, 0, 0, 0, 1}));
    auto fac = F5.pfactor(g);
    CHECK(fac.size() == 4);
    for (auto& [h, m] : fac) CHECK(F5.pdeg(h) == 1);

    // mixed degrees and multiplicities over F_2
    ResidueField F2(Integer(2), 1);
    // (x^2+x+1)^2 (x+1)
    auto a = F2.from_zpoly(ZPoly::from_int_coeffs({1, 1, 1}));
    auto b = F2.from_zpoly(ZPoly::from_int_coeffs({1, 1}));
    auto prod = F2.pmul(F2.pmul(a, a), b);
    auto fac2 = F2.pfactor(prod);
    REQUIRE(fac2.size() == 2);
    bool ok = false;
    for (auto& [h, m] : fac2)
        if (F2.pdeg(h) == 2 && m == 2) ok = true;
    CHECK(ok);

    // roots
    auto roots = F5.proots(g);
    CHECK(roots.size() == 4);
}

TEST_CASE("residue field modulus is deterministic") {
    ResidueField a(Integer(2), 4), b(Integer(2), 4);
    CHECK(a.modulus_tail() == b.modulus_tail());
    // and irreducible
    ResidueField F2(Integer(2), 1);
    CHECK(F2.pirreducible(F2.from_zpoly(a.modulus_lift())));
}
