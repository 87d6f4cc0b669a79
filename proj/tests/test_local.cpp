#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "twocover/completion.hpp"
#include "twocover/pfactor.hpp"
#include "twocover/intfactor.hpp"

#include <map>
#include <memory>
#include <set>

using namespace twocover;

namespace {

// classical closed form for the Hilbert symbol over Q_2, used as an oracle
int q2_symbol_oracle(Rational a, Rational b) {
    auto split = [](const Rational& x, long& alpha, long& u) {
        Integer num = x.get_num(), den = x.get_den();
        long v = (num == 0 ? 0 : valuation(num, Integer(2))) - valuation(den, Integer(2));
        Rational odd = x / Rational(pow(Integer(2), static_cast<unsigned long>(std::abs(v))));
        if (v < 0) odd = x * Rational(pow(Integer(2), static_cast<unsigned long>(-v)));
        // odd = num'/den' with both odd; reduce mod 8 as num' * den'^{-1}
        Integer n = mod(Integer(odd.get_num()), Integer(8));
        Integer d = mod(Integer(odd.get_den()), Integer(8));
        Integer dinv = (d == 1) ? Integer(1) : (d == 3) ? Integer(3) : (d == 5) ? Integer(5) : Integer(7);
        alpha = v;
        u = mod(n * dinv, Integer(8)).get_si();
    };
    long alpha, u, beta, w;
    split(a, alpha, u);
    split(b, beta, w);
    auto eps = [](long x) { return ((x - 1) / 2) % 2 != 0; };   // x odd, mod 8 rep
    auto om = [](long x) { return (x * x - 1) / 8 % 2 != 0; };
    int bit = 0;
    if (eps(u) && eps(w)) bit ^= 1;
    if ((alpha % 2) && om(w)) bit ^= 1;
    if ((beta % 2) && om(u)) bit ^= 1;
    return bit;
}

LocalField::Elt embed_rational(const LocalField& K, const Rational& r) {
    int wv = 0;
    auto u = K.from_rational_unit(r, wv);
    return K.mul_pi(u, wv);
}

} // namespace

TEST_CASE("factor_over_completion on quadratics (spec oracles)") {
    // x^2 - 2 at p = 7: splits
    auto c1 = factor_over_completion(ZPoly::from_int_coeffs({-2, 0, 1}), Integer(7));
    REQUIRE(c1.size() == 2);
    CHECK(c1[0].field->degree() == 1);
    CHECK(c1[1].field->degree() == 1);

    // x^2 + 1 at p = 2: one ramified completion, e = 2
    auto c2 = factor_over_completion(ZPoly::from_int_coeffs({1, 0, 1}), Integer(2));
    REQUIRE(c2.size() == 1);
    CHECK(c2[0].field->e() == 2);
    CHECK(c2[0].field->f() == 1);

    // x^2 - 2 at p = 5: one unramified completion of degree 2
    auto c3 = factor_over_completion(ZPoly::from_int_coeffs({-2, 0, 1}), Integer(5));
    REQUIRE(c3.size() == 1);
    CHECK(c3[0].field->e() == 1);
    CHECK(c3[0].field->f() == 2);
}

TEST_CASE("factor_over_completion deeper cases") {
    // x^4 + 1 at 2: cyclotomic, totally ramified of degree 4
    auto c = factor_over_completion(ZPoly::from_int_coeffs({1, 0, 0, 0, 1}), Integer(2));
    REQUIRE(c.size() == 1);
    CHECK(c[0].field->e() == 4);
    CHECK(c[0].field->f() == 1);

    // (x^2-2)(x^2-18) = x^4 - 20x^2 + 36 at 2: same slope, two conjugate
    // ramified quadratic completions (refinement path)
    auto d = factor_over_completion(ZPoly::from_int_coeffs({36, 0, -20, 0, 1}), Integer(2));
    REQUIRE(d.size() == 2);
    CHECK(d[0].field->e() == 2);
    CHECK(d[1].field->e() == 2);

    // x^3 - 2 at 3: wild, totally ramified cubic
    auto w = factor_over_completion(ZPoly::from_int_coeffs({-2, 0, 0, 1}), Integer(3));
    REQUIRE(w.size() == 1);
    CHECK(w[0].field->e() == 3);

    // x^2 - 17 at 2: 17 is 1 mod 8, splits
    auto s = factor_over_completion(ZPoly::from_int_coeffs({-17, 0, 1}), Integer(2));
    CHECK(s.size() == 2);

    // x^3 - x - 1 at 23 (disc = -23): ramified quadratic + line
    auto m = factor_over_completion(ZPoly::from_int_coeffs({-1, -1, 0, 1}), Integer(23));
    REQUIRE(m.size() == 2);
    int tot = 0;
    for (auto& cw : m) tot += cw.field->degree();
    CHECK(tot == 3);
}

TEST_CASE("defining polynomials have the right degree") {
    auto c = factor_over_completion(ZPoly::from_int_coeffs({1, 0, 1}), Integer(2));
    REQUIRE(c.size() == 1);
    const ZPoly& dp = c[0].field->defining_poly();
    CHECK(dp.degree() == c[0].field->degree());
    CHECK(dp.lc() == 1);

    auto u = factor_over_completion(ZPoly::from_int_coeffs({-2, 0, 1}), Integer(5));
    CHECK(u[0].field->defining_poly().degree() == 2);
}

TEST_CASE("square classes of Q_5") {
    LocalField K = LocalField::qp(Integer(5), 24);
    CHECK(K.sqclass_dim() == 2);
    CHECK(K.is_square(K.from_int(9)));
    CHECK(!K.is_square(K.from_int(5)));
    CHECK(!K.is_square(K.from_int(2)));  // 2 is a nonresidue mod 5
    CHECK(K.is_square(K.from_int(4)));
    // basis reps have valuation in {0, 1}
    for (const auto& b : K.sqclass_basis()) {
        int w = K.val(b);
        CHECK(w >= 0);
        CHECK(w <= 1);
    }
}

TEST_CASE("square classes of Q_2") {
    LocalField K = LocalField::qp(Integer(2), 24);
    CHECK(K.sqclass_dim() == 3);
    CHECK(!K.is_square(K.from_int(-1)));
    CHECK(!K.is_square(K.from_int(5)));
    CHECK(K.is_square(K.from_int(17)));
    CHECK(!K.is_square(K.from_int(2)));
    CHECK(!K.is_square(K.from_int(10)));
    CHECK(K.is_square(K.from_int(16)));

    // the eight classes {±1, ±2, ±5, ±10} fill F_2^3
    std::vector<long> reps{1, -1, 2, -2, 5, -5, 10, -10};
    std::set<F2Vec> classes;
    for (long r : reps) classes.insert(K.decompose(K.from_int(Integer(r))));
    CHECK(classes.size() == 8);

    // unramified class = class of 5 (and of -3)
    CHECK(K.unramified_class_bits() == K.decompose(K.from_int(5)));
    CHECK(K.unramified_class_bits() == K.decompose(K.from_int(-3)));
}

TEST_CASE("decompose round trip on basis") {
    for (long pp : {2L, 3L, 5L}) {
        LocalField K = LocalField::qp(Integer(pp), 24);
        const auto& basis = K.sqclass_basis();
        for (size_t i = 0; i < basis.size(); ++i) {
            F2Vec bits = K.decompose(basis[i]);
            F2Vec expect(K.sqclass_dim(), 0);
            expect[i] = 1;
            CHECK(bits == expect);
        }
    }
}

TEST_CASE("is_square properties in towers") {
    // ramified quadratic extension Q_2(sqrt 2): E = x^2 - 2
    auto base = std::make_shared<UnramBase>(Integer(2), 1, 24);
    UnramBase::Poly E{base->from_int(-2), base->zero(), base->one()};
    LocalField K(base, E);
    CHECK(K.e() == 2);
    CHECK(K.sqclass_dim() == 4);
    // pi^2 = 2 is a square
    CHECK(K.is_square(K.from_int(2)));
    SplitMix64 rng(31337);
    for (int i = 0; i < 12; ++i) {
        LocalField::Elt x = K.zero();
        x[0] = base->from_int(Integer(rng.next() % 64 + 1));
        x[1] = base->from_int(Integer(rng.next() % 64));
        LocalField::Elt sq = K.mul(x, x);
        CHECK(K.is_square(sq));
        CHECK(!K.is_square(K.mul_pi(sq, 1)));
    }
}

TEST_CASE("hilbert symbol tame formula") {
    LocalField K5 = LocalField::qp(Integer(5), 24);
    // (2, 5)_5 = 1/2 since 2 is a nonresidue
    CHECK(K5.hilbert(K5.from_int(2), K5.from_int(5)) == 1);
    CHECK(K5.hilbert(K5.from_int(1), K5.from_int(5)) == 0);
    CHECK(K5.hilbert(K5.from_int(4), K5.from_int(5)) == 0);
    // symmetry and bilinearity on a grid
    std::vector<long> vals{1, 2, 5, 10, -1, -2, 3, 15};
    for (long a : vals)
        for (long b : vals) {
            int ab = K5.hilbert(K5.from_int(a), K5.from_int(b));
            int ba = K5.hilbert(K5.from_int(b), K5.from_int(a));
            CHECK(ab == ba);
            for (long c : {2L, 5L}) {
                int ac = K5.hilbert(K5.from_int(a), K5.from_int(c));
                int bc = K5.hilbert(K5.from_int(b), K5.from_int(c));
                int abc = K5.hilbert(K5.from_int(a * b), K5.from_int(c));
                CHECK(abc == (ac ^ bc));
            }
        }
}

TEST_CASE("hilbert symbol dyadic vs closed form") {
    LocalField K = LocalField::qp(Integer(2), 28);
    std::vector<long> vals{1, -1, 2, -2, 5, -5, 10, -10, 3, 7, 6, 14};
    for (long a : vals)
        for (long b : vals) {
            int mine = K.hilbert(K.from_int(a), K.from_int(b));
            int oracle = q2_symbol_oracle(Rational(a), Rational(b));
            CAPTURE(a);
            CAPTURE(b);
            CHECK(mine == oracle);
        }
}

TEST_CASE("hilbert gram nondegenerate in extensions of Q_2") {
    // three ramified quadratics: x^2-2, x^2+2, x^2-2x+2 (i.e. Q_2(i) via 1+i)
    std::vector<std::vector<long>> eis{{-2, 0, 1}, {2, 0, 1}, {2, -2, 1}};
    for (auto& coef : eis) {
        auto base = std::make_shared<UnramBase>(Integer(2), 1, 24);
        UnramBase::Poly E;
        for (long c : coef) E.push_back(base->from_int(c));
        LocalField K(base, E);
        const F2Matrix& G = K.hilbert_gram();
        CHECK(G.rank() == static_cast<size_t>(K.sqclass_dim()));
    }
    // unramified quadratic: f = 2, e = 1
    auto ubase = std::make_shared<UnramBase>(Integer(2), 2, 24);
    UnramBase::Poly E{ubase->neg(ubase->from_int(2)), ubase->one()};
    LocalField K(ubase, E);
    CHECK(K.f() == 2);
    CHECK(K.sqclass_dim() == 4);
    const F2Matrix& G = K.hilbert_gram();
    CHECK(G.rank() == 4);
}

TEST_CASE("hilbert reciprocity for rational pairs") {
    // sum of (a,b)_v over the real place and primes dividing 2ab is 0
    std::vector<Rational> vals;
    for (long a : {-6, -5, -3, -2, -1, 2, 3, 5, 7, 10, 15}) vals.emplace_back(a);
    std::map<long, std::unique_ptr<LocalField>> fields;
    auto field = [&](long pp) -> LocalField& {
        auto it = fields.find(pp);
        if (it == fields.end())
            it = fields.emplace(pp, std::make_unique<LocalField>(LocalField::qp(Integer(pp), 28))).first;
        return *it->second;
    };
    int checked = 0;
    for (const auto& a : vals)
        for (const auto& b : vals) {
            int total = 0;
            // real place
            if (a < 0 && b < 0) total ^= 1;
            Integer prod = Integer(a.get_num()) * Integer(b.get_num()) * 2;
            auto fac = factor_integer(prod);
            for (const auto& pe : fac.factors) {
                LocalField& K = field(pe.p.get_si());
                total ^= K.hilbert(embed_rational(K, a), embed_rational(K, b));
            }
            CAPTURE(a.get_str());
            CAPTURE(b.get_str());
            CHECK(total == 0);
            ++checked;
        }
    CHECK(checked >= 100);
}

TEST_CASE("norms to Q_p") {
    // K = Q_2(i) via Eisenstein x^2 - 2x + 2 (pi = 1+i); N(pi) = 2
    auto base = std::make_shared<UnramBase>(Integer(2), 1, 24);
    UnramBase::Poly E{base->from_int(2), base->from_int(-2), base->one()};
    LocalField K(base, E);
    auto n = K.norm_to_qp(K.pi());
    CHECK(n.v == 1);
    // unramified quadratic over Q_3: N(u) has even valuation
    auto u3 = std::make_shared<UnramBase>(Integer(3), 2, 24);
    UnramBase::Poly E3{u3->neg(u3->from_int(3)), u3->one()};
    LocalField K3(u3, E3);
    auto n3 = K3.norm_to_qp(K3.pi());
    CHECK(n3.v == 2);
}

TEST_CASE("unramified subgroup reps at odd p") {
    LocalField K = LocalField::qp(Integer(5), 24);
    F2Vec u = K.unramified_class_bits();
    CHECK(u[0] == 0);  // unit class
    CHECK(!f2_is_zero(u));
}

TEST_CASE("embedded roots satisfy g") {
    // the factorizer polishes roots; spot check x^2-2 at 7 explicitly
    ZPoly g = ZPoly::from_int_coeffs({-2, 0, 1});
    auto cs = factor_over_completion(g, Integer(7));
    for (auto& cw : cs) {
        auto v = cw.field->eval_zpoly(g, cw.root);
        CHECK(cw.field->is_zero(v));
    }
}
