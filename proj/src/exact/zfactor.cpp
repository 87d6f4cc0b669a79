#include "twocover/zfactor.hpp"
#include "twocover/errors.hpp"
#include "twocover/intfactor.hpp"
#include "twocover/residue.hpp"

#include <algorithm>
#include <numeric>

namespace twocover {

QPoly QFactorization::reassemble() const {
    QPoly r(content);
    for (const auto& [f, m] : factors)
        for (int i = 0; i < m; ++i) r = r * f;
    return r;
}

Integer choose_factor_prime(const ZPoly& f) {
    Integer disc = discriminant(f);
    if (disc == 0) throw Error("choose_factor_prime: input not squarefree");
    Integer lc = f.lc();
    for (Integer p = 3;; mpz_nextprime(p.get_mpz_t(), p.get_mpz_t())) {
        if (!divisible(lc, p) && !divisible(disc, p)) return p;
    }
}

namespace {

// dense poly arithmetic over Z/p^k with symmetric reduction on output
struct ModRing {
    Integer m;  // p^k
    Integer reduce(const Integer& a) const { return mod(a, m); }
    Integer symmetric(const Integer& a) const {
        Integer r = mod(a, m);
        if (2 * r > m) r -= m;
        return r;
    }
    std::vector<Integer> red(const ZPoly& f) const {
        std::vector<Integer> v;
        v.reserve(f.coeffs().size());
        for (const auto& c : f.coeffs()) v.push_back(reduce(c));
        while (!v.empty() && v.back() == 0) v.pop_back();
        return v;
    }
    using P = std::vector<Integer>;
    void norm(P& a) const {
        while (!a.empty() && mod(a.back(), m) == 0) a.pop_back();
        for (auto& x : a) x = reduce(x);
    }
    P mul(const P& a, const P& b) const {
        if (a.empty() || b.empty()) return {};
        P r(a.size() + b.size() - 1, Integer(0));
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        }
        norm(r);
        return r;
    }
    P add(const P& a, const P& b) const {
        P r(std::max(a.size(), b.size()), Integer(0));
        for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
        for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
        norm(r);
        return r;
    }
    P sub(const P& a, const P& b) const {
        P r(std::max(a.size(), b.size()), Integer(0));
        for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
        for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
        norm(r);
        return r;
    }
    P scale(const P& a, const Integer& s) const {
        P r(a);
        for (auto& x : r) x = reduce(x * s);
        norm(r);
        return r;
    }
    // divide by monic b
    std::pair<P, P> divmod_monic(const P& a, const P& b) const {
        P r(a);
        norm(r);
        int db = static_cast<int>(b.size()) - 1;
        int dr = static_cast<int>(r.size()) - 1;
        if (dr < db) return {P{}, r};
        P q(dr - db + 1, Integer(0));
        while (dr >= db) {
            Integer f = r[dr];
            if (f != 0) {
                q[dr - db] = f;
                for (int i = 0; i <= db; ++i)
                    r[dr - db + i] = reduce(r[dr - db + i] - f * b[i]);
            }
            r.pop_back();
            dr = static_cast<int>(r.size()) - 1;
            while (dr >= db && r[dr] == 0) { r.pop_back(); --dr; }
        }
        norm(r);
        return {q, r};
    }
};

using MP = ModRing::P;

// one quadratic Hensel step (von zur Gathen & Gerhard 15.10):
// f = g h mod m, s g + t h = 1 mod m, h monic, lc(g) = lc(f) mod M=m^2,
// deg s < deg h, deg t < deg g.  Updates g,h,s,t mod M.
void hensel_step(const ZPoly& f, MP& g, MP& h, MP& s, MP& t, const Integer& m) {
    ModRing R{m * m};
    MP fp = R.red(f);
    // force lc(g) = lc(f) mod M (degrees are preserved by the step)
    MP e = R.sub(fp, R.mul(g, h));
    auto [q, r] = R.divmod_monic(R.mul(s, e), h);
    MP gstar = R.add(g, R.add(R.mul(t, e), R.mul(q, g)));
    MP hstar = R.add(h, r);
    MP b = R.sub(R.add(R.mul(s, gstar), R.mul(t, hstar)), MP{Integer(1)});
    auto [c, d] = R.divmod_monic(R.mul(s, b), hstar);
    MP sstar = R.sub(s, d);
    MP tstar = R.sub(R.sub(t, R.mul(t, b)), R.mul(c, gstar));
    g = std::move(gstar);
    h = std::move(hstar);
    s = std::move(sstar);
    t = std::move(tstar);
}

// Lift f = lc * prod(leaves) mod p to mod p^target, leaves monic mod p.
// Returns monic lifted leaves mod p^target.
struct HenselTree {
    Integer p;
    ZPoly f;

    std::vector<MP> lift(const std::vector<MP>& leaves, const Integer& target) {
        std::vector<MP> out(leaves.size());
        rec(f, leaves, 0, leaves.size(), target, out);
        return out;
    }

private:
    void rec(const ZPoly& F, const std::vector<MP>& leaves, size_t lo, size_t hi,
             const Integer& target, std::vector<MP>& out) {
        if (hi - lo == 1) {
            // monicize F mod target
            ModRing R{target};
            MP Fm = R.red(F);
            Integer il = invmod(R.reduce(F.lc()), target);
            out[lo] = R.scale(Fm, il);
            return;
        }
        size_t mid = lo + (hi - lo) / 2;
        ModRing Rp{p};
        // initial split mod p: A = lc(F) * prod[lo,mid), B = prod[mid,hi)
        MP A{R_reduce_lc(F, Rp)};
        for (size_t i = lo; i < mid; ++i) A = Rp.mul(A, leaves[i]);
        MP B{Integer(1)};
        for (size_t i = mid; i < hi; ++i) B = Rp.mul(B, leaves[i]);
        // Bezout mod p via extended Euclid over F_p
        MP s, t;
        bezout_mod_p(A, B, s, t);
        // quadratic lifting
        MP g = A, h = B;
        Integer m = p;
        while (m < target) {
            hensel_step(F, g, h, s, t, m);
            m = m * m;
        }
        ModRing R{target};
        R.norm(g);
        R.norm(h);
        ZPoly G = from_mp(R, g), H = from_mp(R, h);
        rec(G, leaves, lo, mid, target, out);
        rec(H, leaves, mid, hi, target, out);
    }

    Integer R_reduce_lc(const ZPoly& F, const ModRing& R) const { return R.reduce(F.lc()); }

    static ZPoly from_mp(const ModRing& R, const MP& a) {
        std::vector<Integer> v;
        v.reserve(a.size());
        for (const auto& x : a) v.push_back(R.reduce(x));
        return ZPoly(std::move(v));
    }

    void bezout_mod_p(const MP& A, const MP& B, MP& s, MP& t) {
        // extended Euclid over F_p
        ResidueField Fp(p, 1);
        auto toR = [&](const MP& a) {
            ResidueField::Poly r;
            for (const auto& c : a) r.push_back(Fp.from_integer(c));
            Fp.pnormalize(r);
            return r;
        };
        auto fromR = [&](const ResidueField::Poly& a) {
            MP r;
            for (const auto& e : a) r.push_back(e[0]);
            return r;
        };
        ResidueField::Poly r0 = toR(A), r1 = toR(B);
        ResidueField::Poly s0 = Fp.pone(), s1 = Fp.pzero();
        ResidueField::Poly t0 = Fp.pzero(), t1 = Fp.pone();
        while (!r1.empty()) {
            auto [q, r2] = Fp.pdivmod(r0, r1);
            auto s2 = Fp.psub(s0, Fp.pmul(q, s1));
            auto t2 = Fp.psub(t0, Fp.pmul(q, t1));
            r0 = r1; r1 = r2;
            s0 = s1; s1 = s2;
            t0 = t1; t1 = t2;
        }
        // r0 = gcd (a unit); normalize to 1
        if (Fp.pdeg(r0) != 0) throw Error("hensel bezout: factors not coprime mod p");
        ResidueField::Elt inv = Fp.inv(r0[0]);
        s = fromR(Fp.pscale(s0, inv));
        t = fromR(Fp.pscale(t0, inv));
    }
};

// Yun squarefree decomposition over Q (char 0); f primitive
std::vector<std::pair<ZPoly, int>> yun_squarefree(const ZPoly& f) {
    std::vector<std::pair<ZPoly, int>> out;
    if (f.degree() <= 0) return out;
    ZPoly fp = f.derivative();
    ZPoly a = gcd(f, fp);
    if (a.degree() == 0) {
        out.emplace_back(f.primitive_part(), 1);
        return out;
    }
    ZPoly b, c;
    f.divide_exact(a, b);
    fp.divide_exact(a, c);
    // d = c - b'
    ZPoly d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        ZPoly g = gcd(b, d);
        if (g.degree() > 0) out.emplace_back(g.primitive_part(), i);
        ZPoly nb, nd;
        b.divide_exact(g.degree() > 0 ? g : ZPoly(Integer(1)), nb);
        if (g.degree() > 0) { ZPoly tmp; d.divide_exact(g, tmp); nd = tmp - nb.derivative(); }
        else nd = d - nb.derivative();
        b = nb;
        d = nd;
        ++i;
    }
    return out;
}

} // namespace

std::vector<ZPoly> factor_squarefree_z(const ZPoly& fin, int64_t subset_budget) {
    ZPoly f = fin.primitive_part();
    int n = f.degree();
    if (n <= 0) return {};
    if (n == 1) return {f};
    Integer p = choose_factor_prime(f);
    ResidueField Fp(p, 1);
    auto fbar = Fp.from_zpoly(f);
    auto modfactors = Fp.pfactor(Fp.pmonic(fbar));
    if (modfactors.size() == 1 && modfactors[0].second == 1) return {f};

    // Landau-Mignotte: any factor h (with lc(h) | lc(f)) of f has
    // |coeffs(h)| <= 2^n * ||f||_2; we lift past 2 * |lc| * that bound.
    Integer l2 = isqrt(f.l2_norm_sq()) + 1;
    Integer lc = f.lc();
    Integer bound = (pow(Integer(2), static_cast<unsigned long>(n)) * l2 * (lc > 0 ? lc : -lc)) * 2 + 1;
    Integer target = p;
    while (target <= bound) target = target * target;

    // leaves mod p
    std::vector<MP> leaves;
    for (const auto& [g, m] : modfactors) {
        if (m != 1) throw Error("factor_squarefree_z: prime choice not squarefree");
        MP leaf;
        for (const auto& e : g) leaf.push_back(e[0]);
        leaves.push_back(leaf);
    }

    HenselTree tree{p, f};
    std::vector<MP> lifted = tree.lift(leaves, target);
    ModRing R{target};

    // Zassenhaus recombination, subsets by increasing cardinality
    std::vector<ZPoly> result;
    std::vector<int> live(lifted.size());
    std::iota(live.begin(), live.end(), 0);
    ZPoly rem = f;
    int64_t budget = subset_budget;

    auto factor_degree = [&](int i) { return static_cast<int>(lifted[static_cast<size_t>(i)].size()) - 1; };

    while (true) {
        int r = static_cast<int>(live.size());
        if (r == 0) break;
        int half = r / 2;
        bool found = false;
        // enumerate subsets of live of cardinality c = 1..half
        for (int c = 1; c <= half && !found; ++c) {
            std::vector<int> idx(c);
            std::iota(idx.begin(), idx.end(), 0);
            while (true) {
                if (--budget < 0) throw EffortExceeded("zassenhaus subset budget");
                int degsum = 0;
                for (int k : idx) degsum += factor_degree(live[static_cast<size_t>(k)]);
                if (degsum <= rem.degree()) {
                    // trailing-coefficient quick test
                    Integer lcr = rem.lc();
                    Integer tc = R.reduce(lcr);
                    for (int k : idx) tc = R.reduce(tc * lifted[static_cast<size_t>(live[static_cast<size_t>(k)])][0]);
                    tc = R.symmetric(tc);
                    Integer tcf = lcr * rem.coeff(0);
                    if (tc == 0 || divisible(tcf, tc)) {
                        MP prod{R.reduce(lcr)};
                        for (int k : idx) prod = R.mul(prod, lifted[static_cast<size_t>(live[static_cast<size_t>(k)])]);
                        std::vector<Integer> cand;
                        cand.reserve(prod.size());
                        for (const auto& x : prod) cand.push_back(R.symmetric(x));
                        ZPoly candidate = ZPoly(std::move(cand)).primitive_part();
                        ZPoly q;
                        if (!candidate.is_zero() && rem.divide_exact(candidate, q)) {
                            result.push_back(candidate);
                            rem = q;
                            // remove used leaves
                            std::vector<int> nl;
                            for (int i2 = 0; i2 < r; ++i2)
                                if (std::find(idx.begin(), idx.end(), i2) == idx.end())
                                    nl.push_back(live[static_cast<size_t>(i2)]);
                            live = std::move(nl);
                            found = true;
                            break;
                        }
                    }
                }
                // next subset of size c
                int j = c - 1;
                while (j >= 0 && idx[static_cast<size_t>(j)] == r - c + j) --j;
                if (j < 0) break;
                ++idx[static_cast<size_t>(j)];
                for (int k2 = j + 1; k2 < c; ++k2) idx[static_cast<size_t>(k2)] = idx[static_cast<size_t>(k2 - 1)] + 1;
            }
        }
        if (!found) {
            // remaining product is irreducible
            result.push_back(rem.primitive_part());
            break;
        }
        if (rem.degree() == 0) break;
    }
    std::sort(result.begin(), result.end(), [](const ZPoly& a, const ZPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (int i = a.degree(); i >= 0; --i)
            if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
        return false;
    });
    return result;
}

QFactorization factor_rational_poly(const QPoly& fq, int64_t subset_budget) {
    if (fq.is_zero()) throw ZeroDivisor("factor_rational_poly(0)");
    QFactorization out;
    out.content = fq.lc();
    if (fq.degree() == 0) return out;
    ZPoly f = fq.primitive();
    auto sqf = yun_squarefree(f);
    for (const auto& [g, mult] : sqf) {
        for (const auto& h : factor_squarefree_z(g, subset_budget)) {
            QPolyFactor qf;
            qf.factor = h.to_q().monic();
            qf.multiplicity = mult;
            out.factors.push_back(std::move(qf));
        }
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const QPolyFactor& a, const QPolyFactor& b) {
        if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
        for (int i = a.factor.degree(); i >= 0; --i)
            if (a.factor.coeff(i) != b.factor.coeff(i)) return a.factor.coeff(i) < b.factor.coeff(i);
        return a.multiplicity < b.multiplicity;
    });
    return out;
}

bool is_irreducible_q(const QPoly& f) {
    if (f.degree() <= 0) return false;
    auto fac = factor_rational_poly(f);
    return fac.factors.size() == 1 && fac.factors[0].multiplicity == 1;
}

} // namespace twocover
