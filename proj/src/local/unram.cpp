#include "twocover/unram.hpp"
#include "twocover/errors.hpp"

#include <algorithm>
#include <sstream>

namespace twocover {

UnramBase::UnramBase(Integer p, int f, int N)
    : p_(std::move(p)), f_(f), N_(N) {
    if (N_ < 2) N_ = 2;
    pN_ = twocover::pow(p_, static_cast<unsigned long>(N_));
    res_ = std::make_shared<ResidueField>(p_, f_);
    psi_tail_ = res_->modulus_tail();
    if (f_ > 1) build_frobenius();
}

UnramBase::Elt UnramBase::one() const {
    Elt e = zero();
    e[0] = 1;
    return e;
}

UnramBase::Elt UnramBase::gen() const {
    Elt e = zero();
    if (f_ > 1) e[1] = 1;
    else e[0] = 1;
    return e;
}

UnramBase::Elt UnramBase::from_int(const Integer& n) const {
    Elt e = zero();
    e[0] = mod(n, pN_);
    return e;
}

UnramBase::Elt UnramBase::lift(const ResidueField::Elt& r) const {
    Elt e = zero();
    for (int i = 0; i < f_; ++i) e[i] = r[i];
    return e;
}

ResidueField::Elt UnramBase::residue(const Elt& a) const {
    ResidueField::Elt r(f_);
    for (int i = 0; i < f_; ++i) r[i] = mod(a[i], p_);
    return r;
}

bool UnramBase::is_zero(const Elt& a) const {
    for (const auto& x : a)
        if (mod(x, pN_) != 0) return false;
    return true;
}

bool UnramBase::is_zero_mod(const Elt& a, int k) const {
    Integer pk = twocover::pow(p_, static_cast<unsigned long>(std::min(k, N_)));
    for (const auto& x : a)
        if (mod(x, pk) != 0) return false;
    return true;
}

UnramBase::Elt UnramBase::reduce(std::vector<Integer> c) const {
    // reduce modulo psi (monic) with integer coefficients, then mod p^N
    for (size_t i = c.size(); i-- > static_cast<size_t>(f_);) {
        Integer t = c[i];
        if (t != 0)
            for (int j = 0; j < f_; ++j) c[i - f_ + j] -= t * psi_tail_[j];
        c[i] = 0;
    }
    Elt e(f_, Integer(0));
    for (int i = 0; i < f_ && i < static_cast<int>(c.size()); ++i) e[i] = mod(c[i], pN_);
    return e;
}

UnramBase::Elt UnramBase::add(const Elt& a, const Elt& b) const {
    Elt e(f_);
    for (int i = 0; i < f_; ++i) e[i] = mod(a[i] + b[i], pN_);
    return e;
}

UnramBase::Elt UnramBase::sub(const Elt& a, const Elt& b) const {
    Elt e(f_);
    for (int i = 0; i < f_; ++i) e[i] = mod(a[i] - b[i], pN_);
    return e;
}

UnramBase::Elt UnramBase::neg(const Elt& a) const {
    Elt e(f_);
    for (int i = 0; i < f_; ++i) e[i] = mod(-a[i], pN_);
    return e;
}

UnramBase::Elt UnramBase::mul(const Elt& a, const Elt& b) const {
    std::vector<Integer> c(2 * f_ - 1, Integer(0));
    for (int i = 0; i < f_; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < f_; ++j) c[i + j] += a[i] * b[j];
    }
    return reduce(std::move(c));
}

UnramBase::Elt UnramBase::inv(const Elt& a) const {
    // Newton from the residue inverse
    auto r = residue(a);
    if (res_->is_zero(r)) throw ZeroDivisor("UnramBase::inv of non-unit");
    Elt x = lift(res_->inv(r));
    // x <- x(2 - a x), doubling correct digits
    int prec = 1;
    while (prec < N_) {
        Elt t = sub(from_int(2), mul(a, x));
        x = mul(x, t);
        prec *= 2;
    }
    return x;
}

UnramBase::Elt UnramBase::pow(Elt a, Integer e) const {
    Elt r = one();
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a);
        a = mul(a, a);
        e /= 2;
    }
    return r;
}

int UnramBase::val(const Elt& a) const {
    int v = N_;
    for (const auto& x : a) {
        Integer y = mod(x, pN_);
        if (y == 0) continue;
        v = std::min(v, static_cast<int>(valuation(y, p_)));
    }
    return v;
}

UnramBase::Elt UnramBase::div_p(const Elt& a, int k) const {
    Integer pk = twocover::pow(p_, static_cast<unsigned long>(k));
    Elt e(f_);
    for (int i = 0; i < f_; ++i) {
        Integer y = mod(a[i], pN_);
        if (!divisible(y, pk)) throw PrecisionExhausted("div_p: inexact division");
        e[i] = divexact(y, pk);
    }
    return e;
}

UnramBase::Elt UnramBase::mul_p(const Elt& a, int k) const {
    Integer pk = twocover::pow(p_, static_cast<unsigned long>(k));
    Elt e(f_);
    for (int i = 0; i < f_; ++i) e[i] = mod(a[i] * pk, pN_);
    return e;
}

void UnramBase::build_frobenius() {
    // root of psi congruent to u^p mod p
    ResidueField::Elt target = res_->frobenius(res_->gen());
    Poly psi = from_zpoly(res_->modulus_lift());
    frob_gen_ = hensel_root(psi, target);
}

UnramBase::Elt UnramBase::frobenius(const Elt& a) const {
    if (f_ == 1) return a;
    // evaluate the coefficient polynomial at frob_gen_
    Elt r = zero();
    for (int i = f_ - 1; i >= 0; --i) {
        r = mul(r, frob_gen_);
        Elt c = zero();
        c[0] = a[i];
        r = add(r, c);
    }
    return r;
}

UnramBase::Elt UnramBase::embed_from(const UnramBase& sub, const Elt& a) const {
    if (sub.f_ == 1) {
        Elt e = zero();
        e[0] = mod(a[0], pN_);
        return e;
    }
    if (f_ % sub.f_ != 0) throw DimensionMismatch("embed_from: residue degrees");
    const Elt* cached = nullptr;
    for (const auto& [sf, g] : embed_cache_)
        if (sf == sub.f_) { cached = &g; break; }
    if (!cached) {
        // image of sub's generator: Hensel root of sub's psi in this base
        Poly subpsi = from_zpoly(sub.res().modulus_lift());
        auto resroots = res_->proots(res_->from_zpoly(sub.res().modulus_lift()));
        if (resroots.empty()) throw Error("embed_from: no residue root (not a subfield?)");
        // deterministic choice: smallest by coefficient tuple
        std::sort(resroots.begin(), resroots.end(), [&](const auto& x, const auto& y) {
            for (int i = f_ - 1; i >= 0; --i)
                if (x[i] != y[i]) return x[i] < y[i];
            return false;
        });
        embed_cache_.emplace_back(sub.f_, hensel_root(subpsi, resroots[0]));
        cached = &embed_cache_.back().second;
    }
    const Elt& g = *cached;
    Elt r = zero();
    for (int i = sub.f_ - 1; i >= 0; --i) {
        r = mul(r, g);
        Elt c = zero();
        c[0] = mod(a[i], pN_);
        r = add(r, c);
    }
    return r;
}

// ------------------------------------------------------------- polynomials

void UnramBase::pnorm(Poly& g) const {
    while (!g.empty() && is_zero(g.back())) g.pop_back();
}

UnramBase::Poly UnramBase::padd(const Poly& a, const Poly& b) const {
    Poly r(std::max(a.size(), b.size()), zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = add(r[i], a[i]);
    for (size_t i = 0; i < b.size(); ++i) r[i] = add(r[i], b[i]);
    pnorm(r);
    return r;
}

UnramBase::Poly UnramBase::psub(const Poly& a, const Poly& b) const {
    Poly r(std::max(a.size(), b.size()), zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = add(r[i], a[i]);
    for (size_t i = 0; i < b.size(); ++i) r[i] = sub(r[i], b[i]);
    pnorm(r);
    return r;
}

UnramBase::Poly UnramBase::pmul(const Poly& a, const Poly& b) const {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (is_zero(a[i])) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = add(r[i + j], mul(a[i], b[j]));
    }
    pnorm(r);
    return r;
}

UnramBase::Poly UnramBase::pscale(const Poly& a, const Elt& s) const {
    Poly r;
    r.reserve(a.size());
    for (const auto& c : a) r.push_back(mul(c, s));
    pnorm(r);
    return r;
}

std::pair<UnramBase::Poly, UnramBase::Poly>
UnramBase::pdivmod(const Poly& a, const Poly& b) const {
    if (b.empty()) throw ZeroDivisor("UnramBase::pdivmod by zero");
    Poly r = a;
    pnorm(r);
    int db = static_cast<int>(b.size()) - 1;
    int dr = static_cast<int>(r.size()) - 1;
    if (dr < db) return {Poly{}, r};
    Elt binv = inv(b.back());
    Poly q(dr - db + 1, zero());
    while (dr >= db) {
        Elt f = mul(r[dr], binv);
        if (!is_zero(f)) {
            q[dr - db] = f;
            for (int i = 0; i <= db; ++i)
                r[dr - db + i] = sub(r[dr - db + i], mul(f, b[i]));
        }
        r.pop_back();
        dr = static_cast<int>(r.size()) - 1;
        while (dr >= db && is_zero(r[dr])) { r.pop_back(); --dr; }
    }
    pnorm(r);
    return {q, r};
}

UnramBase::Poly UnramBase::pmulmod(const Poly& a, const Poly& b, const Poly& m) const {
    return pdivmod(pmul(a, b), m).second;
}

UnramBase::Elt UnramBase::peval(const Poly& a, const Elt& x) const {
    Elt r = zero();
    for (size_t i = a.size(); i-- > 0;) r = add(mul(r, x), a[i]);
    return r;
}

UnramBase::Poly UnramBase::pshift(const Poly& a, const Elt& c) const {
    Poly r;
    Poly xc{c, one()};
    for (size_t i = a.size(); i-- > 0;) r = padd(pmul(r, xc), Poly{a[i]});
    pnorm(r);
    return r;
}

UnramBase::Poly UnramBase::pderiv(const Poly& a) const {
    if (a.size() <= 1) return {};
    Poly r(a.size() - 1, zero());
    for (size_t i = 1; i < a.size(); ++i)
        r[i - 1] = mul(a[i], from_int(Integer(static_cast<long>(i))));
    pnorm(r);
    return r;
}

UnramBase::Poly UnramBase::from_zpoly(const ZPoly& g) const {
    Poly r;
    r.reserve(g.coeffs().size());
    for (const auto& c : g.coeffs()) r.push_back(from_int(c));
    pnorm(r);
    return r;
}

UnramBase::Poly UnramBase::embed_poly_from(const UnramBase& sub, const Poly& g) const {
    Poly r;
    r.reserve(g.size());
    for (const auto& c : g) r.push_back(embed_from(sub, c));
    pnorm(r);
    return r;
}

ResidueField::Poly UnramBase::residue_poly(const Poly& g) const {
    ResidueField::Poly r;
    r.reserve(g.size());
    for (const auto& c : g) r.push_back(residue(c));
    res_->pnormalize(r);
    return r;
}

UnramBase::Poly UnramBase::lift_respoly(const ResidueField::Poly& g) const {
    Poly r;
    r.reserve(g.size());
    for (const auto& c : g) r.push_back(lift(c));
    pnorm(r);
    return r;
}

UnramBase::Poly UnramBase::pscale_down(const Poly& h, int lambda) const {
    // h(p^lambda x) / p^(lambda deg h)
    int m = pdeg(h);
    Poly r(h.size(), zero());
    for (int i = 0; i <= m; ++i) {
        // coefficient i picks up p^(lambda i - lambda m)
        int shift = lambda * (i - m);
        if (shift >= 0) r[i] = mul_p(h[i], shift);
        else r[i] = div_p(h[i], -shift);
    }
    pnorm(r);
    return r;
}

UnramBase::Poly UnramBase::pcompose_scaled(const Poly& chi, int a, const Elt& c) const {
    // chi(p^a (z + c)) / p^(a deg chi) = scale_down(chi, a) shifted by c
    Poly scaled = pscale_down(chi, a);
    return pshift(scaled, c);
}

std::vector<std::pair<int, int>> UnramBase::newton_polygon(const Poly& h) const {
    int m = pdeg(h);
    std::vector<std::pair<int, int>> pts;
    for (int i = 0; i <= m; ++i) {
        int v = val(h[i]);
        if (v >= N_) continue;  // treat as +infinity
        pts.emplace_back(i, v);
    }
    // lower convex hull, left to right
    std::vector<std::pair<int, int>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            auto& a2 = hull[hull.size() - 1];
            auto& a1 = hull[hull.size() - 2];
            // drop a2 if it lies above segment a1->pt
            long lhs = static_cast<long>(a2.second - a1.second) * (pt.first - a1.first);
            long rhs = static_cast<long>(pt.second - a1.second) * (a2.first - a1.first);
            if (lhs >= rhs) hull.pop_back();
            else break;
        }
        hull.push_back(pt);
    }
    return hull;
}

// quadratic Hensel step over O_U (von zur Gathen & Gerhard 15.10 adapted)
namespace {
struct PairLift {
    const UnramBase& U;
    UnramBase::Poly g, h, s, t;

    void step(const UnramBase::Poly& F) {
        using Poly = UnramBase::Poly;
        Poly e = U.psub(F, U.pmul(g, h));
        auto [q, r] = U.pdivmod(U.pmul(s, e), h);
        Poly gs = U.padd(g, U.padd(U.pmul(t, e), U.pmul(q, g)));
        Poly hs = U.padd(h, r);
        Poly b = U.psub(U.padd(U.pmul(s, gs), U.pmul(t, hs)), U.pone());
        auto [c, d] = U.pdivmod(U.pmul(s, b), hs);
        Poly ss = U.psub(s, d);
        Poly ts = U.psub(U.psub(t, U.pmul(t, b)), U.pmul(c, gs));
        g = std::move(gs);
        h = std::move(hs);
        s = std::move(ss);
        t = std::move(ts);
    }
};
} // namespace

std::vector<UnramBase::Poly>
UnramBase::hensel_multi_split(const Poly& h, const std::vector<ResidueField::Poly>& blocks) const {
    std::vector<Poly> out;
    if (blocks.size() == 1) {
        out.push_back(h);
        return out;
    }
    // split off blocks[0] against the rest
    ResidueField::Poly rest = res_->pone();
    for (size_t i = 1; i < blocks.size(); ++i) rest = res_->pmul(rest, blocks[i]);

    // Bezout over the residue field
    ResidueField::Poly r0 = blocks[0], r1 = rest;
    ResidueField::Poly s0 = res_->pone(), s1 = res_->pzero();
    ResidueField::Poly t0 = res_->pzero(), t1 = res_->pone();
    while (!r1.empty()) {
        auto [q, r2] = res_->pdivmod(r0, r1);
        auto s2 = res_->psub(s0, res_->pmul(q, s1));
        auto t2 = res_->psub(t0, res_->pmul(q, t1));
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    if (res_->pdeg(r0) != 0)
        throw Error("hensel_multi_split: blocks not coprime");
    auto sc = res_->inv(r0[0]);
    // invariant for the step: s*g + t*h = 1 with g = blocks[0], h = rest
    PairLift lift{*this,
                  lift_respoly(blocks[0]),
                  lift_respoly(rest),
                  lift_respoly(res_->pscale(s0, sc)),
                  lift_respoly(res_->pscale(t0, sc))};
    int prec = 1;
    while (prec < N_) {
        lift.step(h);
        prec *= 2;
    }
    out.push_back(lift.g);
    auto [q2, r2] = pdivmod(h, lift.g);
    if (!r2.empty()) {
        // division must be exact to working precision
        throw PrecisionExhausted("hensel_multi_split: inexact cofactor");
    }
    std::vector<ResidueField::Poly> subblocks(blocks.begin() + 1, blocks.end());
    auto rest_split = hensel_multi_split(q2, subblocks);
    out.insert(out.end(), rest_split.begin(), rest_split.end());
    return out;
}

UnramBase::Elt UnramBase::hensel_root(const Poly& h, const ResidueField::Elt& r0) const {
    Elt x = lift(r0);
    Poly dh = pderiv(h);
    {
        auto d0 = residue(peval(dh, x));
        if (res_->is_zero(d0)) throw Error("hensel_root: residue root not simple");
    }
    int prec = 1;
    while (prec < N_) {
        Elt fx = peval(h, x);
        Elt dfx = peval(dh, x);
        x = sub(x, mul(fx, inv(dfx)));
        prec *= 2;
    }
    for (int i = 0; i < 3 && !is_zero(peval(h, x)); ++i)
        x = sub(x, mul(peval(h, x), inv(peval(dh, x))));
    if (!is_zero(peval(h, x)))
        throw PrecisionExhausted("hensel_root: Newton did not converge");
    return x;
}

UnramBase::Poly UnramBase::charpoly_mod(const Poly& a, const Poly& h) const {
    // Berkowitz on the multiplication matrix of a in U[x]/(h)
    int m = pdeg(h);
    if (m <= 0) throw DimensionMismatch("charpoly_mod: trivial modulus");
    // columns: a * x^j mod h
    std::vector<Poly> cols(m);
    Poly cur = pdivmod(a, h).second;
    for (int j = 0; j < m; ++j) {
        cols[j] = cur;
        if (j + 1 < m) {
            // multiply by x
            Poly nxt(cur.size() + 1, zero());
            for (size_t i = 0; i < cur.size(); ++i) nxt[i + 1] = cur[i];
            pnorm(nxt);
            cur = pdivmod(nxt, h).second;
        }
    }
    // matrix M[i][j] = coeff of x^i in cols[j]
    auto entry = [&](int i, int j) -> Elt {
        const Poly& c = cols[j];
        if (i < static_cast<int>(c.size())) return c[i];
        return zero();
    };
    // Berkowitz: iteratively build characteristic polynomial coefficients.
    // Following the classical vector formulation with Toeplitz products.
    std::vector<Elt> cp{one()};  // charpoly of the empty matrix
    for (int k = 1; k <= m; ++k) {
        // principal k x k minor; build the Toeplitz column entries:
        // s_0 = -M[k-1][k-1], s_i = -(R * M^{i-1} * C) for i >= 1
        // with R = row (M[k-1][0..k-2]), C = col (M[0..k-2][k-1]).
        std::vector<Elt> svec(k + 1);
        svec[0] = one();
        svec[1] = neg(entry(k - 1, k - 1));
        if (k >= 2) {
            std::vector<Elt> C(k - 1);
            for (int i = 0; i < k - 1; ++i) C[i] = entry(i, k - 1);
            std::vector<Elt> w = C;
            for (int i = 2; i <= k; ++i) {
                // svec[i] = -(R . w)
                Elt acc = zero();
                for (int j2 = 0; j2 < k - 1; ++j2)
                    acc = add(acc, mul(entry(k - 1, j2), w[j2]));
                svec[i] = neg(acc);
                if (i < k) {
                    // w = M_{k-1} * w (principal (k-1)x(k-1) block)
                    std::vector<Elt> nw(k - 1, zero());
                    for (int r2 = 0; r2 < k - 1; ++r2)
                        for (int c2 = 0; c2 < k - 1; ++c2)
                            nw[r2] = add(nw[r2], mul(entry(r2, c2), w[c2]));
                    w = std::move(nw);
                }
            }
        }
        // cp_new[d] = sum_i svec[i] * cp[d - i]  (polynomial multiply where
        // cp is the charpoly coefficient vector, degree descending by design)
        std::vector<Elt> ncp(k + 1, zero());
        for (int i = 0; i <= k; ++i) {
            if (i >= static_cast<int>(svec.size())) break;
            for (int j2 = 0; j2 < static_cast<int>(cp.size()); ++j2) {
                int d = i + j2;
                if (d <= k) ncp[d] = add(ncp[d], mul(svec[i], cp[j2]));
            }
        }
        cp = std::move(ncp);
    }
    // cp holds coefficients with cp[0] = leading (monic), cp[m] = constant:
    // convert to low-to-high
    Poly out(m + 1, zero());
    for (int i = 0; i <= m; ++i) out[m - i] = cp[i];
    pnorm(out);
    return out;
}

UnramBase::Elt UnramBase::resultant_monic(const Poly& h1, const Poly& h2) const {
    // Res(h1, h2) = prod h2(roots of h1) = det(h2(C_{h1})) = ±charpoly(0)
    // of the multiplication-by-h2(x) map in U[x]/(h1)
    Poly chi = charpoly_mod(pdivmod(h2, h1).second, h1);
    // det(M) = (-1)^m * charpoly(0) where charpoly = det(zI - M)
    Elt c0 = chi.empty() ? zero() : chi[0];
    if (pdeg(h1) % 2 == 1) c0 = neg(c0);
    return c0;
}

std::string UnramBase::elt_str(const Elt& a) const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < f_; ++i) {
        if (i) os << ",";
        os << mod(a[i], pN_).get_str();
    }
    os << "]";
    return os.str();
}

std::string UnramBase::poly_str(const Poly& g) const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < g.size(); ++i) {
        if (i) os << " ";
        os << elt_str(g[i]);
    }
    os << ")";
    return os.str();
}

} // namespace twocover
