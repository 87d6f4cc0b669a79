#include "twocover/completion.hpp"
#include "twocover/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>

namespace twocover {

namespace {

// division-free Berkowitz characteristic polynomial of an integer matrix,
// all arithmetic mod m; returns coefficients low-to-high of det(zI - M)
std::vector<Integer> berkowitz_int(const std::vector<std::vector<Integer>>& M, const Integer& m) {
    int n = static_cast<int>(M.size());
    auto red = [&](const Integer& x) { return mod(x, m); };
    std::vector<Integer> cp{Integer(1)};
    for (int k = 1; k <= n; ++k) {
        std::vector<Integer> svec(k + 1, Integer(0));
        svec[0] = 1;
        svec[1] = red(-M[k - 1][k - 1]);
        if (k >= 2) {
            std::vector<Integer> w(k - 1);
            for (int i = 0; i < k - 1; ++i) w[i] = M[i][k - 1];
            for (int i = 2; i <= k; ++i) {
                Integer acc = 0;
                for (int j = 0; j < k - 1; ++j) acc += M[k - 1][j] * w[j];
                svec[i] = red(-acc);
                if (i < k) {
                    std::vector<Integer> nw(k - 1, Integer(0));
                    for (int r = 0; r < k - 1; ++r) {
                        Integer s = 0;
                        for (int c = 0; c < k - 1; ++c) s += M[r][c] * w[c];
                        nw[r] = red(s);
                    }
                    w = std::move(nw);
                }
            }
        }
        std::vector<Integer> ncp(k + 1, Integer(0));
        for (int i = 0; i <= k; ++i)
            for (int j = 0; j < static_cast<int>(cp.size()); ++j) {
                int d = i + j;
                if (d <= k) ncp[d] = red(ncp[d] + svec[i] * cp[j]);
            }
        cp = std::move(ncp);
    }
    // cp[0] = leading; convert to low-to-high
    std::vector<Integer> out(n + 1);
    for (int i = 0; i <= n; ++i) out[n - i] = cp[i];
    return out;
}

} // namespace

LocalField::LocalField(std::shared_ptr<const UnramBase> base, UnramBase::Poly eisenstein)
    : base_(std::move(base)), E_(std::move(eisenstein)) {
    e_ = base_->pdeg(E_);
    if (e_ < 1) throw DimensionMismatch("LocalField: Eisenstein degree < 1");
    if (!base_->eq(E_.back(), base_->one()))
        throw Error("LocalField: Eisenstein polynomial not monic");
    for (int i = 0; i < e_; ++i)
        if (base_->val(E_[i]) < 1)
            throw Error("LocalField: defining polynomial not Eisenstein");
    if (base_->val(E_[0]) != 1)
        throw Error("LocalField: constant term valuation != 1");
    w2_ = (p() == 2) ? e_ : 0;
    // omega = pi^e / p = -(sum E_i pi^i)/p as a K element
    omega_k_.assign(e_, base_->zero());
    for (int i = 0; i < e_; ++i)
        omega_k_[i] = base_->neg(base_->div_p(E_[i], 1));
}

LocalField LocalField::qp(const Integer& p, int N) {
    auto base = std::make_shared<UnramBase>(p, 1, N);
    UnramBase::Poly E{base->neg(base->from_int(p)), base->one()};
    return LocalField(base, E);
}

LocalField::Elt LocalField::zero() const { return Elt(e_, base_->zero()); }

LocalField::Elt LocalField::one() const {
    Elt x = zero();
    x[0] = base_->one();
    return x;
}

LocalField::Elt LocalField::pi() const {
    Elt x = zero();
    if (e_ == 1) {
        // pi = root of x + E_0, i.e. -E_0 (valuation 1 in U)
        x[0] = base_->neg(E_[0]);
    } else {
        x[1] = base_->one();
    }
    return x;
}

LocalField::Elt LocalField::from_U(const UnramBase::Elt& a) const {
    Elt x = zero();
    x[0] = a;
    return x;
}

LocalField::Elt LocalField::from_int(const Integer& n) const {
    return from_U(base_->from_int(n));
}

LocalField::Elt LocalField::from_rational_unit(const Rational& r, int& wval) const {
    if (r == 0) throw ZeroDivisor("from_rational_unit(0)");
    Integer num(r.get_num()), den(r.get_den());
    long vn = num == 0 ? 0 : valuation(num, p());
    long vd = valuation(den, p());
    Integer nu = divexact(num, twocover::pow(p(), static_cast<unsigned long>(vn)));
    Integer du = divexact(den, twocover::pow(p(), static_cast<unsigned long>(vd)));
    wval = static_cast<int>(vn - vd) * e_;
    Integer u = mod(nu * invmod(du, base_->pN()), base_->pN());
    return from_int(u);
}

bool LocalField::is_zero(const Elt& a) const {
    for (const auto& c : a)
        if (!base_->is_zero(c)) return false;
    return true;
}

bool LocalField::eq(const Elt& a, const Elt& b) const { return is_zero(sub(a, b)); }

bool LocalField::eq_mod_pi(const Elt& a, const Elt& b, int k) const {
    Elt d = sub(a, b);
    if (is_zero(d)) return true;
    // valuation of d at least k?
    for (int i = 0; i < e_; ++i) {
        int vc = base_->val(d[i]);
        if (vc >= base_->N()) continue;
        if (e_ * vc + i < k) return false;
    }
    return true;
}

LocalField::Elt LocalField::add(const Elt& a, const Elt& b) const {
    Elt r(e_);
    for (int i = 0; i < e_; ++i) r[i] = base_->add(a[i], b[i]);
    return r;
}

LocalField::Elt LocalField::sub(const Elt& a, const Elt& b) const {
    Elt r(e_);
    for (int i = 0; i < e_; ++i) r[i] = base_->sub(a[i], b[i]);
    return r;
}

LocalField::Elt LocalField::neg(const Elt& a) const {
    Elt r(e_);
    for (int i = 0; i < e_; ++i) r[i] = base_->neg(a[i]);
    return r;
}

LocalField::Elt LocalField::mul(const Elt& a, const Elt& b) const {
    // schoolbook then reduce by E (monic)
    std::vector<UnramBase::Elt> c(2 * e_ - 1, base_->zero());
    for (int i = 0; i < e_; ++i) {
        if (base_->is_zero(a[i])) continue;
        for (int j = 0; j < e_; ++j)
            c[i + j] = base_->add(c[i + j], base_->mul(a[i], b[j]));
    }
    for (int i = 2 * e_ - 2; i >= e_; --i) {
        if (base_->is_zero(c[i])) continue;
        UnramBase::Elt t = c[i];
        for (int j = 0; j < e_; ++j)
            c[i - e_ + j] = base_->sub(c[i - e_ + j], base_->mul(t, E_[j]));
        c[i] = base_->zero();
    }
    c.resize(e_);
    return c;
}

LocalField::Elt LocalField::pow(Elt a, Integer k) const {
    Elt r = one();
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = mul(r, a);
        a = mul(a, a);
        k /= 2;
    }
    return r;
}

int LocalField::val(const Elt& a) const {
    int best = e_ * base_->N();
    for (int i = 0; i < e_; ++i) {
        int vc = base_->val(a[i]);
        if (vc >= base_->N()) continue;
        best = std::min(best, e_ * vc + i);
    }
    if (best >= e_ * base_->N())
        throw PrecisionExhausted("val: element is zero to working precision");
    return best;
}

LocalField::Elt LocalField::mul_pi(const Elt& a, int k) const {
    Elt r = a;
    int q = k / e_, s = k % e_;
    if (q > 0) {
        // pi^e = p * omega
        for (auto& c : r) c = base_->mul_p(c, q);
        for (int t = 0; t < q; ++t) r = mul(r, omega_k_);
    }
    for (int t = 0; t < s; ++t) {
        // multiply by pi once: shift and reduce
        Elt nr = zero();
        for (int i = 0; i < e_ - 1; ++i) nr[i + 1] = r[i];
        // top coefficient wraps: r[e-1] * pi^e = r[e-1] * (-tail)
        const UnramBase::Elt& top = r[e_ - 1];
        if (!base_->is_zero(top))
            for (int j = 0; j < e_; ++j)
                nr[j] = base_->sub(nr[j], base_->mul(top, E_[j]));
        r = nr;
    }
    return r;
}

LocalField::Elt LocalField::div_pi(const Elt& a, int k) const {
    Elt r = a;
    int q = k / e_, s = k % e_;
    if (q > 0) {
        // 1/pi^e = omega^{-1}/p
        for (auto& c : r) c = base_->div_p(c, q);
        const Elt& oinv = omega_inv();
        for (int t = 0; t < q; ++t) r = mul(r, oinv);
    }
    for (int t = 0; t < s; ++t) {
        // divide by pi once: constant coordinate must be divisible by p
        UnramBase::Elt c0 = base_->div_p(r[0], 1);  // throws if inexact
        Elt down = zero();
        for (int i = 1; i < e_; ++i) down[i - 1] = r[i];
        // c0 * p / pi = c0 * pi^{e-1} * omega^{-1}... use omega: p = pi^e/omega
        // so c0/pi = c0 * (p/pi) / p = (c0/p) * pi^{e-1} * omega^{-1}
        Elt corr = mul(from_U(c0), p_over_pi());
        r = add(down, corr);
    }
    return r;
}

const LocalField::Elt& LocalField::omega_inv() const {
    if (omega_inv_.empty()) omega_inv_ = inv_unit(omega_k_);
    return omega_inv_;
}

// p / pi = pi^{e-1} * omega^{-1}, an integral element (cached)
const LocalField::Elt& LocalField::p_over_pi() const {
    if (p_over_pi_.empty()) p_over_pi_ = mul_pi(omega_inv(), e_ - 1);
    return p_over_pi_;
}

LocalField::Elt LocalField::unit_part(const Elt& a, int& w) const {
    w = val(a);
    return div_pi(a, w);
}

LocalField::Elt LocalField::inv_unit(const Elt& a) const {
    auto r0 = residue(a);
    if (res().is_zero(r0)) throw ZeroDivisor("inv_unit: not a unit");
    Elt x = lift_res(res().inv(r0));
    int prec = 1;
    int target = precision();
    while (prec < target) {
        Elt t = sub(from_int(2), mul(a, x));
        x = mul(x, t);
        prec *= 2;
    }
    return x;
}

ResidueField::Elt LocalField::residue(const Elt& a) const { return base_->residue(a[0]); }

LocalField::Elt LocalField::lift_res(const ResidueField::Elt& r) const {
    return from_U(base_->lift(r));
}

LocalField::Elt LocalField::eval_zpoly(const ZPoly& g, const Elt& x) const {
    Elt r = zero();
    for (size_t i = g.coeffs().size(); i-- > 0;)
        r = add(mul(r, x), from_int(g.coeff(static_cast<int>(i))));
    return r;
}

LocalField::Elt LocalField::polish_root(const ZPoly& g, Elt x) const {
    ZPoly dg = g.derivative();
    for (int iter = 0; iter < 64; ++iter) {
        Elt fx = eval_zpoly(g, x);
        if (is_zero(fx)) return x;
        Elt dfx = eval_zpoly(dg, x);
        int wd = val(dfx);
        int wf = val(fx);
        if (wf <= 2 * wd) throw PrecisionExhausted("polish_root: Newton not contracting");
        Elt du = div_pi(dfx, wd);
        Elt step = div_pi(mul(fx, inv_unit(du)), wd);
        x = sub(x, step);
    }
    if (!is_zero(eval_zpoly(g, x)))
        throw PrecisionExhausted("polish_root: no convergence");
    return x;
}

// ----------------------------------------------------------- square classes

int LocalField::sqclass_dim() const {
    return p() == 2 ? degree() + 2 : 2;
}

ResidueField::Elt LocalField::two_unit_residue() const {
    Elt two = from_int(2);
    return residue(div_pi(two, w2_));
}

void LocalField::build_sqclass() const {
    if (!sqbasis_.empty()) return;
    std::vector<Elt> basis;
    basis.push_back(pi());
    if (p() != 2) {
        basis.push_back(lift_res(res().find_nonsquare()));
    } else {
        // 1 + u^j pi^k for odd k in [1, 2e), then the Artin-Schreier level rep
        for (int k = 1; k < 2 * e_; k += 2) {
            for (int j = 0; j < f(); ++j) {
                ResidueField::Elt uj = res().pow(res().gen(), Integer(j));
                if (j == 0) uj = res().one();
                Elt rep = add(one(), mul_pi(lift_res(uj), k));
                basis.push_back(rep);
            }
        }
        // eta: residue class outside the image of t -> t^2 + abar t
        auto abar = two_unit_residue();
        ResidueField::Elt eta;
        bool found = false;
        for (Integer idx = 1; idx < res().q(); ++idx) {
            ResidueField::Elt c = res().by_index(idx);
            ResidueField::Elt t;
            if (!res().artin_schreier_solve(abar, c, t)) {
                eta = c;
                found = true;
                break;
            }
        }
        if (!found) throw Error("sqclass: Artin-Schreier image is everything?");
        as_coset_rep_ = eta;
        basis.push_back(add(one(), mul_pi(lift_res(eta), 2 * e_)));
    }
    sqbasis_ = std::move(basis);
}

const std::vector<LocalField::Elt>& LocalField::sqclass_basis() const {
    build_sqclass();
    return sqbasis_;
}

F2Vec LocalField::decompose_unit_dyadic(Elt y, std::vector<Elt>* stages) const {
    build_sqclass();
    const int D = sqclass_dim();
    F2Vec bits(D, 0);
    // position helper: bit 0 is pi; unit bits follow in (k odd, j) order,
    // AS bit last
    auto pos = [&](int k, int j) { return 1 + (k / 2) * f() + j; };
    const int as_pos = D - 1;

    // normalize residue to 1
    auto r0 = residue(y);
    auto s = res().sqrt(r0);
    Elt sl = lift_res(s);
    y = mul(y, inv_unit(mul(sl, sl)));
    Elt sacc = sl;
    if (stages) stages->push_back(sacc);

    const int cap = 2 * e_;
    int guard = 0;
    while (true) {
        if (++guard > 8 * e_ + 32) throw NonTermination("dyadic unit walk stalled");
        Elt delta = sub(y, one());
        if (is_zero(delta)) break;
        int k;
        try {
            k = val(delta);
        } catch (const PrecisionExhausted&) {
            break;  // y = 1 to precision
        }
        if (k > cap) break;  // square by Hensel
        auto cbar = residue(div_pi(delta, k));
        if (std::getenv("WALK_TRACE"))
            std::cerr << "[walk] k=" << k << " cbar=" << res().elt_str(cbar) << "\n";
        if (k % 2 == 1) {
            // obstruction level: record coordinates and divide by the actual
            // product of basis representatives (not by 1 + c pi^k, which
            // differs from the product by deeper units)
            Elt corr = one();
            for (int j = 0; j < f(); ++j) {
                if (cbar[j] == 0) continue;
                bits[pos(k, j)] ^= 1;
                ResidueField::Elt uj = j == 0 ? res().one() : res().pow(res().gen(), Integer(j));
                corr = mul(corr, add(one(), mul_pi(lift_res(uj), k)));
            }
            y = mul(y, inv_unit(corr));
        } else if (k < cap) {
            auto t = res().sqrt(cbar);
            Elt corr = add(one(), mul_pi(lift_res(t), k / 2));
            y = mul(y, inv_unit(mul(corr, corr)));
            sacc = mul(sacc, corr);
            if (stages) stages->push_back(sacc);
        } else {
            // k == 2e: Artin-Schreier level
            auto abar = two_unit_residue();
            ResidueField::Elt t;
            if (!res().artin_schreier_solve(abar, cbar, t)) {
                bits[as_pos] ^= 1;
                Elt corr = add(one(), mul_pi(lift_res(*as_coset_rep_), cap));
                y = mul(y, inv_unit(corr));
                Elt delta2 = sub(y, one());
                if (is_zero(delta2)) break;
                int k2 = val(delta2);
                if (k2 > cap) break;
                if (k2 < cap) continue;
                cbar = residue(div_pi(delta2, cap));
                if (!res().artin_schreier_solve(abar, cbar, t))
                    throw Error("dyadic walk: coset correction failed");
            }
            Elt corr = add(one(), mul_pi(lift_res(t), e_));
            y = mul(y, inv_unit(mul(corr, corr)));
            sacc = mul(sacc, corr);
            if (stages) stages->push_back(sacc);
        }
    }
    return bits;
}

F2Vec LocalField::decompose(const Elt& x) const {
    build_sqclass();
    const int D = sqclass_dim();
    int w = val(x);
    Elt u = div_pi(x, w);
    if (p() != 2) {
        F2Vec bits(D, 0);
        bits[0] = static_cast<uint8_t>(w & 1);
        int chi = res().quadratic_character(residue(u));
        if (chi == 0) throw PrecisionExhausted("decompose: unit has zero residue");
        bits[1] = chi == -1 ? 1 : 0;
        return bits;
    }
    if (precision() < w + 2 * w2_ + 2)
        throw PrecisionExhausted("decompose: not enough dyadic precision");
    F2Vec bits = decompose_unit_dyadic(u);
    bits[0] = static_cast<uint8_t>(w & 1);
    return bits;
}

bool LocalField::is_square(const Elt& x) const {
    return f2_is_zero(decompose(x));
}

bool LocalField::is_square_rational(const Rational& r) const {
    if (r == 0) throw ZeroDivisor("is_square_rational(0)");
    int wv = 0;
    Elt u = from_rational_unit(r, wv);
    Elt x = mul_pi(u, wv);
    return is_square(x);
}

F2Vec LocalField::unramified_class_bits() const {
    if (!unram_bits_) {
        if (p() != 2) {
            F2Vec b(sqclass_dim(), 0);
            b[1] = 1;
            unram_bits_ = b;
        } else {
            // 1 - 4 s with Tr(s) = 1 generates the unramified quadratic ext
            auto s = res().element_of_trace_one();
            Elt delta = sub(one(), mul(from_int(4), lift_res(s)));
            unram_bits_ = decompose(delta);
            if (f2_is_zero(*unram_bits_))
                throw Error("unramified class decomposed to a square");
        }
    }
    return *unram_bits_;
}

UnramBase::Elt LocalField::norm_to_U(const Elt& x) const {
    UnramBase::Poly xp = x;
    base_->pnorm(xp);
    return base_->resultant_monic(E_, xp);
}

LocalField::QpVal LocalField::norm_to_qp(const Elt& x) const {
    int w = val(x);
    Elt u = div_pi(x, w);
    UnramBase::Elt nu = norm_to_U(u);  // a unit of O_U
    // norm from U to Q_p: determinant of multiplication matrix
    Integer unit;
    if (f() == 1) {
        unit = mod(nu[0], base_->pN());
    } else {
        int ff = f();
        std::vector<std::vector<Integer>> M(ff, std::vector<Integer>(ff, Integer(0)));
        UnramBase::Elt cur = nu;
        for (int j = 0; j < ff; ++j) {
            for (int i = 0; i < ff; ++i) M[i][j] = cur[i];
            if (j + 1 < ff) {
                // multiply by u
                std::vector<Integer> c(ff + 1, Integer(0));
                for (int i = 0; i < ff; ++i) c[i + 1] = cur[i];
                cur = base_->reduce(std::move(c));
            }
        }
        auto chi = berkowitz_int(M, base_->pN());
        unit = mod((ff % 2 == 1) ? Integer(-chi[0]) : chi[0], base_->pN());
    }
    return QpVal{w * f(), unit};
}

// ------------------------------------------------------------------ symbols

namespace {
// tame symbol bit over residue field R: (pi^alpha u, pi^beta w)
int tame_bit(const ResidueField& R, int alpha, const ResidueField::Elt& u,
             int beta, const ResidueField::Elt& w) {
    int bit = 0;
    if (beta % 2 != 0 && R.quadratic_character(u) == -1) bit ^= 1;
    if (alpha % 2 != 0 && R.quadratic_character(w) == -1) bit ^= 1;
    if (alpha % 2 != 0 && beta % 2 != 0 &&
        R.quadratic_character(R.neg(R.one())) == -1)
        bit ^= 1;
    return bit;
}
} // namespace

void LocalField::build_gram() const {
    if (gram_) return;
    build_sqclass();
    const int D = sqclass_dim();
    F2Matrix G(D, D);
    if (p() != 2) {
        // basis {pi, u_nr}: Gram = [[chi(-1) bit, 1], [1, 0]]
        int m11 = res().quadratic_character(res().neg(res().one())) == -1 ? 1 : 0;
        G.set(0, 0, m11);
        G.set(0, 1, true);
        G.set(1, 0, true);
        gram_ = G;
        return;
    }
    // dyadic: for each basis element a, span the square classes of norms
    // from K(sqrt(a)) and read the orthogonal hyperplane.  The span is grown
    // incrementally with an early exit at the index-2 bound.
    struct SpanBuilder {
        std::vector<F2Vec> rows;  // row-reduced
        int dim = 0;
        bool add(F2Vec v) {
            for (const auto& r : rows) {
                size_t pc = 0;
                while (pc < r.size() && !r[pc]) ++pc;
                if (pc < v.size() && v[pc]) v = f2_add(v, r);
            }
            if (f2_is_zero(v)) return false;
            rows.push_back(v);
            ++dim;
            // keep rows sorted by pivot for the reduction above
            std::sort(rows.begin(), rows.end(), [](const F2Vec& x, const F2Vec& y) {
                size_t px = 0, py = 0;
                while (px < x.size() && !x[px]) ++px;
                while (py < y.size() && !y[py]) ++py;
                return px < py;
            });
            return true;
        }
        bool contains(F2Vec v) const {
            for (const auto& r : rows) {
                size_t pc = 0;
                while (pc < r.size() && !r[pc]) ++pc;
                if (pc < v.size() && v[pc]) v = f2_add(v, r);
            }
            return f2_is_zero(v);
        }
    };
    std::vector<SpanBuilder> spans;
    for (int i = 0; i < D; ++i) {
        const Elt& a = sqbasis_[i];
        SpanBuilder H;
        H.add(decompose(neg(a)));
        auto add_probe = [&](const Elt& t) {
            if (H.dim >= D - 1) return;
            Elt n = sub(one(), mul(a, mul(t, t)));
            try {
                int wn = val(n);
                if (wn + 2 * w2_ + 2 <= precision()) H.add(decompose(n));
            } catch (const PrecisionExhausted&) {
            }
        };
        auto res_basis = [&](int j) {
            return j == 0 ? res().one() : res().pow(res().gen(), Integer(j));
        };
        for (int k = 0; k <= 2 * e_ + 2 && H.dim < D - 1; ++k)
            for (int j = 0; j < f(); ++j)
                add_probe(mul_pi(lift_res(res_basis(j)), k));
        // near-square-root probes: walk the defect of the unit part of a and
        // probe around the partial square roots, which produces norms whose
        // classes live at the deep filtration levels
        if (H.dim < D - 1) {
            int wa = val(a);
            Elt ua = div_pi(a, wa);
            std::vector<Elt> stages;
            decompose_unit_dyadic(ua, &stages);
            // deepest stages carry the most information
            std::reverse(stages.begin(), stages.end());
            if (stages.size() > 6) stages.resize(6);
            for (const Elt& st : stages) {
                if (H.dim >= D - 1) break;
                Elt t0 = inv_unit(st);
                if (wa % 2 != 0) add_probe(t0);
                for (int k = 0; k <= 2 * e_ + 2 && H.dim < D - 1; ++k)
                    for (int j = 0; j < f(); ++j) {
                        Elt c = lift_res(res_basis(j));
                        add_probe(mul(t0, add(one(), mul_pi(c, k))));
                        add_probe(mul(t0, mul_pi(c, k)));
                    }
            }
        }
        if (H.dim < D - 1) {
            // escalation: two-term probes
            for (int k = 0; k <= 2 * e_ + 2 && H.dim < D - 1; ++k)
                for (int j1 = 0; j1 < f() && H.dim < D - 1; ++j1)
                    for (int j2 = 0; j2 < f(); ++j2) {
                        Elt t = add(lift_res(res_basis(j1)), mul_pi(lift_res(res_basis(j2)), 1));
                        add_probe(mul_pi(t, k));
                        if (H.dim >= D - 1) break;
                    }
        }
        if (H.dim != D - 1) {
            if (f2_is_zero(decompose(a)))
                throw Error("hilbert gram: basis element is a square");
            if (std::getenv("PF_TRACE"))
                std::cerr << "[gram] stall at basis " << i << " dim " << H.dim
                          << " of " << D - 1 << " (e=" << e_ << ", f=" << f() << ")\n";
            throw NonTermination("hilbert gram: norm span stalled below index 2");
        }
        spans.push_back(std::move(H));
    }
    for (int i = 0; i < D; ++i) {
        for (int j = 0; j < D; ++j) {
            F2Vec bj(D, 0);
            bj[j] = 1;
            G.set(i, j, !spans[static_cast<size_t>(i)].contains(bj));
        }
    }
    // self-checks: symmetry and nondegeneracy
    for (int i = 0; i < D; ++i)
        for (int j = i + 1; j < D; ++j)
            if (G.get(i, j) != G.get(j, i))
                throw Error("hilbert gram: asymmetric");
    if (G.rank() != static_cast<size_t>(D))
        throw Error("hilbert gram: degenerate");
    gram_ = G;
}

const F2Matrix& LocalField::hilbert_gram() const {
    build_gram();
    return *gram_;
}

int LocalField::hilbert_bits(const F2Vec& a, const F2Vec& b) const {
    build_gram();
    const F2Matrix& G = *gram_;
    int bit = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (b[j] && G.get(i, j)) bit ^= 1;
    }
    return bit;
}

int LocalField::hilbert(const Elt& a, const Elt& b) const {
    if (p() != 2) {
        int wa = val(a), wb = val(b);
        auto ua = residue(div_pi(a, wa));
        auto ub = residue(div_pi(b, wb));
        return tame_bit(res(), wa, ua, wb, ub);
    }
    return hilbert_bits(decompose(a), decompose(b));
}

const ZPoly& LocalField::defining_poly() const {
    if (defpoly_) return *defpoly_;
    const int d = degree();
    const int ff = f();
    // gamma = pi + c*u, searching c for a squarefree charpoly
    for (int c = (ff > 1 ? 1 : 0);; ++c) {
        Elt gamma = pi();
        if (ff > 1) {
            UnramBase::Elt cu = base_->gen();
            for (int t = 1; t < c; ++t) cu = base_->add(cu, base_->gen());
            gamma = add(gamma, from_U(cu));
        }
        // multiplication matrix on basis u^i pi^j (i < f, j < e)
        std::vector<std::vector<Integer>> M(d, std::vector<Integer>(d, Integer(0)));
        for (int j = 0; j < e_; ++j) {
            for (int i = 0; i < ff; ++i) {
                Elt b = zero();
                std::vector<Integer> uc(ff, Integer(0));
                uc[i] = 1;
                b[j] = base_->reduce(std::move(uc));
                Elt gb = mul(gamma, b);
                int col = j * ff + i;
                for (int j2 = 0; j2 < e_; ++j2)
                    for (int i2 = 0; i2 < ff; ++i2)
                        M[j2 * ff + i2][col] = gb[j2][i2];
            }
        }
        auto chi = berkowitz_int(M, base_->pN());
        // symmetric lift
        std::vector<Integer> lift(chi.size());
        for (size_t i = 0; i < chi.size(); ++i) {
            Integer v = mod(chi[i], base_->pN());
            if (2 * v > base_->pN()) v -= base_->pN();
            lift[i] = v;
        }
        ZPoly cand(std::move(lift));
        if (cand.degree() != d) continue;
        Integer disc = discriminant(cand);
        if (disc == 0) { if (c > 2 * d + 4) throw PrecisionExhausted("defining_poly: no primitive element"); continue; }
        long vd = valuation(disc, p());
        if (2 * vd + 2 < base_->N()) {
            defpoly_ = cand;
            return *defpoly_;
        }
        if (c > 2 * d + 4)
            throw PrecisionExhausted("defining_poly: discriminant valuation too large");
    }
}

std::string LocalField::elt_str(const Elt& a) const {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < e_; ++i) {
        if (i) os << " ";
        os << base_->elt_str(a[i]);
    }
    os << ")";
    return os.str();
}

} // namespace twocover
