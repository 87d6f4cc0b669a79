#include "twocover/residue.hpp"
#include "twocover/errors.hpp"
#include "twocover/f2.hpp"

#include <algorithm>
#include <sstream>

namespace twocover {

ResidueField::ResidueField(Integer p, int f) : p_(std::move(p)), f_(f) {
    if (f_ < 1) throw DimensionMismatch("ResidueField degree must be >= 1");
    q_ = twocover::pow(p_, static_cast<unsigned long>(f_));
    build_modulus();
}

ZPoly ResidueField::modulus_lift() const {
    std::vector<Integer> c(psi_tail_);
    c.push_back(1);
    return ZPoly(std::move(c));
}

ResidueField::Elt ResidueField::one() const {
    Elt e = zero();
    e[0] = 1;
    return e;
}

ResidueField::Elt ResidueField::gen() const {
    Elt e = zero();
    if (f_ == 1) e[0] = mod(Integer(1), p_);  // generator degenerate for f=1
    else e[1] = 1;
    return e;
}

bool ResidueField::is_zero(const Elt& a) const {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

ResidueField::Elt ResidueField::from_integer(const Integer& n) const {
    Elt e = zero();
    e[0] = mod(n, p_);
    return e;
}

ResidueField::Elt ResidueField::reduce_vec(std::vector<Integer> c) const {
    // reduce modulo psi (monic): u^f = -tail
    for (size_t i = c.size(); i-- > static_cast<size_t>(f_);) {
        Integer t = mod(c[i], p_);
        if (t != 0)
            for (int j = 0; j < f_; ++j)
                c[i - f_ + j] -= t * psi_tail_[j];
        c[i] = 0;
    }
    Elt e(f_, Integer(0));
    for (int i = 0; i < f_ && i < static_cast<int>(c.size()); ++i) e[i] = mod(c[i], p_);
    return e;
}

ResidueField::Elt ResidueField::from_coeffs(std::vector<Integer> c) const {
    return reduce_vec(std::move(c));
}

ResidueField::Elt ResidueField::by_index(const Integer& idx) const {
    Elt e = zero();
    Integer n = mod(idx, q_);
    for (int i = 0; i < f_; ++i) {
        e[i] = mod(n, p_);
        n /= p_;
    }
    return e;
}

ResidueField::Elt ResidueField::add(const Elt& a, const Elt& b) const {
    Elt e(f_);
    for (int i = 0; i < f_; ++i) e[i] = mod(a[i] + b[i], p_);
    return e;
}

ResidueField::Elt ResidueField::sub(const Elt& a, const Elt& b) const {
    Elt e(f_);
    for (int i = 0; i < f_; ++i) e[i] = mod(a[i] - b[i], p_);
    return e;
}

ResidueField::Elt ResidueField::neg(const Elt& a) const {
    Elt e(f_);
    for (int i = 0; i < f_; ++i) e[i] = mod(-a[i], p_);
    return e;
}

ResidueField::Elt ResidueField::mul(const Elt& a, const Elt& b) const {
    std::vector<Integer> c(2 * f_ - 1, Integer(0));
    for (int i = 0; i < f_; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < f_; ++j) c[i + j] += a[i] * b[j];
    }
    return reduce_vec(std::move(c));
}

ResidueField::Elt ResidueField::inv(const Elt& a) const {
    if (is_zero(a)) throw ZeroDivisor("ResidueField::inv(0)");
    return pow(a, q_ - 2);
}

ResidueField::Elt ResidueField::pow(Elt a, Integer e) const {
    if (is_zero(a)) return a;
    if (q_ > 2) e = mod(e, q_ - 1);
    Elt r = one();
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a);
        a = mul(a, a);
        e /= 2;
    }
    return r;
}

int ResidueField::quadratic_character(const Elt& a) const {
    if (is_zero(a)) return 0;
    if (p_ == 2) return 1;  // every element of F_{2^f} is a square
    Elt r = pow(a, (q_ - 1) / 2);
    if (eq(r, one())) return 1;
    return -1;
}

ResidueField::Elt ResidueField::sqrt(const Elt& a) const {
    if (is_zero(a)) return a;
    if (p_ == 2) return pow(a, q_ / 2);
    if (quadratic_character(a) != 1) throw ZeroDivisor("sqrt of nonsquare");
    // Tonelli-Shanks in F_q
    Integer Q = q_ - 1;
    int s = 0;
    while (mod(Q, 2) == 0) { Q /= 2; ++s; }
    if (s == 1) return pow(a, (q_ + 1) / 4);
    Elt z = find_nonsquare();
    Elt c = pow(z, Q);
    Elt x = pow(a, (Q + 1) / 2);
    Elt t = pow(a, Q);
    int m = s;
    while (!eq(t, one())) {
        // find least 0 < i < m with t^(2^i) = 1
        int i = 0;
        Elt tt = t;
        while (!eq(tt, one())) { tt = mul(tt, tt); ++i; }
        Elt b = c;
        for (int j = 0; j < m - i - 1; ++j) b = mul(b, b);
        x = mul(x, b);
        c = mul(b, b);
        t = mul(t, c);
        m = i;
    }
    return x;
}

ResidueField::Elt ResidueField::find_nonsquare() const {
    if (p_ == 2) throw ZeroDivisor("no nonsquares in characteristic 2");
    for (Integer idx = 2; idx < q_; ++idx) {
        Elt c = by_index(idx);
        if (quadratic_character(c) == -1) return c;
    }
    throw Error("find_nonsquare: exhausted field");
}

Integer ResidueField::trace_abs(const Elt& a) const {
    Elt t = a;
    Elt acc = a;
    for (int i = 1; i < f_; ++i) {
        t = frobenius(t);
        acc = add(acc, t);
    }
    // acc lies in F_p
    return acc[0];
}

ResidueField::Elt ResidueField::element_of_trace_one() const {
    for (Integer idx = 1; idx < q_; ++idx) {
        Elt c = by_index(idx);
        if (trace_abs(c) == 1) return c;
    }
    throw Error("element_of_trace_one: exhausted field");
}

bool ResidueField::artin_schreier_solve(const Elt& a, const Elt& c, Elt& t) const {
    if (p_ != 2) throw Error("artin_schreier_solve needs characteristic 2");
    // Map t -> t^2 + a t is F_2-linear; solve by Gaussian elimination on
    // the f x f matrix (plus the RHS c).
    F2Matrix m(f_, f_ + 1);
    for (int j = 0; j < f_; ++j) {
        Elt basis = zero();
        basis[j] = 1;
        Elt img = add(mul(basis, basis), mul(a, basis));
        for (int i = 0; i < f_; ++i)
            if (img[i] != 0) m.set(i, j, true);
    }
    for (int i = 0; i < f_; ++i)
        if (c[i] != 0) m.set(i, f_, true);
    m.rref();
    // check consistency and read off solution
    Elt sol = zero();
    for (int r = 0; r < f_; ++r) {
        int pivot = -1;
        for (int cc = 0; cc < f_; ++cc)
            if (m.get(r, cc)) { pivot = cc; break; }
        if (pivot < 0) {
            if (m.get(r, f_)) return false;  // 0 = 1
            continue;
        }
        if (m.get(r, f_)) sol[pivot] = 1;
    }
    t = sol;
    return true;
}

// ------------------------------------------------------------- poly layer

void ResidueField::pnormalize(Poly& g) const {
    while (!g.empty() && is_zero(g.back())) g.pop_back();
}

ResidueField::Poly ResidueField::pconst(const Elt& a) const {
    if (is_zero(a)) return {};
    return {a};
}

ResidueField::Poly ResidueField::pX() const { return {zero(), one()}; }

ResidueField::Poly ResidueField::padd(const Poly& a, const Poly& b) const {
    Poly r(std::max(a.size(), b.size()), zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = add(r[i], a[i]);
    for (size_t i = 0; i < b.size(); ++i) r[i] = add(r[i], b[i]);
    pnormalize(r);
    return r;
}

ResidueField::Poly ResidueField::psub(const Poly& a, const Poly& b) const {
    Poly r(std::max(a.size(), b.size()), zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = add(r[i], a[i]);
    for (size_t i = 0; i < b.size(); ++i) r[i] = sub(r[i], b[i]);
    pnormalize(r);
    return r;
}

ResidueField::Poly ResidueField::pmul(const Poly& a, const Poly& b) const {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (is_zero(a[i])) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = add(r[i + j], mul(a[i], b[j]));
    }
    pnormalize(r);
    return r;
}

ResidueField::Poly ResidueField::pscale(const Poly& a, const Elt& s) const {
    Poly r;
    r.reserve(a.size());
    for (const auto& c : a) r.push_back(mul(c, s));
    pnormalize(r);
    return r;
}

std::pair<ResidueField::Poly, ResidueField::Poly>
ResidueField::pdivmod(const Poly& a, const Poly& b) const {
    if (b.empty()) throw ZeroDivisor("residue poly division by zero");
    Poly r = a;
    pnormalize(r);
    int db = static_cast<int>(b.size()) - 1;
    int dr = static_cast<int>(r.size()) - 1;
    if (dr < db) return {Poly{}, r};
    Poly q(dr - db + 1, zero());
    Elt binv = inv(b.back());
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
    pnormalize(r);
    return {q, r};
}

ResidueField::Poly ResidueField::pgcd(Poly a, Poly b) const {
    pnormalize(a);
    pnormalize(b);
    while (!b.empty()) {
        Poly r = pmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return pmonic(a);
}

ResidueField::Poly ResidueField::pmonic(const Poly& a) const {
    if (a.empty()) return a;
    return pscale(a, inv(a.back()));
}

ResidueField::Poly ResidueField::pderiv(const Poly& a) const {
    if (a.size() <= 1) return {};
    Poly r(a.size() - 1, zero());
    for (size_t i = 1; i < a.size(); ++i) {
        Elt c = a[i];
        Integer k(static_cast<long>(i));
        Elt ik = from_integer(k);
        r[i - 1] = mul(c, ik);
    }
    pnormalize(r);
    return r;
}

ResidueField::Poly ResidueField::ppowmod(const Poly& base, const Integer& e, const Poly& m) const {
    Poly r = pone();
    Poly b = pmod(base, m);
    Integer ee = e;
    while (ee > 0) {
        if (mpz_odd_p(ee.get_mpz_t())) r = pmod(pmul(r, b), m);
        b = pmod(pmul(b, b), m);
        ee /= 2;
    }
    return r;
}

ResidueField::Elt ResidueField::peval(const Poly& a, const Elt& x) const {
    Elt r = zero();
    for (size_t i = a.size(); i-- > 0;) r = add(mul(r, x), a[i]);
    return r;
}

ResidueField::Poly ResidueField::pshift(const Poly& a, const Elt& c) const {
    // Horner in (x + c)
    Poly r;
    Poly xc{c, one()};
    for (size_t i = a.size(); i-- > 0;) r = padd(pmul(r, xc), pconst(a[i]));
    return r;
}

ResidueField::Poly ResidueField::from_zpoly(const ZPoly& g) const {
    Poly r;
    r.reserve(g.coeffs().size());
    for (const auto& c : g.coeffs()) r.push_back(from_integer(c));
    pnormalize(r);
    return r;
}

ResidueField::Poly ResidueField::pfrobenius_coeffs(const Poly& a) const {
    Poly r;
    r.reserve(a.size());
    for (const auto& c : a) r.push_back(frobenius(c));
    return r;
}

bool ResidueField::pirreducible(const Poly& g) const {
    int n = pdeg(g);
    if (n <= 0) return false;
    if (n == 1) return true;
    // incremental distinct-degree sieve with early exit: g is irreducible
    // iff it is squarefree with no factor of degree <= n/2
    if (pdeg(pgcd(g, pderiv(g))) != 0) return false;
    Poly x = pX();
    Poly h = x;
    for (int i = 1; 2 * i <= n; ++i) {
        h = ppowmod(h, q_, g);
        Poly d = pgcd(psub(h, x), g);
        if (pdeg(d) != 0) return false;
    }
    return true;
}

void ResidueField::build_modulus() {
    if (f_ == 1) {
        psi_tail_ = {Integer(0)};  // psi = u (placeholder, unused)
        return;
    }
    // enumerate monic tails in lexicographic order (c_{f-1},...,c_0)
    ResidueField fp(p_, 1);
    for (Integer n = 0;; ++n) {
        std::vector<Integer> tail(f_);
        Integer m = n;
        for (int i = 0; i < f_; ++i) { tail[i] = mod(m, p_); m /= p_; }
        if (m != 0) throw Error("no irreducible found (impossible)");
        // candidate psi = u^f + tail
        Poly g;
        for (int i = 0; i < f_; ++i) g.push_back(fp.from_integer(tail[i]));
        g.push_back(fp.one());
        if (fp.pirreducible(g)) {
            psi_tail_ = tail;
            return;
        }
    }
}

// squarefree decomposition in characteristic p
std::vector<std::pair<ResidueField::Poly, int>>
ResidueField::squarefree_decompose(Poly g) const {
    std::vector<std::pair<Poly, int>> out;
    g = pmonic(g);
    if (pdeg(g) <= 0) return out;
    Poly d = pgcd(g, pderiv(g));
    Poly w = pdivmod(g, d).first;
    int i = 1;
    while (pdeg(w) > 0) {
        Poly y = pgcd(w, d);
        Poly z = pdivmod(w, y).first;
        if (pdeg(z) > 0) out.emplace_back(z, i);
        w = y;
        d = pdivmod(d, y).first;
        ++i;
    }
    if (pdeg(d) > 0) {
        // d = h(x^p): take p-th root and recurse
        Poly h = pth_root_poly(d);
        auto sub = squarefree_decompose(h);
        long pl = p_.get_si();
        for (auto& [f, m] : sub) out.emplace_back(f, m * static_cast<int>(pl));
    }
    return out;
}

ResidueField::Poly ResidueField::pth_root_poly(const Poly& g) const {
    // g = sum a_i x^{p i}; p-th root has coefficients a_i^{p^{f-1}}
    Poly r;
    long pl = p_.get_si();
    for (size_t i = 0; i < g.size(); i += static_cast<size_t>(pl)) {
        Elt c = g[i];
        for (int k = 0; k < f_ - 1; ++k) c = frobenius(c);
        r.push_back(c);
    }
    pnormalize(r);
    return r;
}

void ResidueField::ddf_edf(const Poly& g, int mult, std::vector<std::pair<Poly, int>>& out) const {
    // distinct-degree then equal-degree on squarefree monic g
    int n = pdeg(g);
    if (n <= 0) return;
    Poly rem = g;
    Poly x = pX();
    Poly h = x;  // x^{q^d} mod g, updated
    for (int d = 1; pdeg(rem) >= 2 * d; ++d) {
        h = ppowmod(h, q_, rem);
        Poly gd = pgcd(psub(h, x), rem);
        if (pdeg(gd) > 0) {
            // split gd into irreducibles of degree d
            std::vector<Poly> stack{gd};
            uint64_t seed = fnv1a(poly_str(gd)) ^ static_cast<uint64_t>(d);
            SplitMix64 rng(seed);
            while (!stack.empty()) {
                Poly h2 = stack.back();
                stack.pop_back();
                if (pdeg(h2) == d) {
                    out.emplace_back(pmonic(h2), mult);
                    continue;
                }
                // random splitting element
                Poly r;
                int dr = pdeg(h2) - 1;
                for (int i = 0; i <= dr; ++i) r.push_back(by_index(Integer(rng.next()) % q_));
                pnormalize(r);
                if (r.empty()) { stack.push_back(h2); continue; }
                Poly spl;
                if (p_ == 2) {
                    // absolute trace over F_2 of the residue ring
                    Poly t = pmod(r, h2);
                    Poly acc = t;
                    long total = static_cast<long>(f_) * d;
                    for (long i = 1; i < total; ++i) {
                        t = pmod(pmul(t, t), h2);
                        acc = padd(acc, t);
                    }
                    spl = acc;
                } else {
                    Integer e = (twocover::pow(q_, static_cast<unsigned long>(d)) - 1) / 2;
                    spl = psub(ppowmod(r, e, h2), pone());
                }
                Poly d1 = pgcd(spl, h2);
                if (pdeg(d1) <= 0 || pdeg(d1) == pdeg(h2)) {
                    stack.push_back(h2);  // retry with new random element
                    continue;
                }
                stack.push_back(d1);
                stack.push_back(pdivmod(h2, d1).first);
            }
            rem = pdivmod(rem, gd).first;
            h = pmod(h, rem);
        }
    }
    if (pdeg(rem) > 0) out.emplace_back(pmonic(rem), mult);
}

std::vector<std::pair<ResidueField::Poly, int>> ResidueField::pfactor(const Poly& g) const {
    std::vector<std::pair<Poly, int>> out;
    Poly gg = g;
    pnormalize(gg);
    if (pdeg(gg) <= 0) return out;
    auto sqf = squarefree_decompose(gg);
    for (const auto& [h, m] : sqf) ddf_edf(h, m, out);
    // deterministic order: by degree then by coefficient tuples
    std::sort(out.begin(), out.end(), [this](const auto& A, const auto& B) {
        if (A.first.size() != B.first.size()) return A.first.size() < B.first.size();
        for (size_t i = A.first.size(); i-- > 0;) {
            for (int j = f_ - 1; j >= 0; --j) {
                if (A.first[i][j] != B.first[i][j]) return A.first[i][j] < B.first[i][j];
            }
        }
        return A.second < B.second;
    });
    return out;
}

std::vector<ResidueField::Elt> ResidueField::proots(const Poly& g) const {
    std::vector<Elt> roots;
    for (const auto& [f, m] : pfactor(g)) {
        if (pdeg(f) == 1) {
            // x + c = 0 -> root = -c (monic)
            roots.push_back(neg(f[0]));
        }
    }
    return roots;
}

std::string ResidueField::elt_str(const Elt& a) const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < f_; ++i) {
        if (i) os << ",";
        os << a[i].get_str();
    }
    os << "]";
    return os.str();
}

std::string ResidueField::poly_str(const Poly& g) const {
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
