#include "twocover/qpoly.hpp"
#include "twocover/modular.hpp"

#include <sstream>

namespace twocover {

// ---------------------------------------------------------------- QPoly

void QPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::monomial(int deg, const Rational& c) {
    if (c == 0) return QPoly();
    std::vector<Rational> v(deg + 1, Rational(0));
    v[deg] = c;
    return QPoly(std::move(v));
}

QPoly QPoly::from_int_coeffs(const std::vector<long>& c) {
    std::vector<Rational> v;
    v.reserve(c.size());
    for (long x : c) v.emplace_back(x);
    return QPoly(std::move(v));
}

const Rational& QPoly::coeff(int i) const {
    static const Rational zero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[static_cast<size_t>(i)];
}

QPoly QPoly::operator-() const {
    std::vector<Rational> v(c_);
    for (auto& x : v) x = -x;
    return QPoly(std::move(v));
}

QPoly QPoly::operator+(const QPoly& o) const {
    std::vector<Rational> v(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return QPoly(std::move(v));
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator*(const QPoly& o) const {
    if (is_zero() || o.is_zero()) return QPoly();
    std::vector<Rational> v(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    }
    return QPoly(std::move(v));
}

QPoly QPoly::operator*(const Rational& s) const {
    std::vector<Rational> v(c_);
    for (auto& x : v) x *= s;
    return QPoly(std::move(v));
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& o) const {
    if (o.is_zero()) throw ZeroDivisor("QPoly division by zero");
    std::vector<Rational> r(c_);
    int dr = static_cast<int>(r.size()) - 1;
    int dd = o.degree();
    if (dr < dd) return {QPoly(), *this};
    std::vector<Rational> q(dr - dd + 1, Rational(0));
    const Rational linv = Rational(1) / o.lc();
    while (dr >= dd) {
        Rational f = r[dr] * linv;
        if (f != 0) {
            q[dr - dd] = f;
            for (int i = 0; i <= dd; ++i) r[dr - dd + i] -= f * o.c_[i];
        }
        --dr;
        while (dr >= 0 && r[dr] == 0 && dr >= dd) --dr;
        r.resize(dr + 1);
    }
    return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly QPoly::monic() const {
    if (is_zero()) return *this;
    return *this * (Rational(1) / lc());
}

QPoly QPoly::derivative() const {
    if (c_.size() <= 1) return QPoly();
    std::vector<Rational> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return QPoly(std::move(v));
}

Rational QPoly::eval(const Rational& x) const {
    Rational r(0);
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

QPoly QPoly::shift(const Rational& a) const {
    // Horner: f(x+a)
    QPoly r;
    QPoly xa = QPoly::x() + QPoly(a);
    for (size_t i = c_.size(); i-- > 0;) r = r * xa + QPoly(c_[i]);
    return r;
}

QPoly QPoly::scale_arg(const Rational& c) const {
    std::vector<Rational> v(c_);
    Rational f(1);
    for (size_t i = 0; i < v.size(); ++i) {
        v[i] *= f;
        f *= c;
    }
    return QPoly(std::move(v));
}

QPoly QPoly::pow(unsigned e) const {
    QPoly r = QPoly::one(), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Rational QPoly::content() const {
    if (is_zero()) return Rational(0);
    Integer num_gcd = 0, den_lcm = 1;
    for (const auto& x : c_) {
        if (x == 0) continue;
        num_gcd = gcd(num_gcd, Integer(x.get_num()));
        den_lcm = lcm(den_lcm, Integer(x.get_den()));
    }
    Rational c = rational(num_gcd, den_lcm);
    if (lc() < 0) c = -c;
    return c;
}

ZPoly QPoly::primitive() const {
    if (is_zero()) return ZPoly();
    Rational c = content();
    std::vector<Integer> v;
    v.reserve(c_.size());
    for (const auto& x : c_) {
        Rational y = x / c;
        v.emplace_back(y.get_num());  // denominator is 1 by construction
    }
    return ZPoly(std::move(v));
}

std::string QPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        Rational a = c_[i];
        if (!first) os << (a > 0 ? " + " : " - ");
        else if (a < 0) os << "-";
        first = false;
        Rational absA = a > 0 ? a : Rational(-a);
        if (i == 0 || absA != 1) os << absA.get_str();
        if (i > 0) {
            if (absA != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- ZPoly

void ZPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ZPoly ZPoly::monomial(int deg, const Integer& c) {
    if (c == 0) return ZPoly();
    std::vector<Integer> v(deg + 1, Integer(0));
    v[deg] = c;
    return ZPoly(std::move(v));
}

ZPoly ZPoly::from_int_coeffs(const std::vector<long>& c) {
    std::vector<Integer> v;
    v.reserve(c.size());
    for (long x : c) v.emplace_back(x);
    return ZPoly(std::move(v));
}

const Integer& ZPoly::coeff(int i) const {
    static const Integer zero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[static_cast<size_t>(i)];
}

ZPoly ZPoly::operator-() const {
    std::vector<Integer> v(c_);
    for (auto& x : v) x = -x;
    return ZPoly(std::move(v));
}

ZPoly ZPoly::operator+(const ZPoly& o) const {
    std::vector<Integer> v(std::max(c_.size(), o.c_.size()), Integer(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return ZPoly(std::move(v));
}

ZPoly ZPoly::operator-(const ZPoly& o) const { return *this + (-o); }

ZPoly ZPoly::operator*(const ZPoly& o) const {
    if (is_zero() || o.is_zero()) return ZPoly();
    std::vector<Integer> v(c_.size() + o.c_.size() - 1, Integer(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    }
    return ZPoly(std::move(v));
}

ZPoly ZPoly::operator*(const Integer& s) const {
    if (s == 0) return ZPoly();
    std::vector<Integer> v(c_);
    for (auto& x : v) x *= s;
    return ZPoly(std::move(v));
}

Integer ZPoly::content() const {
    Integer g = 0;
    for (const auto& x : c_) g = gcd(g, x);
    if (!c_.empty() && c_.back() < 0) g = -g;
    return g;
}

ZPoly ZPoly::primitive_part() const {
    if (is_zero()) return *this;
    Integer c = content();
    std::vector<Integer> v;
    v.reserve(c_.size());
    for (const auto& x : c_) v.push_back(divexact(x, c));
    return ZPoly(std::move(v));
}

ZPoly ZPoly::derivative() const {
    if (c_.size() <= 1) return ZPoly();
    std::vector<Integer> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Integer(static_cast<long>(i));
    return ZPoly(std::move(v));
}

Integer ZPoly::eval(const Integer& x) const {
    Integer r(0);
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

Rational ZPoly::eval(const Rational& x) const {
    Rational r(0);
    for (size_t i = c_.size(); i-- > 0;) r = r * x + Rational(c_[i]);
    return r;
}

ZPoly ZPoly::shift(const Integer& a) const {
    ZPoly r;
    ZPoly xa(std::vector<Integer>{a, Integer(1)});
    for (size_t i = c_.size(); i-- > 0;) r = r * xa + ZPoly(c_[i]);
    return r;
}

ZPoly ZPoly::reverse() const {
    std::vector<Integer> v(c_.rbegin(), c_.rend());
    return ZPoly(std::move(v));
}

bool ZPoly::divide_exact(const ZPoly& d, ZPoly& q) const {
    if (d.is_zero()) return false;
    std::vector<Integer> r(c_);
    int dr = static_cast<int>(r.size()) - 1;
    int dd = d.degree();
    if (is_zero()) { q = ZPoly(); return true; }
    if (dr < dd) return false;
    std::vector<Integer> qq(dr - dd + 1, Integer(0));
    while (dr >= dd) {
        if (!divisible(r[dr], d.lc())) return false;
        Integer f = divexact(r[dr], d.lc());
        qq[dr - dd] = f;
        if (f != 0)
            for (int i = 0; i <= dd; ++i) r[dr - dd + i] -= f * d.coeff(i);
        --dr;
        while (dr >= dd && dr >= 0 && r[dr] == 0) --dr;
        r.resize(dr + 1);
    }
    for (const auto& x : r)
        if (x != 0) return false;
    q = ZPoly(std::move(qq));
    return true;
}

Integer ZPoly::max_norm() const {
    Integer m = 0;
    for (const auto& x : c_) {
        Integer a = x >= 0 ? x : Integer(-x);
        if (a > m) m = a;
    }
    return m;
}

Integer ZPoly::l2_norm_sq() const {
    Integer s = 0;
    for (const auto& x : c_) s += x * x;
    return s;
}

QPoly ZPoly::to_q() const {
    std::vector<Rational> v;
    v.reserve(c_.size());
    for (const auto& x : c_) v.emplace_back(x);
    return QPoly(std::move(v));
}

std::string ZPoly::str(const std::string& var) const { return to_q().str(var); }

// ------------------------------------------------------- resultants, gcd

namespace {

// pseudo remainder: lc(B)^(degA-degB+1) * A  mod  B
ZPoly prem(const ZPoly& A, const ZPoly& B) {
    int dA = A.degree(), dB = B.degree();
    if (dA < dB) return A;
    const Integer b = B.lc();
    std::vector<Integer> r(A.coeffs());
    int steps = dA - dB + 1;
    int dr = dA;
    while (dr >= dB && !r.empty()) {
        Integer top = r[static_cast<size_t>(dr)];
        // r <- b*r - top * x^(dr-dB) * B
        for (auto& x : r) x *= b;
        for (int i = 0; i <= dB; ++i)
            r[static_cast<size_t>(dr - dB + i)] -= top * B.coeff(i);
        --steps;
        r.resize(static_cast<size_t>(dr));  // top term cancelled
        dr = static_cast<int>(r.size()) - 1;
        while (dr >= 0 && r[static_cast<size_t>(dr)] == 0) { r.pop_back(); --dr; }
    }
    ZPoly R{std::vector<Integer>(std::move(r))};
    while (steps-- > 0) R = R * b;
    return R;
}

ZPoly divexact_poly(const ZPoly& A, const Integer& d) {
    std::vector<Integer> v;
    v.reserve(A.coeffs().size());
    for (const auto& x : A.coeffs()) v.push_back(divexact(x, d));
    return ZPoly(std::move(v));
}

} // namespace

Integer resultant(const ZPoly& f, const ZPoly& g) {
    if (f.is_zero() || g.is_zero()) return 0;
    ZPoly A = f, B = g;
    int s = 1;
    if (A.degree() < B.degree()) {
        std::swap(A, B);
        if ((A.degree() & 1) && (B.degree() & 1)) s = -s;
    }
    if (B.degree() == 0) {
        Integer r = pow(B.coeff(0), A.degree());
        return s == 1 ? r : -r;
    }
    Integer a = A.content();
    A = A.primitive_part();
    Integer b = B.content();
    B = B.primitive_part();
    Integer t = pow(a, B.degree()) * pow(b, A.degree());
    Integer gg = 1, h = 1;
    while (true) {
        int dA = A.degree(), dB = B.degree();
        int delta = dA - dB;
        if ((dA & 1) && (dB & 1)) s = -s;
        ZPoly R = prem(A, B);
        A = B;
        Integer divider = gg * pow(h, delta);
        B = divexact_poly(R, divider);
        gg = A.lc();
        if (delta == 1) h = gg;
        else if (delta > 1) h = divexact(pow(gg, delta), pow(h, delta - 1));
        if (B.is_zero()) return 0;
        if (B.degree() == 0) break;
    }
    int q = A.degree();
    Integer hfin = q >= 1 ? divexact(pow(B.coeff(0), q), pow(h, q - 1)) : Integer(1);
    Integer res = t * hfin;
    return s == 1 ? res : -res;
}

Integer discriminant(const ZPoly& f) {
    if (f.degree() < 1) return 0;
    Integer r = resultant(f, f.derivative());
    int d = f.degree();
    Integer disc = divexact(r, f.lc());
    if (((static_cast<long>(d) * (d - 1)) / 2) % 2 == 1) disc = -disc;
    return disc;
}

Rational resultant(const QPoly& f, const QPoly& g) {
    if (f.is_zero() || g.is_zero()) return Rational(0);
    // clear contents: Res(cf*F, cg*G) = cf^deg(g) * cg^deg(f) * Res(F, G)
    Rational cf = f.content(), cg = g.content();
    ZPoly F = f.primitive(), G = g.primitive();
    Rational scale(1);
    for (int i = 0; i < g.degree(); ++i) scale *= cf;
    for (int i = 0; i < f.degree(); ++i) scale *= cg;
    return scale * Rational(resultant(F, G));
}

Rational discriminant(const QPoly& f) {
    if (f.degree() < 1) return Rational(0);
    Rational r = resultant(f, f.derivative());
    int d = f.degree();
    Rational disc = r / f.lc();
    if (((static_cast<long>(d) * (d - 1)) / 2) % 2 == 1) disc = -disc;
    return disc;
}

ZPoly gcd(const ZPoly& f, const ZPoly& g) {
    if (f.is_zero()) return g.is_zero() ? g : g.primitive_part();
    if (g.is_zero()) return f.primitive_part();
    ZPoly A = f.primitive_part(), B = g.primitive_part();
    Integer lcg = gcd(A.lc(), B.lc());
    int best_deg = std::min(A.degree(), B.degree()) + 1;
    std::vector<Integer> crt_coeffs;
    Integer crt_mod = 1;
    size_t pi = 0;
    while (true) {
        uint64_t p = modular_prime(pi++);
        Fp64 F(p);
        if (F.from(A.lc()) == 0 || F.from(B.lc()) == 0) continue;
        P64 Ap, Bp;
        for (const auto& c : A.coeffs()) Ap.push_back(F.from(c));
        for (const auto& c : B.coeffs()) Bp.push_back(F.from(c));
        p64_normalize(Ap);
        p64_normalize(Bp);
        P64 Gp = p64_gcd(F, Ap, Bp);
        int dg = static_cast<int>(Gp.size()) - 1;
        if (dg == 0) return ZPoly(Integer(1));
        if (dg > best_deg) continue;          // bad prime
        if (dg < best_deg) {                  // all previous primes were bad
            best_deg = dg;
            crt_coeffs.assign(dg + 1, Integer(0));
            crt_mod = 1;
        }
        // scale to lc = lcg mod p and CRT
        uint64_t scale = F.mul(F.from(lcg), F.inv(Gp.back()));
        std::vector<Integer> new_coeffs(best_deg + 1);
        Integer P(static_cast<unsigned long>(p));
        bool changed = false;
        for (int i = 0; i <= best_deg; ++i) {
            uint64_t r = F.mul(Gp[static_cast<size_t>(i)], scale);
            // CRT combine balanced
            Integer cur = crt_coeffs[static_cast<size_t>(i)];
            if (crt_mod == 1) {
                Integer v(static_cast<unsigned long>(r));
                if (2 * v > P) v -= P;
                new_coeffs[static_cast<size_t>(i)] = v;
            } else {
                Integer inv = invmod(mod(crt_mod, P), P);
                Integer t = mod((Integer(static_cast<unsigned long>(r)) - mod(cur, P)) * inv, P);
                Integer v = cur + crt_mod * t;
                Integer M = crt_mod * P;
                if (2 * v > M) v -= M;
                if (2 * v <= -M) v += M;
                new_coeffs[static_cast<size_t>(i)] = v;
            }
            if (new_coeffs[static_cast<size_t>(i)] != cur) changed = true;
        }
        crt_mod *= P;
        crt_coeffs = new_coeffs;
        if (!changed && crt_mod > 1) {
            ZPoly cand = ZPoly(std::vector<Integer>(crt_coeffs)).primitive_part();
            ZPoly q;
            if (!cand.is_zero() && A.divide_exact(cand, q) && B.divide_exact(cand, q)) {
                return cand;
            }
        }
        if (pi > 2000) throw EffortExceeded("modular gcd did not stabilize");
    }
}

QPoly gcd(const QPoly& f, const QPoly& g) {
    if (f.is_zero()) return g.monic();
    if (g.is_zero()) return f.monic();
    ZPoly G = gcd(f.primitive(), g.primitive());
    return G.to_q().monic();
}

} // namespace twocover
