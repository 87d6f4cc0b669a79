#include "twocover/modular.hpp"

#include <mutex>

namespace twocover {

uint64_t Fp64::pow(uint64_t b, uint64_t e) const {
    uint64_t r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

uint64_t modular_prime(size_t i) {
    static std::vector<uint64_t> pool;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    while (pool.size() <= i) {
        Integer p = pool.empty() ? pow(Integer(2), 62) - 1
                                 : Integer(static_cast<unsigned long>(pool.back())) - 2;
        if (mpz_even_p(p.get_mpz_t())) p -= 1;
        while (mpz_probab_prime_p(p.get_mpz_t(), 40) == 0) p -= 2;
        pool.push_back(p.get_ui());
    }
    return pool[i];
}

void p64_normalize(P64& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

P64 p64_add(const Fp64& F, const P64& a, const P64& b) {
    P64 r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        uint64_t x = i < a.size() ? a[i] : 0;
        uint64_t y = i < b.size() ? b[i] : 0;
        r[i] = F.add(x, y);
    }
    p64_normalize(r);
    return r;
}

P64 p64_sub(const Fp64& F, const P64& a, const P64& b) {
    P64 r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        uint64_t x = i < a.size() ? a[i] : 0;
        uint64_t y = i < b.size() ? b[i] : 0;
        r[i] = F.sub(x, y);
    }
    p64_normalize(r);
    return r;
}

P64 p64_mul(const Fp64& F, const P64& a, const P64& b) {
    if (a.empty() || b.empty()) return {};
    P64 r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    p64_normalize(r);
    return r;
}

P64 p64_rem(const Fp64& F, P64 a, const P64& b) {
    const size_t db = b.size() - 1;
    const uint64_t binv = F.inv(b.back());
    while (a.size() > db) {
        uint64_t q = F.mul(a.back(), binv);
        size_t shift = a.size() - 1 - db;
        if (q != 0) {
            for (size_t i = 0; i <= db; ++i)
                a[shift + i] = F.sub(a[shift + i], F.mul(q, b[i]));
        }
        a.pop_back();
        while (!a.empty() && a.back() == 0) a.pop_back();
        if (a.size() <= db) break;
    }
    p64_normalize(a);
    return a;
}

P64 p64_gcd(const Fp64& F, P64 a, P64 b) {
    p64_normalize(a);
    p64_normalize(b);
    while (!b.empty()) {
        P64 r = p64_rem(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        uint64_t inv = F.inv(a.back());
        for (auto& c : a) c = F.mul(c, inv);
    }
    return a;
}

uint64_t p64_eval(const Fp64& F, const P64& a, uint64_t x) {
    uint64_t r = 0;
    for (size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
    return r;
}

uint64_t p64_resultant(const Fp64& F, P64 a, P64 b) {
    p64_normalize(a);
    p64_normalize(b);
    if (a.empty() || b.empty()) return 0;
    uint64_t res = 1;
    bool neg = false;
    while (true) {
        if (b.size() == 1) {
            res = F.mul(res, F.pow(b[0], a.size() - 1));
            break;
        }
        P64 r = p64_rem(F, a, b);
        if (r.empty()) return 0;
        // res(a,b) = (-1)^{da db} lc(b)^{da - dr} res(b, r)
        size_t da = a.size() - 1, db = b.size() - 1, dr = r.size() - 1;
        if ((da & 1) && (db & 1)) neg = !neg;
        res = F.mul(res, F.pow(b.back(), da - dr));
        a = std::move(b);
        b = std::move(r);
        if (a.size() == 1) { // degree 0 on the left
            res = F.mul(res, F.pow(a[0], b.size() - 1));
            break;
        }
    }
    return neg ? F.neg(res) : res;
}

P64 p64_interpolate(const Fp64& F, const std::vector<uint64_t>& xs, const std::vector<uint64_t>& ys) {
    // Newton's divided differences
    const size_t n = xs.size();
    std::vector<uint64_t> dd(ys);
    for (size_t j = 1; j < n; ++j)
        for (size_t i = n - 1; i >= j; --i) {
            uint64_t denom = F.sub(xs[i], xs[i - j]);
            dd[i] = F.mul(F.sub(dd[i], dd[i - 1]), F.inv(denom));
            if (i == j) break;
        }
    P64 r{dd[n - 1]};
    for (size_t i = n - 1; i-- > 0;) {
        // r = r * (x - xs[i]) + dd[i]
        P64 nr(r.size() + 1, 0);
        for (size_t k = 0; k < r.size(); ++k) {
            nr[k + 1] = F.add(nr[k + 1], r[k]);
            nr[k] = F.sub(nr[k], F.mul(r[k], xs[i]));
        }
        nr[0] = F.add(nr[0], dd[i]);
        r = std::move(nr);
        p64_normalize(r);
    }
    return r;
}

void CRTAccum::add(uint64_t residue, uint64_t p) {
    Integer P(static_cast<unsigned long>(p));
    Integer r(static_cast<unsigned long>(residue));
    if (modulus == 1) {
        modulus = P;
        value = r;
    } else {
        // value' == value mod modulus, == r mod P
        Integer inv = invmod(mod(modulus, P), P);
        Integer t = mod((r - mod(value, P)) * inv, P);
        value += modulus * t;
        modulus *= P;
    }
    // balance
    if (2 * value > modulus) value -= modulus;
    if (2 * value <= -modulus) value += modulus;
}

bool rational_reconstruct(const Integer& r, const Integer& m, Integer& num, Integer& den) {
    // extended Euclid, stop when remainder < sqrt(m/2)
    Integer bound = isqrt(m / 2);
    Integer r0 = m, r1 = mod(r, m);
    Integer t0 = 0, t1 = 1;
    while (r1 > bound) {
        Integer q = r0 / r1;
        Integer r2 = r0 - q * r1;
        Integer t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (t1 == 0) return false;
    if (t1 < 0) { t1 = -t1; r1 = -r1; }
    if (t1 > bound) return false;
    if (gcd(r1, t1) != 1) return false;
    num = r1;
    den = t1;
    return true;
}

} // namespace twocover
