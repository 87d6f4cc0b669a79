#include "twocover/intfactor.hpp"
#include "twocover/errors.hpp"

#include <algorithm>
#include <map>

namespace twocover {

Integer IntFactorization::reassemble() const {
    Integer r = sign;
    for (const auto& f : factors) r *= pow(f.p, f.e);
    if (!complete) r *= unfactored;
    return r;
}

bool IntFactorization::all_certified() const {
    for (const auto& f : factors)
        if (!f.certified) return false;
    return true;
}

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t b, uint64_t e, uint64_t m) {
    uint64_t r = 1;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, b, m);
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for n < 2^64 with the standard 12-base set.
bool mr64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 0; i + 1 < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

// Brent's variant of Pollard rho.  Returns a nontrivial factor or 0 if the
// iteration budget ran out.  n must be composite, odd, not a perfect power.
Integer rho_brent(const Integer& n, int64_t budget, uint64_t seed) {
    SplitMix64 rng(seed);
    while (budget > 0) {
        Integer y = mod(Integer(rng.next()), n);
        Integer c = mod(Integer(rng.next()), n);
        if (c == 0) c = 1;
        Integer x, q = 1, g = 1, ys;
        long r = 1;
        const long m = 128;
        while (g == 1 && budget > 0) {
            x = y;
            for (long i = 0; i < r; ++i) y = mod(y * y + c, n);
            long k = 0;
            while (k < r && g == 1) {
                ys = y;
                long lim = std::min(m, r - k);
                for (long i = 0; i < lim; ++i) {
                    y = mod(y * y + c, n);
                    q = mod(q * (x - y), n);
                }
                g = gcd(q, n);
                k += lim;
                budget -= lim;
            }
            r *= 2;
        }
        if (g == n) {
            // backtrack
            do {
                ys = mod(ys * ys + c, n);
                g = gcd(x - ys, n);
            } while (g == 1);
        }
        if (g != n && g != 1) return g;
        // bad luck with this (y, c); retry with new constants
    }
    return 0;
}

void factor_rec(const Integer& n, std::map<Integer, int>& out, int64_t& budget,
                Integer& stuck) {
    if (n == 1) return;
    int st = prime_status(n);
    if (st > 0) {
        out[n] += 1;
        return;
    }
    // perfect power?
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned long k = 2; k <= bits(n); ++k) {
            Integer root;
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k)) {
                Integer outer_stuck = stuck;
                stuck = 1;
                std::map<Integer, int> sub;
                factor_rec(root, sub, budget, stuck);
                for (auto& [p, e] : sub) out[p] += e * static_cast<int>(k);
                Integer s = stuck;
                stuck = outer_stuck;
                if (s != 1) stuck = (stuck == 1) ? pow(s, k) : stuck * pow(s, k);
                return;
            }
        }
    }
    if (budget <= 0) { stuck = (stuck == 1) ? n : stuck * n; return; }
    Integer d = rho_brent(n, budget, fnv1a(n.get_str()) ^ 0x9e3779b9ULL);
    if (d == 0) {
        budget = 0;
        stuck = (stuck == 1) ? n : stuck * n;
        return;
    }
    factor_rec(d, out, budget, stuck);
    factor_rec(divexact(n, d), out, budget, stuck);
}

} // namespace

int prime_status(const Integer& n) {
    if (n < 2) return 0;
    if (mpz_fits_ulong_p(n.get_mpz_t())) {
        // assumes 64-bit unsigned long (checked by the build)
        return mr64(n.get_ui()) ? 2 : 0;
    }
    int r = mpz_probab_prime_p(n.get_mpz_t(), 40);
    if (r == 2) return 2;
    return r == 1 ? 1 : 0;
}

IntFactorization factor_integer(const Integer& n, int64_t effort_bound) {
    if (n == 0) throw ZeroDivisor("factor_integer(0)");
    IntFactorization fact;
    Integer m = n;
    if (m < 0) { fact.sign = -1; m = -m; }

    std::map<Integer, int> found;
    // trial division by small primes
    for (uint64_t p = 2; p < 100000 && m > 1; p = (p == 2 ? 3 : p + 2)) {
        if (!mr64(p)) continue;
        Integer P(static_cast<unsigned long>(p));
        if (P * P > m) break;
        while (divisible(m, P)) { found[P] += 1; m = divexact(m, P); }
    }
    if (m > 1) {
        Integer stuck = 1;
        int64_t budget = effort_bound;
        factor_rec(m, found, budget, stuck);
        if (stuck != 1) {
            fact.complete = false;
            fact.unfactored = stuck;
        }
    }
    for (auto& [p, e] : found) {
        PrimePower pp;
        pp.p = p;
        pp.e = e;
        pp.certified = (prime_status(p) == 2);
        fact.factors.push_back(pp);
    }
    return fact;
}

} // namespace twocover
