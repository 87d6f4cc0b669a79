#ifndef TWOCOVER_NUMUTIL_HPP
#define TWOCOVER_NUMUTIL_HPP

#include <gmpxx.h>
#include <cstdint>
#include <string>
#include <vector>

namespace twocover {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer pow(const Integer& b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Integer powmod(const Integer& b, const Integer& e, const Integer& m) {
    Integer r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

// mod with result in [0, m)
inline Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Integer invmod(const Integer& a, const Integer& m) {
    Integer r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw std::runtime_error("invmod: not invertible");
    return r;
}

inline bool divisible(const Integer& a, const Integer& d) {
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Integer divexact(const Integer& a, const Integer& d) {
    Integer r;
    mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
    return r;
}

// v_p(n) for n != 0
inline long valuation(const Integer& n, const Integer& p) {
    Integer r;
    return static_cast<long>(mpz_remove(r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

inline long valuation(const Integer& n, const Integer& p, Integer& cofactor) {
    return static_cast<long>(mpz_remove(cofactor.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

// v_p of a rational (may be negative)
inline long valuation(const Rational& q, const Integer& p) {
    long vn = q.get_num() == 0 ? 0 : valuation(Integer(q.get_num()), p);
    long vd = valuation(Integer(q.get_den()), p);
    return vn - vd;
}

inline bool is_square(const Integer& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Integer isqrt(const Integer& n) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline size_t bits(const Integer& n) { return mpz_sizeinbase(n.get_mpz_t(), 2); }

inline Rational rational(const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Deterministic splitmix64, used wherever a reproducible pseudo-random
// stream is needed (polynomial factorization, probing orders).
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }
};

// FNV-style hash of a byte string, for deterministic seeding.
inline uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) { h ^= c; h *= 1099511628211ULL; }
    return h;
}

} // namespace twocover

#endif
