#ifndef TWOCOVER_MODULAR_HPP
#define TWOCOVER_MODULAR_HPP

#include "twocover/numutil.hpp"

#include <cstdint>
#include <vector>

namespace twocover {

// Arithmetic mod a word-sized prime, used for evaluation/interpolation and
// CRT reconstruction of large exact objects (resultants, gcds).
struct Fp64 {
    uint64_t p;
    explicit Fp64(uint64_t prime) : p(prime) {}
    uint64_t add(uint64_t a, uint64_t b) const { uint64_t s = a + b; return s >= p || s < a ? s - p : s; }
    uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p - b; }
    uint64_t mul(uint64_t a, uint64_t b) const {
        return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
    }
    uint64_t pow(uint64_t b, uint64_t e) const;
    uint64_t inv(uint64_t a) const { return pow(a, p - 2); }
    uint64_t neg(uint64_t a) const { return a ? p - a : 0; }
    uint64_t from(const Integer& z) const {
        Integer r = mod(z, Integer(static_cast<unsigned long>(p)));
        return r.get_ui();
    }
};

// i-th prime of a fixed descending sequence below 2^62 (deterministic).
uint64_t modular_prime(size_t i);

using P64 = std::vector<uint64_t>;  // poly over F_p, low-to-high, normalized

void p64_normalize(P64& f);
P64 p64_mul(const Fp64& F, const P64& a, const P64& b);
P64 p64_add(const Fp64& F, const P64& a, const P64& b);
P64 p64_sub(const Fp64& F, const P64& a, const P64& b);
// remainder of a by monic-or-invertible-lc b
P64 p64_rem(const Fp64& F, P64 a, const P64& b);
P64 p64_gcd(const Fp64& F, P64 a, P64 b);  // monic gcd
uint64_t p64_eval(const Fp64& F, const P64& a, uint64_t x);
uint64_t p64_resultant(const Fp64& F, P64 a, P64 b);
// Newton interpolation through (xs[i], ys[i]); xs distinct
P64 p64_interpolate(const Fp64& F, const std::vector<uint64_t>& xs, const std::vector<uint64_t>& ys);

// Incremental CRT accumulator for signed integers (balanced residues).
struct CRTAccum {
    Integer value = 0;   // balanced representative mod modulus
    Integer modulus = 1;
    void add(uint64_t residue, uint64_t p);
    bool stable_against(const Integer& prev) const { return value == prev; }
};

// Rational reconstruction: find num/den = r mod m with |num|, den <= sqrt(m/2).
// Returns false if none exists.
bool rational_reconstruct(const Integer& r, const Integer& m, Integer& num, Integer& den);

} // namespace twocover

#endif
