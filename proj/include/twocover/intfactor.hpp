#ifndef TWOCOVER_INTFACTOR_HPP
#define TWOCOVER_INTFACTOR_HPP

#include "twocover/numutil.hpp"
#include <vector>

namespace twocover {

struct PrimePower {
    Integer p;
    int e = 1;
    // true when primality was decided by the deterministic < 2^64 test,
    // false when only probable (fixed-round Miller-Rabin on larger inputs)
    bool certified = true;
};

struct IntFactorization {
    int sign = 1;                       // n = sign * prod p^e * (cofactor if !complete)
    std::vector<PrimePower> factors;    // sorted by p
    bool complete = true;
    Integer unfactored = 1;             // composite cofactor when incomplete

    Integer reassemble() const;
    bool all_certified() const;
};

// n != 0.  effort_bound limits the Pollard rho/Brent iterations spent on
// any single cofactor; on exhaustion the factorization is returned with
// complete=false and the stubborn cofactor in `unfactored`.
IntFactorization factor_integer(const Integer& n, int64_t effort_bound = 50'000'000);

// Deterministic Miller-Rabin below 2^64, fixed-round probabilistic above.
// Returns 0 = composite, 1 = probable prime, 2 = certified prime.
int prime_status(const Integer& n);
inline bool is_probable_prime(const Integer& n) { return prime_status(n) > 0; }

} // namespace twocover

#endif
