#ifndef TWOCOVER_ZFACTOR_HPP
#define TWOCOVER_ZFACTOR_HPP

#include "twocover/qpoly.hpp"

#include <vector>

namespace twocover {

struct QPolyFactor {
    QPoly factor;      // monic irreducible over Q
    int multiplicity;
};

struct QFactorization {
    Rational content;  // f = content * prod factor^mult
    std::vector<QPolyFactor> factors;

    QPoly reassemble() const;
};

// Squarefree decomposition, factorization mod a good prime, Hensel lifting
// to past the Landau-Mignotte bound, exhaustive subset recombination with
// degree pruning.  Throws EffortExceeded when the subset budget runs out.
QFactorization factor_rational_poly(const QPoly& f, int64_t subset_budget = int64_t(1) << 22);

// smallest prime >= 3 dividing neither lc(f) nor disc(f); f squarefree
Integer choose_factor_prime(const ZPoly& f);

// irreducible factors of a squarefree primitive integer polynomial
std::vector<ZPoly> factor_squarefree_z(const ZPoly& f, int64_t subset_budget);

bool is_irreducible_q(const QPoly& f);

} // namespace twocover

#endif
