#ifndef TWOCOVER_PFACTOR_HPP
#define TWOCOVER_PFACTOR_HPP

#include "twocover/completion.hpp"
#include "twocover/qpoly.hpp"

#include <vector>

namespace twocover {

struct PadicFactorKnobs {
    int initial_precision = 0;   // 0 = choose from disc valuation
    int max_precision = 4096;    // hard cap before reporting failure
    int refine_depth_cap = 32;   // Montes-style refinement depth
};

// The completions of Q_p[x]/(g) for a monic squarefree integer polynomial g:
// one LocalField per irreducible factor of g over Q_p, each carrying an
// approximate root of g (the embedding).  Certified: residue/Hensel splits
// are verified, leaf invariants are exact, sum of e*f equals deg g, and each
// returned root satisfies g(root) = 0 to working precision.
std::vector<CompletionWithRoot> factor_over_completion(const ZPoly& g, const Integer& p,
                                                       int target_precision = 0,
                                                       const PadicFactorKnobs& knobs = {});

} // namespace twocover

#endif
