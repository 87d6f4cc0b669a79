#ifndef TWOCOVER_COMPLETION_HPP
#define TWOCOVER_COMPLETION_HPP

#include "twocover/f2.hpp"
#include "twocover/place.hpp"
#include "twocover/unram.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace twocover {

// A finite extension K of Q_p presented as a two-step tower: the unramified
// base U of residue degree f, then U[pi]/(E) with E Eisenstein of degree e.
// Elements are integral coordinate vectors over O_U in the pi-power basis;
// coordinates live mod p^N, so elements are known mod pi^(e N).
class LocalField {
public:
    using Elt = std::vector<UnramBase::Elt>;

    LocalField(std::shared_ptr<const UnramBase> base, UnramBase::Poly eisenstein);
    static LocalField qp(const Integer& p, int N);

    const UnramBase& U() const { return *base_; }
    const Integer& p() const { return base_->p(); }
    int e() const { return e_; }
    int f() const { return base_->f(); }
    int degree() const { return e_ * base_->f(); }
    int coord_precision() const { return base_->N(); }
    int precision() const { return e_ * base_->N(); }  // in pi-units
    int w_two() const { return w2_; }                  // w(2)
    const UnramBase::Poly& eisenstein() const { return E_; }
    const ResidueField& res() const { return base_->res(); }

    Elt zero() const;
    Elt one() const;
    Elt pi() const;
    Elt from_U(const UnramBase::Elt& a) const;
    Elt from_int(const Integer& n) const;
    // embeds r * p^{-v_p(r)}; sets wval = e * v_p(r)
    Elt from_rational_unit(const Rational& r, int& wval) const;

    bool is_zero(const Elt& a) const;  // to working precision
    bool eq(const Elt& a, const Elt& b) const;
    bool eq_mod_pi(const Elt& a, const Elt& b, int k) const;

    Elt add(const Elt& a, const Elt& b) const;
    Elt sub(const Elt& a, const Elt& b) const;
    Elt neg(const Elt& a) const;
    Elt mul(const Elt& a, const Elt& b) const;
    Elt pow(Elt a, Integer k) const;

    // exact pi-adic valuation; throws PrecisionExhausted on (approximate) zero
    int val(const Elt& a) const;
    Elt mul_pi(const Elt& a, int k) const;
    Elt div_pi(const Elt& a, int k) const;  // exact
    Elt unit_part(const Elt& a, int& w) const;
    Elt inv_unit(const Elt& a) const;
    ResidueField::Elt residue(const Elt& a) const;  // valuation >= 0 input
    Elt lift_res(const ResidueField::Elt& r) const;

    // evaluation of an integer polynomial at an element
    Elt eval_zpoly(const ZPoly& g, const Elt& x) const;
    // Newton refinement of an approximate root of g (simple root)
    Elt polish_root(const ZPoly& g, Elt x) const;

    // ---------------------------------------------------------- square classes
    // dimension of K*/(K*)^2: odd p -> 2, p = 2 -> e f + 2
    int sqclass_dim() const;
    // representatives: index 0 is pi, the rest are units
    const std::vector<Elt>& sqclass_basis() const;
    F2Vec decompose(const Elt& x) const;  // x != 0
    bool is_square(const Elt& x) const;
    bool is_square_rational(const Rational& r) const;
    // bits of the class generating the unramified quadratic extension
    F2Vec unramified_class_bits() const;

    // norm to Q_p of a nonzero element: p^v * unit with unit mod p^N
    struct QpVal {
        int v;
        Integer unit;
    };
    QpVal norm_to_qp(const Elt& x) const;
    UnramBase::Elt norm_to_U(const Elt& x) const;

    // ------------------------------------------------------------- symbols
    // Hilbert symbol as a bit (0 <-> 0, 1 <-> 1/2); elements nonzero
    int hilbert(const Elt& a, const Elt& b) const;
    int hilbert_bits(const F2Vec& a, const F2Vec& b) const;
    const F2Matrix& hilbert_gram() const;

    // monic integer polynomial irreducible over Q_p defining K (certified)
    const ZPoly& defining_poly() const;

    std::string elt_str(const Elt& a) const;

private:
    std::shared_ptr<const UnramBase> base_;
    UnramBase::Poly E_;  // Eisenstein, monic degree e
    int e_;
    int w2_;
    Elt omega_k_;               // the unit pi^e / p as a K element
    mutable Elt p_over_pi_;     // p / pi = pi^{e-1} omega^{-1}, integral
    mutable Elt omega_inv_;     // omega^{-1}, cached
    const Elt& p_over_pi() const;
    const Elt& omega_inv() const;
    mutable std::vector<Elt> sqbasis_;
    mutable std::optional<F2Vec> unram_bits_;
    mutable std::optional<F2Matrix> gram_;
    mutable std::optional<ZPoly> defpoly_;
    // dyadic data
    mutable std::optional<ResidueField::Elt> as_coset_rep_;  // eta
    ResidueField::Elt two_unit_residue() const;              // abar
    void build_sqclass() const;
    F2Vec decompose_unit_dyadic(Elt y, std::vector<Elt>* stages = nullptr) const;
    void build_gram() const;
    friend class HilbertOracle;
};

// A completion of Q[x]/(g) at p together with the embedded root of g.
struct CompletionWithRoot {
    std::shared_ptr<LocalField> field;
    LocalField::Elt root;
};

} // namespace twocover

#endif
