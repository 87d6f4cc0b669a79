#ifndef TWOCOVER_UNRAM_HPP
#define TWOCOVER_UNRAM_HPP

#include "twocover/numutil.hpp"
#include "twocover/qpoly.hpp"
#include "twocover/residue.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace twocover {

// The unramified extension U_f of Q_p at working precision p^N, presented as
// Z_p[u]/(psi) with psi the canonical lift of the residue field modulus.
// Elements are coefficient vectors of length f with entries in [0, p^N).
class UnramBase {
public:
    using Elt = std::vector<Integer>;
    using Poly = std::vector<Elt>;  // poly over O_U, low-to-high

    UnramBase(Integer p, int f, int N);

    const Integer& p() const { return p_; }
    int f() const { return f_; }
    int N() const { return N_; }
    const Integer& pN() const { return pN_; }
    const ResidueField& res() const { return *res_; }

    Elt zero() const { return Elt(f_, Integer(0)); }
    Elt one() const;
    Elt gen() const;
    Elt from_int(const Integer& n) const;
    // Teichmueller-free lift: residue coefficients reinterpreted mod p^N
    Elt lift(const ResidueField::Elt& r) const;
    ResidueField::Elt residue(const Elt& a) const;  // reduction mod p

    bool is_zero(const Elt& a) const;         // zero mod p^N
    bool is_zero_mod(const Elt& a, int k) const;
    bool eq(const Elt& a, const Elt& b) const { return a == b; }
    Elt reduce(std::vector<Integer> c) const;  // mod (psi, p^N)

    Elt add(const Elt& a, const Elt& b) const;
    Elt sub(const Elt& a, const Elt& b) const;
    Elt neg(const Elt& a) const;
    Elt mul(const Elt& a, const Elt& b) const;
    Elt inv(const Elt& a) const;  // a must be a unit
    Elt pow(Elt a, Integer e) const;

    // v_p; returns N for (approximate) zero
    int val(const Elt& a) const;
    Elt div_p(const Elt& a, int k) const;  // exact division by p^k
    Elt mul_p(const Elt& a, int k) const;

    // Frobenius lift (u -> Hensel root of psi near u^p)
    Elt frobenius(const Elt& a) const;

    // embedding of a smaller unramified base (f | this->f)
    Elt embed_from(const UnramBase& sub, const Elt& a) const;

    // ------------------------------------------------------------ polynomials
    void pnorm(Poly& g) const;
    Poly pzero() const { return {}; }
    Poly pone() const { return {one()}; }
    Poly pX() const { return {zero(), one()}; }
    int pdeg(const Poly& g) const { return static_cast<int>(g.size()) - 1; }
    Poly padd(const Poly& a, const Poly& b) const;
    Poly psub(const Poly& a, const Poly& b) const;
    Poly pmul(const Poly& a, const Poly& b) const;
    Poly pscale(const Poly& a, const Elt& s) const;
    std::pair<Poly, Poly> pdivmod(const Poly& a, const Poly& b) const;  // lc(b) unit
    Poly pmulmod(const Poly& a, const Poly& b, const Poly& m) const;
    Elt peval(const Poly& a, const Elt& x) const;
    Poly pshift(const Poly& a, const Elt& c) const;  // a(x + c)
    Poly pderiv(const Poly& a) const;
    Poly from_zpoly(const ZPoly& g) const;
    Poly embed_poly_from(const UnramBase& sub, const Poly& g) const;
    ResidueField::Poly residue_poly(const Poly& g) const;
    Poly lift_respoly(const ResidueField::Poly& g) const;
    // h(p^lambda x) / p^(lambda deg h), h monic; requires polygon >= line
    Poly pscale_down(const Poly& h, int lambda) const;
    // substitute and renormalize: chi(p^a (z + c)) / p^(a*deg)
    Poly pcompose_scaled(const Poly& chi, int a, const Elt& c) const;

    // lower Newton polygon of monic h w.r.t. v_p: returns vertices (i, v)
    std::vector<std::pair<int, int>> newton_polygon(const Poly& h) const;

    // Hensel-lift h = prod(blocks) mod p^N from pairwise-coprime monic
    // residue blocks; h monic.  Deterministic order follows `blocks`.
    std::vector<Poly> hensel_multi_split(const Poly& h,
                                         const std::vector<ResidueField::Poly>& blocks) const;

    // Newton iteration for a root of h starting from a simple residue root
    // (h'(r0) a unit); refines to full precision
    Elt hensel_root(const Poly& h, const ResidueField::Elt& r0) const;

    // characteristic polynomial of multiplication by a in U[x]/(h), h monic
    // (division-free Berkowitz); result monic of degree deg h
    Poly charpoly_mod(const Poly& a, const Poly& h) const;

    // Res(h1, h2) = det(h2(companion(h1))) for monic h1 — via charpoly
    Elt resultant_monic(const Poly& h1, const Poly& h2) const;

    std::string elt_str(const Elt& a) const;
    std::string poly_str(const Poly& g) const;

private:
    Integer p_;
    int f_;
    int N_;
    Integer pN_;
    std::shared_ptr<ResidueField> res_;
    std::vector<Integer> psi_tail_;  // lift of residue modulus tail
    Elt frob_gen_;                   // image of u under Frobenius
    mutable std::vector<std::pair<int, Elt>> embed_cache_;  // sub.f -> gen image
    void build_frobenius();
};

} // namespace twocover

#endif
