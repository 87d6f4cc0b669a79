#ifndef TWOCOVER_RESIDUE_HPP
#define TWOCOVER_RESIDUE_HPP

#include "twocover/numutil.hpp"
#include "twocover/qpoly.hpp"

#include <memory>
#include <vector>

namespace twocover {

// F_{p^f} presented as F_p[u]/(psi) where psi is the lexicographically
// least monic irreducible of degree f mod p (coefficients compared from
// the x^{f-1} one down to the constant).
class ResidueField {
public:
    using Elt = std::vector<Integer>;   // exactly f entries in [0, p)
    using Poly = std::vector<Elt>;      // low-to-high, normalized

    ResidueField(Integer p, int f);

    const Integer& p() const { return p_; }
    int f() const { return f_; }
    const Integer& q() const { return q_; }
    const std::vector<Integer>& modulus_tail() const { return psi_tail_; }
    ZPoly modulus_lift() const;  // monic integer lift of psi

    // elements
    Elt zero() const { return Elt(f_, Integer(0)); }
    Elt one() const;
    Elt gen() const;
    bool is_zero(const Elt& a) const;
    bool eq(const Elt& a, const Elt& b) const { return a == b; }
    Elt from_integer(const Integer& n) const;
    Elt from_coeffs(std::vector<Integer> c) const;  // reduce a u-poly
    Elt by_index(const Integer& idx) const;         // base-p digits of idx

    Elt add(const Elt& a, const Elt& b) const;
    Elt sub(const Elt& a, const Elt& b) const;
    Elt neg(const Elt& a) const;
    Elt mul(const Elt& a, const Elt& b) const;
    Elt inv(const Elt& a) const;
    Elt pow(Elt a, Integer e) const;
    Elt frobenius(const Elt& a) const { return pow(a, p_); }

    // 0 for zero, +1 square, -1 nonsquare (p odd)
    int quadratic_character(const Elt& a) const;
    Elt sqrt(const Elt& a) const;  // p=2: always; odd p: a must be square
    Elt find_nonsquare() const;    // p odd
    // solve t^2 + a t = c over F_{2^f}; a != 0
    bool artin_schreier_solve(const Elt& a, const Elt& c, Elt& t) const;
    Integer trace_abs(const Elt& a) const;  // trace to F_p, in [0, p)
    Elt element_of_trace_one() const;       // p = 2

    // polynomial layer over this field
    void pnormalize(Poly& g) const;
    Poly pzero() const { return {}; }
    Poly pone() const { return {one()}; }
    Poly pconst(const Elt& a) const;
    Poly pX() const;
    int pdeg(const Poly& g) const { return static_cast<int>(g.size()) - 1; }
    Poly padd(const Poly& a, const Poly& b) const;
    Poly psub(const Poly& a, const Poly& b) const;
    Poly pmul(const Poly& a, const Poly& b) const;
    Poly pscale(const Poly& a, const Elt& s) const;
    std::pair<Poly, Poly> pdivmod(const Poly& a, const Poly& b) const;
    Poly pmod(const Poly& a, const Poly& b) const { return pdivmod(a, b).second; }
    Poly pgcd(Poly a, Poly b) const;  // monic
    Poly pmonic(const Poly& a) const;
    Poly pderiv(const Poly& a) const;
    Poly ppowmod(const Poly& base, const Integer& e, const Poly& mod) const;
    Elt peval(const Poly& a, const Elt& x) const;
    Poly pshift(const Poly& a, const Elt& c) const;  // a(x + c)
    Poly from_zpoly(const ZPoly& g) const;
    Poly pfrobenius_coeffs(const Poly& a) const;     // frobenius on coefficients

    bool pirreducible(const Poly& g) const;
    // full factorization (monic-ized): list of (irreducible monic, multiplicity),
    // sorted deterministically
    std::vector<std::pair<Poly, int>> pfactor(const Poly& g) const;
    std::vector<Elt> proots(const Poly& g) const;  // distinct roots

    std::string elt_str(const Elt& a) const;
    std::string poly_str(const Poly& g) const;

private:
    Integer p_;
    int f_;
    Integer q_;
    std::vector<Integer> psi_tail_;  // psi = u^f + sum psi_tail_[i] u^i
    Elt reduce_vec(std::vector<Integer> c) const;
    void build_modulus();
    std::vector<std::pair<Poly, int>> squarefree_decompose(Poly g) const;
    void ddf_edf(const Poly& g, int mult, std::vector<std::pair<Poly, int>>& out) const;
    Poly pth_root_poly(const Poly& g) const;
};

} // namespace twocover

#endif
