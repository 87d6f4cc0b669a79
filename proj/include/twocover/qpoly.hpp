#ifndef TWOCOVER_QPOLY_HPP
#define TWOCOVER_QPOLY_HPP

#include "twocover/numutil.hpp"
#include "twocover/errors.hpp"

#include <string>
#include <utility>
#include <vector>

namespace twocover {

class ZPoly;

// Dense univariate polynomial over Q, coefficients low degree to high,
// normalized so the leading coefficient is nonzero (degree -1 = zero).
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rational> c) : c_(std::move(c)) { normalize(); }
    explicit QPoly(const Rational& c0) : c_{c0} { normalize(); }

    static QPoly zero() { return QPoly(); }
    static QPoly one() { return QPoly(Rational(1)); }
    static QPoly x() { return monomial(1, Rational(1)); }
    static QPoly monomial(int deg, const Rational& c);
    static QPoly from_int_coeffs(const std::vector<long>& c);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Rational& coeff(int i) const;
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational lc() const { return c_.empty() ? Rational(0) : c_.back(); }

    QPoly operator-() const;
    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly operator*(const QPoly& o) const;
    QPoly operator*(const Rational& s) const;
    bool operator==(const QPoly& o) const { return c_ == o.c_; }

    // quotient and remainder; o must be nonzero
    std::pair<QPoly, QPoly> divmod(const QPoly& o) const;
    QPoly operator/(const QPoly& o) const { return divmod(o).first; }
    QPoly operator%(const QPoly& o) const { return divmod(o).second; }

    QPoly monic() const;
    QPoly derivative() const;
    Rational eval(const Rational& x) const;
    QPoly shift(const Rational& a) const;      // f(x + a)
    QPoly scale_arg(const Rational& c) const;  // f(c x)
    QPoly pow(unsigned e) const;

    // f = content * primitive, primitive integral with positive leading
    // coefficient and coprime coefficients
    Rational content() const;
    ZPoly primitive() const;

    std::string str(const std::string& var = "x") const;

private:
    std::vector<Rational> c_;
    void normalize();
    friend class ZPoly;
};

// monic gcd over Q (modular, with exact certification)
QPoly gcd(const QPoly& f, const QPoly& g);

// Sylvester-determinant resultant; f, g not both zero.
Rational resultant(const QPoly& f, const QPoly& g);
Rational discriminant(const QPoly& f);

// Dense univariate polynomial over Z, same normalization.
class ZPoly {
public:
    ZPoly() = default;
    explicit ZPoly(std::vector<Integer> c) : c_(std::move(c)) { normalize(); }
    explicit ZPoly(const Integer& c0) : c_{c0} { normalize(); }

    static ZPoly monomial(int deg, const Integer& c);
    static ZPoly from_int_coeffs(const std::vector<long>& c);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Integer& coeff(int i) const;
    const std::vector<Integer>& coeffs() const { return c_; }
    Integer lc() const { return c_.empty() ? Integer(0) : c_.back(); }

    ZPoly operator-() const;
    ZPoly operator+(const ZPoly& o) const;
    ZPoly operator-(const ZPoly& o) const;
    ZPoly operator*(const ZPoly& o) const;
    ZPoly operator*(const Integer& s) const;
    bool operator==(const ZPoly& o) const { return c_ == o.c_; }

    Integer content() const;        // gcd of coefficients, sign of lc
    ZPoly primitive_part() const;
    ZPoly derivative() const;
    Integer eval(const Integer& x) const;
    Rational eval(const Rational& x) const;
    ZPoly shift(const Integer& a) const;  // f(x + a)
    ZPoly reverse() const;                // x^deg f(1/x)

    // true if d | f exactly; quotient in q
    bool divide_exact(const ZPoly& d, ZPoly& q) const;

    Integer max_norm() const;
    Integer l2_norm_sq() const;

    QPoly to_q() const;
    std::string str(const std::string& var = "x") const;

private:
    std::vector<Integer> c_;
    void normalize();
};

Integer resultant(const ZPoly& f, const ZPoly& g);  // subresultant PRS
Integer discriminant(const ZPoly& f);

// gcd in Z[x] (primitive, positive lc), computed modularly and certified
// by exact division.
ZPoly gcd(const ZPoly& f, const ZPoly& g);

} // namespace twocover

#endif
