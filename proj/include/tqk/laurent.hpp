#pragma once

#include "tqk/numeric.hpp"

#include <gmpxx.h>

#include <map>
#include <string>

namespace tqk {

// Laurent polynomial in one variable t with big-integer coefficients.
// Canonical form: no stored zero coefficient.
class LaurentPoly {
public:
    using Map = std::map<i64, mpz_class>;

    LaurentPoly() = default;
    LaurentPoly(long c);  // constant
    static LaurentPoly monomial(i64 exponent, const mpz_class& coeff = 1);
    static LaurentPoly from_map(const Map& m);

    const Map& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    i64 min_exp() const;
    i64 max_exp() const;
    mpz_class coeff(i64 e) const;
    std::size_t size() const { return c_.size(); }

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ == b.c_; }

    // p(t) -> p(t^{-1})
    LaurentPoly mirror() const;
    // t^s * p
    LaurentPoly shift(i64 s) const;

    // Sum of |coefficients|, the scale of evaluation error bounds.
    double l1_norm() const;

    std::string to_string() const;

private:
    void add_term(i64 e, const mpz_class& v);
    Map c_;
};

enum class RingOp { Add, Mul, Neg };

// Generic entry point; Neg ignores q.
LaurentPoly ring_op(RingOp op, const LaurentPoly& p, const LaurentPoly& q);

// r with r*den == num exactly, otherwise NotDivisible.
LaurentPoly exact_div(const LaurentPoly& num, const LaurentPoly& den);

// p(e^{i theta}); precision in decimal digits, > 16 switches to MPFR.
cd eval_unit_circle(const LaurentPoly& p, double theta, unsigned precision = 16);

// p(e^{i pi num/den}) with exact reduction of exponents.
template <class R>
Cx<R> eval_root(const LaurentPoly& p, i64 num, i64 den) {
    Cx<R> s;
    for (const auto& [e, c] : p.coeffs()) {
        R cf;
        if constexpr (std::is_same_v<R, double>)
            cf = c.get_d();
        else
            cf = R(c.get_str());
        s += unit2<R>(e, num, den) * cf;
    }
    return s;
}

}  // namespace tqk
