#include "tqk/laurent.hpp"

#include "tqk/errors.hpp"

#include <sstream>

namespace tqk {

LaurentPoly::LaurentPoly(long c) {
    if (c != 0) c_[0] = c;
}

LaurentPoly LaurentPoly::monomial(i64 exponent, const mpz_class& coeff) {
    LaurentPoly p;
    if (coeff != 0) p.c_[exponent] = coeff;
    return p;
}

LaurentPoly LaurentPoly::from_map(const Map& m) {
    LaurentPoly p;
    for (const auto& [e, v] : m)
        if (v != 0) p.c_[e] = v;
    return p;
}

i64 LaurentPoly::min_exp() const {
    if (c_.empty()) throw Error(ErrorKind::InvalidArgument, "degree of the zero polynomial");
    return c_.begin()->first;
}

i64 LaurentPoly::max_exp() const {
    if (c_.empty()) throw Error(ErrorKind::InvalidArgument, "degree of the zero polynomial");
    return c_.rbegin()->first;
}

mpz_class LaurentPoly::coeff(i64 e) const {
    auto it = c_.find(e);
    return it == c_.end() ? mpz_class(0) : it->second;
}

void LaurentPoly::add_term(i64 e, const mpz_class& v) {
    if (v == 0) return;
    auto [it, fresh] = c_.try_emplace(e, v);
    if (!fresh) {
        it->second += v;
        if (it->second == 0) c_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& kv : r.c_) kv.second = -kv.second;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [e, v] : o.c_) add_term(e, v);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [e, v] : o.c_) add_term(e, -v);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, va] : a.c_)
        for (const auto& [eb, vb] : b.c_) r.add_term(ea + eb, va * vb);
    return r;
}

LaurentPoly LaurentPoly::mirror() const {
    LaurentPoly r;
    for (const auto& [e, v] : c_) r.c_[-e] = v;
    return r;
}

LaurentPoly LaurentPoly::shift(i64 s) const {
    LaurentPoly r;
    for (const auto& [e, v] : c_) r.c_[e + s] = v;
    return r;
}

double LaurentPoly::l1_norm() const {
    double s = 0;
    for (const auto& kv : c_) s += std::abs(kv.second.get_d());
    return s;
}

std::string LaurentPoly::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        const auto& [e, v] = *it;
        mpz_class m = abs(v);
        os << (v < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        if (m != 1 || e == 0) os << m.get_str();
        if (e != 0) os << (m != 1 ? "*" : "") << "t" << (e != 1 ? "^" + std::to_string(e) : "");
        first = false;
    }
    return os.str();
}

LaurentPoly ring_op(RingOp op, const LaurentPoly& p, const LaurentPoly& q) {
    switch (op) {
    case RingOp::Add: return p + q;
    case RingOp::Mul: return p * q;
    case RingOp::Neg: return -p;
    }
    return {};
}

// Schoolbook division from the top degree down. The leading coefficient of
// den must divide every intermediate leading coefficient.
LaurentPoly exact_div(const LaurentPoly& num, const LaurentPoly& den) {
    if (den.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by the zero polynomial");
    if (num.is_zero()) return {};
    const i64 dtop = den.max_exp(), dlow = den.min_exp();
    const mpz_class& lead = den.coeffs().rbegin()->second;
    LaurentPoly rem = num;
    LaurentPoly quo;
    while (!rem.is_zero()) {
        const i64 rtop = rem.max_exp();
        if (rtop - dtop < rem.min_exp() - dlow)
            throw Error(ErrorKind::NotDivisible, "remainder degree below divisor span");
        const mpz_class& rc = rem.coeffs().rbegin()->second;
        if (!mpz_divisible_p(rc.get_mpz_t(), lead.get_mpz_t()))
            throw Error(ErrorKind::NotDivisible, "leading coefficient not divisible");
        mpz_class f = rc / lead;
        LaurentPoly term = LaurentPoly::monomial(rtop - dtop, f);
        quo += term;
        rem -= term * den;
    }
    return quo;
}

cd eval_unit_circle(const LaurentPoly& p, double theta, unsigned precision) {
    if (precision <= 16) {
        cd s = 0;
        for (const auto& [e, c] : p.coeffs())
            s += c.get_d() * std::polar(1.0, std::remainder(static_cast<double>(e) * theta,
                                                           2 * std::numbers::pi));
        return s;
    }
    MpDigits guard(precision + 5);
    const Mp th(theta);
    Cx<Mp> s;
    for (const auto& [e, c] : p.coeffs())
        s += cpolar<Mp>(Mp(1), th * Mp(e)) * Mp(c.get_str());
    return s.to_cd();
}

}  // namespace tqk
