#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace tqk {

using Mp = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                         boost::multiprecision::et_off>;
using cd = std::complex<double>;
using i64 = std::int64_t;

// Sets the working precision of Mp for the lifetime of the guard.
class MpDigits {
public:
    explicit MpDigits(unsigned digits) : old_(Mp::default_precision()) {
        Mp::default_precision(digits);
    }
    ~MpDigits() { Mp::default_precision(old_); }
    MpDigits(const MpDigits&) = delete;
    MpDigits& operator=(const MpDigits&) = delete;

private:
    unsigned old_;
};

template <class R>
R pi_v() {
    if constexpr (std::is_same_v<R, double>)
        return std::numbers::pi;
    else
        return R(4) * atan(R(1));
}

// Minimal complex type usable with MPFR reals (std::complex<Mp> is not
// guaranteed to work, and boost's mpc backend needs libmpc).
template <class R>
struct Cx {
    R re{0}, im{0};

    Cx() = default;
    Cx(R r) : re(std::move(r)), im(0) {}
    Cx(R r, R i) : re(std::move(r)), im(std::move(i)) {}
    Cx(int r) : re(r), im(0) {}
    explicit Cx(cd z) : re(z.real()), im(z.imag()) {}

    Cx& operator+=(const Cx& o) { re += o.re; im += o.im; return *this; }
    Cx& operator-=(const Cx& o) { re -= o.re; im -= o.im; return *this; }
    Cx& operator*=(const Cx& o) {
        R r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    Cx& operator*=(const R& s) { re *= s; im *= s; return *this; }
    Cx& operator/=(const Cx& o) {
        R d = o.re * o.re + o.im * o.im;
        R r = (re * o.re + im * o.im) / d;
        im = (im * o.re - re * o.im) / d;
        re = r;
        return *this;
    }
    Cx& operator/=(const R& s) { re /= s; im /= s; return *this; }

    friend Cx operator+(Cx a, const Cx& b) { return a += b; }
    friend Cx operator-(Cx a, const Cx& b) { return a -= b; }
    friend Cx operator*(Cx a, const Cx& b) { return a *= b; }
    friend Cx operator/(Cx a, const Cx& b) { return a /= b; }
    friend Cx operator*(Cx a, const R& s) { return a *= s; }
    friend Cx operator*(const R& s, Cx a) { return a *= s; }
    friend Cx operator/(Cx a, const R& s) { return a /= s; }
    friend Cx operator-(const Cx& a) { return Cx(-a.re, -a.im); }

    cd to_cd() const { return cd(static_cast<double>(re), static_cast<double>(im)); }
};

template <class R> Cx<R> conj(const Cx<R>& z) { return Cx<R>(z.re, -z.im); }
template <class R> R norm2(const Cx<R>& z) { return z.re * z.re + z.im * z.im; }
template <class R> R cabs(const Cx<R>& z) { using std::sqrt; return sqrt(norm2(z)); }
template <class R> R carg(const Cx<R>& z) { using std::atan2; return atan2(z.im, z.re); }

template <class R>
Cx<R> cpolar(const R& r, const R& th) {
    using std::cos;
    using std::sin;
    return Cx<R>(r * cos(th), r * sin(th));
}

template <class R>
Cx<R> cexp(const Cx<R>& z) {
    using std::exp;
    return cpolar<R>(exp(z.re), z.im);
}

// Principal square root, branch cut on the negative real axis.
template <class R>
Cx<R> csqrt(const Cx<R>& z) {
    using std::sqrt;
    R m = cabs(z);
    if (m == 0) return Cx<R>();
    R re = sqrt((m + z.re) / 2);
    R im = sqrt((m - z.re) / 2);
    if (z.im < 0) im = -im;
    return Cx<R>(re, im);
}

inline i64 mod(i64 x, i64 m) {
    i64 r = x % m;
    return r < 0 ? r + m : r;
}

// exp(i*pi*num/den) with the numerator reduced exactly modulo 2*den.
template <class R>
Cx<R> unit(i64 num, i64 den) {
    i64 r = mod(num, 2 * den);
    if (r == 0) return Cx<R>(R(1), R(0));
    if (2 * r == 2 * den) return Cx<R>(R(-1), R(0));
    return cpolar<R>(R(1), pi_v<R>() * R(r) / R(den));
}

// Same with a 128-bit product numerator a*b, common for quadratic phases.
template <class R>
Cx<R> unit2(i64 a, i64 b, i64 den) {
    __int128 p = static_cast<__int128>(a) * b;
    __int128 m = 2 * static_cast<__int128>(den);
    __int128 r = p % m;
    if (r < 0) r += m;
    return unit<R>(static_cast<i64>(r), den);
}

// Table of exp(i*pi*j/den) for j in [0, 2*den).
template <class R>
std::vector<Cx<R>> unit_table(i64 den) {
    std::vector<Cx<R>> t(static_cast<std::size_t>(2 * den));
    for (i64 j = 0; j < 2 * den; ++j) t[static_cast<std::size_t>(j)] = unit<R>(j, den);
    return t;
}

template <class R>
const Cx<R>& lookup(const std::vector<Cx<R>>& table, i64 num) {
    return table[static_cast<std::size_t>(mod(num, static_cast<i64>(table.size())))];
}

struct LineFit {
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
};

// Ordinary least squares y = slope*x + intercept.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Decimal digits of an Mp value's precision usable as a rounding floor.
inline double floor_for_digits(unsigned digits) { return std::pow(10.0, -static_cast<double>(digits) + 8); }

}  // namespace tqk
