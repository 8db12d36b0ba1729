#include "tqk/knot.hpp"

#include "tqk/errors.hpp"

#include <numeric>

namespace tqk {

TorusKnot make_knot(i64 a, i64 b) {
    if (a < 2 || b < 2)
        throw Error(ErrorKind::ParameterTooSmall, "torus knot needs a, b >= 2");
    if (std::gcd(a, b) != 1)
        throw Error(ErrorKind::NotCoprime, "a=" + std::to_string(a) + " and b=" + std::to_string(b) +
                                               " are not coprime");
    TorusKnot K{a, b, 2 * a * b, 0, 0};
    for (i64 n = 1; n < b; ++n) {
        if (mod(1 - a * n, b) == 0) {
            K.n = n;
            K.m = (1 - a * n) / b;
            break;
        }
    }
    return K;
}

namespace {

LaurentPoly t(i64 e) { return LaurentPoly::monomial(e); }

LaurentPoly t2_minus_tm2() { return t(2) - t(-2); }

}  // namespace

LaurentPoly alexander(const TorusKnot& K) {
    const i64 a = K.a, b = K.b;
    LaurentPoly num = (t(1) - 1) * (t(a * b) - 1);
    LaurentPoly den = (t(a) - 1) * (t(b) - 1);
    return exact_div(num, den).shift((a + b - a * b - 1) / 2);
}

LaurentPoly jones(const TorusKnot& K, i64 ell) {
    if (ell == 0) return {};
    if (ell < 0) return -jones(K, -ell);
    const i64 a = K.a, b = K.b, ab = a * b;
    // s = 2r runs over -(l-1), -(l-1)+2, ..., l-1 so t^{4ab r^2} = t^{ab s^2}.
    LaurentPoly sum;
    for (i64 s = -(ell - 1); s <= ell - 1; s += 2)
        sum += t(ab * s * s) * (t(-2 * (a + b) * s + 2) - t(-2 * (a - b) * s - 2));
    return exact_div(sum, t2_minus_tm2()).shift(ab * (1 - ell * ell));
}

LaurentPoly jones_recurrence_residual(const TorusKnot& K, i64 ell) {
    if (ell < 2) throw Error(ErrorKind::InvalidArgument, "recurrence residual needs l >= 2");
    const i64 a = K.a, b = K.b, ab = a * b, l1 = ell - 1;
    LaurentPoly lhs = jones(K, ell) - jones(K, ell - 2).shift(4 * ab * (1 - ell));
    LaurentPoly inh = t(-2 * (a + b) * l1 + 2) - t(-2 * (a - b) * l1 - 2) + t(2 * (a + b) * l1 + 2) -
                      t(2 * (a - b) * l1 - 2);
    // Multiply through by t^2 - t^-2, then divide back so that a genuinely
    // non-divisible inhomogeneous term surfaces as NotDivisible.
    LaurentPoly scaled = lhs * t2_minus_tm2() - inh.shift(2 * ab * (1 - ell));
    return exact_div(scaled, t2_minus_tm2());
}

template <class R>
Cx<R> jones_eval(const TorusKnot& K, i64 ell, i64 k) {
    if (k < 2) throw Error(ErrorKind::ParameterTooSmall, "level k must be >= 2");
    if (ell == 0) return Cx<R>();
    if (ell < 0) return -jones_eval<R>(K, -ell, k);
    const i64 a = K.a, b = K.b, ab = a * b, den = 2 * k, root = 2 * k + 1, period = 4 * k;
    auto tp = [&](i64 e) { return unit<R>(mod(e, period) * root, den); };
    Cx<R> sum;
    for (i64 s = -(ell - 1); s <= ell - 1; s += 2)
        sum += tp(ab * s * s) * (tp(-2 * (a + b) * s + 2) - tp(-2 * (a - b) * s - 2));
    return sum * tp(ab * (1 - ell * ell)) / (tp(2) - tp(-2));
}

template <class R>
std::vector<Cx<R>> jones_eval_all(const TorusKnot& K, i64 k) {
    if (k < 2) throw Error(ErrorKind::ParameterTooSmall, "level k must be >= 2");
    const i64 a = K.a, b = K.b, ab = a * b, den = 2 * k, root = 2 * k + 1, period = 4 * k;
    const auto table = unit_table<R>(den);
    auto tp = [&](i64 e) -> const Cx<R>& { return lookup(table, mod(e, period) * root); };
    const Cx<R> inv_den = Cx<R>(R(1)) / (tp(2) - tp(-2));
    std::vector<Cx<R>> out(static_cast<std::size_t>(2 * k));
    for (i64 ell = 1; ell < 2 * k; ++ell) {
        Cx<R> sum;
        for (i64 s = -(ell - 1); s <= ell - 1; s += 2)
            sum += tp(ab * mod(s * s, period)) * (tp(-2 * (a + b) * s + 2) - tp(-2 * (a - b) * s - 2));
        out[static_cast<std::size_t>(ell)] = sum * tp(ab * mod(1 - ell * ell, period)) * inv_den;
    }
    return out;
}

template Cx<double> jones_eval<double>(const TorusKnot&, i64, i64);
template Cx<Mp> jones_eval<Mp>(const TorusKnot&, i64, i64);
template std::vector<Cx<double>> jones_eval_all<double>(const TorusKnot&, i64);
template std::vector<Cx<Mp>> jones_eval_all<Mp>(const TorusKnot&, i64);

cd jones_eval_cd(const TorusKnot& K, i64 ell, i64 k) { return jones_eval<double>(K, ell, k).to_cd(); }

cd alexander_at(const TorusKnot& K, double theta) { return eval_unit_circle(alexander(K), theta); }

}  // namespace tqk
