#include "tqk/charvar.hpp"

#include "tqk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace tqk {

i64 orbit_representative(i64 x, i64 ab) {
    // Brute force over {+-x + 2ab j} intersected with [0, ab].
    const i64 period = 2 * ab;
    for (int s : {1, -1}) {
        const i64 y = s * x;
        const i64 j0 = (y >= 0 ? -(y / period) : (-y) / period) - 1;
        for (i64 j = j0; j <= j0 + 3; ++j) {
            const i64 r = y + period * j;
            if (r >= 0 && r <= ab) return r;
        }
    }
    throw Error(ErrorKind::InvalidArgument, "orbit without representative");
}

std::vector<IrredComponent> p_set_with(const TorusKnot& K, i64 m, i64 n) {
    if (K.a * n + K.b * m != 1) throw Error(ErrorKind::InvalidArgument, "not a Bezout pair");
    const i64 a = K.a, b = K.b, ab = a * b;
    std::vector<IrredComponent> out;
    for (i64 al = 1; al < a; ++al)
        for (i64 be = 1; be < b; ++be) {
            if (mod(al - be, 2) != 0) continue;
            const i64 k1 = orbit_representative(al * b * m + be * a * n, ab);
            const i64 k2 = orbit_representative(al * b * m - be * a * n, ab);
            out.push_back({al, be, std::min(k1, k2), std::max(k1, k2)});
        }
    return out;
}

std::vector<IrredComponent> p_set(const TorusKnot& K) { return p_set_with(K, K.m, K.n); }

std::vector<IrredComponent> p_ell(const TorusKnot& K, i64 ell) {
    std::vector<IrredComponent> out;
    for (const auto& c : p_set(K))
        if (c.k_minus <= ell && ell < c.k_plus && mod(c.alpha - ell, 2) == 0) out.push_back(c);
    return out;
}

BijectionReport check_bijection(const TorusKnot& K) {
    BijectionReport r;
    std::multiset<i64> seen;
    for (const auto& c : p_set(K)) {
        seen.insert(c.k_minus);
        seen.insert(c.k_plus);
    }
    r.image.assign(seen.begin(), seen.end());
    r.injective = std::set<i64>(seen.begin(), seen.end()).size() == seen.size();
    std::vector<i64> want;
    for (i64 l = 1; l < K.a * K.b; ++l)
        if (l % K.a != 0 && l % K.b != 0) want.push_back(l);
    r.image_ok = r.image == want;
    return r;
}

Mat2 mat_mul(const Mat2& A, const Mat2& B) {
    return {A[0] * B[0] + A[1] * B[2], A[0] * B[1] + A[1] * B[3], A[2] * B[0] + A[3] * B[2],
            A[2] * B[1] + A[3] * B[3]};
}

Mat2 mat_pow(const Mat2& A, i64 e) {
    Mat2 base = A;
    if (e < 0) {
        // SU(2): inverse is the conjugate transpose
        base = {std::conj(A[0]), std::conj(A[2]), std::conj(A[1]), std::conj(A[3])};
        e = -e;
    }
    Mat2 acc{1, 0, 0, 1};
    while (e > 0) {
        if (e & 1) acc = mat_mul(acc, base);
        base = mat_mul(base, base);
        e >>= 1;
    }
    return acc;
}

Rep rho_su2(const TorusKnot& K, const IrredComponent& c, double t) {
    if (t < 0 || t > 1) throw Error(ErrorKind::OutOfInterval, "t must lie in [0, 1]");
    const double pi = std::numbers::pi;
    const cd ex = std::polar(1.0, pi * static_cast<double>(c.alpha) / static_cast<double>(K.a));
    const cd ey = std::polar(1.0, pi * static_cast<double>(c.beta) / static_cast<double>(K.b));
    const double th = t * pi / 2, co = std::cos(th), si = std::sin(th);
    const Mat2 Rt{co, -si, si, co}, Rm{co, si, -si, co};
    const Mat2 dy{ey, 0, 0, std::conj(ey)};
    return {{ex, 0, 0, std::conj(ex)}, mat_mul(mat_mul(Rt, dy), Rm)};
}

double meridian_trace_formula(const TorusKnot& K, const IrredComponent& c, double t) {
    const double pi = std::numbers::pi, ab = static_cast<double>(K.a * K.b);
    const double co = std::cos(t * pi / 2), si = std::sin(t * pi / 2);
    const double u = static_cast<double>(c.alpha * K.b * K.m + c.beta * K.a * K.n);
    const double v = static_cast<double>(c.alpha * K.b * K.m - c.beta * K.a * K.n);
    return 2 * (co * co * std::cos(pi * u / ab) + si * si * std::cos(pi * v / ab));
}

TorsionRoot torsion_sqrt(const TorusKnot& K, const IrredComponent& c, TorsionSign sign, cd tau) {
    const double pi = std::numbers::pi, a = static_cast<double>(K.a), b = static_cast<double>(K.b);
    const double km = static_cast<double>(c.k_minus);
    double parity = (c.alpha % 2 == 0) ? 1.0 : -1.0;
    if (sign == TorsionSign::Corrected) parity = -parity;
    TorsionRoot r;
    r.coefficient = std::pow(2.0, 13.0 / 4) * std::sqrt(pi / (a * b)) * parity * std::sin(pi * km / a) *
                    std::sin(pi * km / b);
    const cd zv = static_cast<double>(K.D) - 2.0 * tau;
    r.half_form = 1.0 / std::sqrt(zv);
    // phi(Omega^2)(v) = 1, so the square evaluates to coefficient^2 on v.
    r.square_on_vector = (r.coefficient * r.coefficient * r.half_form * r.half_form * zv).real();
    const double sa = std::sin(pi * static_cast<double>(c.alpha) / a), sb = std::sin(pi * static_cast<double>(c.beta) / b);
    r.expected_square = std::pow(2.0, 13.0 / 2) * pi / (a * b) * sa * sa * sb * sb;
    return r;
}

namespace {

void check_branch(const IrredComponent& c, i64 ell) {
    if (ell < c.k_minus || ell >= c.k_plus || mod(ell - c.k_minus, 2) != 0)
        throw Error(ErrorKind::OutOfInterval, "l=" + std::to_string(ell) + " is not a branch of this component");
}

// Point l lambda/D + (t - l)(lambda/D - mu/2) as (p, q).
std::pair<double, double> branch_point(const TorusKnot& K, i64 ell, double t) {
    const double s = t - static_cast<double>(ell), D = static_cast<double>(K.D);
    return {-s / 2, static_cast<double>(ell) / D + s / D};
}

}  // namespace

cd cs_phase(const TorusKnot& K, const IrredComponent& c, i64 ell, double t, i64 k, cd tau) {
    check_branch(c, ell);
    if (t < static_cast<double>(ell) || t > static_cast<double>(ell + 2))
        throw Error(ErrorKind::OutOfInterval, "t outside [l, l+2]");
    const ThetaModel<double> model(K.D, k, Cx<double>(tau));
    const auto [p, q] = branch_point(K, ell, t);
    const Cx<double> x = model.z(p, q);
    const Cx<double> y = model.z(0, -static_cast<double>(ell) / static_cast<double>(K.D));
    const Cx<double> e = model.z(static_cast<double>(K.D), -2);
    const Cx<double> pulled = model.pullback_phase(y, x) * model.frame(e, x + y);
    const Cx<double> head = unit<double>(mod(k * (ell - c.k_minus) * (ell + c.k_minus), 2 * K.D), K.D);
    return (head * pulled).to_cd();
}

double cs_flatness_residual(const TorusKnot& K, const IrredComponent& c, i64 ell, i64 k, cd tau) {
    const ThetaModel<double> model(K.D, k, Cx<double>(tau));
    const double h = 1e-5;
    double worst = 0;
    for (int i = 1; i < 20; ++i) {
        const double t = static_cast<double>(ell) + 2.0 * i / 20;
        const cd sp = cs_phase(K, c, ell, t + h, k, tau), sm = cs_phase(K, c, ell, t - h, k, tau);
        const cd s0 = cs_phase(K, c, ell, t, k, tau);
        const cd dlog = (sp - sm) / (2 * h) / s0;
        const auto [p, q] = branch_point(K, ell, t);
        const auto [p1, q1] = branch_point(K, ell, t + 1);
        const Cx<double> x = model.z(p, q), xd = model.z(p1 - p, q1 - q);
        // Parallel transport for d + (1/i) alpha at level k: ds/dt = i k/2 omega(x, x') s.
        const cd want(0, static_cast<double>(k) / 2 * model.omega(x, xd));
        worst = std::max(worst, std::abs(dlog - want) / (1 + std::abs(want)));
    }
    return worst;
}

double cs_junction_residual(const TorusKnot& K, const IrredComponent& c, i64 ell_prime, i64 k, cd tau) {
    check_branch(c, ell_prime);
    const ThetaModel<double> model(K.D, k, Cx<double>(tau));
    const double D = static_cast<double>(K.D);
    // The k^- branch continued to parameter l' (past its own segment).
    const auto [p, q] = branch_point(K, c.k_minus, static_cast<double>(ell_prime));
    const Cx<double> x = model.z(p, q);
    const Cx<double> y = model.z(0, -static_cast<double>(c.k_minus) / D);
    const Cx<double> e = model.z(D, -2);
    const cd lhs = (model.pullback_phase(y, x) * model.frame(e, x + y)).to_cd();
    // x = x' + r with r an integer multiple of mu.
    const Cx<double> r = model.z(-static_cast<double>(ell_prime - c.k_minus) / 2, 0);
    const Cx<double> xp = model.z(0, static_cast<double>(ell_prime) / D);
    const cd rhs = cpolar<double>(1.0, static_cast<double>(k) / 2 * model.omega(r, xp)).to_cd() *
                   cs_phase(K, c, ell_prime, static_cast<double>(ell_prime), k, tau);
    return std::abs(lhs - rhs);
}

const char* mu_name(MuConvention c) { return c == MuConvention::Alpha ? "alpha" : "half-ab"; }

template <class R>
Cx<R> gamma_topological_r(const TorusKnot& K, i64 ell, i64 k, MuConvention mu, TorsionSign sign) {
    using std::pow;
    using std::sin;
    using std::sqrt;
    const i64 a = K.a, b = K.b, ab = a * b, D = K.D;
    const R pi = pi_v<R>();
    const Cx<R> mu_k = mu == MuConvention::Alpha ? unit<R>(ab * ab - a * a - b * b, 2 * k * ab)
                                                 : unit<R>(ab * ab - 2 * (a * a + b * b), 4 * k * ab);
    // mu_k / (i 2^{7/4}) (k/pi)^{1/2}
    const Cx<R> pre = mu_k * Cx<R>(R(0), R(-1)) * (sqrt(R(k) / pi) / pow(R(2), R(7) / R(4)));
    Cx<R> s;
    for (const auto& c : p_ell(K, ell)) {
        R coef = pow(R(2), R(13) / R(4)) * sqrt(pi / R(ab)) * sin(pi * R(c.k_minus) / R(a)) *
                 sin(pi * R(c.k_minus) / R(b));
        const bool odd = c.alpha % 2 != 0;
        if (odd != (sign == TorsionSign::Corrected)) coef = -coef;
        s += unit<R>(mod(k * (ell - c.k_minus) * (ell + c.k_minus), 2 * D), D) * coef;
    }
    return pre * s;
}

template Cx<double> gamma_topological_r<double>(const TorusKnot&, i64, i64, MuConvention, TorsionSign);
template Cx<Mp> gamma_topological_r<Mp>(const TorusKnot&, i64, i64, MuConvention, TorsionSign);

cd gamma_topological(const TorusKnot& K, i64 ell, i64 k, MuConvention mu, TorsionSign sign) {
    return gamma_topological_r<double>(K, ell, k, mu, sign).to_cd();
}

namespace {

template <class R>
CrossCheck cross_impl(const TorusKnot& K, i64 k, MuConvention mu, TorsionSign sign, const StateOptions& opt) {
    if (!window_fits(K, k)) {
        const Window w = window_plus(K, k);
        throw Error(ErrorKind::WindowTooNarrow, "window holds " + std::to_string(w.hi - w.lo) +
                                                    " indices, fewer than D=" + std::to_string(K.D));
    }
    const auto st = compute_state<R>(K, k, opt);
    const auto gp = gammas_from_psi(K, k, st.psi, window_plus(K, k));
    R mx(0);
    for (const auto& g : gp) mx = std::max<R>(mx, cabs(g));
    CrossCheck cc;
    cc.k = k;
    cc.mu = mu;
    cc.sign = sign;
    cc.digits = opt.digits;
    R worst(0);
    for (i64 l = -1; l < K.a * K.b; ++l) {
        const R d = cabs(gp[static_cast<std::size_t>(mod(l, K.D))] - gamma_topological_r<R>(K, l, k, mu, sign)) /
                    (R(1) + mx);
        cc.deviation.push_back(static_cast<double>(d));
        worst = std::max(worst, d);
    }
    cc.max_relative = static_cast<double>(worst);
    return cc;
}

}  // namespace

CrossCheck cross_check(const TorusKnot& K, i64 k, MuConvention mu, TorsionSign sign, const StateOptions& opt) {
    if (opt.digits <= 16) return cross_impl<double>(K, k, mu, sign, opt);
    MpDigits guard(opt.digits);
    return cross_impl<Mp>(K, k, mu, sign, opt);
}

ConventionChoice select_mu_convention(const TorusKnot& K, const std::vector<i64>& levels, const StateOptions& opt) {
    ConventionChoice ch;
    for (i64 k : levels) {
        if (!window_fits(K, k)) continue;
        ch.alpha_devs.push_back(cross_check(K, k, MuConvention::Alpha, TorsionSign::Corrected, opt).max_relative);
        ch.half_ab_devs.push_back(cross_check(K, k, MuConvention::HalfAb, TorsionSign::Corrected, opt).max_relative);
    }
    if (ch.alpha_devs.empty()) throw Error(ErrorKind::WindowTooNarrow, "no level admits a gamma window");
    ch.mu = ch.alpha_devs.back() <= ch.half_ab_devs.back() ? MuConvention::Alpha : MuConvention::HalfAb;
    return ch;
}

}  // namespace tqk
