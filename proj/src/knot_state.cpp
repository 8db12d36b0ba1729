#include "tqk/knot_state.hpp"

#include "tqk/errors.hpp"

#include <algorithm>
#include <cmath>

namespace tqk {

namespace {

template <class R>
Cx<R> tau_as(cd tau) {
    return Cx<R>(R(tau.real()), R(tau.imag()));
}

template <class R>
std::vector<Cx<R>> xi_coefficients(const TorusKnot& K, i64 k) {
    using std::sin;
    using std::sqrt;
    auto J = jones_eval_all<R>(K, k);
    const R s = sin(pi_v<R>() / R(k)) / sqrt(R(k));
    for (auto& x : J) x *= s;
    return J;
}

template <class R>
std::vector<Cx<R>> z0_coefficients(i64 k) {
    using std::sqrt;
    return std::vector<Cx<R>>(static_cast<std::size_t>(2 * k), Cx<R>(R(0), R(-1) / (R(2) * sqrt(R(k)))));
}

std::vector<cd> to_cd(const std::vector<Cx<double>>& v) {
    std::vector<cd> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].to_cd();
    return out;
}

}  // namespace

template <class R>
StateData<R> compute_state(const TorusKnot& K, i64 k, const StateOptions& opt) {
    if (k < 2) throw Error(ErrorKind::ParameterTooSmall, "level k must be >= 2");
    StateData<R> st;
    st.K = K;
    st.k = k;
    const ThetaModel<R> model(K.D, k, tau_as<R>(opt.tau), opt.digits);
    st.phase = xi_phase(model, opt.xi_sign);
    st.z_xi = xi_coefficients<R>(K, k);
    st.psi = xi_to_psi(st.z_xi, K.D, st.phase);
    st.z0_psi = xi_to_psi(z0_coefficients<R>(k), K.D, st.phase);
    return st;
}

template StateData<double> compute_state<double>(const TorusKnot&, i64, const StateOptions&);
template StateData<Mp> compute_state<Mp>(const TorusKnot&, i64, const StateOptions&);

StateVec build_state(const TorusKnot& K, i64 k) {
    return {k, K.D, Basis::Xi, to_cd(xi_coefficients<double>(K, k))};
}

StateVec build_z0(const TorusKnot& K, i64 k) {
    if (k < 2) throw Error(ErrorKind::ParameterTooSmall, "level k must be >= 2");
    return {k, K.D, Basis::Xi, to_cd(z0_coefficients<double>(k))};
}

double state_norm(const TorusKnot& K, i64 k) { return build_state(K, k).norm(); }

double residual_inhomogeneous(const TorusKnot& K, i64 k, const StateOptions& opt) {
    const auto st = compute_state<double>(K, k, opt);
    const i64 D = K.D, a = K.a, b = K.b, ab = a * b;
    const StateVec Z{k, D, Basis::PsiD, to_cd(st.psi)};
    const StateVec Z0{k, D, Basis::PsiD, to_cd(st.z0_psi)};
    // q = zeta^{2D}, so q^{-1} M = M * zeta^{-2D}.
    const HeisenbergOp qM = op_M(k, D).times_zeta(-2 * D);
    const HeisenbergOp L = op_L(k, D);
    StateVec r = Z;
    const StateVec hom = compose(qM.pow(-2 * ab), L.pow(-2)).apply(Z);
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] -= hom.c[i];
    const i64 eps[4] = {1, -1, 1, -1};
    const i64 p[4] = {-a - b, -a + b, a + b, a - b};
    for (int i = 0; i < 4; ++i) {
        const StateVec t = qM.pow(-ab + p[i]).times_zeta(2 * D * eps[i]).apply(Z0);
        for (std::size_t j = 0; j < r.c.size(); ++j) r.c[j] -= static_cast<double>(eps[i]) * t.c[j];
    }
    return r.norm() / Z.norm();
}

namespace {

template <class R>
AlphaReport alpha_impl(const TorusKnot& K, i64 k, const StateOptions& opt) {
    using std::sqrt;
    const auto st = compute_state<R>(K, k, opt);
    const i64 D = K.D;
    const i64 N0 = D * D - 4 * (K.a * K.a + K.b * K.b);
    const Cx<R> ph = unit<R>(N0, 4 * D * k);
    const Cx<R> alpha = st.z0_psi[0] * ph;
    const Cx<R> pred = Cx<R>(R(0), R(1) / sqrt(R(2))) * ph;
    AlphaReport rep;
    rep.alpha = alpha.to_cd();
    rep.predicted = pred.to_cd();
    rep.error = static_cast<double>(cabs(alpha - pred));
    double lo = 1e300, hi = 0;
    for (i64 m = 0; m < D; ++m) {
        const double v = static_cast<double>(cabs(st.z0_psi[static_cast<std::size_t>(2 * k * m)]));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    rep.modulus_spread = hi - lo;
    rep.digits = opt.digits;
    return rep;
}

}  // namespace

AlphaReport extract_alpha(const TorusKnot& K, i64 k, const StateOptions& opt) {
    if (opt.digits <= 16) return alpha_impl<double>(K, k, opt);
    MpDigits guard(opt.digits);
    return alpha_impl<Mp>(K, k, opt);
}

cd beta(const TorusKnot& K, i64 k, i64 ell, cd alpha, BetaSign sign) {
    const double pi = std::numbers::pi;
    const double s = (mod(ell, 2) == 0 ? 1.0 : -1.0) * std::sin(pi * static_cast<double>(ell) / static_cast<double>(K.a)) *
                     std::sin(pi * static_cast<double>(ell) / static_cast<double>(K.b));
    const double c = 4 * std::sqrt(2.0 * static_cast<double>(k) / static_cast<double>(K.D));
    return (sign == BetaSign::Corrected ? 1.0 : -1.0) * c * s * alpha;
}

namespace {

template <class R>
Cx<R> beta_r(const TorusKnot& K, i64 k, i64 ell, const Cx<R>& alpha, BetaSign sign) {
    using std::sin;
    using std::sqrt;
    const R pi = pi_v<R>();
    // sin(pi l/a) sin(pi l/b) with exact reduction of l modulo 2a, 2b
    const R sa = sin(pi * R(mod(ell, 2 * K.a)) / R(K.a));
    const R sb = sin(pi * R(mod(ell, 2 * K.b)) / R(K.b));
    R s = sa * sb;
    if (mod(ell, 2) != 0) s = -s;
    if (sign == BetaSign::Literal) s = -s;
    return alpha * (R(4) * sqrt(R(2 * k) / R(K.D)) * s);
}

}  // namespace

Window window_plus(const TorusKnot& K, i64 k) {
    const i64 a = K.a, b = K.b;
    return {-a * b + a + b + 1, 2 * k - a * b - a - b};
}

Window window_minus(const TorusKnot& K, i64 k) {
    const i64 a = K.a, b = K.b;
    return {-2 * k - a * b + a + b + 1, -a * b - a - b};
}

bool window_fits(const TorusKnot& K, i64 k) {
    const Window w = window_plus(K, k);
    return w.hi - w.lo >= K.D;
}

bool window_guard_literal(const TorusKnot& K, i64 k) { return 2 * k > 4 * (K.a + K.b); }

template <class R>
std::vector<Cx<R>> gammas_from_psi(const TorusKnot& K, i64 k, const std::vector<Cx<R>>& psi, const Window& w,
                                   i64 offset) {
    using std::sqrt;
    const i64 D = K.D, nk = 2 * k * D;
    const i64 st = w.lo + (w.hi - w.lo - D) / 2 + offset;
    if (st < w.lo || st + D > w.hi) throw Error(ErrorKind::WindowTooNarrow, "extraction block leaves the window");
    const R scale = sqrt(R(nk)) / R(D);
    std::vector<Cx<R>> g(static_cast<std::size_t>(D));
    for (i64 l = 0; l < D; ++l) {
        Cx<R> s;
        for (i64 n = st; n < st + D; ++n)
            s += psi[static_cast<std::size_t>(mod(n, nk))] * unit2<R>(-2 * n, l, D);
        g[static_cast<std::size_t>(l)] = s * scale;
    }
    return g;
}

template std::vector<Cx<double>> gammas_from_psi(const TorusKnot&, i64, const std::vector<Cx<double>>&,
                                                 const Window&, i64);
template std::vector<Cx<Mp>> gammas_from_psi(const TorusKnot&, i64, const std::vector<Cx<Mp>>&, const Window&,
                                             i64);

namespace {

template <class R>
double window_residual(const TorusKnot& K, i64 k, const std::vector<Cx<R>>& psi, const Window& w) {
    using std::sqrt;
    const i64 D = K.D, nk = 2 * k * D;
    const i64 st = w.lo + (w.hi - w.lo - D) / 2;
    R worst(0);
    for (i64 n = w.lo; n < w.hi; ++n) {
        const i64 ref = st + mod(n - st, D);
        const R d = cabs(psi[static_cast<std::size_t>(mod(n, nk))] - psi[static_cast<std::size_t>(mod(ref, nk))]);
        if (d > worst) worst = d;
    }
    return static_cast<double>(worst * sqrt(R(nk)));
}

template <class R>
GammaTable gamma_impl(const TorusKnot& K, i64 k, const StateOptions& opt) {
    const auto st = compute_state<R>(K, k, opt);
    const i64 D = K.D;
    const Window wp = window_plus(K, k), wm = window_minus(K, k);
    const auto gp = gammas_from_psi(K, k, st.psi, wp);
    const auto gm = gammas_from_psi(K, k, st.psi, wm);

    GammaTable t;
    t.K = K;
    t.k = k;
    t.digits = opt.digits;
    const i64 N0 = D * D - 4 * (K.a * K.a + K.b * K.b);
    const Cx<R> alpha = st.z0_psi[0] * unit<R>(N0, 4 * D * k);
    t.alpha = alpha.to_cd();
    t.window_residual_plus = window_residual(K, k, st.psi, wp);
    t.window_residual_minus = window_residual(K, k, st.psi, wm);

    const i64 slack = (wp.hi - wp.lo - D) - (wp.hi - wp.lo - D) / 2;
    const i64 off = std::min<i64>(D / 2, slack);
    if (off > 0) {
        const auto g2 = gammas_from_psi(K, k, st.psi, wp, off);
        R dev(0);
        for (i64 l = 0; l < D; ++l) {
            const R d = cabs(g2[static_cast<std::size_t>(l)] - gp[static_cast<std::size_t>(l)]);
            if (d > dev) dev = d;
        }
        t.offset_deviation = static_cast<double>(dev);
    }

    R mx(0);
    for (const auto& g : gp) mx = std::max<R>(mx, cabs(g));
    t.max_gamma = static_cast<double>(mx);
    const R scale = mx > 0 ? mx : R(1);

    std::vector<Cx<R>> bt(static_cast<std::size_t>(D)), bl(static_cast<std::size_t>(D));
    for (i64 l = 0; l < D; ++l) {
        bt[static_cast<std::size_t>(l)] = beta_r<R>(K, k, l, alpha, BetaSign::Corrected);
        bl[static_cast<std::size_t>(l)] = beta_r<R>(K, k, l, alpha, BetaSign::Literal);
    }
    auto G = [&](const std::vector<Cx<R>>& v, i64 l) -> const Cx<R>& { return v[static_cast<std::size_t>(mod(l, D))]; };
    // e^{(2 i pi / D) 2k (l-1)}
    auto ph = [&](i64 l) { return unit<R>(mod(4 * k * (l - 1), 2 * D), D); };

    R rec(0), recl(0), sym(0), per(0);
    t.recurrence_per_ell.resize(static_cast<std::size_t>(D));
    for (i64 l = 0; l < D; ++l) {
        const Cx<R> lhs = G(gp, l) - ph(l) * G(gp, l - 2);
        const R r = cabs(lhs - G(bt, l)) / scale;
        t.recurrence_per_ell[static_cast<std::size_t>(l)] = static_cast<double>(r);
        rec = std::max(rec, r);
        recl = std::max<R>(recl, cabs(lhs - G(bl, l)) / scale);
        sym = std::max<R>(sym, cabs(G(gm, -l) + G(gp, l)) / scale);
        per = std::max<R>(per, cabs(G(gm, l) - ph(l) * G(gp, l - 2)) / scale);
    }
    t.res_recurrence = static_cast<double>(rec);
    t.res_recurrence_literal = static_cast<double>(recl);
    t.res_symmetry = static_cast<double>(sym);
    t.res_periodicity = static_cast<double>(per);
    t.res_gamma_m1 = static_cast<double>(cabs(G(gp, -1)) / scale);
    t.res_gamma_0 = static_cast<double>(cabs(G(gp, 0) - G(bt, 0) / R(2)) / scale);

    t.beta.resize(static_cast<std::size_t>(D));
    t.gamma_plus.resize(static_cast<std::size_t>(D));
    t.gamma_minus.resize(static_cast<std::size_t>(D));
    for (i64 l = 0; l < D; ++l) {
        t.beta[static_cast<std::size_t>(l)] = G(bt, l).to_cd();
        t.gamma_plus[static_cast<std::size_t>(l)] = G(gp, l).to_cd();
        t.gamma_minus[static_cast<std::size_t>(l)] = G(gm, l).to_cd();
    }
    return t;
}

}  // namespace

double GammaTable::max_invariant_residual() const {
    return std::max({res_gamma_m1, res_gamma_0, res_recurrence, res_symmetry, res_periodicity});
}

GammaTable extract_gammas(const TorusKnot& K, i64 k, const StateOptions& opt) {
    if (!window_fits(K, k)) {
        const Window w = window_plus(K, k);
        throw Error(ErrorKind::WindowTooNarrow,
                    "window [" + std::to_string(w.lo) + ", " + std::to_string(w.hi) + ") holds " +
                        std::to_string(w.hi - w.lo) + " indices, fewer than D=" + std::to_string(K.D) +
                        " (need 2k >= D + 2(a+b) + 1)");
    }
    if (opt.digits <= 16) return gamma_impl<double>(K, k, opt);
    MpDigits guard(opt.digits);
    return gamma_impl<Mp>(K, k, opt);
}

cd saut_sum(const TorusKnot& K, i64 ell) {
    const i64 a = K.a, b = K.b, D = K.D;
    const i64 eps[4] = {1, -1, 1, -1};
    const i64 p[4] = {-a - b, -a + b, a + b, a - b};
    cd s = 0;
    for (int i = 0; i < 4; ++i)
        s += static_cast<double>(eps[i]) * unit<double>(mod(-2 * ell * p[i], 2 * D), D).to_cd();
    return s;
}

}  // namespace tqk
