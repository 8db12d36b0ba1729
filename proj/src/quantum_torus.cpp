#include "tqk/quantum_torus.hpp"

#include "tqk/errors.hpp"

#include <cmath>

namespace tqk {

std::array<double, 4> Frame::j_matrix() const {
    const double t1 = tau.real(), t2 = tau.imag();
    // i*1 and i*tau rewritten in the real basis (1, tau).
    // + 0.0 normalizes signed zeros for stable serialization
    return {-t1 / t2 + 0.0, 1.0 / t2, -(t1 * t1 + t2 * t2) / t2, t1 / t2 + 0.0};
}

double Frame::omega(double p1, double q1, double p2, double q2) const {
    const double rho = 4 * std::numbers::pi / tau.imag();
    const cd x(p1 + q1 * tau.real(), q1 * tau.imag());
    const cd y(p2 + q2 * tau.real(), q2 * tau.imag());
    return rho * (std::conj(x) * y).imag();
}

OrientationChoice select_orientation() {
    // S = T*_{-lambda/2kD} and the shift R has mu-component 1/2k. The
    // Heisenberg law gives S R = exp(i k omega(x_S, x_R)) R S with
    // k omega(x_S, x_R) = -omega(lambda, mu) / (4 k D), i.e. q^{-s/D} when
    // omega(lambda, mu) = 4 pi s. The Psi relations need S R = q^{1/D} R S.
    auto exponent = [](int sign_lambda_mu) { return -sign_lambda_mu; };
    OrientationChoice c;
    c.commutator_first = exponent(+1);   // omega(lambda, mu) = 4 pi
    c.commutator_second = exponent(-1);  // omega(mu, lambda) = 4 pi
    c.required = 1;
    if (c.commutator_first == c.required)
        c.chosen = "omega(lambda,mu)=4pi";
    else if (c.commutator_second == c.required)
        c.chosen = "omega(mu,lambda)=4pi";
    else
        throw Error(ErrorKind::DegenerateEigenvalue, "no orientation reproduces the Psi relations");
    return c;
}

// ---------------------------------------------------------------------------
// Theta model

template <class R>
ThetaModel<R>::ThetaModel(i64 D, i64 k, Cx<R> tau, unsigned digits)
    : D_(D), k_(k), Nk_(2 * k * D), tau_(tau) {
    using std::ceil;
    using std::sqrt;
    if (k < 1 || D < 1) throw Error(ErrorKind::ParameterTooSmall, "theta model needs k, D >= 1");
    if (!(tau.im > 0)) throw Error(ErrorKind::InvalidArgument, "Im tau must be positive");
    const R pi = pi_v<R>();
    rho_ = R(4) * pi / tau.im;
    c_ = R(k) * pi / tau.im;
    taup_ = Cx<R>(R(2)) - Cx<R>(R(D)) / tau;
    cp_ = R(k) * pi * R(D) / taup_.im;
    const double L = std::log(10.0) * (static_cast<double>(digits) + 2);
    W_ = static_cast<int>(std::ceil(std::sqrt(L * static_cast<double>(Nk_) /
                                              (std::numbers::pi * static_cast<double>(taup_.im))))) + 3;

    // |Psi_0|^2 integrates to one against |omega| with the half-form metric.
    const R rhop = R(4) * pi * R(D) / taup_.im;
    const R nrm2 = rhop * sqrt(taup_.im / (R(2) * R(Nk_))) * sqrt(R(2) / rho_);
    const R modulus = R(1) / sqrt(nrm2);
    Cx<R> theta0;
    for (i64 j = -W_; j <= W_; ++j) {
        const i64 m = j * Nk_;
        const R m2 = R(m) * R(m);
        theta0 += cexp(Cx<R>(-pi * taup_.im * m2 / R(Nk_), pi * taup_.re * m2 / R(Nk_)));
    }
    const Cx<R> om = half_form(tau_);
    const R want = pi / R(4) + carg(om);
    C_ = cpolar<R>(modulus, want - carg(theta0));
}

template <class R>
template <class Coef>
Cx<R> ThetaModel<R>::series(const Coef& coef, const Cx<R>& z) const {
    using std::exp;
    using std::floor;
    const R pi = pi_v<R>();
    const Cx<R> w = -z / tau_;
    const R m0 = -R(Nk_) * w.im / taup_.im;
    const i64 lo = static_cast<i64>(floor(m0)) - W_;
    const i64 hi = static_cast<i64>(floor(m0)) + W_ + 1;
    // Split pi*tau'_1*m^2/Nk into an exactly reduced 2*pi*m^2/Nk part and the
    // remainder pi*(tau'_1 - 2)*m^2/Nk (zero for purely imaginary tau).
    const R t1r = taup_.re - R(2);
    const R base_phase = R(2) * cp_ * w.re * w.im;
    Cx<R> s;
    for (i64 m = lo; m <= hi; ++m) {
        const Cx<R>& cf = coef(m);
        if (cf.re == 0 && cf.im == 0) continue;
        const R dm = R(m) - m0;
        const R amp = exp(-pi * taup_.im * dm * dm / R(Nk_));
        const R mm = R(m);
        R ph = base_phase + R(2) * pi * mm * w.re;
        if (t1r != 0) ph += pi * t1r * mm * mm / R(Nk_);
        const i64 red = mod(m, Nk_);
        s += cf * unit2<R>(2 * red, red, Nk_) * cpolar<R>(amp, ph);
    }
    return C_ * s;
}

template <class R>
Cx<R> ThetaModel<R>::eval(const std::vector<Cx<R>>& coeffs, const Cx<R>& z) const {
    if (static_cast<i64>(coeffs.size()) != Nk_)
        throw Error(ErrorKind::BasisMismatch, "coefficient vector does not match dimension 2kD");
    return series([&](i64 m) -> const Cx<R>& { return coeffs[static_cast<std::size_t>(mod(m, Nk_))]; },
                  z);
}

template <class R>
Cx<R> ThetaModel<R>::eval_basis(i64 n, const Cx<R>& z) const {
    const Cx<R> one(R(1)), zero;
    const i64 r = mod(n, Nk_);
    return series([&](i64 m) -> const Cx<R>& { return mod(m, Nk_) == r ? one : zero; }, z);
}

template <class R>
R ThetaModel<R>::omega(const Cx<R>& x, const Cx<R>& y) const {
    return rho_ * (x.re * y.im - x.im * y.re);
}

template <class R>
Cx<R> ThetaModel<R>::pullback_phase(const Cx<R>& x, const Cx<R>& y) const {
    return cpolar<R>(R(1), -R(k_) / R(2) * omega(x, y));
}

template <class R>
Cx<R> ThetaModel<R>::frame(const Cx<R>& e, const Cx<R>& z) const {
    const Cx<R> r = z * z * conj(e) / e;
    return cexp(Cx<R>(c_ * (r.re - norm2(z)), c_ * r.im));
}

template <class R>
Cx<R> ThetaModel<R>::half_form(const Cx<R>& v) const {
    return Cx<R>(R(1)) / csqrt(v);
}

template class ThetaModel<double>;
template class ThetaModel<Mp>;

// ---------------------------------------------------------------------------
// Heisenberg operators

double StateVec::norm() const {
    double s = 0;
    for (const auto& x : c) s += std::norm(x);
    return std::sqrt(s);
}

namespace {

void check_same(const HeisenbergOp& A, const HeisenbergOp& B) {
    if (A.k != B.k || A.D != B.D) throw Error(ErrorKind::BasisMismatch, "operators at different (k, D)");
}

HeisenbergOp normalized(HeisenbergOp op) {
    const i64 nk = op.Nk();
    op.u = mod(op.u, nk);
    op.v = mod(op.v, nk);
    op.g = mod(op.g, 2 * nk);
    return op;
}

}  // namespace

HeisenbergOp compose(const HeisenbergOp& A, const HeisenbergOp& B) {
    check_same(A, B);
    const __int128 cross = 2 * static_cast<__int128>(A.u) * B.v;
    const i64 cross_r = static_cast<i64>(cross % (2 * A.Nk()));
    return normalized({A.k, A.D, A.u + B.u, A.v + B.v, A.g + B.g + cross_r});
}

HeisenbergOp HeisenbergOp::then(const HeisenbergOp& A) const { return compose(A, *this); }

HeisenbergOp HeisenbergOp::inverse() const {
    const __int128 uv = 2 * static_cast<__int128>(u) * v;
    return normalized({k, D, -u, -v, static_cast<i64>(uv % (2 * Nk())) - g});
}

HeisenbergOp HeisenbergOp::pow(i64 r) const {
    HeisenbergOp base = r < 0 ? inverse() : *this;
    i64 e = r < 0 ? -r : r;
    HeisenbergOp acc = identity_op(k, D);
    while (e > 0) {
        if (e & 1) acc = compose(acc, base);
        base = compose(base, base);
        e >>= 1;
    }
    return acc;
}

HeisenbergOp HeisenbergOp::times_zeta(i64 e) const { return normalized({k, D, u, v, g + e}); }

bool HeisenbergOp::operator==(const HeisenbergOp& o) const {
    const HeisenbergOp a = normalized(*this), b = normalized(o);
    return a.k == b.k && a.D == b.D && a.u == b.u && a.v == b.v && a.g == b.g;
}

template <class R>
std::vector<Cx<R>> HeisenbergOp::apply(const std::vector<Cx<R>>& c) const {
    const i64 nk = Nk();
    if (static_cast<i64>(c.size()) != nk) throw Error(ErrorKind::BasisMismatch, "vector is not in H_{D,k}");
    std::vector<Cx<R>> out(c.size());
    for (i64 n = 0; n < nk; ++n)
        out[static_cast<std::size_t>(mod(n + v, nk))] =
            c[static_cast<std::size_t>(n)] * unit<R>(mod(g + 2 * u * n, 2 * nk), nk);
    return out;
}

template std::vector<Cx<double>> HeisenbergOp::apply(const std::vector<Cx<double>>&) const;
template std::vector<Cx<Mp>> HeisenbergOp::apply(const std::vector<Cx<Mp>>&) const;

StateVec HeisenbergOp::apply(const StateVec& s) const {
    if (s.basis != Basis::PsiD || s.k != k || s.D != D)
        throw Error(ErrorKind::BasisMismatch, "Heisenberg operators act on PsiD vectors of the same level");
    const i64 nk = Nk();
    StateVec out{k, D, Basis::PsiD, std::vector<cd>(s.c.size())};
    for (i64 n = 0; n < nk; ++n)
        out.c[static_cast<std::size_t>(mod(n + v, nk))] =
            s.c[static_cast<std::size_t>(n)] * unit<double>(mod(g + 2 * u * n, 2 * nk), nk).to_cd();
    return out;
}

std::vector<cd> HeisenbergOp::dense() const {
    const i64 nk = Nk();
    std::vector<cd> M(static_cast<std::size_t>(nk * nk));
    for (i64 n = 0; n < nk; ++n)
        M[static_cast<std::size_t>(mod(n + v, nk) * nk + n)] = unit<double>(mod(g + 2 * u * n, 2 * nk), nk).to_cd();
    return M;
}

HeisenbergOp identity_op(i64 k, i64 D) { return {k, D, 0, 0, 0}; }

HeisenbergOp translation_op(Rat p, Rat q, i64 k, i64 D) {
    // T*_{p mu} = M^{2kp} carries u = -2v, g = -2v^2; T*_{q lambda} is
    // diagonal with u = -2kDq; the cocycle exp(-2 pi i k p q) adds v*w.
    const Rat vr = Rat(2 * k) * p;
    const Rat wr = Rat(-2 * k * D) * q;
    if (vr.denominator() != 1 || wr.denominator() != 1)
        throw Error(ErrorKind::NotLatticeCompatible,
                    "translation does not preserve H_{D,k} (need 2kp and 2kDq integral)");
    const i64 v = vr.numerator(), w = wr.numerator();
    const i64 nk = 2 * k * D;
    // g must use the unreduced u and v: shifting v by Nk changes u*v by a
    // multiple of Nk only, which is a genuine phase.
    const __int128 g = static_cast<__int128>(w - 2 * v) * v;
    return normalized({k, D, w - 2 * v, v, static_cast<i64>(g % (2 * nk))});
}

HeisenbergOp op_S(i64 k, i64 D) { return translation_op(Rat(0), Rat(-1, 2 * k * D), k, D); }
HeisenbergOp op_R(i64 k, i64 D) { return normalized({k, D, 0, 1, 0}); }
HeisenbergOp op_M(i64 k, i64 D) { return translation_op(Rat(1, 2 * k), Rat(0), k, D); }
HeisenbergOp op_L(i64 k, i64 D) { return translation_op(Rat(0), Rat(-1, 2 * k), k, D); }

// ---------------------------------------------------------------------------
// Bases

template <class R>
std::vector<Cx<R>> xi_to_psi(const std::vector<Cx<R>>& z, i64 D, const Cx<R>& phase) {
    using std::sqrt;
    const i64 two_k = static_cast<i64>(z.size());
    const i64 k = two_k / 2, nk = two_k * D;
    // F_r = sum_l z_l exp(-i pi l r / k)
    const auto tab = unit_table<R>(k);
    std::vector<Cx<R>> F(static_cast<std::size_t>(two_k));
    for (i64 r = 0; r < two_k; ++r) {
        Cx<R> s;
        for (i64 l = 0; l < two_k; ++l) {
            const auto& zl = z[static_cast<std::size_t>(l)];
            if (zl.re == 0 && zl.im == 0) continue;
            s += zl * lookup(tab, -l * r);
        }
        F[static_cast<std::size_t>(r)] = s;
    }
    const Cx<R> pre = phase / sqrt(R(two_k));
    std::vector<Cx<R>> out(static_cast<std::size_t>(nk));
    for (i64 n = 0; n < nk; ++n)
        out[static_cast<std::size_t>(n)] = pre * unit2<R>(-n, n, k * D) * F[static_cast<std::size_t>(mod(n, two_k))];
    return out;
}

template std::vector<Cx<double>> xi_to_psi(const std::vector<Cx<double>>&, i64, const Cx<double>&);
template std::vector<Cx<Mp>> xi_to_psi(const std::vector<Cx<Mp>>&, i64, const Cx<Mp>&);

template <class R>
Cx<R> xi_phase(const ThetaModel<R>& model, int sign) {
    using std::sqrt;
    const i64 k = model.k(), D = model.D(), nk = model.Nk();
    std::vector<Cx<R>> xi0(static_cast<std::size_t>(nk));
    const R s = R(1) / sqrt(R(2 * k));
    for (i64 n = 0; n < nk; ++n) xi0[static_cast<std::size_t>(n)] = unit2<R>(-n, n, k * D) * s;
    const Cx<R> v = model.eval(xi0, Cx<R>());
    // c * v must lie on R_{>0} * sign * Omega_mu, Omega_mu = 1 (principal).
    return conj(v) / cabs(v) * R(sign);
}

template Cx<double> xi_phase(const ThetaModel<double>&, int);
template Cx<Mp> xi_phase(const ThetaModel<Mp>&, int);

XiBasis xi_basis(const ThetaModel<double>& model, bool materialize, int sign) {
    const i64 k = model.k(), D = model.D(), nk = model.Nk();
    if (k < 2) throw Error(ErrorKind::ParameterTooSmall, "xi basis needs k >= 2");
    XiBasis xb;
    xb.k = k;
    xb.D = D;
    xb.sign = sign;
    const Cx<double> c = xi_phase(model, sign);
    xb.phase = c.to_cd();
    if (!materialize) return xb;
    const double s = 1.0 / std::sqrt(2.0 * static_cast<double>(k));
    xb.vecs.reserve(static_cast<std::size_t>(2 * k));
    for (i64 l = 0; l < 2 * k; ++l) {
        StateVec v{k, D, Basis::PsiD, std::vector<cd>(static_cast<std::size_t>(nk))};
        // q^{-ln - n^2/D} = zeta^{-2(Dln + n^2)}, zeta = exp(i pi/2kD)
        for (i64 n = 0; n < nk; ++n) {
            const i64 e = mod(-2 * (mod(D * l * n, 2 * nk) + mod(n * n, 2 * nk)), 2 * nk);
            v.c[static_cast<std::size_t>(n)] = xb.phase * s * unit<double>(e, nk).to_cd();
        }
        xb.vecs.push_back(std::move(v));
    }
    // Simple spectrum of M on the constructed vectors.
    const HeisenbergOp M = op_M(k, D);
    for (i64 l = 0; l < 2 * k; ++l) {
        const StateVec Mv = M.apply(xb.vecs[static_cast<std::size_t>(l)]);
        const cd ev = unit<double>(l, k).to_cd();
        double res = 0;
        for (std::size_t i = 0; i < Mv.c.size(); ++i)
            res = std::max(res, std::abs(Mv.c[i] - ev * xb.vecs[static_cast<std::size_t>(l)].c[i]));
        if (res > 1e-9)
            throw Error(ErrorKind::DegenerateEigenvalue,
                        "xi_" + std::to_string(l) + " is not an eigenvector of M with eigenvalue q^l");
    }
    return xb;
}

StateVec embed(const StateVec& s, const XiBasis& xb) {
    if (s.basis == Basis::PsiD) return s;
    if (s.k != xb.k || s.D != xb.D) throw Error(ErrorKind::BasisMismatch, "xi basis at a different level");
    std::vector<Cx<double>> z(s.c.size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = Cx<double>(s.c[i]);
    const auto psi = xi_to_psi(z, s.D, Cx<double>(xb.phase));
    StateVec out{s.k, s.D, Basis::PsiD, std::vector<cd>(psi.size())};
    for (std::size_t i = 0; i < psi.size(); ++i) out.c[i] = psi[i].to_cd();
    return out;
}

StateVec phi_vec(i64 ell, i64 k, i64 D) {
    const i64 nk = 2 * k * D;
    StateVec v{k, D, Basis::PsiD, std::vector<cd>(static_cast<std::size_t>(nk))};
    const double s = 1.0 / std::sqrt(static_cast<double>(nk));
    for (i64 n = 0; n < nk; ++n)
        v.c[static_cast<std::size_t>(n)] = s * unit<double>(mod(2 * n * ell, 2 * D), D).to_cd();
    return v;
}

StateVec psi_vec(i64 n, i64 k, i64 D) {
    const i64 nk = 2 * k * D;
    StateVec v{k, D, Basis::PsiD, std::vector<cd>(static_cast<std::size_t>(nk))};
    v.c[static_cast<std::size_t>(mod(n, nk))] = 1.0;
    return v;
}

ThetaValue theta_eval(const ThetaModel<double>& model, const StateVec& v, double p, double q, double e_p,
                      double e_q, const XiBasis* xb) {
    StateVec w = v;
    if (v.basis == Basis::Xi) {
        if (!xb) throw Error(ErrorKind::BasisMismatch, "Xi vector needs a xi basis for evaluation");
        w = embed(v, *xb);
    }
    if (w.k != model.k() || w.D != model.D()) throw Error(ErrorKind::BasisMismatch, "model level mismatch");
    std::vector<Cx<double>> c(w.c.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = Cx<double>(w.c[i]);
    const Cx<double> z = model.z(p, q);
    return {model.eval(c, z).to_cd(), model.frame(model.z(e_p, e_q), z).to_cd()};
}

HalfFormScalar half_form_scalar(const Frame& frame, double p, double q) {
    if (p == 0 && q == 0) throw Error(ErrorKind::InvalidArgument, "half-form scalar of the zero vector");
    const cd zv(p + q * frame.tau.real(), q * frame.tau.imag());
    const cd om = 1.0 / std::sqrt(zv);
    return {p, q, om, std::abs(om * om * zv - 1.0)};
}

cd inner(const StateVec& u, const StateVec& v, const XiBasis* xb) {
    if (u.k != v.k || u.D != v.D) throw Error(ErrorKind::BasisMismatch, "vectors at different (k, D)");
    if (u.basis == v.basis) {
        if (u.c.size() != v.c.size()) throw Error(ErrorKind::BasisMismatch, "dimension mismatch");
        cd s = 0;
        for (std::size_t i = 0; i < u.c.size(); ++i) s += std::conj(u.c[i]) * v.c[i];
        return s;
    }
    if (!xb) throw Error(ErrorKind::BasisMismatch, "mixed Xi/PsiD product needs a xi basis");
    const StateVec a = embed(u, *xb), b = embed(v, *xb);
    return inner(a, b) / static_cast<double>(u.D);
}

}  // namespace tqk
