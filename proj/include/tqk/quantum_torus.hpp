#pragma once

#include "tqk/numeric.hpp"

#include <boost/rational.hpp>

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace tqk {

using Rat = boost::rational<i64>;

// Points of E are written x = p*mu + q*lambda. The complex structure is
// encoded by tau = z(lambda) with Im tau > 0 and z(mu) = 1, so that
// omega(x, y) = rho * Im(conj(z_x) z_y) with rho = 4 pi / Im tau.
struct Frame {
    cd tau{0.0, 1.0};

    // j as a 2x2 matrix acting on (mu, lambda) coordinates, column-major:
    // j(mu) = (j[0], j[1]), j(lambda) = (j[2], j[3]).
    std::array<double, 4> j_matrix() const;
    double omega(double p1, double q1, double p2, double q2) const;
};

// Outcome of the orientation selection between the two candidate signs of
// the symplectic pairing.
struct OrientationChoice {
    std::string chosen;          // "omega(mu,lambda)=4pi" or "omega(lambda,mu)=4pi"
    int commutator_first = 0;    // exponent e in SR = q^{e/D} RS if omega(lambda,mu) = 4pi
    int commutator_second = 0;   // same if omega(mu,lambda) = 4pi
    int required = 1;            // exponent demanded by the Psi relations
};

OrientationChoice select_orientation();

// Theta-series model of H_{D,k}: evaluation of Psi-basis expansions at
// points of E, returned in units of the principal half-form root of dz.
template <class R>
class ThetaModel {
public:
    ThetaModel(i64 D, i64 k, Cx<R> tau, unsigned digits = 16);

    i64 D() const { return D_; }
    i64 k() const { return k_; }
    i64 Nk() const { return Nk_; }
    const Cx<R>& tau() const { return tau_; }
    const R& rho() const { return rho_; }

    Cx<R> z(const R& p, const R& q) const { return Cx<R>(p + q * tau_.re, q * tau_.im); }

    // Sum_n coeffs[n mod Nk] Psi_n(z).
    Cx<R> eval(const std::vector<Cx<R>>& coeffs, const Cx<R>& z) const;
    Cx<R> eval_basis(i64 n, const Cx<R>& z) const;

    R omega(const Cx<R>& x, const Cx<R>& y) const;
    // exp(-i k/2 omega(x, y)), the cocycle of the pull-back.
    Cx<R> pullback_phase(const Cx<R>& x, const Cx<R>& y) const;
    // Flat reference frame t_e^k at z; equals 1 on the real line through e.
    Cx<R> frame(const Cx<R>& e, const Cx<R>& z) const;
    // Principal root with phi(Omega_v^2)(v) = 1.
    Cx<R> half_form(const Cx<R>& v) const;

    int window() const { return W_; }

private:
    template <class Coef>
    Cx<R> series(const Coef& coef, const Cx<R>& z) const;

    i64 D_, k_, Nk_;
    Cx<R> tau_, taup_;
    R rho_, c_, cp_;
    Cx<R> C_;
    int W_;
};

enum class Basis { Xi, PsiD };

struct StateVec {
    i64 k = 0;
    i64 D = 0;
    Basis basis = Basis::Xi;
    std::vector<cd> c;

    std::size_t dim() const { return c.size(); }
    double norm() const;
};

// Shift-diagonal operator Psi_n -> zeta^{g + 2 u n} Psi_{n+v} on H_{D,k},
// zeta = exp(i pi / 2kD). Exponents are kept exactly as integers.
struct HeisenbergOp {
    i64 k = 0, D = 0;
    i64 u = 0, v = 0, g = 0;

    i64 Nk() const { return 2 * k * D; }
    HeisenbergOp then(const HeisenbergOp& A) const;  // A after *this
    HeisenbergOp inverse() const;
    HeisenbergOp pow(i64 r) const;
    HeisenbergOp times_zeta(i64 e) const;  // global phase zeta^e
    bool operator==(const HeisenbergOp& o) const;

    StateVec apply(const StateVec& s) const;
    template <class R>
    std::vector<Cx<R>> apply(const std::vector<Cx<R>>& c) const;
    // Dense matrix, row-major, dimension Nk x Nk.
    std::vector<cd> dense() const;
};

HeisenbergOp compose(const HeisenbergOp& A, const HeisenbergOp& B);  // A o B

// T*_x for x = p mu + q lambda; NotLatticeCompatible unless 2kp and 2kDq are integers.
HeisenbergOp translation_op(Rat p, Rat q, i64 k, i64 D);
HeisenbergOp op_S(i64 k, i64 D);  // T*_{-lambda/2kD}
HeisenbergOp op_R(i64 k, i64 D);  // Psi_n -> Psi_{n+1}
HeisenbergOp op_M(i64 k, i64 D);  // T*_{mu/2k}
HeisenbergOp op_L(i64 k, i64 D);  // T*_{-lambda/2k}
HeisenbergOp identity_op(i64 k, i64 D);

// The xi basis of H_k inside H_{D,k}.
struct XiBasis {
    i64 k = 0, D = 0;
    cd phase;       // the constant c in xi_l = c (2k)^{-1/2} sum_n q^{-ln - n^2/D} Psi_n
    int sign = -1;  // xi_0(0) lies on R_{>0} * sign * (principal Omega_mu)
    std::vector<StateVec> vecs;
};

template <class R>
Cx<R> xi_phase(const ThetaModel<R>& model, int sign = -1);

XiBasis xi_basis(const ThetaModel<double>& model, bool materialize = true, int sign = -1);

// Psi coefficients of a Xi-tagged vector (closed-form Gauss sums).
template <class R>
std::vector<Cx<R>> xi_to_psi(const std::vector<Cx<R>>& z, i64 D, const Cx<R>& phase);
StateVec embed(const StateVec& s, const XiBasis& xb);

StateVec phi_vec(i64 ell, i64 k, i64 D);
StateVec psi_vec(i64 n, i64 k, i64 D);

struct ThetaValue {
    cd value;
    cd frame;
};

// Section value at x and the reference frame t_e^k(x).
ThetaValue theta_eval(const ThetaModel<double>& model, const StateVec& v, double p, double q,
                      double e_p = 0.0, double e_q = 1.0, const XiBasis* xb = nullptr);

struct HalfFormScalar {
    double p = 0, q = 0;
    cd value;
    double defining_residual = 0;  // |phi(Omega_v^2)(v) - 1|
};

HalfFormScalar half_form_scalar(const Frame& frame, double p, double q);

// Hermitian product, antilinear in u. Mixed tags embed the Xi vector and
// return the H_k product (the H_{D,k} product divided by D).
cd inner(const StateVec& u, const StateVec& v, const XiBasis* xb = nullptr);

}  // namespace tqk
