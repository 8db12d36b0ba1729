#pragma once

#include "tqk/knot.hpp"
#include "tqk/quantum_torus.hpp"

#include <vector>

namespace tqk {

struct StateOptions {
    cd tau{0.0, 1.0};
    unsigned digits = 16;  // > 16 runs the pipeline in MPFR
    int xi_sign = -1;
};

// Knot state data at one level in a given real type.
template <class R>
struct StateData {
    TorusKnot K;
    i64 k = 0;
    Cx<R> phase;                 // xi phase constant
    std::vector<Cx<R>> z_xi;     // coefficients on xi_l, l in [0, 2k)
    std::vector<Cx<R>> psi;      // coefficients on Psi_n, n in [0, 2kD)
    std::vector<Cx<R>> z0_psi;   // Z^0 on Psi_n
};

template <class R>
StateData<R> compute_state(const TorusKnot& K, i64 k, const StateOptions& opt = {});

StateVec build_state(const TorusKnot& K, i64 k);
StateVec build_z0(const TorusKnot& K, i64 k);

// Relative residual of the inhomogeneous state equation, computed with the
// Heisenberg operators on Psi coefficients.
double residual_inhomogeneous(const TorusKnot& K, i64 k, const StateOptions& opt = {});

struct AlphaReport {
    cd alpha;
    cd predicted;         // (i/sqrt 2) q^{-(a^2+b^2)/D + D/4}
    double error = 0;     // |alpha - predicted|, evaluated at full working precision
    double modulus_spread = 0;  // max-min of |<Z0, Psi_{2km}>| over m
    unsigned digits = 16;
};

AlphaReport extract_alpha(const TorusKnot& K, i64 k, const StateOptions& opt = {});

enum class BetaSign {
    Corrected,     // beta_l = +4 alpha sqrt(2k/D) (-1)^l sin(pi l/a) sin(pi l/b)
    Literal,  // opposite overall sign
};

cd beta(const TorusKnot& K, i64 k, i64 ell, cd alpha, BetaSign sign = BetaSign::Corrected);

struct GammaTable {
    TorusKnot K;
    i64 k = 0;
    cd alpha;
    std::vector<cd> beta;         // index l in [0, D)
    std::vector<cd> gamma_plus;   // index l in [0, D)
    std::vector<cd> gamma_minus;
    double window_residual_plus = 0;   // in gamma units
    double window_residual_minus = 0;
    double offset_deviation = 0;       // second extraction at a shifted block
    double max_gamma = 0;
    // invariant residuals, relative to max_gamma
    double res_gamma_m1 = 0;
    double res_gamma_0 = 0;
    double res_recurrence = 0;
    double res_symmetry = 0;
    double res_periodicity = 0;
    double res_recurrence_literal = 0;  // same with the literal beta sign
    std::vector<double> recurrence_per_ell;
    unsigned digits = 16;

    cd gamma(i64 ell) const { return gamma_plus[static_cast<std::size_t>(mod(ell, K.D))]; }
    double max_invariant_residual() const;
};

// Window of E_{k,+}: [lo, hi). lo = -ab + a + b + 1.
struct Window {
    i64 lo = 0, hi = 0;
};
Window window_plus(const TorusKnot& K, i64 k);
Window window_minus(const TorusKnot& K, i64 k);
bool window_fits(const TorusKnot& K, i64 k);          // hi - lo >= D
bool window_guard_literal(const TorusKnot& K, i64 k); // 2k > 4(a+b)

GammaTable extract_gammas(const TorusKnot& K, i64 k, const StateOptions& opt = {});

template <class R>
std::vector<Cx<R>> gammas_from_psi(const TorusKnot& K, i64 k, const std::vector<Cx<R>>& psi, const Window& w,
                                   i64 offset = 0);

// Norm of Z_k in H_k.
double state_norm(const TorusKnot& K, i64 k);

// Sum_i eps_i exp(-2 i pi l p_i / D) for the four inhomogeneous terms.
cd saut_sum(const TorusKnot& K, i64 ell);

}  // namespace tqk
