#pragma once

#include "tqk/knot_state.hpp"

#include <array>
#include <string>
#include <vector>

namespace tqk {

struct IrredComponent {
    i64 alpha = 0, beta = 0;
    i64 k_minus = 0, k_plus = 0;
    bool operator==(const IrredComponent&) const = default;
};

// Representative of the class of x under x -> x + 2ab Z and x -> -x, in [0, ab].
i64 orbit_representative(i64 x, i64 ab);

std::vector<IrredComponent> p_set(const TorusKnot& K);
// Same computation with an arbitrary Bezout pair (a n + b m = 1).
std::vector<IrredComponent> p_set_with(const TorusKnot& K, i64 m, i64 n);
std::vector<IrredComponent> p_ell(const TorusKnot& K, i64 ell);

struct BijectionReport {
    bool injective = false;
    bool image_ok = false;
    std::vector<i64> image;  // sorted
    bool ok() const { return injective && image_ok; }
};

BijectionReport check_bijection(const TorusKnot& K);

using Mat2 = std::array<cd, 4>;  // row-major
Mat2 mat_mul(const Mat2& A, const Mat2& B);
Mat2 mat_pow(const Mat2& A, i64 e);

struct Rep {
    Mat2 x, y;
};

Rep rho_su2(const TorusKnot& K, const IrredComponent& c, double t);
double meridian_trace_formula(const TorusKnot& K, const IrredComponent& c, double t);

enum class TorsionSign {
    Corrected,     // (-1)^{alpha+1}
    Literal,  // (-1)^alpha
};

struct TorsionRoot {
    double coefficient = 0;   // of Omega_{D mu - 2 lambda}
    cd half_form;             // principal Omega_{D mu - 2 lambda}
    double square_on_vector = 0;  // (sqrt T)^2 evaluated on D mu - 2 lambda
    double expected_square = 0;   // (2^{13/2} pi / ab) sin^2(pi alpha/a) sin^2(pi beta/b)
};

TorsionRoot torsion_sqrt(const TorusKnot& K, const IrredComponent& c, TorsionSign sign = TorsionSign::Corrected,
                         cd tau = cd(0, 1));

// Chern-Simons phase along the branch of I_l starting at l lambda / D.
cd cs_phase(const TorusKnot& K, const IrredComponent& c, i64 ell, double t, i64 k, cd tau = cd(0, 1));
// Max |d/dt log s - i k/2 omega(x, x')| along (l, l+2) by central differences.
double cs_flatness_residual(const TorusKnot& K, const IrredComponent& c, i64 ell, i64 k, cd tau = cd(0, 1));
// |s_{k^-}(x' + r) - e^{i k/2 omega(r, x')} cs(l', l')| at x' = l' lambda / D.
double cs_junction_residual(const TorusKnot& K, const IrredComponent& c, i64 ell_prime, i64 k, cd tau = cd(0, 1));

enum class MuConvention {
    Alpha,  // mu_k matching the phase of alpha(k)
    HalfAb,  // mu_k with ab/2
};

const char* mu_name(MuConvention c);

template <class R>
Cx<R> gamma_topological_r(const TorusKnot& K, i64 ell, i64 k, MuConvention mu, TorsionSign sign);
cd gamma_topological(const TorusKnot& K, i64 ell, i64 k, MuConvention mu = MuConvention::Alpha,
                     TorsionSign sign = TorsionSign::Corrected);

struct CrossCheck {
    i64 k = 0;
    MuConvention mu = MuConvention::Alpha;
    TorsionSign sign = TorsionSign::Corrected;
    std::vector<double> deviation;  // index l + 1 for l in [-1, ab-1]
    double max_relative = 0;        // max_l |gamma_l^+ - gamma_topo| / (1 + max|gamma^+|)
    unsigned digits = 16;
};

CrossCheck cross_check(const TorusKnot& K, i64 k, MuConvention mu, TorsionSign sign, const StateOptions& opt = {});

struct ConventionChoice {
    MuConvention mu = MuConvention::Alpha;
    std::vector<double> alpha_devs, half_ab_devs;
};

// Runs the cross-check under both mu conventions and keeps the one whose
// deviation is smaller at the largest level.
ConventionChoice select_mu_convention(const TorusKnot& K, const std::vector<i64>& levels,
                                      const StateOptions& opt = {});

}  // namespace tqk
