#pragma once

#include "tqk/charvar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tqk {

// Z_k as a function on E at one level, with gamma coefficients on demand.
class StateEvaluator {
public:
    StateEvaluator(const TorusKnot& K, i64 k, const StateOptions& opt = {});

    cd eval(double p, double q) const;
    cd frame(double e_p, double e_q, double p, double q) const;
    cd half_form(double p, double q) const;
    cd pullback_phase(double xp, double xq, double yp, double yq) const;
    cd gamma(i64 ell) const;  // gamma_l^+; WindowTooNarrow when undefined

    const TorusKnot& knot() const { return K_; }
    i64 k() const { return k_; }
    const ThetaModel<double>& model() const { return model_; }
    const std::vector<Cx<double>>& psi() const { return st_.psi; }
    const std::vector<Cx<double>>& xi_coeffs() const { return st_.z_xi; }
    cd xi_phase() const { return st_.phase.to_cd(); }

private:
    TorusKnot K_;
    i64 k_;
    ThetaModel<double> model_;
    StateData<double> st_;
    mutable std::optional<std::vector<Cx<double>>> gamma_;
};

cd eval_state(const TorusKnot& K, i64 k, double p, double q, const StateOptions& opt = {});

struct DecayReport {
    std::string kind;
    std::string probe_id;
    double p = 0, q = 0;
    std::vector<i64> levels;
    std::vector<cd> measured, predicted;
    std::vector<double> residual;  // the fitted quantity
    std::string model;             // "exponential", "power" or "superpolynomial"
    double rate = 0;               // c for exponential, p for power
    double intercept = 0;
    double r2 = 0;
    bool pass = false;
    std::string note;
};

// Decimal logarithm free ladder k, k*f, k*f^2, ... <= k_max.
std::vector<i64> dyadic_ladder(i64 k_min, i64 k_max, i64 factor = 2);

struct ProbeOptions {
    double margin = 0.02;
    bool control = false;  // on-support probe: skip precondition, pass iff no decay
};

// Classification of a probe point relative to A (abelian lines) and the
// charged irreducible segments; returns an explanation when excluded.
std::optional<std::string> probe_exclusion(const TorusKnot& K, double p, double q, double margin);

DecayReport probe_microsupport(const TorusKnot& K, double p, double q, const std::vector<i64>& levels,
                               const ProbeOptions& po = {}, const StateOptions& opt = {});

// f_0 at q lambda, continued through the roots of Delta when they are not hit.
cd f0_abelian(const TorusKnot& K, double q);

DecayReport check_abelian(const TorusKnot& K, double q, const std::vector<i64>& levels, double margin = 0.02,
                          const StateOptions& opt = {});

enum class BranchConstant {
    Corrected,     // kappa = 1
    Literal,  // kappa = i
};

struct IrreducibleOptions {
    BranchConstant kappa = BranchConstant::Corrected;
    double floor = 1e-10;  // relative rounding floor in double precision
};

DecayReport check_irreducible(const TorusKnot& K, i64 ell, double t_frac, const std::vector<i64>& levels,
                              const IrreducibleOptions& io = {}, const StateOptions& opt = {});

DecayReport check_mixed(const TorusKnot& K, i64 ell, const std::vector<i64>& levels,
                        const IrreducibleOptions& io = {}, const StateOptions& opt = {});

enum class JonesNormalization {
    Stated,     // 2/sqrt(ab) sin sin i^p and e^{i(pi/4 + pi p_0/2)}
    Corrected,  // extra e^{-i pi/4}/sqrt 2 on irreducible terms, i^{p_0} on the Alexander term
};

struct JonesAsymReport {
    i64 interval = 0;  // m/2k in (l/D, (l+1)/D)
    double margin = 0;
    JonesNormalization norm = JonesNormalization::Stated;
    std::vector<IrredComponent> comps;
    i64 k_cal = 0;
    std::vector<int> phases;  // p per component, then p_0
    double cal_residual = 0;
    bool ambiguous = false;
    std::vector<i64> levels;
    std::vector<double> sup_residual;      // sup over the m grid
    std::vector<double> scaled;            // sup_residual * k
    double growth_slope = 0;               // of log(scaled) against log k
    double magnitude_precheck = 0;         // at k_pre
    i64 k_pre = 0;
    bool bounded = false;
    bool pass = false;
    std::string note;
};

JonesAsymReport check_jones_asymptotics(const TorusKnot& K, i64 interval, const std::vector<i64>& levels,
                                        i64 k_cal, i64 k_pre = 100, double margin_frac = 0.15,
                                        JonesNormalization norm = JonesNormalization::Stated,
                                        double ambiguity_threshold = 0.3);

// max_m | <Z_k, xi_m> - (sin(pi/k)/sqrt k) J_m | with the pairing taken in H_{D,k}.
double pairing_identity_residual(const TorusKnot& K, i64 k, const StateOptions& opt = {});

struct GrowthReport {
    std::vector<i64> levels;
    std::vector<double> values;
    double exponent = 0;
    double r2 = 0;
};

// Max of |Z_k| over a grid on the fundamental domain (-1,0) mu + (0,1/2) lambda.
GrowthReport admissibility(const TorusKnot& K, const std::vector<i64>& levels, int grid = 24,
                           const StateOptions& opt = {});
// ||Z_k|| in H_k against k.
GrowthReport norm_growth(const TorusKnot& K, const std::vector<i64>& levels);

// gnuplot script drawing residual ladders on log-log axes.
std::string plot_script(const std::vector<DecayReport>& reports);

}  // namespace tqk
