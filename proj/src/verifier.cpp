#include "tqk/verifier.hpp"

#include "tqk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace tqk {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

StateEvaluator::StateEvaluator(const TorusKnot& K, i64 k, const StateOptions& opt)
    : K_(K), k_(k), model_(K.D, k, Cx<double>(opt.tau)), st_(compute_state<double>(K, k, opt)) {}

cd StateEvaluator::eval(double p, double q) const { return model_.eval(st_.psi, model_.z(p, q)).to_cd(); }

cd StateEvaluator::frame(double e_p, double e_q, double p, double q) const {
    return model_.frame(model_.z(e_p, e_q), model_.z(p, q)).to_cd();
}

cd StateEvaluator::half_form(double p, double q) const { return model_.half_form(model_.z(p, q)).to_cd(); }

cd StateEvaluator::pullback_phase(double xp, double xq, double yp, double yq) const {
    return model_.pullback_phase(model_.z(xp, xq), model_.z(yp, yq)).to_cd();
}

cd StateEvaluator::gamma(i64 ell) const {
    if (!gamma_) {
        if (!window_fits(K_, k_))
            throw Error(ErrorKind::WindowTooNarrow, "gamma coefficients undefined at k=" + std::to_string(k_));
        gamma_ = gammas_from_psi(K_, k_, st_.psi, window_plus(K_, k_));
    }
    return (*gamma_)[static_cast<std::size_t>(mod(ell, K_.D))].to_cd();
}

cd eval_state(const TorusKnot& K, i64 k, double p, double q, const StateOptions& opt) {
    return StateEvaluator(K, k, opt).eval(p, q);
}

std::vector<i64> dyadic_ladder(i64 k_min, i64 k_max, i64 factor) {
    if (k_min < 2 || factor < 2 || k_max < k_min)
        throw Error(ErrorKind::InvalidArgument, "ladder needs 2 <= k_min <= k_max and factor >= 2");
    std::vector<i64> out;
    for (i64 k = k_min; k <= k_max; k *= factor) out.push_back(k);
    return out;
}

namespace {

void check_levels(const std::vector<i64>& levels, std::size_t min_count) {
    if (levels.size() < min_count)
        throw Error(ErrorKind::InvalidArgument, "need at least " + std::to_string(min_count) + " levels");
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (levels[i] <= levels[i - 1]) throw Error(ErrorKind::InvalidArgument, "levels must increase strictly");
}

bool charged(const TorusKnot& K, i64 ell) {
    const i64 D = K.D, ab = K.a * K.b;
    const i64 r = mod(ell, D);
    i64 lp;
    if (r == D - 1)
        lp = -1;
    else if (r <= ab - 1)
        lp = r;
    else
        lp = D - 2 - r;
    return !p_ell(K, lp).empty();
}

}  // namespace

std::optional<std::string> probe_exclusion(const TorusKnot& K, double p, double q, double margin) {
    const double f = p - std::floor(p);
    if (f < margin || f > 1 - margin) return "probe within margin of the abelian lines p in Z";
    const double pr = f - 1;  // representative in (-1, 0)
    const double D = static_cast<double>(K.D);
    const double lc = D * q + 2 * pr;
    const double norm = std::sqrt(D * D + 4);
    for (double l : {std::floor(lc), std::ceil(lc)}) {
        const i64 li = static_cast<i64>(l);
        if (charged(K, li) && std::abs(lc - l) / norm < margin) {
            std::ostringstream os;
            os << "probe within margin of the charged segment line l=" << li;
            return os.str();
        }
    }
    return std::nullopt;
}

DecayReport probe_microsupport(const TorusKnot& K, double p, double q, const std::vector<i64>& levels,
                               const ProbeOptions& po, const StateOptions& opt) {
    check_levels(levels, 4);
    if (!po.control)
        if (auto why = probe_exclusion(K, p, q, po.margin)) throw Error(ErrorKind::ProbeOnCharacteristicSet, *why);
    DecayReport r;
    r.kind = po.control ? "microsupport-control" : "microsupport";
    r.p = p;
    r.q = q;
    r.levels = levels;
    r.model = "exponential";
    std::vector<double> xs, ys;
    for (i64 k : levels) {
        const cd z = StateEvaluator(K, k, opt).eval(p, q);
        r.measured.push_back(z);
        r.predicted.push_back(0.0);
        r.residual.push_back(std::abs(z));
        xs.push_back(static_cast<double>(k));
        ys.push_back(std::log(std::max(std::abs(z), 1e-300)));
    }
    const LineFit f = fit_line(xs, ys);
    r.rate = -f.slope;
    r.intercept = f.intercept;
    r.r2 = f.r2;
    const bool decays = r.rate > 0 && r.r2 > 0.99;
    r.pass = po.control ? r.rate <= 0 : decays;
    r.note = po.control ? (r.rate <= 0 ? "no decay on the support, as expected" : "control decays")
                        : (decays ? "exponential decay" : "no clean exponential decay");
    return r;
}

cd f0_abelian(const TorusKnot& K, double q) {
    const cd sigma = std::polar(1.0, 2 * kPi * q);
    const cd delta = eval_unit_circle(alexander(K), 4 * kPi * q);
    return std::polar(1.0 / std::sqrt(2.0), -kPi / 4) * (sigma - 1.0 / sigma) / delta;
}

DecayReport check_abelian(const TorusKnot& K, double q, const std::vector<i64>& levels, double margin,
                          const StateOptions& opt) {
    check_levels(levels, 4);
    if (!(q > 0 && q < 0.5)) throw Error(ErrorKind::InvalidArgument, "abelian probe needs q in (0, 1/2)");
    const double D = static_cast<double>(K.D);
    if (std::abs(q * D - std::round(q * D)) / D < margin)
        throw Error(ErrorKind::ProbeOnLatticePoint, "q within margin of (1/D)Z");
    DecayReport r;
    r.kind = "abelian";
    r.p = 0;
    r.q = q;
    r.levels = levels;
    r.model = "power";
    const cd f0 = f0_abelian(K, q);
    std::vector<double> xs, ys;
    for (i64 k : levels) {
        const StateEvaluator ev(K, k, opt);
        const double kk = static_cast<double>(k);
        const cd norm = std::pow(kk / (2 * kPi), 0.25) * ev.frame(0, 1, 0, q) * ev.half_form(0, 1);
        const cd val = ev.eval(0, q) / norm;
        r.measured.push_back(val);
        r.predicted.push_back(f0);
        const double res = std::abs(val - f0);
        r.residual.push_back(res);
        xs.push_back(std::log(kk));
        ys.push_back(std::log(res));
    }
    const LineFit f = fit_line(xs, ys);
    r.rate = -f.slope;
    r.intercept = f.intercept;
    r.r2 = f.r2;
    r.pass = r.rate >= 1 && r.r2 > 0.99;
    std::ostringstream os;
    os << "fitted order " << r.rate << ", R^2 " << r.r2;
    r.note = os.str();
    return r;
}

namespace {

cd kappa(BranchConstant b) { return b == BranchConstant::Corrected ? cd(1, 0) : cd(0, 1); }

// (k/2pi)^{1/4} kappa gamma_l (T*_{-l lambda/D} t_{D mu - 2 lambda})(x) Omega_{D mu - 2 lambda}
cd irreducible_term(const StateEvaluator& ev, i64 ell, double p, double q, BranchConstant b) {
    const double kk = static_cast<double>(ev.k()), D = static_cast<double>(ev.knot().D);
    const double yq = -static_cast<double>(ell) / D;
    const cd g = ev.gamma(ell);
    if (g == 0.0) return 0.0;
    const cd pulled = ev.pullback_phase(0, yq, p, q) * ev.frame(D, -2, p, q + yq);
    return std::pow(kk / (2 * kPi), 0.25) * kappa(b) * g * pulled * ev.half_form(D, -2);
}

}  // namespace

DecayReport check_irreducible(const TorusKnot& K, i64 ell, double t_frac, const std::vector<i64>& levels,
                              const IrreducibleOptions& io, const StateOptions& opt) {
    check_levels(levels, 3);
    if (!(t_frac > 0 && t_frac < 1)) throw Error(ErrorKind::OutOfInterval, "t_frac must lie in (0, 1)");
    const double D = static_cast<double>(K.D);
    const double p = -t_frac, q = (static_cast<double>(ell) + 2 * t_frac) / D;
    DecayReport r;
    r.kind = "irreducible";
    r.p = p;
    r.q = q;
    r.levels = levels;
    r.model = "superpolynomial";
    std::vector<double> scaled;
    std::vector<double> xs, ys;
    std::size_t above = 0;
    bool floored = false;
    for (i64 k : levels) {
        const StateEvaluator ev(K, k, opt);
        const double kk = static_cast<double>(k), k4 = std::pow(kk, 0.25);
        const cd val = ev.eval(p, q);
        const cd pred = irreducible_term(ev, ell, p, q, io.kappa);
        const double res = std::abs(val - pred) / k4;
        r.measured.push_back(val);
        r.predicted.push_back(pred);
        r.residual.push_back(res);
        const double fl = io.floor * std::max(1.0, std::abs(pred) / k4);
        if (!floored && res > fl) {
            ++above;
            scaled.push_back(res * kk * kk * kk);
            xs.push_back(std::log(kk));
            ys.push_back(std::log(res));
        } else {
            floored = true;
        }
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < scaled.size(); ++i) decreasing = decreasing && scaled[i] < scaled[i - 1];
    if (xs.size() >= 2) {
        const LineFit f = fit_line(xs, ys);
        r.rate = -f.slope;
        r.intercept = f.intercept;
        r.r2 = f.r2;
    }
    r.pass = above >= 2 && decreasing;
    std::ostringstream os;
    os << above << " levels above the rounding floor, k^3*residual " << (decreasing ? "decreasing" : "not decreasing");
    if (floored) os << ", floor reached";
    r.note = os.str();
    return r;
}

DecayReport check_mixed(const TorusKnot& K, i64 ell, const std::vector<i64>& levels, const IrreducibleOptions& io,
                        const StateOptions& opt) {
    check_levels(levels, 3);
    const i64 ab = K.a * K.b;
    if (ell < 1 || ell > ab - 1 || (ell % K.a != 0 && ell % K.b != 0))
        throw Error(ErrorKind::InvalidArgument, "mixed check needs l in [1, ab-1] divisible by a or b");
    const double D = static_cast<double>(K.D);
    const double q = static_cast<double>(ell) / D;
    const cd f0 = f0_abelian(K, q);
    DecayReport r;
    r.kind = "mixed";
    r.p = 0;
    r.q = q;
    r.levels = levels;
    r.model = "power";
    std::vector<double> xs, ys;
    for (i64 k : levels) {
        const StateEvaluator ev(K, k, opt);
        const double kk = static_cast<double>(k), k4 = std::pow(kk, 0.25);
        const cd val = ev.eval(0, q);
        const cd ab_term = std::pow(kk / (2 * kPi), 0.25) * ev.frame(0, 1, 0, q) * f0 * ev.half_form(0, 1);
        const cd pred = irreducible_term(ev, ell, 0, q, io.kappa) + ab_term;
        const double res = std::abs(val - pred) / k4;
        r.measured.push_back(val);
        r.predicted.push_back(pred);
        r.residual.push_back(res);
        xs.push_back(std::log(kk));
        ys.push_back(std::log(res));
    }
    const LineFit f = fit_line(xs, ys);
    r.rate = -f.slope;
    r.intercept = f.intercept;
    r.r2 = f.r2;
    r.pass = r.rate >= 0.5;
    std::ostringstream os;
    os << "fitted order " << r.rate << ", R^2 " << r.r2;
    r.note = os.str();
    return r;
}

namespace {

struct JonesGrid {
    std::vector<i64> ms;
    std::vector<cd> measured;
    std::vector<std::vector<cd>> cols;  // one per component, then the Alexander column
};

JonesGrid jones_grid(const TorusKnot& K, i64 k, i64 interval, double margin, const std::vector<IrredComponent>& comps,
                     JonesNormalization norm) {
    const double D = static_cast<double>(K.D), kk = static_cast<double>(k);
    const double lo = static_cast<double>(interval) / D + margin, hi = static_cast<double>(interval + 1) / D - margin;
    JonesGrid g;
    for (i64 m = 1; m < 2 * k; ++m) {
        const double x = static_cast<double>(m) / (2 * kk);
        if (x >= lo && x <= hi) g.ms.push_back(m);
    }
    if (g.ms.empty()) throw Error(ErrorKind::InvalidArgument, "empty m grid for the Jones check");
    const auto J = jones_eval_all<double>(K, k);
    const double pref = std::sin(kPi / kk) / std::sqrt(kk);
    const LaurentPoly delta = alexander(K);
    const double ab = static_cast<double>(K.a * K.b);
    const cd irr_extra = norm == JonesNormalization::Corrected ? std::polar(1.0 / std::sqrt(2.0), -kPi / 4) : cd(1, 0);
    const cd alex_extra = norm == JonesNormalization::Corrected ? cd(1, 0) : std::polar(1.0, kPi / 4);
    g.cols.assign(comps.size() + 1, {});
    for (i64 m : g.ms) {
        g.measured.push_back(pref * J[static_cast<std::size_t>(m)].to_cd());
        for (std::size_t c = 0; c < comps.size(); ++c) {
            const auto& cp = comps[c];
            const double amp = 2 / std::sqrt(ab) * std::sin(kPi * static_cast<double>(cp.alpha) / static_cast<double>(K.a)) *
                               std::sin(kPi * static_cast<double>(cp.beta) / static_cast<double>(K.b));
            // e^{-i pi k (k^- - mD/2k)^2 / D} = e^{-i pi (2k k^- - mD)^2 / (4kD)}
            const i64 d = 2 * k * cp.k_minus - m * K.D;
            g.cols[c].push_back(irr_extra * amp * unit2<double>(-d, d, 4 * k * K.D).to_cd());
        }
        const cd dv = eval_root<double>(delta, 2 * m, k).to_cd();
        g.cols.back().push_back(alex_extra * std::sin(kPi * static_cast<double>(m) / kk) / std::sqrt(kk) / dv);
    }
    return g;
}

double sup_residual(const JonesGrid& g, const std::vector<int>& phases) {
    double worst = 0;
    for (std::size_t i = 0; i < g.ms.size(); ++i) {
        cd pred = 0;
        for (std::size_t c = 0; c < g.cols.size(); ++c)
            pred += unit<double>(phases[c], 2).to_cd() * g.cols[c][i];
        worst = std::max(worst, std::abs(g.measured[i] - pred));
    }
    return worst;
}

}  // namespace

JonesAsymReport check_jones_asymptotics(const TorusKnot& K, i64 interval, const std::vector<i64>& levels, i64 k_cal,
                                        i64 k_pre, double margin_frac, JonesNormalization norm,
                                        double ambiguity_threshold) {
    check_levels(levels, 3);
    JonesAsymReport r;
    r.interval = interval;
    r.margin = margin_frac / static_cast<double>(K.D);
    r.norm = norm;
    r.k_cal = k_cal;
    r.k_pre = k_pre;
    r.levels = levels;
    std::vector<IrredComponent> comps = p_ell(K, interval - 1);
    for (const auto& c : p_ell(K, interval))
        if (std::find(comps.begin(), comps.end(), c) == comps.end()) comps.push_back(c);
    r.comps = comps;

    // Calibrate quarter-turn phases once, at k_cal.
    const JonesGrid cal = jones_grid(K, k_cal, interval, r.margin, comps, norm);
    const std::size_t nc = cal.cols.size();
    std::vector<int> ph(nc, 0), best;
    double best_res = 1e300;
    const std::size_t combos = std::size_t{1} << (2 * nc);
    for (std::size_t code = 0; code < combos; ++code) {
        for (std::size_t c = 0; c < nc; ++c) ph[c] = static_cast<int>((code >> (2 * c)) & 3);
        const double res = sup_residual(cal, ph);
        if (res < best_res) {
            best_res = res;
            best = ph;
        }
    }
    r.phases = best;
    r.cal_residual = best_res;
    r.ambiguous = best_res >= ambiguity_threshold;

    std::vector<double> xs, ys;
    for (i64 k : levels) {
        const JonesGrid g = jones_grid(K, k, interval, r.margin, comps, norm);
        const double s = sup_residual(g, best);
        r.sup_residual.push_back(s);
        r.scaled.push_back(s * static_cast<double>(k));
        xs.push_back(std::log(static_cast<double>(k)));
        ys.push_back(std::log(s * static_cast<double>(k)));
    }
    r.growth_slope = fit_line(xs, ys).slope;
    // bounded: no growth trend in residual*k
    r.bounded = r.growth_slope <= 0.25;

    {
        const JonesGrid g = jones_grid(K, k_pre, interval, r.margin, comps, norm);
        double worst = 0;
        for (std::size_t i = 0; i < g.ms.size(); ++i) {
            cd pred = 0;
            for (const auto& col : g.cols) pred += col[i];
            worst = std::max(worst, std::abs(std::abs(g.measured[i]) - std::abs(pred)));
        }
        r.magnitude_precheck = worst;
    }
    r.pass = !r.ambiguous && r.bounded && r.magnitude_precheck <= 0.25;
    std::ostringstream os;
    if (r.ambiguous) os << "PhaseFitAmbiguous: best calibration residual " << best_res << " >= " << ambiguity_threshold;
    else os << "calibration residual " << best_res;
    os << "; growth slope " << r.growth_slope << "; magnitude pre-check " << r.magnitude_precheck;
    r.note = os.str();
    return r;
}

double pairing_identity_residual(const TorusKnot& K, i64 k, const StateOptions& opt) {
    const auto st = compute_state<double>(K, k, opt);
    const i64 D = K.D, nk = 2 * k * D;
    const double s = 1.0 / std::sqrt(2.0 * static_cast<double>(k));
    double worst = 0;
    for (i64 m = 0; m < 2 * k; ++m) {
        Cx<double> acc;
        for (i64 n = 0; n < nk; ++n) {
            const i64 e = mod(-2 * (mod(D * m * n, 2 * nk) + mod(n * n, 2 * nk)), 2 * nk);
            const Cx<double> xi = st.phase * unit<double>(e, nk) * s;
            acc += conj(xi) * st.psi[static_cast<std::size_t>(n)];
        }
        acc /= static_cast<double>(D);
        worst = std::max(worst, cabs(acc - st.z_xi[static_cast<std::size_t>(m)]));
    }
    return worst;
}

GrowthReport admissibility(const TorusKnot& K, const std::vector<i64>& levels, int grid, const StateOptions& opt) {
    check_levels(levels, 3);
    GrowthReport g;
    g.levels = levels;
    std::vector<double> xs, ys;
    for (i64 k : levels) {
        const StateEvaluator ev(K, k, opt);
        double mx = 0;
        for (int i = 0; i < grid; ++i)
            for (int j = 0; j < grid; ++j) {
                const double p = -1 + (i + 0.5) / grid, q = 0.5 * (j + 0.5) / grid;
                mx = std::max(mx, std::abs(ev.eval(p, q)));
            }
        g.values.push_back(mx);
        xs.push_back(std::log(static_cast<double>(k)));
        ys.push_back(std::log(mx));
    }
    const LineFit f = fit_line(xs, ys);
    g.exponent = f.slope;
    g.r2 = f.r2;
    return g;
}

GrowthReport norm_growth(const TorusKnot& K, const std::vector<i64>& levels) {
    check_levels(levels, 3);
    GrowthReport g;
    g.levels = levels;
    std::vector<double> xs, ys;
    for (i64 k : levels) {
        const double n = state_norm(K, k);
        g.values.push_back(n);
        xs.push_back(std::log(static_cast<double>(k)));
        ys.push_back(std::log(n));
    }
    const LineFit f = fit_line(xs, ys);
    g.exponent = f.slope;
    g.r2 = f.r2;
    return g;
}

std::string plot_script(const std::vector<DecayReport>& reports) {
    std::ostringstream os;
    os << "set logscale xy\nset xlabel 'k'\nset ylabel 'residual'\nset key outside\n";
    os << "plot ";
    for (std::size_t i = 0; i < reports.size(); ++i)
        os << (i ? ", " : "") << "'-' with linespoints title '" << reports[i].kind << " " << reports[i].probe_id << "'";
    os << "\n";
    for (const auto& r : reports) {
        for (std::size_t i = 0; i < r.levels.size(); ++i) os << r.levels[i] << " " << r.residual[i] << "\n";
        os << "e\n";
    }
    return os.str();
}

}  // namespace tqk
