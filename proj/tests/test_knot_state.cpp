#include "oracles.hpp"
#include "tqk/errors.hpp"
#include "tqk/knot_state.hpp"
#include "tqk/serialize.hpp"
#include "tqk/verifier.hpp"

#include <doctest.h>

using namespace tqk;

namespace {

const std::vector<std::pair<i64, i64>> kFamily = {{2, 3}, {2, 5}, {3, 4}, {3, 5}};

}  // namespace

TEST_SUITE("knot_state") {

TEST_CASE("state coefficients") {
    const TorusKnot K = make_knot(2, 3);
    for (i64 k : {8, 15}) {
        const StateVec Z = build_state(K, k);
        CHECK(Z.basis == Basis::Xi);
        CHECK(Z.dim() == static_cast<std::size_t>(2 * k));
        CHECK(std::abs(Z.c[0]) < 1e-15);
        const double kk = static_cast<double>(k);
        CHECK(std::abs(Z.c[1] - std::sin(std::numbers::pi / kk) / std::sqrt(kk)) < 1e-14);
        for (i64 m = 0; m < 2 * k; ++m)
            CHECK(std::abs(Z.c[static_cast<std::size_t>(m)] -
                           std::sin(std::numbers::pi / kk) / std::sqrt(kk) * jones_eval_cd(K, m, k)) < 1e-12);
    }
}

TEST_CASE("alternation of Psi coefficients") {
    for (auto [a, b] : kFamily) {
        const TorusKnot K = make_knot(a, b);
        const auto st = compute_state<double>(K, 9);
        const i64 nk = static_cast<i64>(st.psi.size());
        double r = 0;
        for (i64 n = 0; n < nk; ++n)
            r = std::max(r, cabs(st.psi[static_cast<std::size_t>(mod(-n, nk))] + st.psi[static_cast<std::size_t>(n)]));
        CHECK(r < 1e-11);
    }
}

TEST_CASE("Z0: L-invariance, norm and value at the origin") {
    const TorusKnot K = make_knot(2, 3);
    for (i64 k : {6, 11}) {
        const StateVec z0 = build_z0(K, k);
        CHECK(std::abs(z0.norm() - 1 / std::sqrt(2.0)) < 1e-14);
        const auto st = compute_state<double>(K, k);
        std::vector<cd> c(st.z0_psi.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = st.z0_psi[i].to_cd();
        const StateVec v{k, K.D, Basis::PsiD, c};
        const StateVec Lv = op_L(k, K.D).apply(v);
        double r = 0;
        for (std::size_t i = 0; i < c.size(); ++i) r = std::max(r, std::abs(Lv.c[i] - c[i]));
        CHECK(r < 1e-12);
    }
    // theta value at 0 against (e^{3 i pi/4}/sqrt 2)(k/2pi)^{1/4} Omega_lambda
    std::vector<double> ks, logs;
    for (i64 k = 10; k <= 60; k += 10) {
        const ThetaModel<double> model(K.D, k, Cx<double>(0.0, 1.0));
        const auto st = compute_state<double>(K, k);
        const cd v = model.eval(st.z0_psi, model.z(0, 0)).to_cd();
        const cd want = std::polar(1 / std::sqrt(2.0), 3 * std::numbers::pi / 4) *
                        std::pow(static_cast<double>(k) / (2 * std::numbers::pi), 0.25) *
                        model.half_form(model.z(0, 1)).to_cd();
        const double err = std::abs(v / want - 1.0);
        CHECK(err < 1e-9);
    }
}

TEST_CASE("inhomogeneous state equation") {
    CHECK(residual_inhomogeneous(make_knot(2, 3), 8) < 1e-10);
    CHECK(residual_inhomogeneous(make_knot(2, 3), 25) < 1e-10);
    CHECK(residual_inhomogeneous(make_knot(2, 5), 12) < 1e-10);
    // stress: alternate complex structure
    StateOptions opt;
    opt.tau = cd(0.3, 1.2);
    CHECK(residual_inhomogeneous(make_knot(3, 4), 12, opt) < 1e-10);
}

TEST_CASE("alpha(k)") {
    const TorusKnot K = make_knot(2, 3);
    for (i64 k : {10, 20, 40, 80}) {
        const AlphaReport r = extract_alpha(K, k);
        CHECK(std::abs(std::abs(r.alpha) - 1 / std::sqrt(2.0)) < 1e-12);
        const double want = std::numbers::pi / 2 + 23 * std::numbers::pi / (12 * static_cast<double>(k));
        CHECK(std::abs(std::arg(r.alpha) - want) < 1e-12);
        CHECK(r.error < 1e-12);
        CHECK(r.modulus_spread < 1e-12);
    }
    StateOptions hi;
    hi.digits = 40;
    const AlphaReport r = extract_alpha(K, 20, hi);
    CHECK(r.error < 1e-30);
    CHECK(r.digits == 40);
}

TEST_CASE("beta") {
    for (auto [a, b] : kFamily) {
        const TorusKnot K = make_knot(a, b);
        const cd al(0.3, 0.5);
        CHECK(std::abs(beta(K, 20, 0, al)) < 1e-15);
        for (i64 l = 1; l < K.D; ++l)
            if (l % a == 0 || l % b == 0) CHECK(std::abs(beta(K, 20, l, al)) < 1e-13);
        CHECK(beta(K, 20, 1, al, BetaSign::Literal) == -beta(K, 20, 1, al));
    }
    const TorusKnot K = make_knot(2, 3);
    const i64 k = 30;
    const cd al = extract_alpha(K, k).alpha;
    const cd want = -4.0 * al * std::sqrt(static_cast<double>(k) / 6) * (std::sqrt(3.0) / 2);
    CHECK(std::abs(beta(K, k, 1, al) - want) < 1e-12);
    const GammaTable t = extract_gammas(K, k);
    CHECK(std::abs(t.gamma(1) - t.beta[1]) < 1e-9 * t.max_gamma);
}

TEST_CASE("saut identity") {
    for (auto [a, b] : kFamily) {
        const TorusKnot K = make_knot(a, b);
        for (i64 l = 0; l < K.D; ++l) {
            const double pi = std::numbers::pi;
            const double want = -4 * std::sin(pi * static_cast<double>(l) / static_cast<double>(a)) *
                                std::sin(pi * static_cast<double>(l) / static_cast<double>(b));
            CHECK(std::abs(saut_sum(K, l) - want) < 1e-12);
        }
    }
}

TEST_CASE("windows") {
    const TorusKnot K = make_knot(2, 3);
    const Window wp = window_plus(K, 20), wm = window_minus(K, 20);
    CHECK(wp.lo == -6 + 2 + 3 + 1);
    CHECK(wp.hi == 40 - 6 - 5);
    CHECK(wm.lo == -40 - 6 + 5 + 1);
    CHECK(wm.hi == -6 - 5);
    CHECK(window_fits(K, 20));
    // (3,5) at k = 20 passes the literal guard but cannot hold a period
    const TorusKnot K35 = make_knot(3, 5);
    CHECK(window_guard_literal(K35, 20));
    CHECK_FALSE(window_fits(K35, 20));
    try {
        extract_gammas(K35, 20);
        FAIL("expected WindowTooNarrow");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::WindowTooNarrow);
    }
    CHECK(window_fits(K35, 24));
}

TEST_CASE("gamma table invariants") {
    for (auto [a, b] : kFamily) {
        const TorusKnot K = make_knot(a, b);
        for (i64 k : {30, 60}) {
            const GammaTable t = extract_gammas(K, k);
            CHECK(t.res_gamma_m1 < 1e-8);
            CHECK(t.res_gamma_0 < 1e-8);
            CHECK(t.res_recurrence < 1e-8);
            CHECK(t.res_symmetry < 1e-8);
            CHECK(t.res_periodicity < 1e-8);
            CHECK(t.window_residual_plus < 1e-9 * t.max_gamma);
            CHECK(t.window_residual_minus < 1e-9 * t.max_gamma);
            CHECK(t.offset_deviation < 1e-9 * t.max_gamma);
            // the literal beta sign breaks the recurrence whenever beta is non-zero
            CHECK(t.res_recurrence_literal > 0.1);
        }
    }
}

TEST_CASE("trefoil gamma values") {
    const TorusKnot K = make_knot(2, 3);
    for (i64 k = 20; k <= 100; k += 20) {
        const GammaTable t = extract_gammas(K, k);
        for (i64 l : {0, 2, 4, 5}) CHECK(std::abs(t.gamma(l)) < 1e-9 * t.max_gamma);
        CHECK(std::abs(std::abs(t.gamma(1)) / std::sqrt(static_cast<double>(k)) - 1) < 0.05);
    }
}

TEST_CASE("MPFR gamma table agrees with double") {
    const TorusKnot K = make_knot(2, 5);
    StateOptions hi;
    hi.digits = 30;
    const GammaTable a = extract_gammas(K, 20), b = extract_gammas(K, 20, hi);
    for (i64 l = 0; l < K.D; ++l) CHECK(std::abs(a.gamma(l) - b.gamma(l)) < 1e-10 * (1 + a.max_gamma));
    CHECK(b.max_invariant_residual() < 1e-20);
}

TEST_CASE("norm growth: sqrt k, not bounded") {
    const TorusKnot K = make_knot(2, 3);
    const GrowthReport g = norm_growth(K, {25, 50, 100, 200, 400});
    CHECK(g.exponent <= 1.0);
    CHECK(std::abs(g.exponent - 0.5) < 0.1);
    const double r1 = g.values[3] / std::sqrt(200.0), r2 = g.values[4] / std::sqrt(400.0);
    CHECK(std::abs(r1 - r2) < 0.05 * r2);
}

TEST_CASE("gamma CSV layout") {
    const GammaTable t = extract_gammas(make_knot(2, 3), 20);
    const std::string csv = csv_with_meta(json{{"k", 20}}, gamma_header(), gamma_rows(t));
    CHECK(csv.find("ell,re_beta,im_beta,re_gamma_plus,im_gamma_plus,re_gamma_minus,im_gamma_minus,recurrence_residual\n") !=
          std::string::npos);
    CHECK(gamma_rows(t).size() == 12);
    CHECK(gamma_json(t)["table"].size() == 12);
}

}
