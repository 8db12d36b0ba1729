#include "oracles.hpp"
#include "tqk/errors.hpp"
#include "tqk/serialize.hpp"
#include "tqk/verifier.hpp"

#include <doctest.h>

using namespace tqk;

TEST_SUITE("verifier") {

TEST_CASE("state evaluation: oddness, zero at the origin, lattice equivariance") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(-1, 1);
    for (cd tau : {cd(0, 1), cd(0.3, 1.2)}) {
        StateOptions opt;
        opt.tau = tau;
        const StateEvaluator ev(make_knot(2, 3), 15, opt);
        CHECK(std::abs(ev.eval(0, 0)) < 1e-12);
        for (int i = 0; i < 15; ++i) {
            const double p = u(rng), q = u(rng);
            const cd z = ev.eval(p, q);
            CHECK(std::abs(ev.eval(-p, -q) + z) < 1e-10 * (1 + std::abs(z)));
            for (auto [rp, rq] : {std::pair{1.0, 0.0}, std::pair{0.0, 1.0}, std::pair{-2.0, 3.0}}) {
                const cd moved = ev.eval(p + rp, q + rq) * ev.pullback_phase(rp, rq, p, q);
                CHECK(std::abs(moved - z) < 1e-10 * (1 + std::abs(z)));
            }
        }
    }
}

TEST_CASE("pairing identity between the state and the Jones evaluations") {
    for (auto [a, b] : {std::pair{2, 3}, std::pair{3, 4}}) {
        CHECK(pairing_identity_residual(make_knot(a, b), 12) < 1e-11);
    }
}

TEST_CASE("probe classification") {
    const TorusKnot T = make_knot(2, 3);
    CHECK_FALSE(probe_exclusion(T, -0.5, 2.5 / 12 + 0.04, 0.02).has_value());
    CHECK_FALSE(probe_exclusion(T, -0.37, 0.055, 0.02).has_value());
    CHECK(probe_exclusion(T, -0.5, 2.0 / 12, 0.02).has_value());   // on the segment of l = 1
    CHECK(probe_exclusion(T, -0.005, 0.3, 0.02).has_value());      // next to the abelian line
    CHECK(probe_exclusion(T, 0.995, 0.3, 0.02).has_value());
    CHECK_FALSE(probe_exclusion(T, -0.5, 3.0 / 12, 0.02).has_value());  // l = 2 carries no component
    CHECK_THROWS_AS(probe_microsupport(T, -0.5, 2.0 / 12, {40, 80, 160, 320}), Error);
    CHECK_THROWS_AS(probe_microsupport(T, -0.37, 0.055, {40, 80, 160}), Error);  // too few levels
}

TEST_CASE("microsupport: decay off the support, none on it") {
    const TorusKnot T = make_knot(2, 3);
    const std::vector<i64> ks = {40, 80, 160, 320, 640};
    const DecayReport off = probe_microsupport(T, -0.37, 0.055, ks);
    CHECK(off.pass);
    CHECK(off.rate > 0);
    CHECK(off.r2 > 0.99);
    ProbeOptions ctl;
    ctl.control = true;
    const DecayReport on = probe_microsupport(T, -0.5, 2.0 / 12, ks, ctl);
    CHECK(on.pass);
    CHECK(on.rate <= 0);
    // independent slope of the same data
    std::vector<double> x, y;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        x.push_back(static_cast<double>(ks[i]));
        y.push_back(std::log(std::abs(off.measured[i])));
    }
    CHECK(std::abs(-oracle::slope(x, y) - off.rate) < 1e-9);
}

TEST_CASE("abelian leading term: f_0, exclusions, symmetry") {
    const TorusKnot T = make_knot(2, 3);
    CHECK_THROWS_AS(check_abelian(T, 1.0 / 12 + 0.005, {20, 40, 80, 160}), Error);
    CHECK_THROWS_AS(check_abelian(T, 0.6, {20, 40, 80, 160}), Error);
    const cd f = f0_abelian(T, 0.13);
    CHECK(std::isfinite(std::abs(f)));
    // |f_0| blows up towards the root of Delta at q = 1/12
    CHECK(std::abs(f0_abelian(T, 1.0 / 12 + 1e-4)) > 100 * std::abs(f));
    const StateEvaluator ev(T, 40);
    CHECK(std::abs(std::abs(ev.eval(0, 0.13)) - std::abs(ev.eval(0, -0.13))) < 1e-12);
    // the residual does shrink with k, slower than the claimed order on short ladders
    const DecayReport r = check_abelian(T, 0.13, {640, 1280, 2560, 5120});
    CHECK(r.residual.back() < r.residual.front());
}

TEST_CASE("irreducible leading term") {
    const TorusKnot T = make_knot(2, 3);
    const DecayReport r1 = check_irreducible(T, 1, 0.35, {20, 40, 80});
    CHECK(r1.pass);
    const DecayReport r2 = check_irreducible(T, 1, 0.2, {20, 40, 80});
    CHECK(r2.pass);
    // the decay is faster than any power, but k = 30 is still pre-asymptotic for D = 20
    const DecayReport r5 = check_irreducible(make_knot(2, 5), 3, 0.5, {60, 120, 240});
    CHECK(r5.pass);
    CHECK_FALSE(check_irreducible(make_knot(2, 5), 3, 0.5, {30, 60, 120}).pass);
    // l = 2 carries no irreducible term for the trefoil: Z itself is small there
    const DecayReport r0 = check_irreducible(T, 2, 0.35, {20, 40, 80});
    CHECK(std::abs(r0.predicted.back()) < 1e-12);
    CHECK(r0.residual.back() < r0.residual.front());
    // the literal branch constant i misses by a factor of modulus sqrt 2
    IrreducibleOptions lit;
    lit.kappa = BranchConstant::Literal;
    CHECK_FALSE(check_irreducible(T, 1, 0.35, {20, 40, 80}, lit).pass);
    CHECK_THROWS_AS(check_irreducible(T, 1, 1.2, {20, 40, 80}), Error);
}

TEST_CASE("mixed points") {
    const TorusKnot T = make_knot(2, 3);
    CHECK(std::abs(eval_unit_circle(alexander(T), std::numbers::pi) - cd(-3, 0)) < 1e-12);
    CHECK(check_mixed(T, 3, {20, 40, 80, 160}).pass);
    CHECK(check_mixed(T, 2, {20, 40, 80, 160}).pass);
    // (3,4) only settles beyond k = 80
    CHECK(check_mixed(make_knot(3, 4), 4, {80, 160, 320, 640}).pass);
    CHECK_THROWS_AS(check_mixed(T, 1, {20, 40, 80}), Error);
}

TEST_CASE("Jones asymptotics: magnitude pre-check and calibration") {
    const TorusKnot T = make_knot(2, 3);
    const JonesAsymReport p = check_jones_asymptotics(T, 1, {50, 100, 200}, 200);
    CHECK(p.magnitude_precheck <= 0.25);
    CHECK(p.comps.size() == 1);
    const JonesAsymReport c =
        check_jones_asymptotics(T, 1, {50, 100, 200}, 200, 100, 0.15, JonesNormalization::Corrected);
    CHECK_FALSE(c.ambiguous);
    CHECK(c.bounded);
    CHECK(c.pass);
    // below the first branch only the Alexander column is present
    const JonesAsymReport low =
        check_jones_asymptotics(T, 0, {50, 100, 200}, 200, 100, 0.15, JonesNormalization::Corrected);
    CHECK(low.comps.empty());
    CHECK(low.pass);
}

TEST_CASE("admissibility: sup norm grows at most polynomially") {
    const GrowthReport g = admissibility(make_knot(2, 3), {10, 20, 40, 80}, 16);
    CHECK(g.exponent <= 1.0);
}

TEST_CASE("ladders and reports") {
    CHECK(dyadic_ladder(20, 160) == std::vector<i64>{20, 40, 80, 160});
    CHECK(dyadic_ladder(20, 100, 2) == std::vector<i64>{20, 40, 80});
    CHECK_THROWS_AS(dyadic_ladder(20, 10), Error);
    DecayReport r;
    r.kind = "microsupport";
    r.probe_id = "p1";
    r.levels = {10, 20};
    r.measured = {cd(1, 2), cd(3, 4)};
    r.predicted = {0.0, 0.0};
    r.residual = {2.2, 5};
    const auto rows = report_rows(r);
    CHECK(rows.size() == 2);
    CHECK(rows[1] == std::vector<std::string>{"p1", "microsupport", "20", "3", "4", "0", "0", "5"});
    const std::string ps = plot_script({r});
    CHECK(ps.find("set logscale xy") != std::string::npos);
    CHECK(ps.find("10 2.2") != std::string::npos);
}

}
