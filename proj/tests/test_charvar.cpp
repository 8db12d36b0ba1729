#include "oracles.hpp"
#include "tqk/charvar.hpp"
#include "tqk/errors.hpp"
#include "tqk/serialize.hpp"

#include <doctest.h>

#include <numeric>
#include <set>

using namespace tqk;

namespace {

const std::vector<std::pair<i64, i64>> kFamily = {{2, 3}, {2, 5}, {3, 4}, {3, 5}};

std::vector<std::pair<i64, i64>> coprime_pairs(i64 top) {
    std::vector<std::pair<i64, i64>> out;
    for (i64 a = 2; a <= top; ++a)
        for (i64 b = a + 1; b <= top; ++b)
            if (std::gcd(a, b) == 1) out.emplace_back(a, b);
    return out;
}

double mat_dist(const Mat2& A, const Mat2& B) {
    double d = 0;
    for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(A[static_cast<std::size_t>(i)] - B[static_cast<std::size_t>(i)]));
    return d;
}

}  // namespace

TEST_SUITE("charvar") {

TEST_CASE("components of the trefoil and the (2,5) knot") {
    const auto t = p_set(make_knot(2, 3));
    REQUIRE(t.size() == 1);
    CHECK(t[0] == IrredComponent{1, 1, 1, 5});
    const auto f = p_set(make_knot(2, 5));
    REQUIRE(f.size() == 2);
    CHECK(f[0] == IrredComponent{1, 1, 1, 9});
    CHECK(f[1] == IrredComponent{1, 3, 3, 7});
}

TEST_CASE("component invariants over all coprime pairs up to 12") {
    const double pi = std::numbers::pi;
    for (auto [a, b] : coprime_pairs(12)) {
        const TorusKnot K = make_knot(a, b);
        const auto comps = p_set(K);
        CHECK(static_cast<i64>(comps.size()) == (a - 1) * (b - 1) / 2);
        for (const auto& c : comps) {
            CHECK(c.k_minus >= 1);
            CHECK(c.k_minus < c.k_plus);
            CHECK(c.k_plus <= a * b - 1);
            CHECK(mod(c.alpha - c.beta, 2) == 0);
            for (i64 kk : {c.k_minus, c.k_plus}) {
                CHECK(kk % a != 0);
                CHECK(kk % b != 0);
            }
            CHECK(mod((c.k_plus + c.k_minus) * (c.k_plus - c.k_minus), 2 * K.D) == 0);
            const double s = std::sin(pi * c.k_minus / a) * std::sin(pi * c.k_minus / b) +
                             std::sin(pi * c.k_plus / a) * std::sin(pi * c.k_plus / b);
            CHECK(std::abs(s) < 1e-12);
            // sin(pi k^-/a) = +- sin(pi alpha/a) with k^- = +- alpha mod 2a
            const double sk = std::sin(pi * c.k_minus / a), sa = std::sin(pi * c.alpha / a);
            const i64 r = mod(c.k_minus, 2 * a);
            if (r == c.alpha) CHECK(std::abs(sk - sa) < 1e-12);
            else if (r == mod(-c.alpha, 2 * a)) CHECK(std::abs(sk + sa) < 1e-12);
            else if (r == mod(a - c.alpha, 2 * a) || r == mod(a + c.alpha, 2 * a)) CHECK(std::abs(std::abs(sk) - std::abs(sa)) < 1e-12);
            else FAIL("k^- not congruent to +-alpha");
        }
    }
}

TEST_CASE("bijection onto the non-multiples") {
    for (auto [a, b] : coprime_pairs(12)) {
        const BijectionReport r = check_bijection(make_knot(a, b));
        CHECK(r.injective);
        CHECK(r.image_ok);
        std::set<i64> want;
        for (i64 l = 1; l < a * b; ++l)
            if (l % a && l % b) want.insert(l);
        CHECK(std::set<i64>(r.image.begin(), r.image.end()) == want);
    }
}

TEST_CASE("Bezout independence") {
    for (auto [a, b] : coprime_pairs(9)) {
        const TorusKnot K = make_knot(a, b);
        for (i64 j : {-2, -1, 1, 3}) {
            auto alt = p_set_with(K, K.m + a * j, K.n - b * j);
            auto base = p_set(K);
            auto key = [](const IrredComponent& c) { return std::tuple(c.alpha, c.beta, c.k_minus, c.k_plus); };
            std::sort(alt.begin(), alt.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
            std::sort(base.begin(), base.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
            CHECK(alt == base);
        }
    }
    CHECK_THROWS_AS(p_set_with(make_knot(2, 3), 1, 1), Error);
}

TEST_CASE("P_l tables") {
    const TorusKnot T = make_knot(2, 3);
    CHECK(p_ell(T, 1).size() == 1);
    CHECK(p_ell(T, 2).empty());
    CHECK(p_ell(T, 3).size() == 1);
    for (auto [a, b] : kFamily) {
        CHECK(p_ell(make_knot(a, b), -1).empty());
        CHECK(p_ell(make_knot(a, b), 0).empty());
    }
    const auto f = p_ell(make_knot(2, 5), 3);
    REQUIRE(f.size() == 2);
    CHECK(f[0].beta == 1);
    CHECK(f[1].beta == 3);
}

TEST_CASE("representations") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0, 1);
    for (auto [a, b] : kFamily) {
        const TorusKnot K = make_knot(a, b);
        for (const auto& c : p_set(K)) {
            for (int i = 0; i < 10; ++i) {
                const double t = u(rng);
                const Rep r = rho_su2(K, c, t);
                CHECK(mat_dist(mat_pow(r.x, a), mat_pow(r.y, b)) < 1e-12);
                const Mat2 m = mat_mul(mat_pow(r.x, K.m), mat_pow(r.y, K.n));
                CHECK(std::abs((m[0] + m[3]).real() - meridian_trace_formula(K, c, t)) < 1e-10);
                CHECK(std::abs((m[0] + m[3]).imag()) < 1e-10);
            }
            const Rep r0 = rho_su2(K, c, 0);
            CHECK(mat_dist(mat_mul(r0.x, r0.y), mat_mul(r0.y, r0.x)) < 1e-14);
        }
    }
    CHECK_THROWS_AS(rho_su2(make_knot(2, 3), IrredComponent{1, 1, 1, 5}, 1.5), Error);
}

TEST_CASE("torsion square root") {
    const double pi = std::numbers::pi;
    for (auto [a, b] : kFamily) {
        const TorusKnot K = make_knot(a, b);
        for (const auto& c : p_set(K)) {
            const TorsionRoot r = torsion_sqrt(K, c);
            CHECK(std::abs(r.square_on_vector - r.expected_square) < 1e-10 * r.expected_square);
            CHECK(torsion_sqrt(K, c, TorsionSign::Literal).coefficient == doctest::Approx(-r.coefficient));
        }
    }
    const TorsionRoot t = torsion_sqrt(make_knot(2, 3), IrredComponent{1, 1, 1, 5});
    CHECK(std::abs(std::abs(t.coefficient) - std::pow(2.0, 13.0 / 4) * std::sqrt(pi / 6) * std::sqrt(3.0) / 2) < 1e-12);
}

TEST_CASE("Chern-Simons phases") {
    for (auto [a, b] : kFamily) {
        const TorusKnot K = make_knot(a, b);
        for (const auto& c : p_set(K)) {
            for (i64 k : {7, 20}) {
                CHECK(std::abs(cs_phase(K, c, c.k_minus, static_cast<double>(c.k_minus), k) - 1.0) < 1e-12);
                for (i64 l = c.k_minus; l < c.k_plus; l += 2) {
                    CHECK(cs_flatness_residual(K, c, l, k) < 1e-6);
                    CHECK(cs_junction_residual(K, c, l, k) < 1e-9);
                    CHECK(std::abs(std::abs(cs_phase(K, c, l, l + 0.7, k)) - 1) < 1e-12);
                }
            }
        }
    }
    const TorusKnot T = make_knot(2, 3);
    CHECK_THROWS_AS(cs_phase(T, p_set(T)[0], 2, 2.5, 10), Error);
    CHECK_THROWS_AS(cs_phase(T, p_set(T)[0], 1, 3.5, 10), Error);
    CHECK(cs_flatness_residual(T, p_set(T)[0], 1, 10, cd(0.3, 1.2)) < 1e-6);
}

TEST_CASE("topological gamma") {
    const TorusKnot T = make_knot(2, 3);
    for (i64 k : {20, 80}) {
        CHECK(std::abs(gamma_topological(T, 2, k)) < 1e-15);
        CHECK(std::abs(gamma_topological(T, 4, k)) < 1e-15);
        CHECK(std::abs(std::abs(gamma_topological(T, 1, k)) - std::sqrt(static_cast<double>(k))) < 1e-10);
    }
    for (auto [a, b] : kFamily) {
        CHECK(std::abs(gamma_topological(make_knot(a, b), 0, 30)) == 0);
        CHECK(std::abs(gamma_topological(make_knot(a, b), -1, 30)) == 0);
    }
}

TEST_CASE("cross-check against the analytic gammas") {
    for (auto [a, b] : kFamily) {
        const TorusKnot K = make_knot(a, b);
        const CrossCheck cc = cross_check(K, 40, MuConvention::Alpha, TorsionSign::Corrected);
        CHECK(cc.deviation.size() == static_cast<std::size_t>(a * b + 1));
        CHECK(cc.max_relative < 1e-6);
        // the literal torsion sign is off by a global sign on every charged l
        const CrossCheck lit = cross_check(K, 40, MuConvention::Alpha, TorsionSign::Literal);
        CHECK(lit.max_relative > 0.1);
    }
}

TEST_CASE("mu convention selection keeps the alpha phase") {
    const ConventionChoice c = select_mu_convention(make_knot(2, 5), {30, 60});
    CHECK(c.mu == MuConvention::Alpha);
    CHECK(c.alpha_devs.back() < c.half_ab_devs.back());
    CHECK(std::string(mu_name(c.mu)) == "alpha");
}

TEST_CASE("charvar JSON") {
    const json j = charvar_json(make_knot(2, 3));
    REQUIRE(j["components"].size() == 1);
    CHECK(j["components"][0]["alpha"] == 1);
    CHECK(j["components"][0]["k_minus"] == 1);
    CHECK(j["components"][0]["k_plus"] == 5);
    CHECK(j["p_ell"].size() == 7);
    CHECK(j["bijection"]["image_ok"] == true);
}

}
