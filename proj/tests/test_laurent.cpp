#include "oracles.hpp"
#include "tqk/errors.hpp"
#include "tqk/laurent.hpp"
#include "tqk/serialize.hpp"

#include <doctest.h>

using namespace tqk;

namespace {

LaurentPoly t(i64 e) { return LaurentPoly::monomial(e); }

LaurentPoly from_oracle(const oracle::Poly& p) { return LaurentPoly::from_map(oracle::norm(p)); }

oracle::Poly to_oracle(const LaurentPoly& p) { return oracle::Poly(p.coeffs().begin(), p.coeffs().end()); }

}  // namespace

TEST_SUITE("laurent") {

TEST_CASE("disjoint sum and identity product") {
    CHECK(ring_op(RingOp::Add, t(1), t(-1)) == t(1) + t(-1));
    CHECK(ring_op(RingOp::Add, t(1), t(-1)).size() == 2);
    const LaurentPoly d = t(2) - t(-2);
    CHECK(ring_op(RingOp::Mul, d, LaurentPoly(1)) == d);
    CHECK(ring_op(RingOp::Neg, d, {}) == t(-2) - t(2));
}

TEST_CASE("product against convolution oracle") {
    const LaurentPoly p = t(1) - 1 + t(-1), q = t(1) + 1 + t(-1);
    const LaurentPoly got = ring_op(RingOp::Mul, p, q);
    CHECK(got == from_oracle(oracle::mul(to_oracle(p), to_oracle(q))));
    CHECK(got == t(2) + 1 + t(-2));  // t^2 + t^-2 + 1: odd terms cancel
}

TEST_CASE("canonical form drops zeros") {
    const LaurentPoly z = t(3) - t(3);
    CHECK(z.is_zero());
    CHECK(z.size() == 0);
    CHECK((t(1) + t(2) - t(1)) == t(2));
}

TEST_CASE("exact division examples") {
    const LaurentPoly d = t(2) - t(-2);
    CHECK(exact_div(d, d) == LaurentPoly(1));
    CHECK(exact_div(t(4) - t(-4), d) == t(2) + t(-2));
    // trefoil Morton numerator for l = 2, checked by bottom-up long division
    const LaurentPoly num = (t(6) * (t(-8) - 1) + t(6) * (t(12) - t(-4))).shift(-18);
    const LaurentPoly q = exact_div(num, d);
    oracle::Poly oq;
    REQUIRE(oracle::div_low(to_oracle(num), to_oracle(d), oq));
    CHECK(q == from_oracle(oq));
    CHECK(q * d == num);
}

TEST_CASE("non divisible input raises NotDivisible") {
    try {
        exact_div(t(3) + 1, t(2) - t(-2));
        FAIL("expected NotDivisible");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotDivisible);
    }
    CHECK_THROWS_AS(exact_div(t(1), LaurentPoly()), Error);
    CHECK_THROWS_AS(exact_div(LaurentPoly(3), LaurentPoly(2)), Error);
}

TEST_CASE("unit circle evaluation") {
    const LaurentPoly one(1), delta = t(1) - 1 + t(-1);
    CHECK(std::abs(eval_unit_circle(one, 1.234) - cd(1, 0)) < 1e-15);
    CHECK(std::abs(eval_unit_circle(delta, 0.0) - cd(1, 0)) < 1e-15);
    CHECK(std::abs(eval_unit_circle(delta, 2 * std::numbers::pi / 6)) < 1e-15);
    // MPFR path agrees with double
    CHECK(std::abs(eval_unit_circle(delta, 0.7, 40) - eval_unit_circle(delta, 0.7)) < 1e-15);
}

TEST_CASE("mirror and shift") {
    const LaurentPoly p = t(3) * 2 - t(-1);
    CHECK(p.mirror() == t(-3) * 2 - t(1));
    CHECK(p.shift(2) == t(5) * 2 - t(1));
    CHECK(p.min_exp() == -1);
    CHECK(p.max_exp() == 3);
    CHECK(p.coeff(3) == 2);
    CHECK(p.coeff(0) == 0);
}

TEST_CASE("json round trip keeps big coefficients") {
    LaurentPoly::Map m;
    m[-7] = mpz_class("123456789012345678901234567890");
    m[4] = -3;
    const LaurentPoly p = LaurentPoly::from_map(m);
    const json j = laurent_to_json(p);
    CHECK(j["-7"] == "123456789012345678901234567890");
    CHECK(j["4"] == "-3");
    CHECK(laurent_from_json(j) == p);
    CHECK_THROWS_AS(laurent_from_json(json{{"x", "1"}}), Error);
}

TEST_CASE("property: product matches oracle, division inverts it, evaluation is multiplicative") {
    std::mt19937_64 rng(20261016);
    for (int trial = 0; trial < 60; ++trial) {
        const auto op = oracle::random_poly(rng, 1 + trial % 30, 40, 40);
        auto oq = oracle::random_poly(rng, 1 + (trial * 7) % 30, 40, 40);
        if (oq.empty()) oq[0] = 1;
        const LaurentPoly p = from_oracle(op), q = from_oracle(oq);
        const LaurentPoly pq = p * q;
        CHECK(pq == from_oracle(oracle::mul(op, oq)));
        CHECK(exact_div(pq, q) == p);
        CHECK((p + q) - q == p);
        const double th = 0.1 + 0.05 * trial;
        const cd lhs = eval_unit_circle(pq, th), rhs = eval_unit_circle(p, th) * eval_unit_circle(q, th);
        const double bound = 1e-15 * (p.l1_norm() * q.l1_norm()) * 8;
        CHECK(std::abs(lhs - rhs) <= bound);
    }
}

}
