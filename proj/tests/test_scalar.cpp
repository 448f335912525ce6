#include <catch2/catch_amalgamated.hpp>

#include <complex>

#include "twistalg/scalar.hpp"

using namespace twistalg;

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-1/2") == Rational(-1, 2));
    CHECK(parse_rational("5") == Rational(5));
    CHECK(parse_rational("6/4") == Rational(3, 2));  // canonicalized
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("cyclotomic context basics") {
    const auto& c12 = CyclotomicContext::get(12);
    CHECK(c12.order() == 12);
    CHECK(c12.degree() == 4);  // phi(12)

    // Phi_12 = x^4 - x^2 + 1, so zeta^4 = zeta^2 - 1.
    const auto& z4 = c12.power(4);
    CHECK(z4 == std::vector<Rational>{Rational(-1), Rational(0), Rational(1), Rational(0)});

    CHECK(CyclotomicContext::get(1).degree() == 1);
    CHECK(CyclotomicContext::get(3).degree() == 2);
    CHECK(CyclotomicContext::get(8).degree() == 4);
    CHECK_THROWS_AS(CyclotomicContext::get(0), std::invalid_argument);
}

TEST_CASE("roots of unity") {
    CHECK(root_of_unity(1, 0) == Cyclotomic::one(1));

    // zeta_3 + zeta_3^2 = -1.
    const Cyclotomic z3 = root_of_unity(3, 1);
    CHECK(z3 + root_of_unity(3, 2) == -Cyclotomic::one(3));

    // zeta_12^4 is a primitive cube root: it satisfies x^2 + x + 1 = 0.
    const Cyclotomic w = root_of_unity(12, 4);
    CHECK((w * w + w + Cyclotomic::one(12)).is_zero());

    // Exponents reduce modulo the order, including negatives.
    CHECK(root_of_unity(12, 16) == w);
    CHECK(root_of_unity(12, -8) == w);

    // zeta^order == 1.
    CHECK(root_of_unity(12, 12) == Cyclotomic::one(12));
}

TEST_CASE("cyclotomic arithmetic and conjugation") {
    const Cyclotomic z = root_of_unity(12, 1);

    // zeta * conj(zeta) = 1 and conj(zeta) = zeta^11.
    CHECK(z.conjugate() == root_of_unity(12, 11));
    CHECK(z * z.conjugate() == Cyclotomic::one(12));

    // Conjugation is an involutive ring map.
    const Cyclotomic a = root_of_unity(12, 5) + Cyclotomic::from_rational(Rational(2, 3), 12);
    const Cyclotomic b = root_of_unity(12, 7) - Cyclotomic::one(12);
    CHECK(a.conjugate().conjugate() == a);
    CHECK((a * b).conjugate() == a.conjugate() * b.conjugate());
    CHECK((a + b).conjugate() == a.conjugate() + b.conjugate());

    // Rationality is a canonical-coordinate condition.
    const Cyclotomic s3 = root_of_unity(3, 1) + root_of_unity(3, 2);
    CHECK(s3.is_rational());
    CHECK(s3.rational_value() == Rational(-1));
    CHECK_FALSE(a.is_rational());
    CHECK_THROWS_AS(a.rational_value(), std::domain_error);
}

TEST_CASE("embedding into larger fields") {
    // zeta_3 embedded in Q(zeta_12) is zeta_12^4.
    const Cyclotomic z3 = root_of_unity(3, 1);
    CHECK(z3.embedded(12) == root_of_unity(12, 4));
    CHECK_THROWS_AS(z3.embedded(8), std::invalid_argument);

    CHECK(embedded_root(12, 3, 1) == root_of_unity(12, 4));
    CHECK(embedded_root(12, 2, 1) == root_of_unity(12, 6));
    // zeta_5 is not in Q(zeta_12): fail loudly.
    CHECK_THROWS_AS(embedded_root(12, 5, 1), std::domain_error);
}

TEST_CASE("mixed cyclotomic orders fail loudly") {
    const Cyclotomic a = root_of_unity(3, 1);
    const Cyclotomic b = root_of_unity(12, 4);
    CHECK_THROWS_AS(a + b, std::invalid_argument);
    CHECK_THROWS_AS(a * b, std::invalid_argument);
}

TEST_CASE("scalar ring basics") {
    const Scalar one = Scalar::one(12);
    const Scalar q = Scalar::q_power(Rational(1), 12);
    const Scalar qh = Scalar::q_power(Rational(1, 2), 12);

    CHECK(one.is_one());
    CHECK(Scalar::zero(12).is_zero());
    CHECK(qh * qh == q);
    CHECK(q * Scalar::q_power(Rational(-1), 12) == one);
    CHECK((q - q).is_zero());

    // Exponent arithmetic is exact rational arithmetic.
    const Scalar a = Scalar::q_power(Rational(1, 3), 12);
    const Scalar b = Scalar::q_power(Rational(1, 6), 12);
    CHECK(a * b == Scalar::q_power(Rational(1, 2), 12));

    // Distributivity on a small sample.
    const Scalar s = one + a;
    const Scalar t = b - one;
    CHECK(s * t == b - one + a * b - a);
}

TEST_CASE("scalar theta independence and conjugation") {
    const Scalar c = Scalar::from_cyclotomic(root_of_unity(12, 4));
    CHECK(c.theta_independent());
    CHECK(Scalar::zero(12).theta_independent());

    const Scalar q = Scalar::q_power(Rational(1, 2), 12);
    CHECK_FALSE(q.theta_independent());
    CHECK_FALSE((c + q).theta_independent());
    // The q-dependence cancels exactly.
    CHECK((c + q - q).theta_independent());

    CHECK(q.conjugate() == Scalar::q_power(Rational(-1, 2), 12));
    CHECK(c.conjugate() == Scalar::from_cyclotomic(root_of_unity(12, 8)));
    CHECK((q * c).conjugate() == q.conjugate() * c.conjugate());
    CHECK(q * q.conjugate() == Scalar::one(12));
}

TEST_CASE("scalar coefficients and orders") {
    Scalar s = Scalar::q_power(Rational(1, 2), 12) + Scalar::one(12);
    CHECK(s.coefficient(Rational(1, 2)) == Cyclotomic::one(12));
    CHECK(s.coefficient(Rational(1, 3)).is_zero());
    CHECK(s.constant_coefficient() == Cyclotomic::one(12));

    CHECK_THROWS_AS(Scalar::one(12) + Scalar::one(3), std::invalid_argument);

    // The default order is a session setting.
    CHECK(default_cyclotomic_order() == 12);
    set_default_cyclotomic_order(24);
    CHECK(Scalar::one().order() == 24);
    set_default_cyclotomic_order(12);
    CHECK_THROWS_AS(set_default_cyclotomic_order(0), std::invalid_argument);
}

TEST_CASE("advisory evaluation matches exact arithmetic") {
    // (q^(1/2) + zeta_12)^2 evaluated numerically equals the evaluation of
    // the exact product, for several theta.
    const Scalar s = Scalar::q_power(Rational(1, 2), 12) + Scalar::from_cyclotomic(root_of_unity(12, 1));
    const Scalar s2 = s * s;
    for (double theta : {0.0, 0.17, 1.0, 2.5, -3.1}) {
        const std::complex<double> direct = s.evaluate(theta) * s.evaluate(theta);
        const std::complex<double> exact = s2.evaluate(theta);
        CHECK(std::abs(direct - exact) < 1e-12);
    }

    // zeta_3 evaluates to e^(2*pi*i/3).
    const std::complex<double> z3 = root_of_unity(3, 1).evaluate();
    CHECK(std::abs(z3 - std::polar(1.0, 2.0 * std::numbers::pi / 3.0)) < 1e-12);
}

TEST_CASE("deterministic rendering") {
    CHECK(Scalar::zero(12).to_string() == "0");
    CHECK(Scalar::one(12).to_string() == "1");
    const Scalar s =
        Scalar::q_power(Rational(-1, 2), 12).scaled(Rational(1, 3)) + Scalar::from_cyclotomic(root_of_unity(12, 2));
    CHECK(s.to_string() == "1/3*q^{-1/2} + 1*e^{2*pi*i*2/12}");
    const Scalar neg = Scalar::from_rational(Rational(-2, 5), 12);
    CHECK(neg.to_string() == "(-2/5)");
}
