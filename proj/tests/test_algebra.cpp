#include <catch2/catch_amalgamated.hpp>

#include "twistalg/algebra.hpp"

using namespace twistalg;

namespace {

const AlgebraContext& ctx12() {
    static AlgebraContext c = AlgebraContext::example_Z2xZ3(12);
    return c;
}

GroupElement ge(long long a, long long b, int s) {
    return ctx12().group.make(IntVec{a, b}, s);
}

AlgebraElement lam(long long a, long long b, int s) {
    return AlgebraElement::basis(ctx12(), ge(a, b, s));
}

// The closed-form class correction for Ad(w) in the Z^2 x| Z/3 example.
Rational xi_w(const GroupElement& g) {
    const Rational a(static_cast<long>(g.v[0]));
    const Rational b(static_cast<long>(g.v[1]));
    return (a * a + a * b + b * b) / 3;
}

Scalar qp(const Rational& r) { return Scalar::q_power(r, 12); }

}  // namespace

TEST_CASE("twisted products match the closed forms on the deformed crossed product") {
    const auto& C = ctx12();

    SECTION("lattice times w-line: lambda_{(a,b,0)} lambda_{(c,d,1)}") {
        const long long a = 1, b = 2, c = 3, d = 4;
        const AlgebraElement p = twisted_product(C, lam(a, b, 0), lam(c, d, 1));
        AlgebraElement expected;
        expected.add_term(ge(a + c, b + d, 1), qp(Rational(to_int(-(a * d - b * c))) / 2));
        CHECK(p == expected);
    }

    SECTION("w-line times lattice: lambda_{(c,d,1)} lambda_{(a,b,0)}") {
        const long long a = 3, b = 4, c = 1, d = 2;
        const AlgebraElement p = twisted_product(C, lam(c, d, 1), lam(a, b, 0));
        AlgebraElement expected;
        expected.add_term(ge(c - a - b, d + a, 1),
                          qp(Rational(to_int(-(c * a + a * d + b * d))) / 2));
        CHECK(p == expected);
    }

    SECTION("unit laws and linearity") {
        const AlgebraElement one = AlgebraElement::unit(C);
        const AlgebraElement x = lam(1, 2, 0).scaled(qp(Rational(1, 2))) + lam(-1, 0, 2);
        CHECK(twisted_product(C, one, x) == x);
        CHECK(twisted_product(C, x, one) == x);
        const AlgebraElement y = lam(0, 1, 1) - lam(2, 2, 0);
        const AlgebraElement z = lam(1, 1, 2);
        CHECK(twisted_product(C, x + y, z) ==
              twisted_product(C, x, z) + twisted_product(C, y, z));
    }

    SECTION("associativity sweep on basis triples") {
        const Report rep = verify_associativity(C, 1);
        INFO((rep.violations.empty() ? std::string() : rep.violations.front()));
        CHECK(rep.pass());
    }

    SECTION("zero twist rate gives the plain group algebra") {
        const AlgebraContext plain(GroupSpec::preset_Z2xZ3(), TwoCocycleForm::preset_symplectic(),
                                   Rational(0), 12);
        const auto dom = plain.group.ball(1);
        for (size_t i = 0; i < dom.size(); i += 7) {
            for (size_t j = 0; j < dom.size(); j += 11) {
                AlgebraElement expected;
                expected.add_term(plain.group.multiply(dom[i], dom[j]), Scalar::one(12));
                CHECK(twisted_product(plain, AlgebraElement::basis(plain, dom[i]),
                                      AlgebraElement::basis(plain, dom[j])) == expected);
            }
        }
    }

    SECTION("configuration mismatches are rejected") {
        AlgebraElement wrong_order;
        wrong_order.add_term(ge(0, 0, 0), Scalar::one(8));
        CHECK_THROWS_AS(twisted_product(C, wrong_order, lam(0, 0, 0)), std::invalid_argument);

        AlgebraElement wrong_rank;
        wrong_rank.add_term(GroupElement{IntVec{1}, 0}, Scalar::one(12));
        CHECK_THROWS_AS(twisted_product(C, lam(0, 0, 0), wrong_rank), std::invalid_argument);
    }
}

TEST_CASE("the involution makes every basis element unitary") {
    const auto& C = ctx12();

    SECTION("lambda_g lambda_g^* = 1 on ball(2)") {
        const AlgebraElement one = AlgebraElement::unit(C);
        for (const auto& g : C.group.ball(2)) {
            const AlgebraElement a = AlgebraElement::basis(C, g);
            CHECK(twisted_product(C, a, involution(C, a)) == one);
            CHECK(twisted_product(C, involution(C, a), a) == one);
        }
    }

    SECTION("anti-multiplicative and involutive") {
        const AlgebraElement a = lam(1, 2, 1).scaled(qp(Rational(1, 3))) + lam(0, -1, 0);
        const AlgebraElement b =
            lam(2, 0, 2).scaled(Scalar::from_cyclotomic(root_of_unity(12, 1))) + lam(1, 1, 0);
        CHECK(involution(C, twisted_product(C, a, b)) ==
              twisted_product(C, involution(C, b), involution(C, a)));
        CHECK(involution(C, involution(C, a)) == a);
        CHECK(involution(C, involution(C, b)) == b);
    }
}

TEST_CASE("deformed traces evaluate single orbits with the class correction") {
    const auto& C = ctx12();
    const GroupElement w = ge(0, 0, 1);

    SECTION("frozen values") {
        CHECK(trace_tau(C, w, xi_w, lam(1, 1, 1)) == qp(Rational(-1, 2)));
        CHECK(trace_tau(C, w, xi_w, lam(1, 0, 1)).is_zero());
        CHECK(trace_tau(C, w, xi_w, AlgebraElement::unit(C)).is_zero());
        // (2,2,1): xi = (4+4+4)/3 = 4 -> q^{-2}, and linearity over a mixed element.
        const AlgebraElement mix =
            lam(2, 2, 1).scaled(qp(Rational(1))) + lam(1, 0, 0) + lam(1, 1, 1);
        CHECK(trace_tau(C, w, xi_w, mix) == qp(Rational(-1)) + qp(Rational(-1, 2)));
    }

    SECTION("the trace is tracial exactly when the class correction is right") {
        const TraceFunctional good = make_trace_tau(C, w, xi_w);
        const Report ok = verify_traciality(C, good, 2);
        INFO((ok.violations.empty() ? std::string() : ok.violations.front()));
        CHECK(ok.pass());

        const TraceFunctional bad =
            make_trace_tau(C, w, [](const GroupElement&) -> Rational { return Rational(0); });
        CHECK_FALSE(verify_traciality(C, bad, 1).pass());
    }

    SECTION("identity anchor sees only the identity coefficient") {
        const auto zero_xi = [](const GroupElement&) -> Rational { return Rational(0); };
        const AlgebraElement a = AlgebraElement::unit(C).scaled(qp(Rational(1, 2))) + lam(1, 0, 0);
        CHECK(trace_tau(C, C.group.identity(), zero_xi, a) == qp(Rational(1, 2)));
    }
}

TEST_CASE("spectral projections of the torsion unitaries") {
    const auto& C = ctx12();
    const std::vector<GroupElement> gens = {ge(0, 0, 1), ge(1, 0, 1), ge(2, 0, 1)};
    const std::vector<Rational> z_exponents = {Rational(0), Rational(1, 6), Rational(2, 3)};

    SECTION("the z-correction matches the closed form") {
        for (size_t i = 0; i < gens.size(); ++i) {
            const AlgebraElement q0 = projection_Q(C, gens[i], 0);
            // Coefficient of lambda_gen in Q_0 is z/3.
            CHECK(q0.coefficient(gens[i], 12) == qp(z_exponents[i]).scaled(Rational(1, 3)));
            CHECK(q0.coefficient(C.group.identity(), 12) ==
                  Scalar::from_rational(Rational(1, 3), 12));
        }
    }

    SECTION("idempotent, self-adjoint, resolution of the identity") {
        for (const auto& gen : gens) {
            AlgebraElement sum;
            for (long long j = 0; j < 3; ++j) {
                const AlgebraElement q = projection_Q(C, gen, j);
                CHECK(twisted_product(C, q, q) == q);
                CHECK(involution(C, q) == q);
                sum = sum + q;
            }
            CHECK(sum == AlgebraElement::unit(C));
        }
    }

    SECTION("distinct eigenprojections annihilate each other") {
        const AlgebraElement q0 = projection_Q(C, gens[1], 0);
        const AlgebraElement q1 = projection_Q(C, gens[1], 1);
        CHECK(twisted_product(C, q0, q1).is_zero());
    }

    SECTION("error paths") {
        CHECK_THROWS_AS(projection_Q(C, ge(1, 0, 0), 0), std::domain_error);
        const AlgebraContext c8(GroupSpec::preset_Z2xZ3(), TwoCocycleForm::preset_symplectic(),
                                Rational(-1, 2), 8);
        CHECK_THROWS_AS(projection_Q(c8, c8.group.make(IntVec{0, 0}, 1), 0), std::domain_error);
        CHECK_THROWS_WITH(projection_Q(c8, c8.group.make(IntVec{0, 0}, 1), 0),
                          Catch::Matchers::ContainsSubstring("increase the cyclotomic order"));
    }
}

TEST_CASE("closed-form alpha^s traces on the lattice subalgebra") {
    const auto& C = ctx12();

    SECTION("frozen evaluations") {
        const SubalgebraFunctional phi10 = alpha_trace_phi(C, 1, 0);
        const SubalgebraFunctional phi11 = alpha_trace_phi(C, 1, 1);
        const SubalgebraFunctional phi20 = alpha_trace_phi(C, 2, 0);
        CHECK(phi10.apply(lam(3, 0, 0)) == qp(Rational(3, 2)));
        CHECK(phi11.apply(lam(1, 1, 0)).is_zero());
        CHECK(phi11.apply(lam(1, 0, 0)) == Scalar::one(12));
        CHECK(phi20.apply(lam(1, 2, 0)).is_zero());
        CHECK(phi20.apply(lam(2, -1, 0)) == qp(Rational(-1, 2)));
    }

    SECTION("all six functionals satisfy the alpha^s-trace identity") {
        for (int kind : {1, 2}) {
            for (int l : {0, 1, 2}) {
                const Report rep = verify_alpha_trace(C, alpha_trace_phi(C, kind, l), 2);
                INFO("kind=" << kind << " l=" << l
                             << (rep.violations.empty() ? "" : " " + rep.violations.front()));
                CHECK(rep.pass());
            }
        }
    }

    SECTION("the lattice automorphism is multiplicative with the right order") {
        std::vector<GroupElement> lattice;
        for (const auto& g : C.group.ball(2)) {
            if (g.s == 0) lattice.push_back(g);
        }
        for (size_t i = 0; i < lattice.size(); i += 3) {
            const AlgebraElement a = AlgebraElement::basis(C, lattice[i]);
            CHECK(alpha_automorphism(C, alpha_automorphism(C, alpha_automorphism(C, a))) == a);
            for (size_t j = 0; j < lattice.size(); j += 5) {
                const AlgebraElement b = AlgebraElement::basis(C, lattice[j]);
                CHECK(alpha_automorphism(C, twisted_product(C, a, b)) ==
                      twisted_product(C, alpha_automorphism(C, a), alpha_automorphism(C, b)));
            }
        }
        CHECK_THROWS_AS(alpha_automorphism(C, lam(0, 0, 1)), std::invalid_argument);
    }

    SECTION("input validation") {
        const AlgebraContext plain(GroupSpec::preset_Zn(2), TwoCocycleForm(IntMat{{0, 1}, {-1, 0}}),
                                   Rational(-1, 2), 12);
        CHECK_THROWS_AS(alpha_trace_phi(plain, 1, 0), std::invalid_argument);
        CHECK_THROWS_AS(alpha_trace_phi(C, 3, 0), std::invalid_argument);
        CHECK_THROWS_AS(alpha_trace_phi(C, 1, 5), std::invalid_argument);
        CHECK_THROWS_AS(alpha_trace_phi(C, 1, 0).apply(lam(0, 0, 1)), std::invalid_argument);
    }
}

TEST_CASE("crossed-product traces from alpha^s traces") {
    const auto& C = ctx12();
    const GroupElement w = ge(0, 0, 1);

    SECTION("T built from phi^2_0 agrees with the deformed trace at w") {
        const TraceFunctional t = crossed_trace_T(C, alpha_trace_phi(C, 2, 0));
        CHECK(t.anchor == w);
        for (const auto& g : C.group.ball(2)) {
            const AlgebraElement a = AlgebraElement::basis(C, g);
            CHECK(t.apply(a) == trace_tau(C, w, xi_w, a));
        }
    }

    SECTION("T built from phi^1_0 lives on the w^2 component") {
        const TraceFunctional t = crossed_trace_T(C, alpha_trace_phi(C, 1, 0));
        CHECK(t.anchor == ge(0, 0, 2));
        for (const auto& g : C.group.ball(2)) {
            if (g.s == 2) continue;
            CHECK(t.apply(AlgebraElement::basis(C, g)).is_zero());
        }
        CHECK(t.apply(lam(0, 0, 2)) == Scalar::one(12));
    }

    SECTION("resulting functionals are tracial") {
        const TraceFunctional t = crossed_trace_T(C, alpha_trace_phi(C, 2, 1));
        const Report rep = verify_traciality(C, t, 1);
        INFO((rep.violations.empty() ? std::string() : rep.violations.front()));
        CHECK(rep.pass());
    }

    SECTION("functionals failing the alpha^s identity are rejected") {
        SubalgebraFunctional broken{"broken", 1,
                                    [](const AlgebraElement& a) -> Scalar {
                                        return a.coefficient(GroupElement{IntVec{0, 0}, 0}, 12);
                                    }};
        CHECK_THROWS_AS(crossed_trace_T(ctx12(), broken), std::domain_error);
    }
}
