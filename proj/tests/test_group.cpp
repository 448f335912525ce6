#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "twistalg/conjugacy.hpp"
#include "twistalg/group.hpp"
#include "twistalg/smith.hpp"

using namespace twistalg;

namespace {
IntMatrix to_mat(std::vector<std::vector<long long>> rows) {
    IntMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (long long x : rows[i]) m[i].push_back(to_int(x));
    }
    return m;
}

std::vector<Int> to_vec(std::vector<long long> v) {
    std::vector<Int> r;
    for (long long x : v) r.push_back(to_int(x));
    return r;
}

bool solves(const IntMatrix& a, const std::vector<Int>& x, const std::vector<Int>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        Int acc(0);
        for (std::size_t j = 0; j < x.size(); ++j) acc += a[i][j] * x[j];
        if (acc != b[i]) return false;
    }
    return true;
}
}  // namespace

TEST_CASE("determinant") {
    CHECK(determinant(to_mat({{2}})) == 2);
    CHECK(determinant(to_mat({{-2, -1}, {1, -1}})) == 3);
    CHECK(determinant(to_mat({{1, 2}, {2, 4}})) == 0);
    CHECK(determinant(to_mat({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}})) == 1);
    CHECK(determinant(to_mat({{3, 1, 0}, {1, 3, 1}, {0, 1, 3}})) == 21);
    CHECK_THROWS_AS(determinant(to_mat({{1, 2}})), std::invalid_argument);
}

TEST_CASE("smith normal form structure") {
    const IntMatrix a = to_mat({{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}});
    const SmithForm s = smith_normal_form(a);
    // D = U A V.
    IntMatrix ua(a.size(), std::vector<Int>(a[0].size(), Int(0)));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t j = 0; j < 3; ++j) ua[i][j] += s.u[i][k] * a[k][j];
    IntMatrix uav(a.size(), std::vector<Int>(a[0].size(), Int(0)));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t j = 0; j < 3; ++j) uav[i][j] += ua[i][k] * s.v[k][j];
    CHECK(uav == s.d);
    // Unimodular transforms.
    const Int du = determinant(s.u);
    const Int dv = determinant(s.v);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    // Off-diagonal zero, nonnegative diagonal with divisibility chain.
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (i != j) CHECK(s.d[i][j] == 0);
    CHECK(s.d[0][0] >= 0);
    for (std::size_t i = 0; i + 1 < 3; ++i) {
        if (s.d[i + 1][i + 1] != 0) {
            REQUIRE(s.d[i][i] != 0);
            CHECK(s.d[i + 1][i + 1] % s.d[i][i] == 0);
        }
    }
    // Invariant factors: gcd of entries 2, gcd of 2x2 minors 4, |det| 624.
    CHECK(s.d[0][0] == 2);
    CHECK(s.d[1][1] == 2);
    CHECK(s.d[2][2] == 156);
}

TEST_CASE("integer linear solve") {
    SECTION("unique solution") {
        const IntMatrix a = to_mat({{-2, -1}, {1, -1}});
        const auto sol = solve_integer_linear(a, to_vec({1, 1}));
        REQUIRE(sol.solvable);
        CHECK(sol.particular == to_vec({0, -1}));
        CHECK(sol.lattice.empty());
    }
    SECTION("non-integral unique solution") {
        const IntMatrix a = to_mat({{-2, -1}, {1, -1}});
        CHECK_FALSE(solve_integer_linear(a, to_vec({1, 0})).solvable);
    }
    SECTION("underdetermined") {
        const IntMatrix a = to_mat({{2, 3}});
        const auto sol = solve_integer_linear(a, to_vec({1}));
        REQUIRE(sol.solvable);
        CHECK(solves(a, sol.particular, to_vec({1})));
        REQUIRE(sol.lattice.size() == 1);
        CHECK(solves(a, sol.lattice[0], to_vec({0})));
        CHECK(!(sol.lattice[0][0] == 0 && sol.lattice[0][1] == 0));
    }
    SECTION("gcd obstruction") {
        CHECK_FALSE(solve_integer_linear(to_mat({{2, 4}}), to_vec({3})).solvable);
    }
    SECTION("inconsistent system") {
        CHECK_FALSE(solve_integer_linear(to_mat({{1, 1}, {1, 1}}), to_vec({1, 2})).solvable);
    }
    SECTION("zero matrix") {
        const auto sol = solve_integer_linear(to_mat({{0, 0}, {0, 0}}), to_vec({0, 0}));
        REQUIRE(sol.solvable);
        CHECK(sol.lattice.size() == 2);
    }
    SECTION("shape validation") {
        CHECK_THROWS_AS(solve_integer_linear(to_mat({{1, 2}}), to_vec({1, 2})),
                        std::invalid_argument);
    }
}

TEST_CASE("group presets and validation") {
    const GroupSpec g = GroupSpec::preset_Z2xZ3();
    CHECK(g.rank() == 2);
    CHECK(g.finite_order() == 3);
    CHECK(g.preset() == "Z2xZ3");
    CHECK(g.point_order(0) == 1);
    CHECK(g.point_order(1) == 3);
    CHECK(g.point_order(2) == 3);
    CHECK(g.mul_index(1, 2) == 0);
    CHECK(g.inv_index(1) == 2);

    const GroupSpec z3 = GroupSpec::preset_Zn(3);
    CHECK(z3.rank() == 3);
    CHECK(z3.finite_order() == 1);

    // Identity must come first.
    CHECK_THROWS_AS(GroupSpec(2, {{{-1, -1}, {1, 0}}}), std::invalid_argument);
    // Not closed: the order-4 rotation without its square.
    CHECK_THROWS_AS(GroupSpec(2, {GroupSpec::identity_mat(2), {{0, -1}, {1, 0}}}),
                    std::invalid_argument);
    // Not unimodular.
    CHECK_THROWS_AS(GroupSpec(2, {GroupSpec::identity_mat(2), {{2, 0}, {0, 1}}}),
                    std::invalid_argument);
    // Swap matrix fixes the diagonal: not free away from the origin.
    CHECK_THROWS_AS(GroupSpec(2, {GroupSpec::identity_mat(2), {{0, 1}, {1, 0}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(GroupSpec(0, {}), std::invalid_argument);
}

TEST_CASE("group arithmetic") {
    const GroupSpec g = GroupSpec::preset_Z2xZ3();
    const GroupElement e = g.identity();
    const GroupElement u = g.make({1, 0}, 0);
    const GroupElement w = g.make({0, 0}, 1);

    CHECK(g.multiply(u, w) == g.make({1, 0}, 1));
    // w u w^{-1} = (A(1,0), 0) = ((-1,1), 0).
    CHECK(g.multiply(g.multiply(w, u), g.inverse(w)) == g.make({-1, 1}, 0));
    CHECK(g.power(w, 3) == e);
    CHECK(g.power(g.multiply(u, w), 3) == e);
    CHECK(g.power(u, -2) == g.make({-2, 0}, 0));

    // Associativity and inverses on a sample.
    const auto dom = g.ball(1);
    for (std::size_t i = 0; i < dom.size(); i += 5) {
        for (std::size_t j = 1; j < dom.size(); j += 7) {
            for (std::size_t k = 2; k < dom.size(); k += 11) {
                const auto& a = dom[i];
                const auto& b = dom[j];
                const auto& c = dom[k];
                CHECK(g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c)));
            }
        }
        CHECK(g.multiply(dom[i], g.inverse(dom[i])) == e);
        CHECK(g.multiply(g.inverse(dom[i]), dom[i]) == e);
    }

    CHECK_THROWS_AS(g.make({1, 2, 3}, 0), std::invalid_argument);
    CHECK_THROWS_AS(g.make({0, 0}, 3), std::invalid_argument);
}

TEST_CASE("element orders") {
    const GroupSpec g = GroupSpec::preset_Z2xZ3();
    CHECK(g.element_order(g.identity()) == 1);
    CHECK_FALSE(g.element_order(g.make({1, 0}, 0)).has_value());
    CHECK(g.element_order(g.make({2, -1}, 1)) == 3);
    CHECK(g.element_order(g.make({5, 7}, 2)) == 3);
    CHECK(g.is_torsion(g.make({0, 0}, 1)));
    CHECK_FALSE(g.is_torsion(g.identity()));
    CHECK_FALSE(g.is_torsion(g.make({0, 1}, 0)));

    const GroupSpec z2 = GroupSpec::preset_Zn(2);
    CHECK_FALSE(z2.element_order(z2.make({0, 1}, 0)).has_value());
}

TEST_CASE("ball enumeration") {
    const GroupSpec g = GroupSpec::preset_Z2xZ3();
    const auto b2 = g.ball(2);
    CHECK(b2.size() == 25u * 3u);
    CHECK(std::is_sorted(b2.begin(), b2.end()));
    CHECK(std::set<GroupElement>(b2.begin(), b2.end()).size() == b2.size());
    CHECK(std::find(b2.begin(), b2.end(), g.identity()) != b2.end());

    const GroupSpec z1 = GroupSpec::preset_Zn(1);
    CHECK(z1.ball(0).size() == 1);
    CHECK_THROWS_AS(z1.ball(-1), std::invalid_argument);
}

TEST_CASE("conjugacy of torsion elements") {
    const GroupSpec g = GroupSpec::preset_Z2xZ3();
    const GroupElement w = g.make({0, 0}, 1);

    // ((a,b), 1) is conjugate to w exactly when a == b (mod 3).
    for (long long a = -4; a <= 4; ++a) {
        for (long long b = -4; b <= 4; ++b) {
            const bool same = same_conjugacy_class(g, w, g.make({a, b}, 1));
            CHECK(same == (((a - b) % 3) == 0));
        }
    }

    // Conjugation is symmetric and consistent with explicit conjugators.
    const GroupElement y = g.make({3, 0}, 1);
    CHECK(same_conjugacy_class(g, y, w));
    const GroupElement c = conjugator(g, w, y);
    CHECK(g.multiply(g.multiply(g.inverse(c), w), c) == y);
}

TEST_CASE("conjugacy of pure translations") {
    const GroupSpec g = GroupSpec::preset_Z2xZ3();
    const GroupElement u = g.make({1, 0}, 0);
    // The orbit of (1,0) under F is {(1,0), (-1,1), (0,-1)}.
    CHECK(same_conjugacy_class(g, u, g.make({-1, 1}, 0)));
    CHECK(same_conjugacy_class(g, u, g.make({0, -1}, 0)));
    CHECK_FALSE(same_conjugacy_class(g, u, g.make({0, 1}, 0)));
    CHECK_FALSE(same_conjugacy_class(g, u, g.make({0, 0}, 1)));

    // Translation part of the conjugator is irrelevant; the canonical
    // candidate has zero translation.
    const GroupElement c = conjugator(g, u, g.make({-1, 1}, 0));
    CHECK(c.v == IntVec{0, 0});
    CHECK(g.multiply(g.multiply(g.inverse(c), u), c) == g.make({-1, 1}, 0));
}

TEST_CASE("conjugator properties") {
    const GroupSpec g = GroupSpec::preset_Z2xZ3();
    const auto dom = g.ball(2);

    // g^{-1} x g = y for every conjugate pair in ball(2), both selectors.
    for (const auto& x : dom) {
        // conjugator(x, x) must be the identity (both selectors).
        CHECK(conjugator(g, x, x, ConjugatorSelector::lex_min) == g.identity());
        CHECK(conjugator(g, x, x, ConjugatorSelector::example_Z2Z3) == g.identity());
    }
    const GroupElement w = g.make({0, 0}, 1);
    for (const auto& y : dom) {
        if (!same_conjugacy_class(g, w, y)) continue;
        for (auto sel : {ConjugatorSelector::lex_min, ConjugatorSelector::example_Z2Z3}) {
            const GroupElement c = conjugator(g, w, y, sel);
            CHECK(g.multiply(g.multiply(g.inverse(c), w), c) == y);
        }
    }

    // The example selector takes the closed form with trivial point part.
    const GroupElement y = g.make({2, -1}, 1);
    const GroupElement c = conjugator(g, w, y, ConjugatorSelector::example_Z2Z3);
    CHECK(c == g.make({-1, 0}, 0));  // ((b-a)/3, (-a-2b)/3) = (-1, 0)

    CHECK_THROWS_AS(conjugator(g, w, g.make({1, 0}, 1)), std::domain_error);

    CHECK(selector_from_string("lex_min") == ConjugatorSelector::lex_min);
    CHECK(selector_from_string("example_Z2Z3") == ConjugatorSelector::example_Z2Z3);
    CHECK_THROWS_AS(selector_from_string("bogus"), std::invalid_argument);
}

TEST_CASE("centralizers of torsion elements") {
    const GroupSpec g = GroupSpec::preset_Z2xZ3();
    const GroupElement w = g.make({0, 0}, 1);
    const auto cw = centralizer_of_torsion(g, w);
    CHECK(cw == std::vector<GroupElement>{g.make({0, 0}, 0), g.make({0, 0}, 1), g.make({0, 0}, 2)});

    // C(uw) = <uw>.
    const GroupElement uw = g.make({1, 0}, 1);
    const auto cuw = centralizer_of_torsion(g, uw);
    REQUIRE(cuw.size() == 3);
    for (const auto& h : cuw) {
        CHECK(g.multiply(h, uw) == g.multiply(uw, h));
    }
    CHECK(std::find(cuw.begin(), cuw.end(), g.power(uw, 2)) != cuw.end());

    CHECK_THROWS_AS(centralizer_of_torsion(g, g.identity()), std::invalid_argument);
    CHECK_THROWS_AS(centralizer_of_torsion(g, g.make({1, 0}, 0)), std::domain_error);
}

TEST_CASE("conjugacy classes in a ball") {
    const GroupSpec g = GroupSpec::preset_Z2xZ3();
    const auto classes = conjugacy_classes_in_ball(g, 1);

    // Point-part-1 members split into the three residue classes of a-b mod 3.
    int with_point_1 = 0;
    for (const auto& cls : classes) {
        if (cls.representative.s == 1) ++with_point_1;
        // representative is the lex-min member
        CHECK(cls.representative == *std::min_element(cls.members.begin(), cls.members.end()));
        for (const auto& m : cls.members) {
            CHECK(same_conjugacy_class(g, cls.representative, m));
        }
    }
    CHECK(with_point_1 == 3);

    // Total membership covers the ball exactly.
    std::size_t total = 0;
    for (const auto& cls : classes) total += cls.members.size();
    CHECK(total == g.ball(1).size());
}
