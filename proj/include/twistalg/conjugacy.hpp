#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "twistalg/group.hpp"

namespace twistalg {

// Conventions: conjugation is x^g = g^{-1} x g, and a conjugator from x to y
// is an element g with g^{-1} x g = y.  Writing x = (v_x, s_x) and
// g = (m, f), the equation g^{-1} x g = y splits into
//     s_y = f^{-1} s_x f      and      (M_{s_x} - I) m = f v_y - v_x.
// For torsion x the matrix M_{s_x} - I is invertible over Q (the point group
// acts freely away from the origin), so m is unique per admissible f and the
// only question is integrality.

enum class ConjugatorSelector { lex_min, example_Z2Z3 };

inline ConjugatorSelector selector_from_string(const std::string& name) {
    if (name == "lex_min") return ConjugatorSelector::lex_min;
    if (name == "example_Z2Z3") return ConjugatorSelector::example_Z2Z3;
    throw std::invalid_argument("unknown conjugator selector '" + name + "'");
}

inline std::string selector_name(ConjugatorSelector sel) {
    return sel == ConjugatorSelector::lex_min ? "lex_min" : "example_Z2Z3";
}

namespace detail {

// Solves (M_s - I) m = rhs over the integers.  Unique rational solution is
// guaranteed for s != 0; returns nothing when it is not integral.
inline std::optional<IntVec> conjugator_translation(const GroupSpec& g, int s, const IntVec& rhs) {
    const int n = g.rank();
    IntMatrix mat(n, std::vector<Int>(n));
    const IntMat& m = g.matrix(s);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) mat[i][j] = to_int(m[i][j]) - Int(i == j ? 1 : 0);
    }
    std::vector<Int> b(n);
    for (int i = 0; i < n; ++i) b[i] = to_int(rhs[i]);
    const IntegerSolution sol = solve_integer_linear(mat, b);
    if (!sol.solvable) return std::nullopt;
    IntVec out(n);
    for (int i = 0; i < n; ++i) {
        if (!sol.particular[i].fits_slong_p()) {
            throw std::overflow_error("conjugator_translation: solution exceeds machine range");
        }
        out[i] = sol.particular[i].get_si();
    }
    return out;
}

inline IntVec vec_sub(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

}  // namespace detail

// All conjugators from x to y of the canonical shape: for torsion x the full
// (finite) set of solutions modulo nothing -- one candidate per admissible f;
// for pure translations the translation part of a conjugator is irrelevant,
// so the canonical candidates are (0, f).
inline std::vector<GroupElement> conjugator_candidates(const GroupSpec& g, const GroupElement& x,
                                                       const GroupElement& y) {
    std::vector<GroupElement> out;
    for (int f = 0; f < g.finite_order(); ++f) {
        if (g.mul_index(g.inv_index(f), g.mul_index(x.s, f)) != y.s) continue;
        const IntVec rhs = detail::vec_sub(g.apply(f, y.v), x.v);
        if (x.s == 0) {
            if (std::all_of(rhs.begin(), rhs.end(), [](long long c) { return c == 0; })) {
                out.push_back(GroupElement{IntVec(g.rank(), 0), f});
            }
            continue;
        }
        if (auto m = detail::conjugator_translation(g, x.s, rhs)) {
            out.push_back(GroupElement{std::move(*m), f});
        }
    }
    return out;
}

inline bool same_conjugacy_class(const GroupSpec& g, const GroupElement& x, const GroupElement& y) {
    return !conjugator_candidates(g, x, y).empty();
}

namespace detail {

inline long long one_norm(const IntVec& v) {
    long long n = 0;
    for (long long c : v) n += std::llabs(c);
    return n;
}

// lex_min order: 1-norm of the translation part, then the translation part
// lexicographically, then the point-part index.
inline bool lex_min_less(const GroupElement& a, const GroupElement& b) {
    const long long na = one_norm(a.v);
    const long long nb = one_norm(b.v);
    if (na != nb) return na < nb;
    if (a.v != b.v) return a.v < b.v;
    return a.s < b.s;
}

}  // namespace detail

// Deterministic conjugator from x to y.  Throws std::domain_error when x and
// y are not conjugate.  Both selectors pick the identity for y == x.
inline GroupElement conjugator(const GroupSpec& g, const GroupElement& x, const GroupElement& y,
                               ConjugatorSelector sel = ConjugatorSelector::lex_min) {
    if (sel == ConjugatorSelector::example_Z2Z3 && g.preset() == "Z2xZ3" &&
        x == g.make({0, 0}, 1) && y.s == 1) {
        const long long a = y.v[0];
        const long long b = y.v[1];
        if ((a - b) % 3 == 0) {
            // Closed-form conjugator with trivial point part:
            // m = ((b - a)/3, (-a - 2b)/3).
            long long m0 = (b - a) / 3;
            long long m1 = -a - 2 * b;
            if (m1 % 3 != 0) throw std::logic_error("conjugator: inconsistent closed form");
            return g.make({m0, m1 / 3}, 0);
        }
    }
    const std::vector<GroupElement> cands = conjugator_candidates(g, x, y);
    if (cands.empty()) {
        throw std::domain_error("conjugator: " + to_string(x) + " and " + to_string(y) +
                                " are not conjugate");
    }
    return *std::min_element(cands.begin(), cands.end(), detail::lex_min_less);
}

// Centralizer C_G(x) of a torsion element x != e.  This is a finite set: the
// translation part of a centralizing element is pinned by its point part.
inline std::vector<GroupElement> centralizer_of_torsion(const GroupSpec& g, const GroupElement& x) {
    if (x == g.identity()) {
        throw std::invalid_argument("centralizer_of_torsion: x must not be the identity");
    }
    if (!g.element_order(x).has_value()) {
        throw std::domain_error("centralizer_of_torsion: " + to_string(x) + " has infinite order");
    }
    std::vector<GroupElement> out;
    for (int f = 0; f < g.finite_order(); ++f) {
        if (g.mul_index(f, x.s) != g.mul_index(x.s, f)) continue;
        const IntVec rhs = detail::vec_sub(g.apply(f, x.v), x.v);
        if (auto m = detail::conjugator_translation(g, x.s, rhs)) {
            out.push_back(GroupElement{std::move(*m), f});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Partition of ball(radius) into conjugacy classes.  Members inherit the
// deterministic ball order, which is the natural element order, so the first
// member of each class is its lex-min representative.
struct ConjugacyClassInfo {
    GroupElement representative;
    std::vector<GroupElement> members;
};

inline std::vector<ConjugacyClassInfo> conjugacy_classes_in_ball(const GroupSpec& g, int radius) {
    std::vector<ConjugacyClassInfo> classes;
    for (const GroupElement& e : g.ball(radius)) {
        bool placed = false;
        for (auto& cls : classes) {
            if (same_conjugacy_class(g, cls.representative, e)) {
                cls.members.push_back(e);
                placed = true;
                break;
            }
        }
        if (!placed) classes.push_back(ConjugacyClassInfo{e, {e}});
    }
    std::sort(classes.begin(), classes.end(),
              [](const ConjugacyClassInfo& a, const ConjugacyClassInfo& b) {
                  return a.representative < b.representative;
              });
    return classes;
}

}  // namespace twistalg
