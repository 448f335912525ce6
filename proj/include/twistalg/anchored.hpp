#pragma once

#include "twistalg/chain.hpp"

namespace twistalg {

// Chains of the normalized standard complex of the centralizer C_G(x):
// degree n terms are n-tuples of centralizer elements, and any tuple
// containing the identity is zero.
class StandardChain {
public:
    explicit StandardChain(int degree) : degree_(degree) {}

    static StandardChain zero(int degree) { return StandardChain(degree); }

    int degree() const { return degree_; }

    const std::map<GroupTuple, Scalar>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    void add_term(const GroupTuple& t, const Scalar& c) {
        if (static_cast<int>(t.size()) != degree_) {
            throw std::invalid_argument("StandardChain: tuple length does not match the degree");
        }
        if (c.is_zero()) return;
        for (const auto& g : t) {
            if (is_identity_element(g)) return;
        }
        auto [it, inserted] = terms_.emplace(t, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend StandardChain operator+(const StandardChain& a, const StandardChain& b) {
        if (a.degree_ != b.degree_) {
            throw std::invalid_argument("StandardChain: cannot add different degrees");
        }
        StandardChain r = a;
        for (const auto& [t, c] : b.terms_) r.add_term(t, c);
        return r;
    }

    StandardChain operator-() const {
        StandardChain r(degree_);
        for (const auto& [t, c] : terms_) r.terms_.emplace(t, -c);
        return r;
    }

    friend StandardChain operator-(const StandardChain& a, const StandardChain& b) {
        return a + (-b);
    }

    friend bool operator==(const StandardChain& a, const StandardChain& b) {
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const StandardChain& a, const StandardChain& b) { return !(a == b); }

private:
    int degree_;
    std::map<GroupTuple, Scalar> terms_;
};

// Everything anchored at one conjugacy class Ad(x): the conjugator choice
// g^y (g^y y (g^y)^{-1} = x, cached per class member), the centralizer, the
// averaged potential psi on C_G(x), and the derived cochains xi and theta.
//
// The anchor is either the identity (psi = xi = 0, the class is {e}) or a
// torsion element with a nontrivial point part (centralizer finite by the
// free-away-from-origin condition).
class ClassContext {
public:
    ClassContext(AlgebraContext alg, GroupElement anchor,
                 ConjugatorSelector sel = ConjugatorSelector::lex_min)
        : alg_(std::move(alg)), x_(std::move(anchor)), sel_(sel) {
        is_e_ = is_identity_element(x_);
        if (!is_e_) {
            if (x_.s == 0) {
                throw std::invalid_argument(
                    "ClassContext: anchor must be the identity or have a nontrivial point part");
            }
            cent_ = centralizer_of_torsion(alg_.group, x_);
            Rational acc(0);
            for (const auto& h : cent_) acc += alg_.omega0(h, x_);
            psi_at_anchor_ = acc / Rational(static_cast<long>(cent_.size()));
        }
    }

    const AlgebraContext& algebra() const { return alg_; }
    const GroupElement& anchor() const { return x_; }
    ConjugatorSelector selector() const { return sel_; }
    bool anchor_is_identity() const { return is_e_; }

    const std::vector<GroupElement>& centralizer() const {
        if (is_e_) {
            throw std::domain_error("ClassContext: the centralizer of the identity is the "
                                    "whole group and is not enumerated");
        }
        return cent_;
    }

    bool on_class(const GroupElement& y) const {
        if (is_e_) return is_identity_element(y);
        if (y.s == 0) return false;
        return same_conjugacy_class(alg_.group, x_, y);
    }

    // The chosen g^y with (g^y)^{-1} x g^y = y, equivalently g^y y (g^y)^{-1} = x.
    const GroupElement& conjugator_to(const GroupElement& y) const {
        auto it = conj_cache_.find(y);
        if (it != conj_cache_.end()) return it->second;
        GroupElement g = conjugator(alg_.group, x_, y, sel_);
        return conj_cache_.emplace(y, std::move(g)).first->second;
    }

    // Shapiro average over the centralizer: psi(g) = (1/|C|) sum_h omega0(h, g);
    // identically zero for the identity anchor.
    Rational psi(const GroupElement& g) const {
        if (is_e_) return Rational(0);
        Rational acc(0);
        for (const auto& h : cent_) acc += alg_.omega0(h, g);
        return acc / Rational(static_cast<long>(cent_.size()));
    }

    Rational psi_at_anchor() const { return psi_at_anchor_; }

    // xi(g0) = psi(x) + omega0^a(g^{g0} g0, (g^{g0})^{-1}) on Ad(x), else 0.
    Rational xi(const GroupElement& g0) const {
        if (is_e_ || !on_class(g0)) return Rational(0);
        const GroupElement& gy = conjugator_to(g0);
        const GroupElement a = alg_.group.multiply(gy, g0);
        const GroupElement b = alg_.group.inverse(gy);
        return psi_at_anchor_ + alg_.omega0(a, b) - alg_.omega0(b, a);
    }

    // theta(g0,g1) = psi(g^{y1} g1 (g^{y0})^{-1}) + omega0(g1, (g^{y0})^{-1})
    //              - omega0((g^{y1})^{-1}, g^{y1} g1 (g^{y0})^{-1}),
    // with y0 = g0 g1, y1 = g1 g0; zero when g0 g1 is off the class.
    Rational theta(const GroupElement& g0, const GroupElement& g1) const {
        return theta_with(g0, g1, [this](const GroupElement& g) -> Rational { return psi(g); });
    }

    Rational theta_with(const GroupElement& g0, const GroupElement& g1,
                        const std::function<Rational(const GroupElement&)>& psi_fn) const {
        const GroupElement y0 = alg_.group.multiply(g0, g1);
        if (!on_class(y0)) return Rational(0);
        const GroupElement y1 = alg_.group.multiply(g1, g0);
        const GroupElement& gy0 = conjugator_to(y0);
        const GroupElement& gy1 = conjugator_to(y1);
        const GroupElement gy0i = alg_.group.inverse(gy0);
        const GroupElement arg = alg_.group.multiply(alg_.group.multiply(gy1, g1), gy0i);
        return psi_fn(arg) + alg_.omega0(g1, gy0i) -
               alg_.omega0(alg_.group.inverse(gy1), arg);
    }

    Cochain xi_cochain() const {
        ClassContext cc = *this;
        return Cochain{0, alg_.cyclotomic_order, x_,
                       [cc](const GroupTuple& t) -> Scalar {
                           return Scalar::from_rational(cc.xi(t[0]), cc.alg_.cyclotomic_order);
                       }};
    }

    Cochain theta_cochain() const {
        ClassContext cc = *this;
        return Cochain{1, alg_.cyclotomic_order, x_,
                       [cc](const GroupTuple& t) -> Scalar {
                           return Scalar::from_rational(cc.theta(t[0], t[1]),
                                                        cc.alg_.cyclotomic_order);
                       }};
    }

    // The deformed trace as a degree-0 cochain:
    // tau^x(g0) = q^{rate * xi(g0)} on Ad(x), else 0.
    Cochain trace_cochain() const {
        ClassContext cc = *this;
        return Cochain{0, alg_.cyclotomic_order, x_,
                       [cc](const GroupTuple& t) -> Scalar {
                           if (!cc.on_class(t[0])) return Scalar::zero(cc.alg_.cyclotomic_order);
                           return Scalar::q_power(cc.alg_.twist_rate * cc.xi(t[0]),
                                                  cc.alg_.cyclotomic_order);
                       }};
    }

    // The rational class correction as a plain function (for trace_tau).
    std::function<Rational(const GroupElement&)> xi_function() const {
        ClassContext cc = *this;
        return [cc](const GroupElement& g) -> Rational { return cc.xi(g); };
    }

private:
    AlgebraContext alg_;
    GroupElement x_;
    ConjugatorSelector sel_;
    bool is_e_ = false;
    std::vector<GroupElement> cent_;
    Rational psi_at_anchor_ = Rational(0);
    mutable std::map<GroupElement, GroupElement> conj_cache_;
};

namespace detail {

// ys[i] = g_i g_{i+1} ... g_n g_0 ... g_{i-1} (all cyclic rotations' products).
inline std::vector<GroupElement> cyclic_products(const GroupSpec& g, const GroupTuple& t) {
    const int n = static_cast<int>(t.size()) - 1;
    std::vector<GroupElement> ys;
    ys.reserve(t.size());
    for (int i = 0; i <= n; ++i) {
        GroupElement acc = g.identity();
        for (int u = 0; u <= n; ++u) acc = g.multiply(acc, t[(i + u) % (n + 1)]);
        ys.push_back(acc);
    }
    return ys;
}

}  // namespace detail

// Xi: C^x_n(A) -> C_n(C_G(x)),
//   g_0 x ... x g_n  ->  (g^{y_1} g_1 (g^{y_2})^{-1}, ..., g^{y_n} g_n (g^{y_0})^{-1}),
// where y_i = g_i ... g_n g_0 ... g_{i-1}.  Every entry lands in C_G(x).
inline StandardChain xi_map(const ClassContext& cc, const Chain& c) {
    const GroupSpec& g = cc.algebra().group;
    StandardChain out(c.degree());
    for (const auto& [t, sc] : c.terms()) {
        const int n = static_cast<int>(t.size()) - 1;
        const auto ys = detail::cyclic_products(g, t);
        if (!cc.on_class(ys[0])) {
            throw std::invalid_argument("xi_map: tuple product is off the anchored class");
        }
        GroupTuple nt;
        nt.reserve(n);
        for (int i = 1; i <= n; ++i) {
            const GroupElement& gyi = cc.conjugator_to(ys[i]);
            const GroupElement& gyi1 = cc.conjugator_to(ys[(i + 1) % (n + 1)]);
            const GroupElement entry =
                g.multiply(g.multiply(gyi, t[i]), g.inverse(gyi1));
            if (g.multiply(entry, cc.anchor()) != g.multiply(cc.anchor(), entry)) {
                throw std::logic_error("xi_map: image entry does not centralize the anchor");
            }
            nt.push_back(entry);
        }
        out.add_term(nt, sc);
    }
    return out;
}

// Upsilon: C_n(C_G(x)) -> C^x_n(A),
//   (g_1, ..., g_n)  ->  (g_1...g_n)^{-1} x  (x)  g_1 (x) ... (x) g_n.
inline Chain upsilon_map(const ClassContext& cc, const StandardChain& st) {
    const GroupSpec& g = cc.algebra().group;
    Chain out(st.degree());
    for (const auto& [t, sc] : st.terms()) {
        GroupElement acc = g.identity();
        for (const auto& gi : t) {
            if (g.multiply(gi, cc.anchor()) != g.multiply(cc.anchor(), gi)) {
                throw std::invalid_argument(
                    "upsilon_map: tuple entry is outside the centralizer of the anchor");
            }
            acc = g.multiply(acc, gi);
        }
        GroupTuple nt;
        nt.reserve(t.size() + 1);
        nt.push_back(g.multiply(g.inverse(acc), cc.anchor()));
        nt.insert(nt.end(), t.begin(), t.end());
        out.add_term(nt, sc);
    }
    return out;
}

// The boundary of the standard complex (transpose of the group-cochain
// differential): d(g_1,...,g_k) = (g_2,...,g_k)
//   + sum_i (-1)^i (g_1,...,g_{i-1} g_i,...,g_k) + (-1)^k (g_1,...,g_{k-1}).
inline StandardChain standard_d(const GroupSpec& g, const StandardChain& st) {
    StandardChain out(st.degree() - 1);
    for (const auto& [t, sc] : st.terms()) {
        const int k = static_cast<int>(t.size());
        if (k == 0) continue;
        out.add_term(GroupTuple(t.begin() + 1, t.end()), sc);
        for (int i = 1; i < k; ++i) {
            GroupTuple nt;
            nt.reserve(t.size() - 1);
            nt.insert(nt.end(), t.begin(), t.begin() + (i - 1));
            nt.push_back(g.multiply(t[i - 1], t[i]));
            nt.insert(nt.end(), t.begin() + i + 1, t.end());
            out.add_term(nt, i % 2 ? -sc : sc);
        }
        out.add_term(GroupTuple(t.begin(), t.end() - 1), k % 2 ? -sc : sc);
    }
    return out;
}

// The chain homotopy h_n = sum_{i=0}^{n} (-1)^{n+i+1} theta_i implementing
// b h + h b = id - Upsilon Xi on anchored chains, where
//   theta_i(g_0 x ... x g_n) = (g^{y_0} g_0, g_1, ..., g_{n-i},
//       (g^{y_{n-i+1}})^{-1},
//       g^{y_{n-i+1}} g_{n-i+1} (g^{y_{n-i+2}})^{-1}, ..., g^{y_n} g_n (g^{y_0})^{-1}).
inline Chain homotopy_h(const ClassContext& cc, const Chain& c) {
    const GroupSpec& g = cc.algebra().group;
    Chain out(c.degree() + 1);
    if (c.degree() < 0) return out;
    for (const auto& [t, sc] : c.terms()) {
        const int n = static_cast<int>(t.size()) - 1;
        const auto ys = detail::cyclic_products(g, t);
        if (!cc.on_class(ys[0])) {
            throw std::invalid_argument("homotopy_h: tuple product is off the anchored class");
        }
        std::vector<GroupElement> gys;
        gys.reserve(ys.size());
        for (const auto& y : ys) gys.push_back(cc.conjugator_to(y));
        for (int i = 0; i <= n; ++i) {
            GroupTuple nt;
            nt.reserve(t.size() + 1);
            nt.push_back(g.multiply(gys[0], t[0]));
            for (int u = 1; u <= n - i; ++u) nt.push_back(t[u]);
            const int k0 = (n - i + 1) % (n + 1);
            nt.push_back(g.inverse(gys[k0]));
            for (int j = n - i + 1; j <= n; ++j) {
                const GroupElement& gyj = gys[j];
                const GroupElement& gyj1 = gys[(j + 1) % (n + 1)];
                nt.push_back(g.multiply(g.multiply(gyj, t[j]), g.inverse(gyj1)));
            }
            out.add_term(nt, (n + i + 1) % 2 ? -sc : sc);
        }
    }
    return out;
}

// Degree-0 and degree-2 components of the finite-centralizer monodromy
// identity:  theta(e, g0) = xi(g0) on ball(radius_B), and
//   theta(g0 g1, g2) - theta(g0, g1 g2) + theta(g2 g0, g1)
//     = omega0(g1, g2) * [g0 g1 g2 in Ad(x)]  on ball(radius_b)^3.
inline Report verify_monodromy_finite(const ClassContext& cc, int radius_B, int radius_b) {
    const GroupSpec& g = cc.algebra().group;
    Report rep{"monodromy:" + to_string(cc.anchor()), radius_b, {}};
    const GroupElement e = g.identity();
    for (const auto& g0 : g.ball(radius_B)) {
        if (cc.theta(e, g0) != cc.xi(g0)) {
            rep.flag("degree-0 component fails at " + to_string(g0));
        }
    }
    const auto dom = g.ball(radius_b);
    for (const auto& g0 : dom) {
        for (const auto& g1 : dom) {
            for (const auto& g2 : dom) {
                const Rational lhs = cc.theta(g.multiply(g0, g1), g2) -
                                     cc.theta(g0, g.multiply(g1, g2)) +
                                     cc.theta(g.multiply(g2, g0), g1);
                const GroupElement prod = g.multiply(g.multiply(g0, g1), g2);
                const Rational rhs =
                    cc.on_class(prod) ? cc.algebra().omega0(g1, g2) : Rational(0);
                if (lhs != rhs) {
                    rep.flag("degree-2 component fails at (" + to_string(g0) + ", " +
                             to_string(g1) + ", " + to_string(g2) + ")");
                }
            }
        }
    }
    return rep;
}

// Generalized form: with a supplied potential psi on C_G(x) and a 2-form
// omega~ on C_G(x), the degree-2 component acquires the cup-action term
//   - omega~(g^{y_1} g_1 (g^{y_2})^{-1}, g^{y_2} g_2 (g^{y_0})^{-1}).
// Precondition (checked first, violations reported): d psi = omega0 - omega~
// on centralizer pairs.
inline Report verify_monodromy_general(
    const ClassContext& cc,
    const std::function<Rational(const GroupElement&, const GroupElement&)>& omega_tilde,
    const std::function<Rational(const GroupElement&)>& psi_fn, int radius) {
    const GroupSpec& g = cc.algebra().group;
    Report rep{"monodromy_general:" + to_string(cc.anchor()), radius, {}};

    std::vector<GroupElement> cent_dom;
    if (cc.anchor_is_identity()) {
        cent_dom = g.ball(radius);
    } else {
        cent_dom = cc.centralizer();
    }
    for (const auto& a : cent_dom) {
        for (const auto& b : cent_dom) {
            const Rational dpsi = psi_fn(b) - psi_fn(g.multiply(a, b)) + psi_fn(a);
            if (dpsi != cc.algebra().omega0(a, b) - omega_tilde(a, b)) {
                rep.flag("psi precondition fails at (" + to_string(a) + ", " + to_string(b) +
                         ")");
            }
        }
    }
    if (!rep.pass()) return rep;

    const auto dom = g.ball(radius);
    for (const auto& g0 : dom) {
        for (const auto& g1 : dom) {
            for (const auto& g2 : dom) {
                const Rational lhs = cc.theta_with(g.multiply(g0, g1), g2, psi_fn) -
                                     cc.theta_with(g0, g.multiply(g1, g2), psi_fn) +
                                     cc.theta_with(g.multiply(g2, g0), g1, psi_fn);
                Rational rhs(0);
                const GroupTuple t{g0, g1, g2};
                const auto ys = detail::cyclic_products(g, t);
                if (cc.on_class(ys[0])) {
                    const GroupElement al =
                        g.multiply(g.multiply(cc.conjugator_to(ys[1]), g1),
                                   g.inverse(cc.conjugator_to(ys[2])));
                    const GroupElement be =
                        g.multiply(g.multiply(cc.conjugator_to(ys[2]), g2),
                                   g.inverse(cc.conjugator_to(ys[0])));
                    rhs = cc.algebra().omega0(g1, g2) - omega_tilde(al, be);
                }
                if (lhs != rhs) {
                    rep.flag("generalized identity fails at (" + to_string(g0) + ", " +
                             to_string(g1) + ", " + to_string(g2) + ")");
                }
            }
        }
    }
    return rep;
}

}  // namespace twistalg
