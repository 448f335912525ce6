#pragma once

#include <functional>
#include <map>

#include "twistalg/cocycle.hpp"
#include "twistalg/conjugacy.hpp"
#include "twistalg/scalar.hpp"

namespace twistalg {

// Everything needed to work inside one twisted group algebra: the group, the
// integral 2-cocycle form, the twist rate r0 (the product twist is
// omega^theta(g,h) = q^(r0 * omega0(g,h))), and the cyclotomic order of the
// scalar coefficients.  The form is validated against the group on
// construction.
struct AlgebraContext {
    GroupSpec group;
    TwoCocycleForm form;
    Rational twist_rate;
    int cyclotomic_order;

    AlgebraContext(GroupSpec g, TwoCocycleForm f, Rational rate, int order)
        : group(std::move(g)),
          form(std::move(f)),
          twist_rate(std::move(rate)),
          cyclotomic_order(order) {
        form.validate_for(group);
        (void)CyclotomicContext::get(order);
    }

    // The worked example: Z^2 x| Z/3, symplectic beta, twist rate -1/2.
    static AlgebraContext example_Z2xZ3(int order = 12) {
        return AlgebraContext(GroupSpec::preset_Z2xZ3(), TwoCocycleForm::preset_symplectic(),
                              Rational(-1, 2), order);
    }

    Rational omega0(const GroupElement& a, const GroupElement& b) const {
        return eval_omega0(group, form, a, b);
    }

    Rational omega_exponent(const GroupElement& a, const GroupElement& b) const {
        return twist_rate * omega0(a, b);
    }

    // omega^theta(g,h) as a Scalar (a single q-power).
    Scalar omega_theta(const GroupElement& a, const GroupElement& b) const {
        return Scalar::q_power(omega_exponent(a, b), cyclotomic_order);
    }
};

// An element of the twisted group algebra: a finitely supported map
// GroupElement -> Scalar in canonical sparse form (no zero coefficients).
class AlgebraElement {
public:
    AlgebraElement() = default;

    static AlgebraElement zero() { return AlgebraElement(); }

    static AlgebraElement basis(const AlgebraContext& ctx, const GroupElement& g) {
        AlgebraElement a;
        a.add_term(ctx.group.make(g.v, g.s), Scalar::one(ctx.cyclotomic_order));
        return a;
    }

    static AlgebraElement unit(const AlgebraContext& ctx) { return basis(ctx, ctx.group.identity()); }

    const std::map<GroupElement, Scalar>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    Scalar coefficient(const GroupElement& g, int order) const {
        auto it = terms_.find(g);
        return it == terms_.end() ? Scalar::zero(order) : it->second;
    }

    void add_term(const GroupElement& g, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(g, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
        AlgebraElement r = a;
        for (const auto& [g, c] : b.terms_) r.add_term(g, c);
        return r;
    }

    AlgebraElement operator-() const {
        AlgebraElement r;
        for (const auto& [g, c] : terms_) r.terms_.emplace(g, -c);
        return r;
    }

    friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
        return a + (-b);
    }

    AlgebraElement scaled(const Scalar& s) const {
        AlgebraElement r;
        for (const auto& [g, c] : terms_) r.add_term(g, c * s);
        return r;
    }

    AlgebraElement scaled(const Rational& s) const {
        AlgebraElement r;
        for (const auto& [g, c] : terms_) r.add_term(g, c.scaled(s));
        return r;
    }

    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const AlgebraElement& a, const AlgebraElement& b) { return !(a == b); }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [g, c] : terms_) {
            if (!s.empty()) s += "  +  ";
            s += "(" + c.to_string() + ")*L" + twistalg::to_string(g);
        }
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const AlgebraElement& a) {
        return os << a.to_string();
    }

private:
    std::map<GroupElement, Scalar> terms_;
};

namespace detail {

inline void check_element_config(const AlgebraContext& ctx, const AlgebraElement& a,
                                 const char* who) {
    for (const auto& [g, c] : a.terms()) {
        if (static_cast<int>(g.v.size()) != ctx.group.rank() || g.s < 0 ||
            g.s >= ctx.group.finite_order()) {
            throw std::invalid_argument(std::string(who) +
                                        ": element does not belong to this group configuration");
        }
        if (c.order() != ctx.cyclotomic_order) {
            throw std::invalid_argument(std::string(who) +
                                        ": element uses a different cyclotomic order");
        }
    }
}

// Inverse of a single-term Scalar  c * q^r  with c = +/- zeta_N^k.
inline Scalar invert_unit_scalar(const Scalar& s, const char* who) {
    if (s.terms().size() != 1) {
        throw std::domain_error(std::string(who) + ": expected a single-term unit scalar");
    }
    const int order = s.order();
    const auto& [exp, coeff] = *s.terms().begin();
    for (int sign = 0; sign < 2; ++sign) {
        for (long long f = 0; f < order; ++f) {
            Cyclotomic probe = root_of_unity(order, f);
            if (sign) probe = -probe;
            if (coeff == probe) {
                Cyclotomic inv = root_of_unity(order, (order - f) % order);
                if (sign) inv = -inv;
                return Scalar::from_cyclotomic(inv) * Scalar::q_power(-exp, order);
            }
        }
    }
    throw std::domain_error(std::string(who) + ": scalar is not a root-of-unity monomial");
}

}  // namespace detail

// a *_theta b: the bilinear extension of lambda_g lambda_h =
// omega^theta(g,h) lambda_{gh}.
inline AlgebraElement twisted_product(const AlgebraContext& ctx, const AlgebraElement& a,
                                      const AlgebraElement& b) {
    detail::check_element_config(ctx, a, "twisted_product");
    detail::check_element_config(ctx, b, "twisted_product");
    AlgebraElement r;
    for (const auto& [g, cg] : a.terms()) {
        for (const auto& [h, ch] : b.terms()) {
            const Scalar tw = ctx.omega_theta(g, h);
            r.add_term(ctx.group.multiply(g, h), cg * ch * tw);
        }
    }
    return r;
}

// The involution: lambda_g* = omega^theta(g, g^{-1})^{-1} lambda_{g^{-1}},
// coefficients complex-conjugated.  Chosen so that every lambda_g is unitary
// (lambda_g lambda_g* = 1).
inline AlgebraElement involution(const AlgebraContext& ctx, const AlgebraElement& a) {
    detail::check_element_config(ctx, a, "involution");
    AlgebraElement r;
    for (const auto& [g, c] : a.terms()) {
        const GroupElement gi = ctx.group.inverse(g);
        const Scalar corr = Scalar::q_power(-ctx.omega_exponent(g, gi), ctx.cyclotomic_order);
        r.add_term(gi, c.conjugate() * corr);
    }
    return r;
}

// tau^x_{omega^theta}(sum c_g lambda_g) = sum_{g in Ad(x)} c_g q^{r0 xi(g)}.
inline Scalar trace_tau(const AlgebraContext& ctx, const GroupElement& x,
                        const std::function<Rational(const GroupElement&)>& xi,
                        const AlgebraElement& a) {
    detail::check_element_config(ctx, a, "trace_tau");
    Scalar acc = Scalar::zero(ctx.cyclotomic_order);
    for (const auto& [g, c] : a.terms()) {
        if (!same_conjugacy_class(ctx.group, x, g)) continue;
        acc += c * Scalar::q_power(ctx.twist_rate * xi(g), ctx.cyclotomic_order);
    }
    return acc;
}

// A named trace-like functional with its class anchor, for tables and
// verification sweeps.
struct TraceFunctional {
    std::string name;
    GroupElement anchor;
    std::function<Scalar(const AlgebraElement&)> apply;
};

inline TraceFunctional make_trace_tau(const AlgebraContext& ctx, const GroupElement& x,
                                      std::function<Rational(const GroupElement&)> xi,
                                      std::string name = "") {
    if (name.empty()) name = "tau^" + to_string(x);
    return TraceFunctional{std::move(name), x,
                           [ctx, x, xi](const AlgebraElement& a) -> Scalar {
                               return trace_tau(ctx, x, xi, a);
                           }};
}

// The spectral projection of the unitary W = z lambda_gen:
//   Q_j = (1/p) sum_{k=0}^{p-1} zeta_p^{jk} W^k        (twisted powers)
// where the z-correction makes W^p = 1 exactly: with the accumulated twist
// c = prod_{k=1}^{p-1} omega^theta(gen^k, gen) = zeta_N^f q^r, take
// z = zeta_N^{f''} q^{-r/p} with the smallest nonnegative f'' solving
// p f'' = -f (mod N).
inline AlgebraElement projection_Q(const AlgebraContext& ctx, const GroupElement& gen,
                                   long long j) {
    const auto ord = ctx.group.element_order(gen);
    if (!ord.has_value()) {
        throw std::domain_error("projection_Q: generator " + to_string(gen) +
                                " has infinite order");
    }
    const long long p = *ord;
    const int n = ctx.cyclotomic_order;

    Scalar c = Scalar::one(n);
    GroupElement acc = gen;
    for (long long k = 1; k < p; ++k) {
        c *= ctx.omega_theta(acc, gen);
        acc = ctx.group.multiply(acc, gen);
    }
    if (c.terms().size() != 1) {
        throw std::logic_error("projection_Q: accumulated twist is not a monomial");
    }
    const Rational r = c.terms().begin()->first;
    const Cyclotomic coeff = c.terms().begin()->second;
    long long f = -1;
    for (long long k = 0; k < n; ++k) {
        if (coeff == root_of_unity(n, k)) {
            f = k;
            break;
        }
    }
    if (f < 0) {
        throw std::domain_error(
            "projection_Q: accumulated twist coefficient is not a power of zeta_N; "
            "increase the cyclotomic order");
    }
    long long f2 = -1;
    for (long long k = 0; k < n; ++k) {
        if ((p * k + f) % n == 0) {
            f2 = k;
            break;
        }
    }
    if (f2 < 0) {
        throw std::domain_error("projection_Q: p*f'' = -f (mod N) has no solution; "
                                "increase the cyclotomic order N");
    }
    const Scalar z =
        Scalar::from_cyclotomic(root_of_unity(n, f2)) * Scalar::q_power(-r / Rational(static_cast<long>(p)), n);

    const AlgebraElement w = AlgebraElement::basis(ctx, gen).scaled(z);
    AlgebraElement q = AlgebraElement::zero();
    AlgebraElement wk = AlgebraElement::unit(ctx);
    const Rational inv_p(1, static_cast<unsigned long>(p));
    for (long long k = 0; k < p; ++k) {
        const Scalar weight =
            Scalar::from_cyclotomic(embedded_root(n, static_cast<int>(p), j * k)).scaled(inv_p);
        q = q + wk.scaled(weight);
        wk = twisted_product(ctx, w, wk);
    }
    return q;
}

// The lattice-subalgebra automorphism alpha^s: lambda_{(v,0)} ->
// lambda_{(M_s v, 0)} (conjugation by lambda of the point-part generator).
inline AlgebraElement alpha_automorphism(const AlgebraContext& ctx, const AlgebraElement& a,
                                         int s = 1) {
    detail::check_element_config(ctx, a, "alpha_automorphism");
    AlgebraElement r;
    for (const auto& [g, c] : a.terms()) {
        if (g.s != 0) {
            throw std::invalid_argument(
                "alpha_automorphism: element is not supported on the lattice subalgebra");
        }
        r.add_term(ctx.group.make(ctx.group.apply(s, g.v), 0), c);
    }
    return r;
}

// A functional on the twisted lattice subalgebra, tagged with the power s of
// alpha it intertwines (phi(xy) = phi(alpha^s(y) x)).
struct SubalgebraFunctional {
    std::string name;
    int alpha_power = 1;
    std::function<Scalar(const AlgebraElement&)> apply;
};

// The closed-form alpha^s-traces on the twisted Z^2 subalgebra of the
// Z^2 x| Z/3 example, in the lattice basis lambda_{(m,n,0)}:
//   kind 1 (alpha-trace):    phi^1_l = q^{ mn/2 + ((m-n)^2 - l^2)/6} delta_{3 | m-n-l}
//   kind 2 (alpha^2-trace):  phi^2_l = q^{-mn/2 - ((m-n)^2 - l^2)/6} delta_{3 | m-n-l}
inline SubalgebraFunctional alpha_trace_phi(const AlgebraContext& ctx, int kind, int l) {
    if (ctx.group.preset() != "Z2xZ3") {
        throw std::invalid_argument("alpha_trace_phi: available only for the Z2xZ3 preset");
    }
    if (kind != 1 && kind != 2) {
        throw std::invalid_argument("alpha_trace_phi: kind must be 1 or 2");
    }
    if (l < 0 || l > 2) {
        throw std::invalid_argument("alpha_trace_phi: l must be in {0, 1, 2}");
    }
    const int order = ctx.cyclotomic_order;
    auto apply = [kind, l, order](const AlgebraElement& a) -> Scalar {
        Scalar acc = Scalar::zero(order);
        for (const auto& [g, c] : a.terms()) {
            if (g.s != 0) {
                throw std::invalid_argument(
                    "alpha_trace_phi: element is not supported on the lattice subalgebra");
            }
            const long long m = g.v[0];
            const long long n = g.v[1];
            if ((m - n - l) % 3 != 0) continue;
            const Rational mn(static_cast<long>(m * n));
            const Rational disc(static_cast<long>((m - n) * (m - n) - l * l));
            Rational e = mn / 2 + disc / 6;
            if (kind == 2) e = -e;
            acc += c * Scalar::q_power(e, order);
        }
        return acc;
    };
    return SubalgebraFunctional{"phi^" + std::to_string(kind) + "_" + std::to_string(l), kind,
                                apply};
}

// Checks the alpha^s-trace identity phi(xy) = phi(alpha^s(y) x) on all
// lattice basis pairs with |v|_inf <= radius.
inline Report verify_alpha_trace(const AlgebraContext& ctx, const SubalgebraFunctional& phi,
                                 int radius) {
    Report rep{"alpha_trace:" + phi.name, radius, {}};
    std::vector<GroupElement> lattice;
    for (const auto& g : ctx.group.ball(radius)) {
        if (g.s == 0) lattice.push_back(g);
    }
    for (const auto& x : lattice) {
        const AlgebraElement ax = AlgebraElement::basis(ctx, x);
        for (const auto& y : lattice) {
            const AlgebraElement ay = AlgebraElement::basis(ctx, y);
            const Scalar lhs = phi.apply(twisted_product(ctx, ax, ay));
            const Scalar rhs = phi.apply(
                twisted_product(ctx, alpha_automorphism(ctx, ay, phi.alpha_power), ax));
            if (lhs != rhs) {
                rep.flag("alpha^s-trace identity fails at (" + to_string(x) + ", " + to_string(y) +
                         ")");
            }
        }
    }
    return rep;
}

// Extension of an alpha^s-trace phi on the lattice subalgebra to a trace on
// the whole crossed product: writing a = x_0 + x_1 w + ... + x_{p-1} w^{p-1}
// with lattice coefficients x_j, set T_phi(a) = phi(x_{p-s}).  The alpha^s
// identity is re-verified on lattice ball(2) pairs before construction.
inline TraceFunctional crossed_trace_T(const AlgebraContext& ctx, const SubalgebraFunctional& phi) {
    if (ctx.group.preset() != "Z2xZ3") {
        throw std::invalid_argument("crossed_trace_T: available only for the Z2xZ3 preset");
    }
    const Report pre = verify_alpha_trace(ctx, phi, 2);
    if (!pre.pass()) {
        throw std::domain_error("crossed_trace_T: " + phi.name +
                                " fails the alpha^s-trace identity");
    }
    const int p = ctx.group.point_order(1);
    const int component = ((p - phi.alpha_power) % p + p) % p;
    const GroupElement wc = ctx.group.make(IntVec(ctx.group.rank(), 0), component);
    auto apply = [ctx, phi, wc, component](const AlgebraElement& a) -> Scalar {
        AlgebraElement part;
        for (const auto& [g, c] : a.terms()) {
            if (g.s == component) part.add_term(g, c);
        }
        // x_j = part * (lambda_{w^j})^{-1} = part * lambda_{w^{-j}} *
        // omega^theta(w^j, w^{-j})^{-1}.
        const GroupElement wi = ctx.group.inverse(wc);
        const Scalar corr =
            detail::invert_unit_scalar(ctx.omega_theta(wc, wi), "crossed_trace_T");
        const AlgebraElement lattice_part =
            twisted_product(ctx, part, AlgebraElement::basis(ctx, wi)).scaled(corr);
        return phi.apply(lattice_part);
    };
    return TraceFunctional{"T[" + phi.name + "]", wc, apply};
}

// Traciality sweep: tau(ab) = tau(ba) over all basis pairs from ball(radius).
inline Report verify_traciality(const AlgebraContext& ctx, const TraceFunctional& tau,
                                int radius) {
    Report rep{"traciality:" + tau.name, radius, {}};
    const auto dom = ctx.group.ball(radius);
    for (const auto& x : dom) {
        const AlgebraElement ax = AlgebraElement::basis(ctx, x);
        for (const auto& y : dom) {
            const AlgebraElement ay = AlgebraElement::basis(ctx, y);
            if (tau.apply(twisted_product(ctx, ax, ay)) !=
                tau.apply(twisted_product(ctx, ay, ax))) {
                rep.flag("trace fails traciality at (" + to_string(x) + ", " + to_string(y) + ")");
            }
        }
    }
    return rep;
}

// Associativity sweep over basis triples (equivalent to the 2-cocycle
// identity for the twist).
inline Report verify_associativity(const AlgebraContext& ctx, int radius) {
    Report rep{"associativity", radius, {}};
    const auto dom = ctx.group.ball(radius);
    for (const auto& x : dom) {
        const AlgebraElement ax = AlgebraElement::basis(ctx, x);
        for (const auto& y : dom) {
            const AlgebraElement xy = twisted_product(ctx, ax, AlgebraElement::basis(ctx, y));
            const AlgebraElement ay = AlgebraElement::basis(ctx, y);
            for (const auto& z : dom) {
                const AlgebraElement az = AlgebraElement::basis(ctx, z);
                const AlgebraElement lhs = twisted_product(ctx, xy, az);
                const AlgebraElement rhs =
                    twisted_product(ctx, ax, twisted_product(ctx, ay, az));
                if (lhs != rhs) {
                    rep.flag("associativity fails at (" + to_string(x) + ", " + to_string(y) +
                             ", " + to_string(z) + ")");
                }
            }
        }
    }
    return rep;
}

}  // namespace twistalg
