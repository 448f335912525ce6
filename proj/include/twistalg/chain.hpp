#pragma once

#include <optional>

#include "twistalg/algebra.hpp"

namespace twistalg {

using GroupTuple = std::vector<GroupElement>;

inline bool is_identity_element(const GroupElement& g) {
    if (g.s != 0) return false;
    for (long long x : g.v) {
        if (x != 0) return false;
    }
    return true;
}

// Chains of the reduced Hochschild model.  A term is a tuple
// (a_0, a_1, ..., a_n) of basis group elements with a Scalar coefficient;
// the reduced normal form drops every tuple that has an identity entry in
// positions 1..n (position 0 is never reduced).
//
// MixedChain admits terms of different lengths: the operators b - B and the
// interior products/Lie derivatives of multi-cochains are inhomogeneous, so
// identities such as the Cartan formula live on the direct sum over degrees.
class MixedChain {
public:
    MixedChain() = default;

    const std::map<GroupTuple, Scalar>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    void add_term(const GroupTuple& t, const Scalar& c) {
        if (c.is_zero()) return;
        for (size_t i = 1; i < t.size(); ++i) {
            if (is_identity_element(t[i])) return;
        }
        auto [it, inserted] = terms_.emplace(t, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend MixedChain operator+(const MixedChain& a, const MixedChain& b) {
        MixedChain r = a;
        for (const auto& [t, c] : b.terms_) r.add_term(t, c);
        return r;
    }

    MixedChain operator-() const {
        MixedChain r;
        for (const auto& [t, c] : terms_) r.terms_.emplace(t, -c);
        return r;
    }

    friend MixedChain operator-(const MixedChain& a, const MixedChain& b) { return a + (-b); }

    MixedChain scaled(const Scalar& s) const {
        MixedChain r;
        for (const auto& [t, c] : terms_) r.add_term(t, c * s);
        return r;
    }

    MixedChain scaled(const Rational& s) const {
        MixedChain r;
        for (const auto& [t, c] : terms_) r.add_term(t, c.scaled(s));
        return r;
    }

    friend bool operator==(const MixedChain& a, const MixedChain& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const MixedChain& a, const MixedChain& b) { return !(a == b); }

private:
    std::map<GroupTuple, Scalar> terms_;
};

// Homogeneous chain of a fixed degree n (tuples of n+1 entries).  Degree -1
// is the empty-sum convention: always the zero chain.
class Chain {
public:
    explicit Chain(int degree) : degree_(degree) {}

    static Chain zero(int degree) { return Chain(degree); }

    static Chain basis(const GroupTuple& t, const Scalar& c) {
        Chain r(static_cast<int>(t.size()) - 1);
        r.add_term(t, c);
        return r;
    }

    int degree() const { return degree_; }

    const std::map<GroupTuple, Scalar>& terms() const { return body_.terms(); }

    bool is_zero() const { return body_.is_zero(); }

    void add_term(const GroupTuple& t, const Scalar& c) {
        if (static_cast<int>(t.size()) != degree_ + 1) {
            throw std::invalid_argument("Chain: tuple length does not match the degree");
        }
        body_.add_term(t, c);
    }

    const MixedChain& mixed() const { return body_; }

    static Chain from_mixed(int degree, const MixedChain& m) {
        Chain r(degree);
        for (const auto& [t, c] : m.terms()) r.add_term(t, c);
        return r;
    }

    friend Chain operator+(const Chain& a, const Chain& b) {
        if (a.degree_ != b.degree_) {
            throw std::invalid_argument("Chain: cannot add chains of different degrees");
        }
        Chain r(a.degree_);
        r.body_ = a.body_ + b.body_;
        return r;
    }

    Chain operator-() const {
        Chain r(degree_);
        r.body_ = -body_;
        return r;
    }

    friend Chain operator-(const Chain& a, const Chain& b) { return a + (-b); }

    Chain scaled(const Scalar& s) const {
        Chain r(degree_);
        r.body_ = body_.scaled(s);
        return r;
    }

    Chain scaled(const Rational& s) const {
        Chain r(degree_);
        r.body_ = body_.scaled(s);
        return r;
    }

    friend bool operator==(const Chain& a, const Chain& b) {
        return a.degree_ == b.degree_ && a.body_ == b.body_;
    }
    friend bool operator!=(const Chain& a, const Chain& b) { return !(a == b); }

private:
    int degree_;
    MixedChain body_;
};

// Degree-0 chains are elements of the algebra and vice versa.
inline Chain chain_of(const AlgebraElement& a) {
    Chain r(0);
    for (const auto& [g, c] : a.terms()) r.add_term(GroupTuple{g}, c);
    return r;
}

// The Hochschild differential of the twisted algebra on basis tuples:
//   b(a_0 x ... x a_n) = sum_i (-1)^i a_0 x ... x (a_i a_{i+1}) x ... x a_n
//                        + (-1)^n (a_n a_0) x a_1 x ... x a_{n-1},
// products taken in the algebra twisted at the given rate.
inline MixedChain hochschild_b(const AlgebraContext& ctx, const MixedChain& c,
                               const Rational& rate) {
    MixedChain out;
    for (const auto& [t, sc] : c.terms()) {
        const int n = static_cast<int>(t.size()) - 1;
        if (n <= 0) continue;
        for (int i = 0; i < n; ++i) {
            const Scalar f = Scalar::q_power(rate * ctx.omega0(t[i], t[i + 1]), ctx.cyclotomic_order);
            GroupTuple nt;
            nt.reserve(t.size() - 1);
            nt.insert(nt.end(), t.begin(), t.begin() + i);
            nt.push_back(ctx.group.multiply(t[i], t[i + 1]));
            nt.insert(nt.end(), t.begin() + i + 2, t.end());
            Scalar add = sc * f;
            if (i % 2) add = -add;
            out.add_term(nt, add);
        }
        const Scalar f = Scalar::q_power(rate * ctx.omega0(t[n], t[0]), ctx.cyclotomic_order);
        GroupTuple nt;
        nt.reserve(t.size() - 1);
        nt.push_back(ctx.group.multiply(t[n], t[0]));
        nt.insert(nt.end(), t.begin() + 1, t.begin() + n);
        Scalar add = sc * f;
        if (n % 2) add = -add;
        out.add_term(nt, add);
    }
    return out;
}

inline MixedChain hochschild_b(const AlgebraContext& ctx, const MixedChain& c) {
    return hochschild_b(ctx, c, ctx.twist_rate);
}

inline Chain hochschild_b(const AlgebraContext& ctx, const Chain& c, const Rational& rate) {
    return Chain::from_mixed(c.degree() - 1, hochschild_b(ctx, c.mixed(), rate));
}

inline Chain hochschild_b(const AlgebraContext& ctx, const Chain& c) {
    return hochschild_b(ctx, c, ctx.twist_rate);
}

// Connes' boundary in the reduced model:
//   B(a_0 x ... x a_n) = sum_i (-1)^{ni} 1 x a_i x ... x a_n x a_0 x ... x a_{i-1}.
inline MixedChain connes_B(const AlgebraContext& ctx, const MixedChain& c) {
    const GroupElement e = ctx.group.identity();
    MixedChain out;
    for (const auto& [t, sc] : c.terms()) {
        const int n = static_cast<int>(t.size()) - 1;
        if (n < 0) continue;
        for (int i = 0; i <= n; ++i) {
            GroupTuple nt;
            nt.reserve(t.size() + 1);
            nt.push_back(e);
            nt.insert(nt.end(), t.begin() + i, t.end());
            nt.insert(nt.end(), t.begin(), t.begin() + i);
            out.add_term(nt, (n * i) % 2 ? -sc : sc);
        }
    }
    return out;
}

inline Chain connes_B(const AlgebraContext& ctx, const Chain& c) {
    return Chain::from_mixed(c.degree() + 1, connes_B(ctx, c.mixed()));
}

inline MixedChain b_minus_B(const AlgebraContext& ctx, const MixedChain& c, const Rational& rate) {
    return hochschild_b(ctx, c, rate) - connes_B(ctx, c);
}

// An evaluatable cochain: a pure function on (degree+1)-tuples, reduced
// (identity entries in positions >= 1 evaluate to zero), optionally tagged
// with the conjugacy-class anchor it is supported on.
struct Cochain {
    int degree = 0;
    int order = 12;
    std::optional<GroupElement> anchor;
    std::function<Scalar(const GroupTuple&)> eval_fn;

    Scalar operator()(const GroupTuple& t) const {
        if (static_cast<int>(t.size()) != degree + 1) {
            throw std::invalid_argument("Cochain: tuple length does not match the degree");
        }
        for (size_t i = 1; i < t.size(); ++i) {
            if (is_identity_element(t[i])) return Scalar::zero(order);
        }
        return eval_fn(t);
    }
};

// <phi, c> = sum over terms of coefficient * phi(tuple).
inline Scalar pair(const Cochain& phi, const Chain& c) {
    if (phi.degree != c.degree()) {
        throw std::invalid_argument("pair: cochain and chain degrees differ");
    }
    Scalar acc = Scalar::zero(phi.order);
    for (const auto& [t, sc] : c.terms()) acc += sc * phi(t);
    return acc;
}

// Deformation of a class-supported cochain:
//   phi^(t)(g_0,...,g_n) = q^{rate * (omega0(g_0,g_1) + omega0(g_0 g_1, g_2)
//       + ... + omega0(g_0...g_{n-1}, g_n) + xi(g_0...g_n))} * phi(g_0,...,g_n).
// Twisting the result at the opposite rate (same xi) recovers phi exactly.
inline Cochain twist_cocycle(const AlgebraContext& ctx, const Cochain& phi,
                             std::function<Rational(const GroupElement&)> xi,
                             const Rational& rate) {
    auto ev = [ctx, phi, xi, rate](const GroupTuple& t) -> Scalar {
        Rational ex(0);
        GroupElement acc = t[0];
        for (size_t i = 1; i < t.size(); ++i) {
            ex += ctx.omega0(acc, t[i]);
            acc = ctx.group.multiply(acc, t[i]);
        }
        ex += xi(acc);
        return Scalar::q_power(rate * ex, phi.order) * phi(t);
    };
    return Cochain{phi.degree, phi.order, phi.anchor, ev};
}

inline Cochain twist_cocycle(const AlgebraContext& ctx, const Cochain& phi,
                             std::function<Rational(const GroupElement&)> xi) {
    return twist_cocycle(ctx, phi, std::move(xi), ctx.twist_rate);
}

}  // namespace twistalg
