#pragma once

#include "twistalg/chain.hpp"

namespace twistalg {

// An algebra-valued m-cochain D in normalized form: a pure function from
// m-tuples of basis group elements to algebra elements, vanishing whenever
// an argument is the identity.
struct MultiCochain {
    int arity = 1;
    std::function<AlgebraElement(const GroupTuple&)> eval_fn;

    AlgebraElement operator()(const GroupTuple& t) const {
        if (static_cast<int>(t.size()) != arity) {
            throw std::invalid_argument("MultiCochain: tuple length does not match the arity");
        }
        for (const auto& g : t) {
            if (is_identity_element(g)) return AlgebraElement::zero();
        }
        return eval_fn(t);
    }

    static MultiCochain from_table(int arity, std::map<GroupTuple, AlgebraElement> table) {
        auto fn = [table = std::move(table)](const GroupTuple& t) -> AlgebraElement {
            auto it = table.find(t);
            return it == table.end() ? AlgebraElement::zero() : it->second;
        };
        return MultiCochain{arity, std::move(fn)};
    }
};

// Signs of the calculus operators.  Each operator carries the suspension
// sign s(m) = (-1)^{m(m+1)/2 + 1}; the cyclic-insertion weights use m+1
// where a first transcription would use m; the graded commutator weight of
// iota_D is (-1)^m.  This convention is pinned by the Cartan-formula tests,
// which fail loudly under any other assignment.
namespace calculus_signs {

inline int s_susp(int m) { return (m * (m + 1) / 2 + 1) % 2 ? -1 : 1; }
inline int sgn_bfrak(int m, int n) { return s_susp(m) * ((m * n) % 2 ? -1 : 1); }
inline int sgn_Bfrak(int m, int n, int j, int k) {
    return s_susp(m) * ((n * (j + 1) + (m + 1) * (k - j)) % 2 ? -1 : 1);
}
inline int sgn_L1(int m, int n, int j) {
    return s_susp(m) * (((m + 1) * (j + 1)) % 2 ? -1 : 1);
}
inline int sgn_L2(int m, int n, int j) {
    return s_susp(m) * ((n * (n - j)) % 2 ? -1 : 1);
}
inline int sgn_comm(int m) { return m % 2 ? -1 : 1; }

}  // namespace calculus_signs

// frak-b_D:  s(m) (-1)^{mn} (D(a_{n-m+1},...,a_n) a_0) x a_1 x ... x a_{n-m};
// the product D(...)*a_0 is taken in the algebra twisted at the given rate;
// zero when the degree n is below the arity m.
inline MixedChain frak_b_D(const AlgebraContext& ctx, const MultiCochain& D, const MixedChain& c,
                           const Rational& rate) {
    const int m = D.arity;
    MixedChain out;
    for (const auto& [t, sc] : c.terms()) {
        const int n = static_cast<int>(t.size()) - 1;
        if (n < m) continue;
        const AlgebraElement val = D(GroupTuple(t.begin() + (n - m + 1), t.end()));
        if (val.is_zero()) continue;
        const int sign = calculus_signs::sgn_bfrak(m, n);
        for (const auto& [g, cg] : val.terms()) {
            const Scalar f =
                Scalar::q_power(rate * ctx.omega0(g, t[0]), ctx.cyclotomic_order);
            GroupTuple nt;
            nt.reserve(n - m + 1);
            nt.push_back(ctx.group.multiply(g, t[0]));
            nt.insert(nt.end(), t.begin() + 1, t.begin() + (n - m + 1));
            Scalar add = sc * cg * f;
            if (sign < 0) add = -add;
            out.add_term(nt, add);
        }
    }
    return out;
}

// frak-B_D:  s(m) sum_{0<=j<=k<=n-m} (-1)^{n(j+1)+(m+1)(k-j)}
//   1 x a_{j+1} ... a_k x D(a_{k+1},...,a_{k+m}) x a_{k+m+1} ... a_n x a_0 ... a_j.
inline MixedChain frak_B_D(const AlgebraContext& ctx, const MultiCochain& D, const MixedChain& c) {
    const int m = D.arity;
    const GroupElement e = ctx.group.identity();
    MixedChain out;
    for (const auto& [t, sc] : c.terms()) {
        const int n = static_cast<int>(t.size()) - 1;
        for (int j = 0; j <= n - m; ++j) {
            for (int k = j; k <= n - m; ++k) {
                const AlgebraElement val = D(GroupTuple(t.begin() + k + 1, t.begin() + k + 1 + m));
                if (val.is_zero()) continue;
                const int sign = calculus_signs::sgn_Bfrak(m, n, j, k);
                for (const auto& [g, cg] : val.terms()) {
                    GroupTuple nt;
                    nt.reserve(n - m + 3);
                    nt.push_back(e);
                    nt.insert(nt.end(), t.begin() + j + 1, t.begin() + k + 1);
                    nt.push_back(g);
                    nt.insert(nt.end(), t.begin() + k + 1 + m, t.end());
                    nt.insert(nt.end(), t.begin(), t.begin() + j + 1);
                    Scalar add = sc * cg;
                    if (sign < 0) add = -add;
                    out.add_term(nt, add);
                }
            }
        }
    }
    return out;
}

// iota_D = frak-b_D - frak-B_D (an inhomogeneous operator).
inline MixedChain iota_D(const AlgebraContext& ctx, const MultiCochain& D, const MixedChain& c,
                         const Rational& rate) {
    return frak_b_D(ctx, D, c, rate) - frak_B_D(ctx, D, c);
}

// The Lie derivative L_D:
//   s(m) [ sum_{j=0}^{n-m} (-1)^{(m+1)(j+1)} a_0 x ... x D(a_{j+1},...,a_{j+m}) x ... x a_n
//        + sum_{j=n-m+1}^{n} (-1)^{n(n-j)}
//            D(a_{j+1},...,a_n,a_0,...,a_{j+m-n-1}) x a_{j+m-n} x ... x a_j ];
// zero when n < m-1.
inline MixedChain lie_L_D(const AlgebraContext& ctx, const MultiCochain& D, const MixedChain& c) {
    const int m = D.arity;
    MixedChain out;
    for (const auto& [t, sc] : c.terms()) {
        const int n = static_cast<int>(t.size()) - 1;
        if (n < m - 1) continue;
        for (int j = 0; j <= n - m; ++j) {
            const AlgebraElement val = D(GroupTuple(t.begin() + j + 1, t.begin() + j + 1 + m));
            if (val.is_zero()) continue;
            const int sign = calculus_signs::sgn_L1(m, n, j);
            for (const auto& [g, cg] : val.terms()) {
                GroupTuple nt;
                nt.reserve(n - m + 2);
                nt.insert(nt.end(), t.begin(), t.begin() + j + 1);
                nt.push_back(g);
                nt.insert(nt.end(), t.begin() + j + 1 + m, t.end());
                Scalar add = sc * cg;
                if (sign < 0) add = -add;
                out.add_term(nt, add);
            }
        }
        for (int j = n - m + 1; j <= n; ++j) {
            GroupTuple block;
            block.reserve(m);
            for (int u = 0; u < m; ++u) block.push_back(t[(j + 1 + u) % (n + 1)]);
            const AlgebraElement val = D(block);
            if (val.is_zero()) continue;
            const int sign = calculus_signs::sgn_L2(m, n, j);
            for (const auto& [g, cg] : val.terms()) {
                GroupTuple nt;
                nt.reserve(n - m + 2);
                nt.push_back(g);
                nt.insert(nt.end(), t.begin() + (j + m - n), t.begin() + j + 1);
                Scalar add = sc * cg;
                if (sign < 0) add = -add;
                out.add_term(nt, add);
            }
        }
    }
    return out;
}

// The Hochschild differential of multi-cochains (graded commutator with the
// twisted product):  delta(D)(a_1,...,a_{m+1}) = a_1 D(a_2,...,a_{m+1})
//   + sum_i (-1)^i D(a_1,...,a_i a_{i+1},...,a_{m+1})
//   + (-1)^{m+1} D(a_1,...,a_m) a_{m+1}.
inline MultiCochain gerstenhaber_delta(const AlgebraContext& ctx, const MultiCochain& D,
                                       const Rational& rate) {
    const int m = D.arity;
    auto fn = [ctx, D, m, rate](const GroupTuple& args) -> AlgebraElement {
        AlgebraElement out;
        const AlgebraElement head = D(GroupTuple(args.begin() + 1, args.end()));
        for (const auto& [g, cg] : head.terms()) {
            const Scalar f =
                Scalar::q_power(rate * ctx.omega0(args[0], g), ctx.cyclotomic_order);
            out.add_term(ctx.group.multiply(args[0], g), cg * f);
        }
        for (int i = 1; i <= m; ++i) {
            const Scalar f = Scalar::q_power(rate * ctx.omega0(args[i - 1], args[i]),
                                             ctx.cyclotomic_order);
            GroupTuple nt;
            nt.reserve(m);
            nt.insert(nt.end(), args.begin(), args.begin() + (i - 1));
            nt.push_back(ctx.group.multiply(args[i - 1], args[i]));
            nt.insert(nt.end(), args.begin() + i + 1, args.end());
            AlgebraElement v = D(nt).scaled(f);
            if (i % 2) v = -v;
            out = out + v;
        }
        const AlgebraElement tail = D(GroupTuple(args.begin(), args.begin() + m));
        for (const auto& [g, cg] : tail.terms()) {
            const Scalar f =
                Scalar::q_power(rate * ctx.omega0(g, args[m]), ctx.cyclotomic_order);
            Scalar add = cg * f;
            if ((m + 1) % 2) add = -add;
            out.add_term(ctx.group.multiply(g, args[m]), add);
        }
        return out;
    };
    return MultiCochain{m + 1, std::move(fn)};
}

// One instance of the Cartan homotopy formula
//   (b - B) iota_D - (-1)^m iota_D (b - B) = L_D - iota_{delta D},
// all operators taken at the given twist rate.
inline bool cartan_identity_holds(const AlgebraContext& ctx, const MultiCochain& D,
                                  const MixedChain& c, const Rational& rate) {
    const MixedChain lhs_a = b_minus_B(ctx, iota_D(ctx, D, c, rate), rate);
    MixedChain lhs_b = iota_D(ctx, D, b_minus_B(ctx, c, rate), rate);
    if (calculus_signs::sgn_comm(D.arity) < 0) lhs_b = -lhs_b;
    const MixedChain lhs = lhs_a - lhs_b;

    const MultiCochain dD = gerstenhaber_delta(ctx, D, rate);
    const MixedChain rhs = lie_L_D(ctx, D, c) - iota_D(ctx, dD, c, rate);
    return lhs == rhs;
}

}  // namespace twistalg
