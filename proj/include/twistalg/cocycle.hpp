#pragma once

#include <functional>
#include <set>

#include "twistalg/conjugacy.hpp"
#include "twistalg/group.hpp"
#include "twistalg/report.hpp"

namespace twistalg {

// Integer 2-cocycle on G = Z^n x| F given by a bilinear form:
//     omega0((v,s),(w,t)) = v^T * beta * (M_s w).
// The cocycle identity for this family is equivalent to F-invariance of
// beta (M^T beta M = beta for all M in F), which construction-time
// validation checks exactly; ball sweeps remain available as end-to-end
// verification.
class TwoCocycleForm {
public:
    explicit TwoCocycleForm(IntMat beta) : beta_(std::move(beta)) {
        const std::size_t n = beta_.size();
        for (const auto& row : beta_) {
            if (row.size() != n) throw std::invalid_argument("TwoCocycleForm: beta must be square");
        }
    }

    // The symplectic form [[0,1],[-1,0]]: omega0((a,b),(c,d)) = ad - bc.
    static TwoCocycleForm preset_symplectic() { return TwoCocycleForm({{0, 1}, {-1, 0}}); }

    const IntMat& beta() const { return beta_; }

    // Exact load-time validation against a group: shape and F-invariance.
    void validate_for(const GroupSpec& g) const {
        if (static_cast<int>(beta_.size()) != g.rank()) {
            throw std::invalid_argument("TwoCocycleForm: beta rank does not match the group");
        }
        for (int s = 0; s < g.finite_order(); ++s) {
            const IntMat& m = g.matrix(s);
            // (M^T beta M)[i][j] = sum_{k,l} M[k][i] beta[k][l] M[l][j]
            for (int i = 0; i < g.rank(); ++i) {
                for (int j = 0; j < g.rank(); ++j) {
                    long long acc = 0;
                    for (int k = 0; k < g.rank(); ++k) {
                        for (int l = 0; l < g.rank(); ++l) {
                            acc += m[k][i] * beta_[k][l] * m[l][j];
                        }
                    }
                    if (acc != beta_[i][j]) {
                        throw std::invalid_argument(
                            "TwoCocycleForm: beta is not invariant under the point group "
                            "(the associated form would not be a 2-cocycle)");
                    }
                }
            }
        }
    }

private:
    IntMat beta_;
};

inline Rational eval_omega0(const GroupSpec& g, const TwoCocycleForm& form, const GroupElement& a,
                            const GroupElement& b) {
    const IntVec sw = g.apply(a.s, b.v);
    long long acc = 0;
    for (int i = 0; i < g.rank(); ++i) {
        for (int j = 0; j < g.rank(); ++j) acc += a.v[i] * form.beta()[i][j] * sw[j];
    }
    return Rational(static_cast<long>(acc));
}

// omega0^a(g,h) = omega0(g,h) - omega0(h,g), the antisymmetrization.
inline std::function<Rational(const GroupElement&, const GroupElement&)> antisymmetrize(
    const GroupSpec& g, const TwoCocycleForm& form) {
    // Explicit return type: gmpxx expression templates must not escape.
    return [g, form](const GroupElement& a, const GroupElement& b) -> Rational {
        return eval_omega0(g, form, a, b) - eval_omega0(g, form, b, a);
    };
}

// A rational-valued function on k-tuples of group elements.
struct GroupCochain {
    int degree = 1;
    std::function<Rational(const std::vector<GroupElement>&)> eval_fn;
    std::string domain_tag = "G";

    Rational operator()(const std::vector<GroupElement>& args) const {
        if (static_cast<int>(args.size()) != degree) {
            throw std::invalid_argument("GroupCochain: expected " + std::to_string(degree) +
                                        " arguments, got " + std::to_string(args.size()));
        }
        return eval_fn(args);
    }
};

inline GroupCochain omega0_cochain(const GroupSpec& g, const TwoCocycleForm& form) {
    return GroupCochain{2, [g, form](const std::vector<GroupElement>& a) {
                            return eval_omega0(g, form, a[0], a[1]);
                        }};
}

// Inhomogeneous group-cohomology differential
//   d phi(g_1,...,g_{k+1}) = phi(g_2,...,g_{k+1})
//                            + sum_i (-1)^i phi(..., g_i g_{i+1}, ...)
//                            + (-1)^{k+1} phi(g_1,...,g_k).
// For k = 0 (constant coefficients) this is the zero map.
inline GroupCochain standard_differential(const GroupSpec& g, const GroupCochain& phi) {
    if (phi.degree == 0) {
        return GroupCochain{1, [](const std::vector<GroupElement>&) { return Rational(0); },
                            phi.domain_tag};
    }
    const int k = phi.degree;
    return GroupCochain{
        k + 1,
        [g, phi, k](const std::vector<GroupElement>& a) {
            Rational acc = phi(std::vector<GroupElement>(a.begin() + 1, a.end()));
            int sign = -1;
            for (int i = 0; i + 1 <= k; ++i) {
                std::vector<GroupElement> args;
                args.reserve(k);
                for (int j = 0; j < i; ++j) args.push_back(a[j]);
                args.push_back(g.multiply(a[i], a[i + 1]));
                for (int j = i + 2; j <= k; ++j) args.push_back(a[j]);
                acc += Rational(sign) * phi(args);
                sign = -sign;
            }
            acc += Rational(sign) * phi(std::vector<GroupElement>(a.begin(), a.end() - 1));
            return acc;
        },
        phi.domain_tag};
}

// Exhaustive cocycle-identity sweep over ball(R):
//   omega(h,k) + omega(g,hk) = omega(g,h) + omega(gh,k).
inline Report verify_cocycle_identity(const GroupSpec& g, const TwoCocycleForm& form, int radius) {
    Report rep{"cocycle_identity", radius, {}};
    const auto dom = g.ball(radius);
    for (const auto& a : dom) {
        for (const auto& b : dom) {
            const Rational ab = eval_omega0(g, form, a, b);
            for (const auto& c : dom) {
                const Rational lhs = eval_omega0(g, form, b, c) + eval_omega0(g, form, a, g.multiply(b, c));
                const Rational rhs = ab + eval_omega0(g, form, g.multiply(a, b), c);
                if (lhs != rhs) {
                    rep.flag("cocycle identity fails at (" + to_string(a) + ", " + to_string(b) +
                             ", " + to_string(c) + ")");
                }
            }
        }
    }
    return rep;
}

// Averaging over a finite subgroup H:
//   psi(g) = (1/|H|) sum_{h in H} omega0(h, g),
// which satisfies d psi = omega0 on H x H.  H must be closed under products
// and inverses.
inline GroupCochain shapiro_psi(const GroupSpec& g, const TwoCocycleForm& form,
                                const std::vector<GroupElement>& subgroup) {
    if (subgroup.empty()) throw std::invalid_argument("shapiro_psi: empty subgroup");
    const std::set<GroupElement> members(subgroup.begin(), subgroup.end());
    for (const auto& a : subgroup) {
        if (!members.count(g.inverse(a))) {
            throw std::invalid_argument("shapiro_psi: subgroup not closed under inverses");
        }
        for (const auto& b : subgroup) {
            if (!members.count(g.multiply(a, b))) {
                throw std::invalid_argument("shapiro_psi: subgroup not closed under products");
            }
        }
    }
    const Rational scale(1, static_cast<unsigned long>(subgroup.size()));
    std::vector<GroupElement> h(subgroup);
    return GroupCochain{1,
                        [g, form, h, scale](const std::vector<GroupElement>& a) -> Rational {
                            Rational acc(0);
                            for (const auto& c : h) acc += eval_omega0(g, form, c, a[0]);
                            return acc * scale;
                        },
                        "subgroup"};
}

// psi on the cyclic subgroup <x> of a torsion element:
//   psi(x^k) = (1/ord x) sum_{n} omega0(x^k, x^n g_probe),
// independent of the probe.  Independence is verified against five distinct
// probes (the given one plus deterministic picks); dependence signals a
// broken cocycle and raises an error.
inline std::vector<Rational> psi_on_cyclic(const GroupSpec& g, const TwoCocycleForm& form,
                                           const GroupElement& x, const GroupElement& probe) {
    const auto ord = g.element_order(x);
    if (!ord.has_value()) {
        throw std::domain_error("psi_on_cyclic: " + to_string(x) + " has infinite order");
    }
    const long long n = *ord;
    std::vector<GroupElement> powers;
    powers.reserve(static_cast<std::size_t>(n));
    GroupElement acc = g.identity();
    for (long long k = 0; k < n; ++k) {
        powers.push_back(acc);
        acc = g.multiply(acc, x);
    }

    auto values_for = [&](const GroupElement& p) {
        std::vector<Rational> vals;
        vals.reserve(powers.size());
        for (const auto& xk : powers) {
            Rational sum(0);
            for (const auto& xn : powers) sum += eval_omega0(g, form, xk, g.multiply(xn, p));
            vals.push_back(sum / Rational(static_cast<long>(n)));
        }
        return vals;
    };

    // Deterministic probe set: the caller's probe plus spread-out picks.
    std::vector<GroupElement> probes{probe};
    const auto dom = g.ball(2);
    for (std::size_t i = 0; probes.size() < 5 && i < dom.size(); i += dom.size() / 5 + 1) {
        if (std::find(probes.begin(), probes.end(), dom[i]) == probes.end()) {
            probes.push_back(dom[i]);
        }
    }

    const std::vector<Rational> vals = values_for(probes.front());
    for (std::size_t i = 1; i < probes.size(); ++i) {
        if (values_for(probes[i]) != vals) {
            throw std::domain_error("psi_on_cyclic: probe-dependent values for x = " + to_string(x) +
                                    " (the 2-cocycle is inconsistent)");
        }
    }
    return vals;
}

// Normalization plus graded cyclicity of an n-cochain on ball(R) tuples:
//   phi((g_1...g_n)^{-1}, g_1, ..., g_{n-1}) = (-1)^n phi(g_1, ..., g_n).
// A failed normalization precondition is reported and cyclicity is not
// asserted.  The cocycle precondition d(phi) = 0 is spot-checked on a
// deterministic sample of ball(1) tuples.
inline Report verify_normalized_cyclicity(const GroupSpec& g, const GroupCochain& phi, int radius) {
    Report rep{"normalized_cyclicity", radius, {}};
    const int n = phi.degree;
    if (n < 1) {
        rep.flag("degree must be >= 1");
        return rep;
    }
    const auto dom = g.ball(radius);

    // Enumerate ball(R)^k via an odometer.
    auto for_tuples = [&](int k, auto&& fn) {
        std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
        std::vector<GroupElement> tup(static_cast<std::size_t>(k), g.identity());
        for (;;) {
            for (int i = 0; i < k; ++i) tup[static_cast<std::size_t>(i)] = dom[idx[static_cast<std::size_t>(i)]];
            fn(tup);
            int i = k - 1;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] + 1 == dom.size()) {
                idx[static_cast<std::size_t>(i)] = 0;
                --i;
            }
            if (i < 0) break;
            ++idx[static_cast<std::size_t>(i)];
        }
    };

    // Normalization: phi vanishes when any argument is the identity.
    bool normalized = true;
    for_tuples(n - 1, [&](const std::vector<GroupElement>& partial) {
        for (int pos = 0; pos <= n - 1; ++pos) {
            std::vector<GroupElement> args = partial;
            args.insert(args.begin() + pos, g.identity());
            if (phi(args) != 0) {
                if (normalized) {
                    rep.flag("normalization precondition fails (identity argument at position " +
                             std::to_string(pos) + "); cyclicity not asserted");
                }
                normalized = false;
            }
        }
    });
    if (!normalized) return rep;

    // Spot-check the cocycle precondition d(phi) = 0 on ball(1) tuples.
    {
        const GroupCochain dphi = standard_differential(g, phi);
        const auto small = g.ball(1);
        std::size_t total = 1;
        for (int i = 0; i <= n; ++i) total *= small.size();
        const std::size_t stride = std::max<std::size_t>(1, total / 512);
        std::vector<GroupElement> args(static_cast<std::size_t>(n) + 1);
        for (std::size_t flat = 0; flat < total; flat += stride) {
            std::size_t rest = flat;
            for (int i = 0; i <= n; ++i) {
                args[static_cast<std::size_t>(i)] = small[rest % small.size()];
                rest /= small.size();
            }
            if (dphi(args) != 0) {
                rep.flag("cocycle precondition fails: d(phi) != 0 at a sampled tuple");
                return rep;
            }
        }
    }

    const Rational sign((n % 2 == 0) ? 1 : -1);
    for_tuples(n, [&](const std::vector<GroupElement>& args) {
        GroupElement prod = g.identity();
        for (const auto& a : args) prod = g.multiply(prod, a);
        std::vector<GroupElement> rot;
        rot.reserve(static_cast<std::size_t>(n));
        rot.push_back(g.inverse(prod));
        for (int i = 0; i + 1 < n; ++i) rot.push_back(args[static_cast<std::size_t>(i)]);
        if (phi(rot) != sign * phi(args)) {
            rep.flag("cyclicity fails at (" + to_string(args[0]) + ", ...)");
        }
    });
    return rep;
}

}  // namespace twistalg
