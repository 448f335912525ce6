#pragma once

#include <random>

#include "twistalg/anchored.hpp"
#include "twistalg/calculus.hpp"

namespace twistalg {

// ---------------------------------------------------------------------------
// Deterministic sampling helpers (seeded; identical runs give identical draws)
// ---------------------------------------------------------------------------

class Sampler {
public:
    explicit Sampler(unsigned seed) : rng_(seed) {}

    long long pick_int(long long lo, long long hi) {
        return std::uniform_int_distribution<long long>(lo, hi)(rng_);
    }

    const GroupElement& pick(const std::vector<GroupElement>& pool) {
        return pool[static_cast<size_t>(pick_int(0, static_cast<long long>(pool.size()) - 1))];
    }

    Scalar scalar(int order) {
        Scalar out = Scalar::zero(order);
        const long long nterms = pick_int(1, 2);
        for (long long i = 0; i < nterms; ++i) {
            const Rational r = Rational(static_cast<long>(pick_int(-4, 4))) /
                               Rational(static_cast<long>(pick_int(1, 3)));
            long long num = pick_int(-3, 3);
            if (num == 0) num = 1;
            const long long k = pick_int(0, order - 1);
            out += Scalar::q_power(r, order) *
                   Scalar::from_cyclotomic(root_of_unity(order, k))
                       .scaled(Rational(static_cast<long>(num)));
        }
        return out;
    }

    GroupTuple tuple(const std::vector<GroupElement>& pool, int len) {
        GroupTuple t;
        t.reserve(static_cast<size_t>(len));
        for (int i = 0; i < len; ++i) t.push_back(pick(pool));
        return t;
    }

    // Reduced basis tuple of the given degree whose entries avoid the identity.
    GroupTuple reduced_tuple(const std::vector<GroupElement>& pool, int degree) {
        GroupTuple t;
        do {
            t = tuple(pool, degree + 1);
        } while ([&] {
            for (size_t i = 1; i < t.size(); ++i) {
                if (is_identity_element(t[i])) return true;
            }
            return false;
        }());
        return t;
    }

    // A degree-n basis tuple whose entry product lies on the anchored class:
    // entries 1..n are random non-identity ball elements, entry 0 adjusts the
    // product onto a random class member.
    GroupTuple anchored_tuple(const ClassContext& cc, const std::vector<GroupElement>& pool,
                              const std::vector<GroupElement>& class_members, int degree) {
        const GroupSpec& g = cc.algebra().group;
        for (;;) {
            GroupTuple rest;
            bool ok = true;
            for (int i = 0; i < degree; ++i) {
                const GroupElement& e = pick(pool);
                if (is_identity_element(e)) {
                    ok = false;
                    break;
                }
                rest.push_back(e);
            }
            if (!ok) continue;
            GroupElement acc = g.identity();
            for (const auto& e : rest) acc = g.multiply(acc, e);
            const GroupElement y = class_members.empty() ? cc.anchor() : pick(class_members);
            GroupTuple t;
            t.push_back(g.multiply(y, g.inverse(acc)));
            t.insert(t.end(), rest.begin(), rest.end());
            return t;
        }
    }

private:
    std::mt19937 rng_;
};

// Class members found inside a ball (for anchored sampling).
inline std::vector<GroupElement> class_members_in_ball(const ClassContext& cc, int radius) {
    std::vector<GroupElement> out;
    for (const auto& g : cc.algebra().group.ball(radius)) {
        if (cc.on_class(g)) out.push_back(g);
    }
    return out;
}

// Conjugacy-class representatives of torsion elements (nontrivial point
// part) found in the given ball.
inline std::vector<GroupElement> torsion_class_representatives(const GroupSpec& g, int radius) {
    std::vector<GroupElement> out;
    for (const auto& cls : conjugacy_classes_in_ball(g, radius)) {
        if (cls.representative.s != 0) out.push_back(cls.representative);
    }
    return out;
}

// A deterministic dense multi-cochain with full off-identity support; it
// exercises every positional term and sign of the calculus operators.
inline MultiCochain deterministic_cochain(const AlgebraContext& ctx, int m, int salt) {
    if (ctx.cyclotomic_order % 12 != 0) {
        throw std::invalid_argument("deterministic_cochain: cyclotomic order must be a "
                                    "multiple of 12");
    }
    const int order = ctx.cyclotomic_order;
    const GroupSpec group = ctx.group;
    auto fn = [group, order, m, salt](const GroupTuple& args) -> AlgebraElement {
        const int rank = group.rank();
        std::vector<long long> vs(static_cast<size_t>(rank), 0);
        long long ssum = 0, absall = 0;
        for (const auto& g : args) {
            for (int i = 0; i < rank; ++i) {
                vs[static_cast<size_t>(i)] += g.v[static_cast<size_t>(i)];
                absall += g.v[static_cast<size_t>(i)] < 0 ? -g.v[static_cast<size_t>(i)]
                                                          : g.v[static_cast<size_t>(i)];
            }
            ssum += g.s;
        }
        IntVec tv(static_cast<size_t>(rank));
        long long vsum = 0, vabs = 0;
        for (int i = 0; i < rank; ++i) {
            const long long x = vs[static_cast<size_t>(i)];
            tv[static_cast<size_t>(i)] = ((x % 3) + 3) % 3 - 1;
            vsum += x;
            vabs += x < 0 ? -x : x;
        }
        const int ts = static_cast<int>(((salt + ssum) % group.finite_order() +
                                         group.finite_order()) %
                                        group.finite_order());
        const long long num = 1 + (((salt + absall) % 3) + 3) % 3;
        const Rational ex = Rational(static_cast<long>((((salt + vsum) % 4) + 4) % 4)) / 2;
        const long long k = (((salt + vabs) % 12) + 12) % 12;
        AlgebraElement out;
        out.add_term(group.make(tv, ts),
                     Scalar::q_power(ex, order) *
                         Scalar::from_cyclotomic(root_of_unity(order, k * (order / 12)))
                             .scaled(Rational(static_cast<long>(num))));
        return out;
    };
    return MultiCochain{m, std::move(fn)};
}

// Random finitely supported multi-cochain (small support).
inline MultiCochain random_cochain(const AlgebraContext& ctx, int m, Sampler& smp) {
    const auto pool = ctx.group.ball(1);
    std::map<GroupTuple, AlgebraElement> table;
    for (int i = 0; i < 2; ++i) {
        const GroupTuple t = smp.tuple(pool, m);
        bool has_e = false;
        for (const auto& g : t) has_e = has_e || is_identity_element(g);
        if (has_e) continue;
        AlgebraElement v;
        v.add_term(smp.pick(pool), smp.scalar(ctx.cyclotomic_order));
        table[t] = v;
    }
    return MultiCochain::from_table(m, std::move(table));
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

// Cocycle suite: the integral 2-cocycle identity and the associativity of the
// twisted product it induces.
inline std::vector<Report> suite_cocycle(const AlgebraContext& ctx, int radius) {
    return {verify_cocycle_identity(ctx.group, ctx.form, radius),
            verify_associativity(ctx, std::min(radius, 2))};
}

// Trace suite: traciality of the deformed trace for each torsion class (and
// the identity class), with the class correction from the anchored context.
inline std::vector<Report> suite_trace(const AlgebraContext& ctx, ConjugatorSelector sel,
                                       int radius) {
    std::vector<Report> out;
    std::vector<GroupElement> anchors = {ctx.group.identity()};
    const auto reps = torsion_class_representatives(ctx.group, 1);
    anchors.insert(anchors.end(), reps.begin(), reps.end());
    for (const auto& x : anchors) {
        const ClassContext cc(ctx, x, sel);
        const TraceFunctional tau =
            make_trace_tau(ctx, x, cc.xi_function(), "tau^" + to_string(x));
        out.push_back(verify_traciality(ctx, tau, radius));
    }
    return out;
}

// The displayed consistency identity on mixed pairs: the deformed trace
// agrees on both orderings of lambda_{(a,b,0)} * lambda_{(c,d,1)} for all
// |a|,|b|,|c|,|d| <= radius (rank-2 groups with at least two point classes).
inline Report verify_traciality_mixed(const ClassContext& cc, int radius) {
    const AlgebraContext& ctx = cc.algebra();
    Report rep{"traciality_mixed:" + to_string(cc.anchor()), radius, {}};
    if (ctx.group.rank() != 2 || ctx.group.finite_order() < 2) {
        rep.flag("mixed traciality requires rank 2 and a nontrivial point group");
        return rep;
    }
    const auto xi = cc.xi_function();
    for (long long a = -radius; a <= radius; ++a) {
        for (long long b = -radius; b <= radius; ++b) {
            const AlgebraElement x =
                AlgebraElement::basis(ctx, ctx.group.make(IntVec{a, b}, 0));
            for (long long c = -radius; c <= radius; ++c) {
                for (long long d = -radius; d <= radius; ++d) {
                    const AlgebraElement y =
                        AlgebraElement::basis(ctx, ctx.group.make(IntVec{c, d}, 1));
                    const Scalar lhs =
                        trace_tau(ctx, cc.anchor(), xi, twisted_product(ctx, x, y));
                    const Scalar rhs =
                        trace_tau(ctx, cc.anchor(), xi, twisted_product(ctx, y, x));
                    if (lhs != rhs) {
                        rep.flag("orderings disagree at a=" + std::to_string(a) +
                                 " b=" + std::to_string(b) + " c=" + std::to_string(c) +
                                 " d=" + std::to_string(d));
                    }
                }
            }
        }
    }
    return rep;
}

// Monodromy suite: the finite-centralizer identity for every torsion class;
// for torsion-free groups, the generalized identity at the identity anchor
// with omega~ = omega0 and psi = 0.
inline std::vector<Report> suite_monodromy(const AlgebraContext& ctx, ConjugatorSelector sel,
                                           int radius_B, int radius_b) {
    std::vector<Report> out;
    const auto reps = torsion_class_representatives(ctx.group, 1);
    if (reps.empty()) {
        const ClassContext cc(ctx, ctx.group.identity(), sel);
        out.push_back(verify_monodromy_general(
            cc,
            [ctx](const GroupElement& a, const GroupElement& b) -> Rational {
                return ctx.omega0(a, b);
            },
            [](const GroupElement&) -> Rational { return Rational(0); }, radius_b));
        return out;
    }
    for (const auto& x : reps) {
        const ClassContext cc(ctx, x, sel);
        out.push_back(verify_monodromy_finite(cc, radius_B, radius_b));
    }
    return out;
}

// Homotopy suite: Xi Upsilon = id on random standard tuples, and the chain
// homotopy b h + h b = id - Upsilon Xi on random anchored chains of degrees
// 0..2 (the untwisted Hochschild differential of the anchored model).
inline std::vector<Report> suite_homotopy(const AlgebraContext& ctx, ConjugatorSelector sel,
                                          int samples_per_degree, unsigned seed) {
    std::vector<Report> out;
    Sampler smp(seed);
    std::vector<GroupElement> anchors = torsion_class_representatives(ctx.group, 1);
    if (anchors.empty()) anchors.push_back(ctx.group.identity());
    const auto pool = ctx.group.ball(1);
    const Rational rate0(0);

    Report rep_xiups{"xi_upsilon_identity", 1, {}};
    for (const auto& x : anchors) {
        const ClassContext cc(ctx, x, sel);
        std::vector<GroupElement> cent_pool;
        if (cc.anchor_is_identity()) {
            cent_pool = pool;
        } else {
            cent_pool = cc.centralizer();
        }
        for (int n = 1; n <= 3; ++n) {
            for (int trial = 0; trial < samples_per_degree; ++trial) {
                const GroupTuple t = smp.tuple(cent_pool, n);
                StandardChain st(n);
                st.add_term(t, Scalar::one(ctx.cyclotomic_order));
                const StandardChain got = xi_map(cc, upsilon_map(cc, st));
                if (got != st) {
                    rep_xiups.flag("Xi(Upsilon(t)) != t at anchor " + to_string(x));
                }
            }
        }
    }
    out.push_back(std::move(rep_xiups));

    Report rep_h{"chain_homotopy_identity", 1, {}};
    for (const auto& x : anchors) {
        const ClassContext cc(ctx, x, sel);
        const auto members = class_members_in_ball(cc, 1);
        for (int n = 0; n <= 2; ++n) {
            for (int trial = 0; trial < samples_per_degree; ++trial) {
                const GroupTuple t = smp.anchored_tuple(cc, pool, members, n);
                Chain c(n);
                c.add_term(t, Scalar::one(ctx.cyclotomic_order));
                if (c.is_zero()) continue;
                Chain lhs = hochschild_b(ctx, homotopy_h(cc, c), rate0);
                if (n > 0) {
                    lhs = lhs + homotopy_h(cc, hochschild_b(ctx, c, rate0));
                }
                const Chain rhs = c - upsilon_map(cc, xi_map(cc, c));
                if (lhs != rhs) {
                    rep_h.flag("b h + h b != id - Upsilon Xi at anchor " + to_string(x) +
                               ", degree " + std::to_string(n));
                }
            }
        }
    }
    out.push_back(std::move(rep_h));
    return out;
}

// Cartan suite: the homotopy formula [b - B, iota_D] = L_D - iota_{delta D}
// for deterministic dense cochains and random finitely supported ones.
inline std::vector<Report> suite_cartan(const AlgebraContext& ctx, int samples, unsigned seed) {
    Sampler smp(seed);
    const auto pool = ctx.group.ball(1);
    Report rep{"cartan_formula", 1, {}};
    int done = 0;
    int salt = 0;
    while (done < samples) {
        for (int m = 1; m <= 2 && done < samples; ++m) {
            const MultiCochain D = (done % 2 == 0)
                                       ? deterministic_cochain(ctx, m, 3 * m + 1 + salt)
                                       : random_cochain(ctx, m, smp);
            const int n = static_cast<int>(smp.pick_int(1, 3));
            const GroupTuple t = smp.reduced_tuple(pool, n);
            MixedChain c;
            c.add_term(t, smp.scalar(ctx.cyclotomic_order));
            if (c.is_zero()) continue;
            if (!cartan_identity_holds(ctx, D, c, ctx.twist_rate)) {
                rep.flag("Cartan formula fails for arity " + std::to_string(m) + ", degree " +
                         std::to_string(n));
            }
            ++done;
        }
        ++salt;
    }
    return {rep};
}

// Projection suite: spectral projections of the torsion unitaries are
// idempotent, self-adjoint, and resolve the identity.
inline std::vector<Report> suite_projection(const AlgebraContext& ctx) {
    Report rep{"projections", 0, {}};
    for (const auto& x : torsion_class_representatives(ctx.group, 1)) {
        const auto ord = ctx.group.element_order(x);
        if (!ord.has_value()) continue;
        const long long p = *ord;
        AlgebraElement sum;
        for (long long j = 0; j < p; ++j) {
            const AlgebraElement q = projection_Q(ctx, x, j);
            if (twisted_product(ctx, q, q) != q) {
                rep.flag("Q not idempotent at generator " + to_string(x) +
                         ", j=" + std::to_string(j));
            }
            if (involution(ctx, q) != q) {
                rep.flag("Q not self-adjoint at generator " + to_string(x) +
                         ", j=" + std::to_string(j));
            }
            sum = sum + q;
        }
        if (sum != AlgebraElement::unit(ctx)) {
            rep.flag("projections do not sum to 1 at generator " + to_string(x));
        }
    }
    return {rep};
}

// ---------------------------------------------------------------------------
// The pairing table
// ---------------------------------------------------------------------------

struct PairingTable {
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::vector<std::vector<Scalar>> entries;

    bool all_theta_independent() const {
        for (const auto& row : entries) {
            for (const auto& s : row) {
                if (!s.theta_independent()) return false;
            }
        }
        return true;
    }
};

// Rows: spectral projections Q_{j,g}, j in {1,2}, g in {w, uw, u^2 w};
// columns: deformed traces tau^x, x in {w^2, uw^2, u^2w^2, w, uw, u^2w}.
inline PairingTable pairing_table(const AlgebraContext& ctx, ConjugatorSelector sel) {
    if (ctx.group.preset() != "Z2xZ3") {
        throw std::invalid_argument("pairing_table: available only for the Z2xZ3 preset");
    }
    const std::vector<std::pair<std::string, GroupElement>> gens = {
        {"w", ctx.group.make(IntVec{0, 0}, 1)},
        {"uw", ctx.group.make(IntVec{1, 0}, 1)},
        {"u2w", ctx.group.make(IntVec{2, 0}, 1)}};
    const std::vector<std::pair<std::string, GroupElement>> cols = {
        {"w2", ctx.group.make(IntVec{0, 0}, 2)},  {"uw2", ctx.group.make(IntVec{1, 0}, 2)},
        {"u2w2", ctx.group.make(IntVec{2, 0}, 2)}, {"w", ctx.group.make(IntVec{0, 0}, 1)},
        {"uw", ctx.group.make(IntVec{1, 0}, 1)},  {"u2w", ctx.group.make(IntVec{2, 0}, 1)}};

    PairingTable table;
    std::vector<std::pair<GroupElement, std::function<Rational(const GroupElement&)>>> traces;
    for (const auto& [name, x] : cols) {
        table.col_labels.push_back("tau_" + name);
        const ClassContext cc(ctx, x, sel);
        traces.emplace_back(x, cc.xi_function());
    }
    for (const auto& [gname, gen] : gens) {
        for (long long j : {1LL, 2LL}) {
            table.row_labels.push_back("Q_" + std::to_string(j) + "_" + gname);
            const AlgebraElement q = projection_Q(ctx, gen, j);
            std::vector<Scalar> row;
            row.reserve(cols.size());
            for (const auto& [x, xi] : traces) {
                row.push_back(trace_tau(ctx, x, xi, q));
            }
            table.entries.push_back(std::move(row));
        }
    }
    return table;
}

}  // namespace twistalg
