#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "twistalg/algebra.hpp"
#include "twistalg/chain.hpp"
#include "twistalg/cocycle.hpp"
#include "twistalg/conjugacy.hpp"
#include "twistalg/group.hpp"
#include "twistalg/rational.hpp"
#include "twistalg/report.hpp"
#include "twistalg/scalar.hpp"

// JSON (de)serialization for the externally visible value types.  All
// emitters use nlohmann::ordered_json so field order is fixed by the code,
// and every container we serialize iterates in a canonical sorted order:
// identical inputs produce byte-identical output.
//
// Stable wire formats:
//   Rational        "p/q" (decimal-free fraction string; "p" when q == 1)
//   Scalar          {"terms": [{"exp": "p/q", "coeff": ["r0/s0", ...]}], "N": 12}
//   GroupElement    {"v": [a, b], "s": i}
//   GroupSpec       {"rank": n, "finite_part": [[[..]]], "preset": "Z2xZ3"|"Zn"|null}
//   cocycle config  {"beta": [[0, 1], [-1, 0]], "twist_rate": "-1/2"}
//   AlgebraElement  {"terms": [{"v": [a, b], "s": i, "coeff": <Scalar>}]}
//   Chain           {"degree": n, "terms": [{"t": [<GroupElement>...], "coeff": <Scalar>}]}
//   Report          {"check": name, "domain": {"R": k}, "violations": [...], "pass": bool}
//   RunConfig       {"group": <GroupSpec>, "cocycle": <cocycle config>,
//                    "cyclotomic_order": N, "radius": R, "selector": "lex_min"}

namespace twistalg {

using Json = nlohmann::ordered_json;

// Raised on malformed configuration or data files; the message names the
// offending field.  The CLI maps this to its config-error exit code.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail_json {

inline const Json& require_field(const Json& j, const char* name, const char* where) {
    if (!j.is_object()) {
        throw ConfigError(std::string(where) + ": expected an object with field '" + name + "'");
    }
    auto it = j.find(name);
    if (it == j.end()) {
        throw ConfigError(std::string(where) + ": missing field '" + name + "'");
    }
    return *it;
}

inline long long require_int(const Json& j, const char* name, const char* where) {
    const Json& f = require_field(j, name, where);
    if (!f.is_number_integer()) {
        throw ConfigError(std::string(where) + ": field '" + name + "' must be an integer");
    }
    return f.get<long long>();
}

inline std::string require_string(const Json& j, const char* name, const char* where) {
    const Json& f = require_field(j, name, where);
    if (!f.is_string()) {
        throw ConfigError(std::string(where) + ": field '" + name + "' must be a string");
    }
    return f.get<std::string>();
}

inline Rational require_rational(const Json& j, const char* name, const char* where) {
    const std::string s = require_string(j, name, where);
    try {
        return parse_rational(s);
    } catch (const std::exception& e) {
        throw ConfigError(std::string(where) + ": field '" + name + "' is not a fraction string: " +
                          e.what());
    }
}

inline const Json& require_array(const Json& j, const char* name, const char* where) {
    const Json& f = require_field(j, name, where);
    if (!f.is_array()) {
        throw ConfigError(std::string(where) + ": field '" + name + "' must be an array");
    }
    return f;
}

inline IntVec int_vector(const Json& a, const char* name, const char* where) {
    if (!a.is_array()) {
        throw ConfigError(std::string(where) + ": '" + name + "' must be an array of integers");
    }
    IntVec v;
    v.reserve(a.size());
    for (const auto& e : a) {
        if (!e.is_number_integer()) {
            throw ConfigError(std::string(where) + ": '" + name + "' must contain only integers");
        }
        v.push_back(e.get<long long>());
    }
    return v;
}

inline IntMat int_matrix(const Json& a, const char* name, const char* where) {
    if (!a.is_array()) {
        throw ConfigError(std::string(where) + ": '" + name + "' must be a matrix (array of rows)");
    }
    IntMat m;
    m.reserve(a.size());
    for (const auto& row : a) {
        m.push_back(int_vector(row, name, where));
    }
    return m;
}

}  // namespace detail_json

// ---------------------------------------------------------------------------
// Rational / Scalar
// ---------------------------------------------------------------------------

inline Json rational_to_json(const Rational& r) { return Json(rational_string(r)); }

inline Json scalar_to_json(const Scalar& s) {
    Json terms = Json::array();
    for (const auto& [e, c] : s.terms()) {
        Json coeff = Json::array();
        for (const auto& r : c.coefficients()) coeff.push_back(rational_string(r));
        terms.push_back(Json{{"exp", rational_string(e)}, {"coeff", std::move(coeff)}});
    }
    return Json{{"terms", std::move(terms)}, {"N", s.order()}};
}

inline Scalar scalar_from_json(const Json& j) {
    using namespace detail_json;
    const long long order = require_int(j, "N", "scalar");
    if (order <= 0) throw ConfigError("scalar: field 'N' must be positive");
    Scalar s = Scalar::zero(static_cast<int>(order));
    const std::size_t degree = Cyclotomic::zero(static_cast<int>(order)).coefficients().size();
    for (const auto& t : require_array(j, "terms", "scalar")) {
        const Rational e = require_rational(t, "exp", "scalar term");
        const Json& coeff = require_array(t, "coeff", "scalar term");
        if (coeff.size() > degree) {
            throw ConfigError("scalar term: field 'coeff' has more entries than the field degree");
        }
        Cyclotomic c = Cyclotomic::zero(static_cast<int>(order));
        Cyclotomic basis = Cyclotomic::one(static_cast<int>(order));
        for (std::size_t k = 0; k < coeff.size(); ++k) {
            if (!coeff[k].is_string()) {
                throw ConfigError("scalar term: field 'coeff' must contain fraction strings");
            }
            Rational rk;
            try {
                rk = parse_rational(coeff[k].get<std::string>());
            } catch (const std::exception& e2) {
                throw ConfigError(std::string("scalar term: bad coefficient: ") + e2.what());
            }
            if (rk != 0) {
                c = c + Cyclotomic::from_rational(rk, static_cast<int>(order)) *
                            Cyclotomic::root_of_unity(static_cast<int>(order),
                                                      static_cast<long long>(k));
            }
        }
        s = s + Scalar::q_power(e, static_cast<int>(order)) * Scalar::from_cyclotomic(c);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Group elements / group presentations
// ---------------------------------------------------------------------------

inline Json group_element_to_json(const GroupElement& g) {
    Json v = Json::array();
    for (long long x : g.v) v.push_back(x);
    return Json{{"v", std::move(v)}, {"s", g.s}};
}

inline GroupElement group_element_from_json(const Json& j) {
    using namespace detail_json;
    GroupElement g;
    g.v = int_vector(require_field(j, "v", "group element"), "v", "group element");
    g.s = static_cast<int>(require_int(j, "s", "group element"));
    return g;
}

inline Json group_to_json(const GroupSpec& g) {
    Json fp = Json::array();
    for (const auto& m : g.finite_part()) {
        Json rows = Json::array();
        for (const auto& row : m) {
            Json r = Json::array();
            for (long long x : row) r.push_back(x);
            rows.push_back(std::move(r));
        }
        fp.push_back(std::move(rows));
    }
    Json j{{"rank", g.rank()}, {"finite_part", std::move(fp)}};
    if (g.preset() == "custom") {
        j["preset"] = nullptr;
    } else {
        j["preset"] = g.preset();
    }
    return j;
}

// {"rank": n, "finite_part": [[[..]]], "preset": "Z2xZ3" | "Zn" | null}.
// A named preset wins; otherwise rank + finite_part give a custom group.
inline GroupSpec group_from_json(const Json& j) {
    using namespace detail_json;
    if (!j.is_object()) throw ConfigError("group: expected an object");
    const auto preset_it = j.find("preset");
    if (preset_it != j.end() && !preset_it->is_null()) {
        if (!preset_it->is_string()) {
            throw ConfigError("group: field 'preset' must be a string or null");
        }
        const std::string p = preset_it->get<std::string>();
        if (p == "Z2xZ3") return GroupSpec::preset_Z2xZ3();
        if (p == "Zn") {
            const long long rank = require_int(j, "rank", "group");
            if (rank <= 0) throw ConfigError("group: field 'rank' must be positive");
            return GroupSpec::preset_Zn(static_cast<int>(rank));
        }
        throw ConfigError("group: unknown preset '" + p + "' (expected \"Z2xZ3\" or \"Zn\")");
    }
    const long long rank = require_int(j, "rank", "group");
    if (rank <= 0) throw ConfigError("group: field 'rank' must be positive");
    const Json& fp = require_array(j, "finite_part", "group");
    std::vector<IntMat> mats;
    mats.reserve(fp.size());
    for (const auto& m : fp) mats.push_back(int_matrix(m, "finite_part", "group"));
    try {
        return GroupSpec(static_cast<int>(rank), std::move(mats));
    } catch (const std::exception& e) {
        throw ConfigError(std::string("group: invalid presentation: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Cocycle configuration
// ---------------------------------------------------------------------------

inline Json cocycle_to_json(const TwoCocycleForm& form, const Rational& twist_rate) {
    Json beta = Json::array();
    for (const auto& row : form.beta()) {
        Json r = Json::array();
        for (long long x : row) r.push_back(x);
        beta.push_back(std::move(r));
    }
    return Json{{"beta", std::move(beta)}, {"twist_rate", rational_string(twist_rate)}};
}

inline std::pair<TwoCocycleForm, Rational> cocycle_from_json(const Json& j) {
    using namespace detail_json;
    const IntMat beta = int_matrix(require_array(j, "beta", "cocycle"), "beta", "cocycle");
    const Rational rate = require_rational(j, "twist_rate", "cocycle");
    try {
        return {TwoCocycleForm(beta), rate};
    } catch (const std::exception& e) {
        throw ConfigError(std::string("cocycle: invalid 'beta': ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Algebra elements / chains
// ---------------------------------------------------------------------------

inline Json algebra_element_to_json(const AlgebraElement& a) {
    Json terms = Json::array();
    for (const auto& [g, c] : a.terms()) {
        Json t = group_element_to_json(g);
        t["coeff"] = scalar_to_json(c);
        terms.push_back(std::move(t));
    }
    return Json{{"terms", std::move(terms)}};
}

inline AlgebraElement algebra_element_from_json(const Json& j, const AlgebraContext& ctx) {
    using namespace detail_json;
    AlgebraElement a;
    for (const auto& t : require_array(j, "terms", "algebra element")) {
        const GroupElement g = group_element_from_json(t);
        if (static_cast<int>(g.v.size()) != ctx.group.rank()) {
            throw ConfigError("algebra element: field 'v' does not match the group rank");
        }
        const Scalar c = scalar_from_json(require_field(t, "coeff", "algebra element term"));
        if (c.order() != ctx.cyclotomic_order) {
            throw ConfigError("algebra element: coefficient field 'N' does not match the run's "
                              "cyclotomic order");
        }
        a.add_term(ctx.group.make(g.v, g.s), c);
    }
    return a;
}

inline Json chain_to_json(const Chain& c) {
    Json terms = Json::array();
    for (const auto& [t, coeff] : c.terms()) {
        Json tup = Json::array();
        for (const auto& g : t) tup.push_back(group_element_to_json(g));
        terms.push_back(Json{{"t", std::move(tup)}, {"coeff", scalar_to_json(coeff)}});
    }
    return Json{{"degree", c.degree()}, {"terms", std::move(terms)}};
}

inline Chain chain_from_json(const Json& j, const AlgebraContext& ctx) {
    using namespace detail_json;
    const long long degree = require_int(j, "degree", "chain");
    if (degree < -1) throw ConfigError("chain: field 'degree' must be >= -1");
    Chain c(static_cast<int>(degree));
    for (const auto& t : require_array(j, "terms", "chain")) {
        const Json& tup = require_array(t, "t", "chain term");
        if (static_cast<long long>(tup.size()) != degree + 1) {
            throw ConfigError("chain term: field 't' length does not match the degree");
        }
        GroupTuple gt;
        gt.reserve(tup.size());
        for (const auto& ge : tup) {
            GroupElement g = group_element_from_json(ge);
            if (static_cast<int>(g.v.size()) != ctx.group.rank()) {
                throw ConfigError("chain term: field 'v' does not match the group rank");
            }
            gt.push_back(ctx.group.make(g.v, g.s));
        }
        const Scalar coeff = scalar_from_json(require_field(t, "coeff", "chain term"));
        if (coeff.order() != ctx.cyclotomic_order) {
            throw ConfigError("chain term: coefficient field 'N' does not match the run's "
                              "cyclotomic order");
        }
        c.add_term(gt, coeff);
    }
    return c;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline Json report_to_json(const Report& r) {
    Json violations = Json::array();
    for (const auto& v : r.violations) violations.push_back(v);
    return Json{{"check", r.check},
                {"domain", Json{{"R", r.radius}}},
                {"violations", std::move(violations)},
                {"pass", r.pass()}};
}

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------

// Everything that determines a run: the group, the cocycle data, the
// cyclotomic order, the sweep radius, and the conjugator selector.
struct RunConfig {
    GroupSpec group;
    TwoCocycleForm form;
    Rational twist_rate;
    int cyclotomic_order = 12;
    int radius = 2;
    ConjugatorSelector selector = ConjugatorSelector::lex_min;

    AlgebraContext context() const {
        return AlgebraContext(group, form, twist_rate, cyclotomic_order);
    }

    static RunConfig example_Z2xZ3() {
        return RunConfig{GroupSpec::preset_Z2xZ3(), TwoCocycleForm::preset_symplectic(),
                         Rational(-1, 2), 12, 2, ConjugatorSelector::lex_min};
    }
};

inline Json run_config_to_json(const RunConfig& cfg) {
    return Json{{"group", group_to_json(cfg.group)},
                {"cocycle", cocycle_to_json(cfg.form, cfg.twist_rate)},
                {"cyclotomic_order", cfg.cyclotomic_order},
                {"radius", cfg.radius},
                {"selector", selector_name(cfg.selector)}};
}

inline RunConfig run_config_from_json(const Json& j) {
    using namespace detail_json;
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    GroupSpec group = group_from_json(require_field(j, "group", "config"));
    auto [form, rate] = cocycle_from_json(require_field(j, "cocycle", "config"));
    const long long order = require_int(j, "cyclotomic_order", "config");
    if (order <= 0) throw ConfigError("config: field 'cyclotomic_order' must be positive");
    long long radius = 2;
    if (auto it = j.find("radius"); it != j.end()) {
        if (!it->is_number_integer()) {
            throw ConfigError("config: field 'radius' must be an integer");
        }
        radius = it->get<long long>();
        if (radius < 0) throw ConfigError("config: field 'radius' must be >= 0");
    }
    ConjugatorSelector sel = ConjugatorSelector::lex_min;
    if (auto it = j.find("selector"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) throw ConfigError("config: field 'selector' must be a string");
        try {
            sel = selector_from_string(it->get<std::string>());
        } catch (const std::exception& e) {
            throw ConfigError(std::string("config: field 'selector': ") + e.what());
        }
    }
    // Shape mismatches are configuration errors; whether beta actually
    // satisfies the invariance the cocycle identity needs is left to the
    // verification suites, so corrupted forms surface as violations.
    if (static_cast<int>(form.beta().size()) != group.rank()) {
        throw ConfigError("config: field 'beta' rank does not match the group rank");
    }
    return RunConfig{std::move(group), std::move(form), rate, static_cast<int>(order),
                     static_cast<int>(radius), sel};
}

}  // namespace twistalg
