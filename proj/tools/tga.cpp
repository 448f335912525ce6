// tga — batch front-end for the twisted group algebra library.
//
// Subcommands:
//   classes     conjugacy classes of the configured group within ball(R)
//   verify      run verification suites; exit 0 iff no violations
//   pair-table  the 6x6 projection/trace pairing matrix (JSON or CSV)
//   eval        pair a JSON cochain spec against a JSON chain
//
// Exit codes: 0 pass, 1 violations, 2 configuration error.
//
// All output is deterministic: identical configuration produces identical
// bytes (fields are emitted in fixed order and every container iterates in
// canonical sorted order).

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twistalg/json_io.hpp"
#include "twistalg/verify.hpp"

using namespace twistalg;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string selector;
    std::string out_path;
    std::string format = "json";
    int radius = 2;
    int cyclotomic_order = 12;
    CLI::Option* radius_opt = nullptr;
    CLI::Option* cyclo_opt = nullptr;
    CLI::Option* selector_opt = nullptr;
};

void add_common_options(CLI::App* sub, CommonOpts& c, bool with_format) {
    sub->add_option("--config", c.config_path,
                    "run configuration JSON (defaults to the built-in Z2xZ3 example)");
    c.radius_opt = sub->add_option("--radius", c.radius, "ball radius override");
    c.selector_opt =
        sub->add_option("--selector", c.selector, "conjugator selector: lex_min | example_Z2Z3");
    c.cyclo_opt =
        sub->add_option("--cyclotomic-order", c.cyclotomic_order, "cyclotomic order N override");
    if (with_format) {
        sub->add_option("--format", c.format, "output format: json | csv")
            ->check(CLI::IsMember({"json", "csv"}));
    }
    sub->add_option("--out", c.out_path, "write output to this file instead of stdout");
}

RunConfig load_run_config(const CommonOpts& c) {
    RunConfig cfg = RunConfig::example_Z2xZ3();
    if (!c.config_path.empty()) {
        std::ifstream in(c.config_path);
        if (!in) throw ConfigError("config: cannot open '" + c.config_path + "'");
        Json j;
        try {
            j = Json::parse(in);
        } catch (const std::exception& e) {
            throw ConfigError("config: '" + c.config_path + "' is not valid JSON: " + e.what());
        }
        cfg = run_config_from_json(j);
    }
    if (c.radius_opt && c.radius_opt->count() > 0) {
        if (c.radius < 0) throw ConfigError("config: field 'radius' must be >= 0");
        cfg.radius = c.radius;
    }
    if (c.cyclo_opt && c.cyclo_opt->count() > 0) {
        if (c.cyclotomic_order <= 0) {
            throw ConfigError("config: field 'cyclotomic_order' must be positive");
        }
        cfg.cyclotomic_order = c.cyclotomic_order;
    }
    if (c.selector_opt && c.selector_opt->count() > 0) {
        try {
            cfg.selector = selector_from_string(c.selector);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("config: field 'selector': ") + e.what());
        }
    }
    if (static_cast<int>(cfg.form.beta().size()) != cfg.group.rank()) {
        throw ConfigError("config: field 'beta' rank does not match the group rank");
    }
    return cfg;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + out_path + "'");
    out << text;
}

// ---------------------------------------------------------------------------
// classes
// ---------------------------------------------------------------------------

Json classes_json(const RunConfig& cfg) {
    Json arr = Json::array();
    for (const auto& cls : conjugacy_classes_in_ball(cfg.group, cfg.radius)) {
        const GroupElement& rep = cls.representative;
        Json c{{"representative", group_element_to_json(rep)},
               {"size_in_ball", cls.members.size()},
               {"torsion", rep.s != 0}};
        const auto ord = cfg.group.element_order(rep);
        c["order"] = ord.has_value() ? Json(*ord) : Json(nullptr);
        if (rep.s != 0 && ord.has_value()) {
            c["centralizer_size"] = centralizer_of_torsion(cfg.group, rep).size();
        } else {
            c["centralizer_size"] = nullptr;
        }
        arr.push_back(std::move(c));
    }
    return Json{{"radius", cfg.radius},
                {"group", group_to_json(cfg.group)},
                {"classes", std::move(arr)}};
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

const std::vector<std::string> kAllSuites = {"cartan",    "cocycle", "homotopy",
                                             "monodromy", "projection", "trace"};

std::vector<Report> run_suite(const std::string& name, const RunConfig& cfg) {
    const int R = cfg.radius;
    // The cocycle suite runs on the raw (group, beta) data so a corrupted
    // form is reported as identity violations rather than rejected up front.
    if (name == "cocycle") {
        std::vector<Report> out;
        out.push_back(verify_cocycle_identity(cfg.group, cfg.form, R));
        try {
            out.push_back(verify_associativity(cfg.context(), std::min(R, 2)));
        } catch (const std::exception& e) {
            Report rep{"associativity", std::min(R, 2), {}};
            rep.flag(std::string("twisted algebra rejected the configuration: ") + e.what());
            out.push_back(std::move(rep));
        }
        return out;
    }
    const AlgebraContext ctx = cfg.context();
    if (name == "trace") {
        auto out = suite_trace(ctx, cfg.selector, R);
        // Mixed-ordering consistency, where the group supports it.
        if (ctx.group.rank() == 2 && ctx.group.finite_order() >= 2) {
            const auto reps = torsion_class_representatives(ctx.group, 1);
            if (!reps.empty()) {
                const ClassContext cc(ctx, reps.front(), cfg.selector);
                out.push_back(verify_traciality_mixed(cc, std::max(1, R)));
            }
        }
        return out;
    }
    if (name == "projection") return suite_projection(ctx);
    if (name == "homotopy") return suite_homotopy(ctx, cfg.selector, 40, 2024);
    if (name == "cartan") return suite_cartan(ctx, 40, 909);
    if (name == "monodromy") {
        const int rb = std::max(1, std::min(R - 1, 2));
        return suite_monodromy(ctx, cfg.selector, std::max(1, R), rb);
    }
    throw ConfigError("config: unknown suite '" + name + "'");
}

int cmd_verify(const RunConfig& cfg, std::vector<std::string> suites,
               const std::string& out_path) {
    if (suites.empty()) suites = kAllSuites;
    std::sort(suites.begin(), suites.end());
    suites.erase(std::unique(suites.begin(), suites.end()), suites.end());
    for (const auto& s : suites) {
        if (std::find(kAllSuites.begin(), kAllSuites.end(), s) == kAllSuites.end()) {
            throw ConfigError("config: unknown suite '" + s + "' (expected a subset of "
                              "cartan, cocycle, homotopy, monodromy, projection, trace)");
        }
    }

    Json results = Json::array();
    std::size_t total_violations = 0;
    std::ostringstream human;
    for (const auto& s : suites) {
        std::vector<Report> suite_reports;
        try {
            suite_reports = run_suite(s, cfg);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            // A configuration the twisted algebra rejects (e.g. a corrupted
            // beta) fails the suite instead of aborting the run.
            Report rep{s + "_setup", cfg.radius, {}};
            rep.flag(e.what());
            suite_reports.push_back(std::move(rep));
        }
        Json reports = Json::array();
        for (const Report& rep : suite_reports) {
            total_violations += rep.violations.size();
            human << "  " << rep.check << " (R=" << rep.radius << "): "
                  << (rep.pass() ? "pass" : "FAIL [" + std::to_string(rep.violations.size()) +
                                                " violations]")
                  << "\n";
            reports.push_back(report_to_json(rep));
        }
        results.push_back(Json{{"suite", s}, {"reports", std::move(reports)}});
    }

    const bool pass = total_violations == 0;
    Json out{{"config", run_config_to_json(cfg)},
             {"results", std::move(results)},
             {"violations", total_violations},
             {"pass", pass}};
    emit(out.dump(2) + "\n", out_path);
    std::cerr << "verify: " << suites.size() << " suite(s)\n"
              << human.str() << (pass ? "PASS" : "FAIL") << " (" << total_violations
              << " violations)\n";
    return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// pair-table
// ---------------------------------------------------------------------------

std::string pair_table_csv(const PairingTable& t) {
    std::ostringstream os;
    for (const auto& col : t.col_labels) os << "," << col;
    os << "\n";
    for (std::size_t i = 0; i < t.row_labels.size(); ++i) {
        os << t.row_labels[i];
        for (const auto& cell : t.entries[i]) os << "," << cell.to_string();
        os << "\n";
    }
    return os.str();
}

Json pair_table_json(const PairingTable& t) {
    Json rows = Json::array();
    Json cols = Json::array();
    for (const auto& r : t.row_labels) rows.push_back(r);
    for (const auto& c : t.col_labels) cols.push_back(c);
    Json entries = Json::array();
    Json rendered = Json::array();
    for (const auto& row : t.entries) {
        Json er = Json::array();
        Json rr = Json::array();
        for (const auto& cell : row) {
            er.push_back(scalar_to_json(cell));
            rr.push_back(cell.to_string());
        }
        entries.push_back(std::move(er));
        rendered.push_back(std::move(rr));
    }
    return Json{{"rows", std::move(rows)},
                {"cols", std::move(cols)},
                {"entries", std::move(entries)},
                {"rendered", std::move(rendered)},
                {"theta_independent", t.all_theta_independent()}};
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

Json cmd_eval(const RunConfig& cfg, const std::string& input_path) {
    std::ifstream in(input_path);
    if (!in) throw ConfigError("eval: cannot open '" + input_path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const std::exception& e) {
        throw ConfigError("eval: '" + input_path + "' is not valid JSON: " + e.what());
    }

    const AlgebraContext ctx = cfg.context();
    const Json& cochain_spec = detail_json::require_field(j, "cochain", "eval input");
    const std::string kind = detail_json::require_string(cochain_spec, "kind", "eval cochain");
    const GroupElement anchor_raw = group_element_from_json(
        detail_json::require_field(cochain_spec, "anchor", "eval cochain"));
    if (static_cast<int>(anchor_raw.v.size()) != ctx.group.rank()) {
        throw ConfigError("eval cochain: field 'anchor' does not match the group rank");
    }
    const GroupElement anchor = ctx.group.make(anchor_raw.v, anchor_raw.s);

    std::optional<ClassContext> cc;
    try {
        cc.emplace(ctx, anchor, cfg.selector);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("eval cochain: field 'anchor': ") + e.what());
    }

    Cochain D;
    if (kind == "trace") {
        D = cc->trace_cochain();
    } else if (kind == "xi") {
        D = cc->xi_cochain();
    } else if (kind == "theta") {
        D = cc->theta_cochain();
    } else {
        throw ConfigError("eval cochain: unknown kind '" + kind +
                          "' (expected trace, xi, or theta)");
    }

    const Chain chain = chain_from_json(detail_json::require_field(j, "chain", "eval input"), ctx);
    if (chain.degree() != D.degree) {
        throw ConfigError("eval: chain degree " + std::to_string(chain.degree()) +
                          " does not match the '" + kind + "' cochain degree " +
                          std::to_string(D.degree));
    }

    Scalar value = Scalar::zero(ctx.cyclotomic_order);
    for (const auto& [t, c] : chain.terms()) value = value + c * D(t);

    return Json{{"cochain", Json{{"kind", kind}, {"anchor", group_element_to_json(anchor)}}},
                {"degree", chain.degree()},
                {"value", scalar_to_json(value)},
                {"rendered", value.to_string()}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"twisted group algebra toolkit: conjugacy classes, verification suites, "
                 "projection/trace pairing tables, ad-hoc cochain evaluation"};
    app.require_subcommand(1);

    CommonOpts c_classes, c_verify, c_table, c_eval;
    std::vector<std::string> suites;
    std::string eval_input;

    CLI::App* sub_classes =
        app.add_subcommand("classes", "list conjugacy classes within ball(R)");
    add_common_options(sub_classes, c_classes, false);

    CLI::App* sub_verify = app.add_subcommand("verify", "run verification suites");
    add_common_options(sub_verify, c_verify, false);
    sub_verify
        ->add_option("--suite", suites,
                     "suites to run (default: all of cartan, cocycle, homotopy, monodromy, "
                     "projection, trace)")
        ->delimiter(',');

    CLI::App* sub_table =
        app.add_subcommand("pair-table", "projection/trace pairing matrix (Z2xZ3 preset)");
    add_common_options(sub_table, c_table, true);

    CLI::App* sub_eval =
        app.add_subcommand("eval", "pair a JSON cochain spec against a JSON chain");
    sub_eval->add_option("input", eval_input, "JSON file with 'cochain' and 'chain'")
        ->required();
    add_common_options(sub_eval, c_eval, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sub_classes->parsed()) {
            const RunConfig cfg = load_run_config(c_classes);
            emit(classes_json(cfg).dump(2) + "\n", c_classes.out_path);
            return 0;
        }
        if (sub_verify->parsed()) {
            const RunConfig cfg = load_run_config(c_verify);
            return cmd_verify(cfg, suites, c_verify.out_path);
        }
        if (sub_table->parsed()) {
            const RunConfig cfg = load_run_config(c_table);
            PairingTable t;
            try {
                t = pairing_table(cfg.context(), cfg.selector);
            } catch (const std::exception& e) {
                throw ConfigError(std::string("pair-table: ") + e.what());
            }
            if (c_table.format == "csv") {
                emit(pair_table_csv(t), c_table.out_path);
            } else {
                emit(pair_table_json(t).dump(2) + "\n", c_table.out_path);
            }
            return 0;
        }
        if (sub_eval->parsed()) {
            const RunConfig cfg = load_run_config(c_eval);
            emit(cmd_eval(cfg, eval_input).dump(2) + "\n", c_eval.out_path);
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
