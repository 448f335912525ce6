// Computes the projection/trace pairing table of the Z^2 x| Z/3 example:
// spectral projections Q_{j,g} of the three torsion unitaries paired with
// the deformed traces tau^x over the six torsion classes.
//
// Usage: sample_pairing [config.json]
// With no argument the built-in example configuration is used.

#include <fstream>
#include <iostream>

#include "twistalg/json_io.hpp"
#include "twistalg/verify.hpp"

using namespace twistalg;

int main(int argc, char** argv) {
    RunConfig cfg = RunConfig::example_Z2xZ3();
    if (argc > 1) {
        std::ifstream in(argv[1]);
        if (!in) {
            std::cerr << "cannot open " << argv[1] << "\n";
            return 2;
        }
        try {
            cfg = run_config_from_json(Json::parse(in));
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }

    const AlgebraContext ctx = cfg.context();
    const PairingTable t = pairing_table(ctx, cfg.selector);

    // The table, with exact cyclotomic entries.
    std::cout << "pairing <tau^x, Q_{j,g}> (rows: projections, cols: traces)\n\n";
    for (const auto& col : t.col_labels) std::cout << "\t" << col;
    std::cout << "\n";
    for (std::size_t i = 0; i < t.row_labels.size(); ++i) {
        std::cout << t.row_labels[i];
        for (const auto& cell : t.entries[i]) std::cout << "\t" << cell.to_string();
        std::cout << "\n";
    }

    std::cout << "\ntheta-independent: " << (t.all_theta_independent() ? "yes" : "no") << "\n";

    // Every nonzero entry is (1/3) zeta_3 or (1/3) zeta_3^2; evaluating the
    // exact form numerically recovers the expected complex values.
    const Scalar headline = t.entries[0][3];  // (Q_1_w, tau_w)
    std::cout << "(Q_1_w, tau_w) = " << headline.to_string() << " ~= " << headline.evaluate(0.0)
              << "\n";
    return 0;
}
