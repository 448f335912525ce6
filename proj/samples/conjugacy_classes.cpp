// Lists the conjugacy classes of a crystallographic group within a ball and,
// for each torsion class, shows the class correction xi on nearby members
// and the resulting deformed trace values.
//
// Usage: sample_classes [config.json]
// With no argument the built-in Z^2 x| Z/3 example is used at radius 2.

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

    std::cout << "conjugacy classes of " << (cfg.group.preset() == "custom" ? "a custom group"
                                                                            : cfg.group.preset())
              << " within ball(" << cfg.radius << ")\n\n";

    const auto classes = conjugacy_classes_in_ball(cfg.group, cfg.radius);
    for (const auto& cls : classes) {
        const GroupElement& rep = cls.representative;
        std::cout << "class of " << to_string(rep) << ": " << cls.members.size()
                  << " member(s) in ball";
        if (const auto ord = cfg.group.element_order(rep)) {
            std::cout << ", order " << *ord;
            if (rep.s != 0) {
                std::cout << ", centralizer size "
                          << centralizer_of_torsion(cfg.group, rep).size();
            }
        } else {
            std::cout << ", infinite order";
        }
        std::cout << "\n";
    }

    // For torsion classes the anchored model gives the class correction xi
    // and the deformed trace tau^x(lambda_g) = q^{rate * xi(g)} on the class.
    const AlgebraContext ctx = cfg.context();
    std::cout << "\nclass corrections of the torsion classes (members in ball(1)):\n";
    for (const auto& x : torsion_class_representatives(cfg.group, 1)) {
        const ClassContext cc(ctx, x, cfg.selector);
        std::cout << "  anchor " << to_string(x) << ":";
        for (const auto& g : class_members_in_ball(cc, 1)) {
            std::cout << "  xi" << to_string(g) << " = " << rational_string(cc.xi(g));
        }
        std::cout << "\n";
    }
    if (torsion_class_representatives(cfg.group, 1).empty()) {
        std::cout << "  (none: the group is torsion-free)\n";
    }
    return 0;
}
