// Prints the incidence table for (h, d) and one witness.
//
//   pkern_demo 3 1

#include "pkern/pkern.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv)
{
    int h = argc > 1 ? std::atoi(argv[1]) : 3;
    int d = argc > 2 ? std::atoi(argv[2]) : 1;
    try {
        pkern::Criterion criterion;
        auto manifest = pkern::ConventionManifest::calibrated_default();
        auto table = criterion.incidence_table({h, d}, manifest);
        std::cout << pkern::to_csv(table);

        // the minimal module of the first polygon, and the type it truncates to
        const auto& P = table.cols.front();
        auto s = pkern::lab::minimal_shtuka(P, pkern::lab::FieldConfig{}.field());
        auto w = pkern::lab::eo_classify(pkern::lab::bt1_of(s), {h, d});
        auto cell = criterion.lifts_to({h, d}, w, P, manifest);
        std::cout << "minimal module of " << P.to_string() << " has EO type " << w.to_string() << "\n";
        if (cell.witness)
            std::cout << pkern::to_json(*cell.witness, manifest).dump(2) << "\n";
    } catch (const pkern::Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 0;
}
