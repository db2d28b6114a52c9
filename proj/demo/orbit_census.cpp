// Transient and cycle lengths of random configurations under one rule,
// plus the Garden-of-Eden count of its rule matrix.
//
//   demo_orbit_census [spec] [p] [m] [n] [a,b,c,d,e,f,g,h]

#include <cstdio>
#include <cstdlib>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "lcaz.hpp"

int main(int argc, char** argv) {
    const std::string spec_name = argc > 1 ? argv[1] : "phi";
    const std::int64_t p = argc > 2 ? std::atoll(argv[2]) : 2;
    const std::int64_t m = argc > 3 ? std::atoll(argv[3]) : 3;
    const std::int64_t n = argc > 4 ? std::atoll(argv[4]) : 4;
    std::array<std::int64_t, 8> w = {1, 0, 1, 1, 0, 1, 0, 1};
    if (argc > 5) {
        std::stringstream ss(argv[5]);
        std::string item;
        for (auto& v : w)
            if (std::getline(ss, item, ',')) v = std::stoll(item);
    }

    try {
        const auto F = lcaz::make_field(p);
        const auto dims = lcaz::make_dims(m, n);
        const auto spec = lcaz::named_spec(spec_name);
        const lcaz::RuleCoefficients k(F, w);
        const auto T = lcaz::build_from_resolver(spec, dims, k);

        const auto goe = lcaz::goe_census(T);
        std::printf("rank %zu of %zu, Garden-of-Eden configurations: %s\n", goe.image_size_log_p, dims.cells(),
                    goe.goe_count.str().c_str());

        std::mt19937_64 rng(7);
        std::uniform_int_distribution<lcaz::Residue> cell(0, F.p() - 1);
        std::map<std::pair<std::size_t, std::size_t>, int> histogram;
        for (int trial = 0; trial < 200; ++trial) {
            lcaz::Configuration c(F, dims);
            for (auto& v : c.cells()) v = cell(rng);
            const auto o = lcaz::orbit(c, k, spec, 1u << 20);
            if (o.determined) ++histogram[{o.transient, o.cycle_length}];
        }
        std::printf("%10s %8s %6s\n", "transient", "cycle", "count");
        for (const auto& [key, count] : histogram) std::printf("%10zu %8zu %6d\n", key.first, key.second, count);
    } catch (const lcaz::Error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    }
}
