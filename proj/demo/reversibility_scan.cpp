// Fraction of reversible rules for each named boundary spec.
//
//   demo_reversibility_scan [p] [m] [n] [draws]

#include <cstdio>
#include <cstdlib>
#include <random>

#include "lcaz.hpp"

int main(int argc, char** argv) {
    const std::int64_t p = argc > 1 ? std::atoll(argv[1]) : 3;
    const std::int64_t m = argc > 2 ? std::atoll(argv[2]) : 4;
    const std::int64_t n = argc > 3 ? std::atoll(argv[3]) : 4;
    const int draws = argc > 4 ? std::atoi(argv[4]) : 500;

    const auto F = lcaz::make_field(p);
    const auto dims = lcaz::make_dims(m, n);
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::int64_t> w(0, p - 1);

    std::printf("%-8s %10s %10s %8s\n", "spec", "reversible", "block", "share");
    for (auto name : lcaz::named_spec_names) {
        int reversible = 0, block = 0;
        for (int k = 0; k < draws; ++k) {
            std::array<std::int64_t, 8> c{};
            for (auto& v : c) v = w(rng);
            const auto report = lcaz::reversibility(lcaz::build_theorem_matrix(name, dims, lcaz::RuleCoefficients(F, c)));
            reversible += report.full_rank;
            block += report.method == lcaz::RankMethod::Block;
        }
        std::printf("%-8s %10d %10d %7.1f%%\n", std::string(name).c_str(), reversible, block,
                    100.0 * reversible / draws);
    }
}
