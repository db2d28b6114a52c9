// lcaz: build rule matrices, analyze them and run linear CA over Z_p.
//
//   lcaz matrix  --p 3 --m 4 --n 3 --coeffs 1,1,1,1,1,1,1,1 --spec phi --out out/ [--check]
//   lcaz analyze --p 3 --m 4 --n 3 --coeffs 1,1,1,1,1,1,1,1 --spec phi [--out out/]
//   lcaz run     --p 5 --m 3 --n 3 --spec phi --init frame.txt --steps 5 [--backward] [--pgm] --out frames/
//
// Exit codes: 0 ok, 1 I/O failure, 2 invalid input, 3 builder mismatch
// under --check, 4 --backward on an irreversible rule.

#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lcaz.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitNotReversible = 4;

struct JobConfig {
    std::int64_t p = 3;
    std::int64_t m = 3;
    std::int64_t n = 3;
    std::string coeffs = "1,1,1,1,1,1,1,1";
    std::string spec = "phi";
    std::string out;
    std::string config;
    std::string init;
    std::uint64_t seed = 0;
    std::int64_t steps = 1;
    bool check = false;
    bool backward = false;
    bool pgm = false;
};

struct Options {
    CLI::Option* p = nullptr;
    CLI::Option* m = nullptr;
    CLI::Option* n = nullptr;
    CLI::Option* coeffs = nullptr;
    CLI::Option* spec = nullptr;
    CLI::Option* out = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* check = nullptr;
    CLI::Option* init = nullptr;
    CLI::Option* steps = nullptr;
    CLI::Option* backward = nullptr;
    CLI::Option* pgm = nullptr;
};

void add_common(CLI::App* cmd, JobConfig& cfg, Options& o) {
    o.p = cmd->add_option("--p", cfg.p, "prime modulus");
    o.m = cmd->add_option("--m", cfg.m, "lattice rows");
    o.n = cmd->add_option("--n", cfg.n, "lattice columns");
    o.coeffs = cmd->add_option("--coeffs", cfg.coeffs, "eight weights a,b,c,d,e,f,g,h (NW N NE E SE S SW W)");
    o.spec = cmd->add_option("--spec", cfg.spec, "boundary spec: nb pb ab rb phi psi tau sigma lambda xi "
                                                 "phi90 phi180 phi270, or custom:TBLR with letters n/p/a/r");
    o.out = cmd->add_option("--out", cfg.out, "output directory");
    o.seed = cmd->add_option("--seed", cfg.seed, "random seed");
    cmd->add_option("--config", cfg.config, "JSON job file; flags override its values");
}

// Fills every field the command line left unset from the JSON file.
void merge_config(JobConfig& cfg, const Options& o) {
    if (cfg.config.empty()) return;
    std::ifstream in(cfg.config);
    if (!in) throw lcaz::Error(lcaz::ErrorCode::ParseError, "cannot read config " + cfg.config);
    lcaz::Json j;
    try {
        j = lcaz::Json::parse(in);
    } catch (const std::exception& e) {
        throw lcaz::Error(lcaz::ErrorCode::ParseError, std::string("config: ") + e.what());
    }
    auto take = [&](CLI::Option* opt, const char* key, auto& field) {
        if ((opt == nullptr || opt->count() == 0) && j.contains(key)) {
            try {
                j.at(key).get_to(field);
            } catch (const std::exception& e) {
                throw lcaz::Error(lcaz::ErrorCode::ParseError, std::string("config key '") + key + "': " + e.what());
            }
        }
    };
    take(o.p, "p", cfg.p);
    take(o.m, "m", cfg.m);
    take(o.n, "n", cfg.n);
    take(o.spec, "spec", cfg.spec);
    take(o.out, "out", cfg.out);
    take(o.seed, "seed", cfg.seed);
    take(o.init, "init", cfg.init);
    take(o.steps, "steps", cfg.steps);
    take(o.check, "check", cfg.check);
    take(o.backward, "backward", cfg.backward);
    take(o.pgm, "pgm", cfg.pgm);
    if (o.coeffs->count() == 0 && j.contains("coeffs")) {
        const auto& c = j.at("coeffs");
        if (c.is_array()) {
            std::string joined;
            for (const auto& v : c) {
                if (!v.is_number_integer()) throw lcaz::Error(lcaz::ErrorCode::ParseError, "config coeffs must be integers");
                joined += (joined.empty() ? "" : ",") + std::to_string(v.get<std::int64_t>());
            }
            cfg.coeffs = joined;
        } else if (c.is_string()) {
            cfg.coeffs = c.get<std::string>();
        } else {
            throw lcaz::Error(lcaz::ErrorCode::ParseError, "config coeffs must be an array or a string");
        }
    }
}

lcaz::RuleCoefficients parse_coeffs(lcaz::FieldSpec F, const std::string& text) {
    std::array<std::int64_t, 8> w{};
    std::stringstream ss(text);
    std::string item;
    std::size_t k = 0;
    while (std::getline(ss, item, ',')) {
        if (k == 8) throw lcaz::Error(lcaz::ErrorCode::ParseError, "more than eight coefficients");
        std::size_t used = 0;
        try {
            w[k] = std::stoll(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
            throw lcaz::Error(lcaz::ErrorCode::ParseError, "coefficient '" + item + "'");
        if (w[k] < 0 || w[k] >= static_cast<std::int64_t>(F.p()))
            throw lcaz::Error(lcaz::ErrorCode::OutOfRange, "coefficient " + item + " not in [0, p)");
        ++k;
    }
    if (k != 8) throw lcaz::Error(lcaz::ErrorCode::ParseError, "expected eight coefficients, got " + std::to_string(k));
    return lcaz::RuleCoefficients(F, w);
}

struct Job {
    lcaz::FieldSpec field;
    lcaz::LatticeDims dims;
    lcaz::RuleCoefficients coeffs;
    lcaz::BoundarySpec spec;
};

Job validate(const JobConfig& cfg) {
    const lcaz::FieldSpec F = lcaz::make_field(cfg.p);
    const lcaz::LatticeDims dims = lcaz::make_dims(cfg.m, cfg.n);
    return {F, dims, parse_coeffs(F, cfg.coeffs), lcaz::named_spec(cfg.spec)};
}

bool has_theorem_matrix(const lcaz::BoundarySpec& spec) {
    for (auto name : lcaz::named_spec_names)
        if (spec.name == name) return true;
    return false;
}

lcaz::RuleMatrix build(const Job& job) {
    if (has_theorem_matrix(job.spec)) return lcaz::build_theorem_matrix(job.spec.name, job.dims, job.coeffs);
    return lcaz::build_from_resolver(job.spec, job.dims, job.coeffs);
}

int cmd_matrix(const JobConfig& cfg) {
    const Job job = validate(cfg);
    const lcaz::RuleMatrix T = build(job);
    const lcaz::DenseMatrix D = T.dense();

    if (cfg.check) {
        const lcaz::DenseMatrix R = lcaz::build_from_resolver(job.spec, job.dims, job.coeffs).dense();
        std::size_t mismatches = 0;
        for (std::size_t r = 0; r < D.rows(); ++r)
            for (std::size_t c = 0; c < D.cols(); ++c)
                if (D(r, c) != R(r, c)) {
                    if (mismatches++ < 20)
                        std::cerr << "mismatch at (" << r + 1 << "," << c + 1 << "): theorem " << D(r, c)
                                  << ", resolver " << R(r, c) << "\n";
                }
        if (mismatches != 0) {
            std::cerr << mismatches << " mismatched entries\n";
            return kExitMismatch;
        }
        std::cerr << "check: theorem and resolver matrices agree (" << D.rows() << "x" << D.cols() << ")\n";
    }

    if (cfg.out.empty()) {
        std::cout << lcaz::matrix_csv(D);
    } else {
        lcaz::write_file_atomic(fs::path(cfg.out) / "matrix.csv", lcaz::matrix_csv(D));
        lcaz::write_file_atomic(fs::path(cfg.out) / "matrix.json", lcaz::matrix_header_json(T, job.spec).dump(2) + "\n");
    }
    return 0;
}

int cmd_analyze(const JobConfig& cfg) {
    const Job job = validate(cfg);
    const lcaz::RuleMatrix T = build(job);
    const auto rev = lcaz::reversibility(T);
    const auto nil = lcaz::is_nilpotent(T);
    const auto fix = lcaz::fixed_points(T);
    const auto goe = lcaz::goe_census(T);

    lcaz::Json j;
    j["p"] = job.field.p();
    j["m"] = job.dims.m;
    j["n"] = job.dims.n;
    j["spec"] = job.spec.name;
    j["coeffs"] = lcaz::coeffs_json(job.coeffs);
    j["rank"] = rev.rank;
    j["full_rank"] = rev.full_rank;
    j["method"] = lcaz::method_name(rev.method);
    j["nilpotent"] = nil.nilpotent;
    j["nilpotency_index"] = nil.nilpotent ? lcaz::Json(nil.index) : lcaz::Json(nullptr);
    j["fixed_point_dimension"] = fix.dimension;
    j["fixed_point_basis"] = fix.basis;
    j["goe_count"] = goe.goe_count.str();
    j["goe_witness"] = goe.witness ? lcaz::Json(goe.witness->cells()) : lcaz::Json(nullptr);

    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!cfg.out.empty()) lcaz::write_file_atomic(fs::path(cfg.out) / "report.json", text);
    return 0;
}

lcaz::Configuration initial_configuration(const JobConfig& cfg, const Job& job) {
    if (!cfg.init.empty()) {
        std::ifstream in(cfg.init);
        if (!in) throw lcaz::Error(lcaz::ErrorCode::ParseError, "cannot read " + cfg.init);
        lcaz::Configuration c = lcaz::read_configuration(in);
        if (c.field().p() != job.field.p() || !(c.dims() == job.dims))
            throw lcaz::Error(lcaz::ErrorCode::DimensionMismatch,
                              "initial frame is p=" + std::to_string(c.field().p()) + " " + std::to_string(c.rows()) +
                                  "x" + std::to_string(c.cols()) + ", job is p=" + std::to_string(job.field.p()) + " " +
                                  std::to_string(job.dims.m) + "x" + std::to_string(job.dims.n));
        return c;
    }
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<std::uint32_t> cell(0, job.field.p() - 1);
    lcaz::Configuration c(job.field, job.dims);
    for (auto& v : c.cells()) v = cell(rng);
    return c;
}

std::string frame_stem(std::int64_t t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "frame_%04lld", static_cast<long long>(t));
    return buf;
}

int cmd_run(const JobConfig& cfg) {
    const Job job = validate(cfg);
    if (cfg.steps < 0) throw lcaz::Error(lcaz::ErrorCode::OutOfRange, "steps must be >= 0");
    lcaz::Configuration c = initial_configuration(cfg, job);

    std::optional<lcaz::ReversibilityReport> rev;
    if (cfg.backward) {
        rev = lcaz::reversibility(build(job));
        if (!rev->full_rank)
            throw lcaz::Error(lcaz::ErrorCode::NotReversible, "rank " + std::to_string(rev->rank) + " < " +
                                                                  std::to_string(job.dims.cells()));
    }

    auto emit = [&](std::int64_t t, const lcaz::Configuration& frame) {
        if (cfg.out.empty()) {
            std::cout << "# " << frame_stem(t) << "\n" << lcaz::format_configuration(frame);
            return;
        }
        const fs::path dir(cfg.out);
        lcaz::write_file_atomic(dir / (frame_stem(t) + ".txt"), lcaz::format_configuration(frame));
        if (cfg.pgm) lcaz::write_file_atomic(dir / (frame_stem(t) + ".pgm"), lcaz::pgm(frame));
    };

    emit(0, c);
    for (std::int64_t t = 1; t <= cfg.steps; ++t) {
        c = cfg.backward ? lcaz::step_backward(c, *rev) : lcaz::step(c, job.coeffs, job.spec);
        emit(t, c);
    }
    return 0;
}

int exit_code_for(lcaz::ErrorCode code) {
    switch (code) {
    case lcaz::ErrorCode::NotReversible: return kExitNotReversible;
    default: return kExitInvalid;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linear cellular automata over Z_p with mixed boundary conditions"};
    app.require_subcommand(1);

    JobConfig cfg;
    Options matrix_opts, analyze_opts, run_opts;

    auto* matrix = app.add_subcommand("matrix", "write the rule matrix as CSV plus a JSON header");
    add_common(matrix, cfg, matrix_opts);
    matrix_opts.check = matrix->add_flag("--check", cfg.check, "cross-check the closed form against the stepper");

    auto* analyze = app.add_subcommand("analyze", "rank, reversibility, nilpotency, fixed points, Garden-of-Eden count");
    add_common(analyze, cfg, analyze_opts);

    auto* run = app.add_subcommand("run", "evolve a configuration and write one frame per step");
    add_common(run, cfg, run_opts);
    run_opts.init = run->add_option("--init", cfg.init, "initial frame in grid text format (default: random from --seed)");
    run_opts.steps = run->add_option("--steps", cfg.steps, "number of steps");
    run_opts.backward = run->add_flag("--backward", cfg.backward, "step with the inverse rule matrix");
    run_opts.pgm = run->add_flag("--pgm", cfg.pgm, "also write PGM images");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInvalid;
    }

    try {
        if (matrix->parsed()) {
            merge_config(cfg, matrix_opts);
            return cmd_matrix(cfg);
        }
        if (analyze->parsed()) {
            merge_config(cfg, analyze_opts);
            return cmd_analyze(cfg);
        }
        merge_config(cfg, run_opts);
        return cmd_run(cfg);
    } catch (const lcaz::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
}
