#pragma once

/**
 * @file io.hpp
 * @brief JSON, CSV and PGM serialization, and atomic file output.
 */

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "json.hpp"

#include "dynamics.hpp"
#include "rulematrix.hpp"

namespace lcaz {

using Json = nlohmann::ordered_json;

/// Writes to a sibling temp file, then renames it over the target.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::filesystem::remove(tmp);
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

inline Json coeffs_json(const RuleCoefficients& k) {
    Json arr = Json::array();
    for (auto v : k.values()) arr.push_back(v);
    return arr;
}

inline Json matrix_header_json(const RuleMatrix& T, const BoundarySpec& spec) {
    Json j;
    j["p"] = T.field().p();
    j["m"] = T.dims().m;
    j["n"] = T.dims().n;
    j["spec"] = spec.name;
    j["sides"] = {{"top", boundary_name(spec.top)},
                  {"bottom", boundary_name(spec.bottom)},
                  {"left", boundary_name(spec.left)},
                  {"right", boundary_name(spec.right)}};
    j["coeffs"] = T.coefficients() ? coeffs_json(*T.coefficients()) : Json::array();
    j["corner_rule"] = describe_corner_rule(spec.corners);
    return j;
}

inline std::string matrix_csv(const DenseMatrix& M) {
    std::ostringstream out;
    write_csv(out, M);
    return out.str();
}

inline Json to_json(const ReversibilityReport& r) {
    Json j;
    j["rank"] = r.rank;
    j["full_rank"] = r.full_rank;
    j["method"] = method_name(r.method);
    j["inverse_available"] = r.inverse_available;
    return j;
}

inline Json to_json(const FixedPointSet& f) {
    Json j;
    j["dimension"] = f.dimension;
    j["basis"] = f.basis;
    return j;
}

inline Json to_json(const GoeReport& g) {
    Json j;
    j["image_size_log_p"] = g.image_size_log_p;
    j["goe_count"] = g.goe_count.str();
    j["witness"] = g.witness ? Json(g.witness->cells()) : Json(nullptr);
    return j;
}

/// Binary P5, maxval 255; value v is written as v * floor(255 / (p - 1)).
inline std::string pgm(const Configuration& c) {
    const unsigned scale = 255u / (c.field().p() - 1);
    std::string out = "P5\n" + std::to_string(c.cols()) + " " + std::to_string(c.rows()) + "\n255\n";
    for (auto v : c.cells()) {
        const std::uint64_t px = std::uint64_t{v} * scale;
        out.push_back(static_cast<char>(px > 255 ? 255 : px));
    }
    return out;
}

} // namespace lcaz
