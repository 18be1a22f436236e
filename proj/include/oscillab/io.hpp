#pragma once

#include <filesystem>
#include <iosfwd>

#include "json.hpp"
#include "oscillab/verify.hpp"

namespace oscillab::io {

struct GridFile {
    GridDomain domain;
    GridFunction values;
};

// `dims,side0[,side1]` then one value per line, row-major. ParseError on
// anything malformed.
GridFile read_grid(std::istream& in);
GridFile read_grid(const std::filesystem::path& path);
void write_grid(std::ostream& out, const GridDomain& domain, const GridFunction& values);
void write_grid(const std::filesystem::path& path, const GridDomain& domain,
                const GridFunction& values);

nlohmann::json to_json(const GridDomain& domain);
nlohmann::json to_json(const BaseFamily& base);
nlohmann::json to_json(const BaseSet& b, int dims);

// Weight as CSV plus `<path>.json` sidecar with provenance and cached constants.
void write_weight(const std::filesystem::path& csv, const GridDomain& domain, const Weight& w);
struct WeightFile {
    GridDomain domain;
    Weight weight;
};
WeightFile read_weight(const std::filesystem::path& csv);

nlohmann::json to_json(const NormReport& r, int dims);
nlohmann::json to_json(const JNReport& r, int dims);
void write_survival_csv(std::ostream& out, const JNReport& r);

// {"dims":..,"sides":[..],"coeffs":[{"lo":[..],"hi":[..],"value":..},..]}
TLSequence read_sequence(const nlohmann::json& j);
nlohmann::json to_json(const TLSequence& s);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

// 17 significant digits, fixed locale
std::string num(double x);

}  // namespace oscillab::io
