#include "oscillab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace oscillab::io {

namespace {

std::string trim(std::string_view s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string_view::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return std::string(s.substr(a, b - a + 1));
}

double parse_number(const std::string& s, int line) {
    double x = 0.0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, x);
    if (ec != std::errc() || ptr != end)
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": bad number '" + s + "'");
    return x;
}

int parse_int(const std::string& s) {
    int x = 0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, x);
    if (ec != std::errc() || ptr != end)
        throw Error(ErrorCode::ParseError, "bad header field '" + s + "'");
    return x;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
    return in;
}

}  // namespace

std::string num(double x) { return format_double(x); }

GridFile read_grid(std::istream& in) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!trim(line).empty()) break;
    }
    const std::string header = trim(line);
    if (header.empty()) throw Error(ErrorCode::ParseError, "empty grid file");
    std::vector<int> fields;
    std::stringstream hs(header);
    for (std::string tok; std::getline(hs, tok, ',');) fields.push_back(parse_int(trim(tok)));
    if (fields.size() < 2 || fields.size() > 3)
        throw Error(ErrorCode::ParseError, "header must be dims,side0[,side1]");
    const int dims = fields[0];
    if (dims == 1 && fields.size() != 2)
        throw Error(ErrorCode::ParseError, "1-D header takes one side");
    if (dims == 2 && fields.size() != 3)
        throw Error(ErrorCode::ParseError, "2-D header takes two sides");
    GridDomain domain;
    try {
        domain = dims == 1 ? make_domain(1, fields[1]) : make_domain(2, fields[1], fields[2]);
    } catch (const Error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    std::vector<double> values;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty()) continue;
        values.push_back(parse_number(t, lineno));
    }
    if (static_cast<int>(values.size()) != domain.cells())
        throw Error(ErrorCode::ParseError, "expected " + std::to_string(domain.cells()) +
                                               " values, found " + std::to_string(values.size()));
    GridFunction f = Eigen::Map<const GridFunction>(values.data(), domain.cells());
    return {domain, f};
}

GridFile read_grid(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_grid(in);
}

void write_grid(std::ostream& out, const GridDomain& domain, const GridFunction& values) {
    out << domain.dims << ',' << domain.sides[0];
    if (domain.dims == 2) out << ',' << domain.sides[1];
    out << '\n';
    for (Eigen::Index i = 0; i < values.size(); ++i) out << num(values[i]) << '\n';
}

void write_grid(const std::filesystem::path& path, const GridDomain& domain,
                const GridFunction& values) {
    std::ostringstream os;
    write_grid(os, domain, values);
    write_text(path, os.str());
}

nlohmann::json to_json(const GridDomain& domain) {
    nlohmann::json sides = nlohmann::json::array({domain.sides[0]});
    if (domain.dims == 2) sides.push_back(domain.sides[1]);
    return {{"dims", domain.dims}, {"sides", sides}, {"split", domain.split}};
}

nlohmann::json to_json(const BaseSet& b, int dims) {
    if (dims == 1) return {{"lo", {b.lo[0]}}, {"hi", {b.hi[0]}}};
    return {{"lo", {b.lo[0], b.lo[1]}}, {"hi", {b.hi[0], b.hi[1]}}};
}

nlohmann::json to_json(const BaseFamily& base) {
    return {{"kind", to_string(base.kind)},
            {"min_scale", base.min_scale},
            {"domain", to_json(base.domain)},
            {"sets", base.sets.size()},
            {"id", base.id}};
}

void write_weight(const std::filesystem::path& csv, const GridDomain& domain, const Weight& w) {
    write_grid(csv, domain, w.values());
    nlohmann::json side{{"id", w.id()}, {"provenance", w.provenance()}};
    nlohmann::json cached = nlohmann::json::object();
    for (const auto& [k, v] : w.cached_values()) cached[k] = v;
    side["cached"] = cached;
    write_text(csv.string() + ".json", side.dump(2) + "\n");
}

WeightFile read_weight(const std::filesystem::path& csv) {
    auto g = read_grid(csv);
    nlohmann::json prov = nlohmann::json::object();
    const std::filesystem::path side = csv.string() + ".json";
    if (std::filesystem::exists(side)) {
        try {
            auto j = nlohmann::json::parse(read_text(side));
            if (j.contains("provenance")) prov = j["provenance"];
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::ParseError, side.string() + ": " + e.what());
        }
    }
    for (Eigen::Index i = 0; i < g.values.size(); ++i)
        if (!std::isfinite(g.values[i]) || g.values[i] < 0.0)
            throw Error(ErrorCode::ParseError, "weight values must be finite and nonnegative");
    return {g.domain, Weight(g.values, prov)};
}

nlohmann::json to_json(const NormReport& r, int dims) {
    nlohmann::json j{{"value", r.value},
                     {"p", r.p},
                     {"weight_id", r.weight_id},
                     {"extremal", to_json(r.extremal, dims)}};
    if (!r.per_set.empty()) j["per_set"] = r.per_set;
    return j;
}

nlohmann::json to_json(const JNReport& r, int dims) {
    return {{"eta", r.eta},
            {"N", r.N},
            {"T_N", r.T_N},
            {"log_T_N", r.log_T_N},
            {"extremal", to_json(r.extremal, dims)},
            {"lambda_grid", r.lambda_grid},
            {"survival", r.survival},
            {"c1_hat", r.c1_hat},
            {"c2_hat", r.c2_hat},
            {"doubling", r.doubling},
            {"bmo_norm", r.bmo_norm},
            {"max_lambda", r.max_lambda}};
}

void write_survival_csv(std::ostream& out, const JNReport& r) {
    out << "lambda,mass\n";
    for (std::size_t k = 0; k < r.lambda_grid.size(); ++k)
        out << num(r.lambda_grid[k]) << ',' << num(r.survival[k]) << '\n';
}

TLSequence read_sequence(const nlohmann::json& j) {
    try {
        const int dims = j.at("dims").get<int>();
        const auto sides = j.at("sides").get<std::vector<int>>();
        if (sides.size() != static_cast<std::size_t>(dims))
            throw Error(ErrorCode::ParseError, "sides must have dims entries");
        GridDomain g = dims == 1 ? make_domain(1, sides[0]) : make_domain(2, sides[0], sides[1]);
        TLSequence s{g, {}};
        for (const auto& c : j.at("coeffs")) {
            const auto lo = c.at("lo").get<std::vector<int>>();
            const auto hi = c.at("hi").get<std::vector<int>>();
            if (lo.size() != sides.size() || hi.size() != sides.size())
                throw Error(ErrorCode::ParseError, "box corners must have dims entries");
            BaseSet b;
            for (int a = 0; a < dims; ++a) {
                b.lo[a] = lo[a];
                b.hi[a] = hi[a];
            }
            s.coeffs[b] = c.at("value").get<double>();
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

nlohmann::json to_json(const TLSequence& s) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& [b, x] : s.coeffs) {
        auto e = to_json(b, s.domain.dims);
        e["value"] = x;
        coeffs.push_back(e);
    }
    nlohmann::json sides = nlohmann::json::array({s.domain.sides[0]});
    if (s.domain.dims == 2) sides.push_back(s.domain.sides[1]);
    return {{"dims", s.domain.dims}, {"sides", sides}, {"coeffs", coeffs}};
}

std::string read_text(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

}  // namespace oscillab::io
