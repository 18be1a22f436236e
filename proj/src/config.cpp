#include "oscillab/config.hpp"

#include <charconv>
#include <sstream>

#include "oscillab/io.hpp"

namespace oscillab {

namespace {

std::string trim(std::string_view s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string_view::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return std::string(s.substr(a, b - a + 1));
}

template <class T>
T number(const std::string& key, const std::string& s) {
    T x{};
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, x);
    if (ec != std::errc() || ptr != end)
        throw Error(ErrorCode::ParseError, "config: bad value for " + key + ": '" + s + "'");
    return x;
}

bool boolean(const std::string& key, const std::string& s) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw Error(ErrorCode::ParseError, "config: bad boolean for " + key + ": '" + s + "'");
}

}  // namespace

std::string RunConfig::to_text() const {
    std::ostringstream os;
    os << "base=" << to_string(base) << '\n'
       << "min_scale=" << min_scale << '\n'
       << "split=" << (split ? "true" : "false") << '\n'
       << "measure=" << measure << '\n'
       << "maximal=" << to_string(maximal) << '\n'
       << "norm_bound=" << format_double(norm_bound) << '\n'
       << "besicovitch=" << format_double(besicovitch) << '\n'
       << "setting=" << to_string(setting) << '\n'
       << "tau=" << format_double(tau) << '\n'
       << "homogeneous_c=" << format_double(homogeneous_c) << '\n'
       << "seed=" << seed << '\n'
       << "trials=" << trials << '\n'
       << "corpus_size=" << corpus_size << '\n'
       << "rdf_tol=" << format_double(rdf_tol) << '\n'
       << "out_dir=" << out_dir << '\n';
    return os.str();
}

std::string RunConfig::digest() const {
    Digest d;
    d.update(to_text());
    return d.hex();
}

RunConfig parse_config(std::string_view text) {
    RunConfig c;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::ParseError, "config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        if (key == "base") c.base = parse_base_kind(val);
        else if (key == "min_scale") c.min_scale = number<int>(key, val);
        else if (key == "split") c.split = boolean(key, val);
        else if (key == "measure") c.measure = val;
        else if (key == "maximal") c.maximal = parse_maximal_mode(val);
        else if (key == "norm_bound") c.norm_bound = number<double>(key, val);
        else if (key == "besicovitch") c.besicovitch = number<double>(key, val);
        else if (key == "setting") c.setting = parse_setting(val);
        else if (key == "tau") c.tau = number<double>(key, val);
        else if (key == "homogeneous_c") c.homogeneous_c = number<double>(key, val);
        else if (key == "seed") c.seed = number<std::uint64_t>(key, val);
        else if (key == "trials") c.trials = number<int>(key, val);
        else if (key == "corpus_size") c.corpus_size = number<int>(key, val);
        else if (key == "rdf_tol") c.rdf_tol = number<double>(key, val);
        else if (key == "out_dir") c.out_dir = val;
        else throw Error(ErrorCode::ParseError, "config: unknown key '" + key + "'");
    }
    if (c.trials < 0 || c.corpus_size < 1 || !(c.rdf_tol > 0.0 && c.rdf_tol < 1.0) ||
        c.norm_bound < 0.0 || c.besicovitch < 0.0 || c.min_scale < 0)
        throw Error(ErrorCode::ParseError, "config: value out of range");
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    return parse_config(io::read_text(path));
}

std::shared_ptr<const GridSpace> space_from_config(const RunConfig& cfg, GridDomain domain) {
    if (cfg.split && domain.dims == 2) domain.split = true;
    Measure mu = uniform_measure(domain);
    if (cfg.measure != "uniform") {
        auto g = io::read_grid(std::filesystem::path(cfg.measure));
        if (!(g.domain.dims == domain.dims && g.domain.sides == domain.sides))
            throw Error(ErrorCode::BadDomain, "measure grid does not match the domain");
        mu = general_measure(domain, g.values);
    }
    SelfImprovementParams si;
    si.setting = cfg.setting;
    si.dims = domain.dims;
    si.besicovitch = cfg.besicovitch > 0.0 ? cfg.besicovitch : (domain.dims == 1 ? 2.0 : 16.0);
    si.tau = cfg.tau;
    si.C = cfg.homogeneous_c;
    return make_space(domain, mu, cfg.base, cfg.min_scale,
                      make_maximal(cfg.maximal, domain.dims, cfg.besicovitch, cfg.norm_bound), si);
}

}  // namespace oscillab
