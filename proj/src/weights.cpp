#include "oscillab/weights.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <random>

namespace oscillab {

namespace {

constexpr double kLogSafe = 690.0;  // e^690 < 1e300

std::string cache_key(std::string_view kind, double exponent, const BaseFamily& base) {
    return std::string(kind) + ":" + format_double(exponent) + ":" + base.id;
}

bool direct_safe(const GridFunction& w, double r, const Measure& mu) {
    for (Eigen::Index c = 0; c < w.size(); ++c)
        if (mu.masses[c] > 0.0 && std::abs(r * std::log(w[c])) > kLogSafe) return false;
    return true;
}

double log_power_mean(const GridFunction& w, double r, const BaseSet& b, const Measure& mu,
                      double mass) {
    double top = -INFINITY;
    for_each_cell(b, mu.domain, [&](int c) {
        if (mu.masses[c] > 0.0) top = std::max(top, r * std::log(w[c]));
    });
    CompensatedSum s;
    for_each_cell(b, mu.domain, [&](int c) {
        if (mu.masses[c] > 0.0) s.add(mu.masses[c] * std::exp(r * std::log(w[c]) - top));
    });
    return (top + std::log(s.value() / mass)) / r;
}

double direct_power_avg(const GridFunction& w, double r, const BaseSet& b, const Measure& mu) {
    CompensatedSum s;
    for_each_cell(b, mu.domain, [&](int c) {
        if (mu.masses[c] > 0.0) s.add(mu.masses[c] * (r == 1.0 ? w[c] : std::pow(w[c], r)));
    });
    return s.value();
}

// max over B of M_num(B) / M_den(B) for power means M_r.
ConstantResult power_mean_ratio(const Weight& w, double r_num, double r_den,
                                const BaseFamily& base, const Measure& mu) {
    require_positive(w, mu);
    const GridFunction& v = w.values();
    const bool direct = direct_safe(v, r_num, mu) && direct_safe(v, r_den, mu);
    ConstantResult best{-INFINITY, {}, -1};
    for (std::size_t s = 0; s < base.sets.size(); ++s) {
        const BaseSet& b = base.sets[s];
        const double m = base.set_mass[s];
        double value;
        if (direct) {
            const double num = std::pow(direct_power_avg(v, r_num, b, mu) / m, 1.0 / r_num);
            const double den = std::pow(direct_power_avg(v, r_den, b, mu) / m, 1.0 / r_den);
            value = num / den;
        } else {
            value = std::exp(log_power_mean(v, r_num, b, mu, m) - log_power_mean(v, r_den, b, mu, m));
        }
        if (!std::isfinite(value) || value > DBL_MAX)
            throw Error(ErrorCode::OverflowGuard, "constant exceeds double range");
        if (value > best.value) best = {value, b, -1};
    }
    return best;
}

}  // namespace

double power_mean(const GridFunction& w, double r, const BaseSet& b, const Measure& mu) {
    if (r == 0.0) throw Error(ErrorCode::ExponentOutOfRange, "power mean exponent 0");
    const double m = box_mass(mu.masses, b, mu.domain);
    if (!(m > 0.0)) throw Error(ErrorCode::ZeroMass, "power mean over zero-mass set");
    bool direct = true;
    for_each_cell(b, mu.domain, [&](int c) {
        if (mu.masses[c] > 0.0 && std::abs(r * std::log(w[c])) > kLogSafe) direct = false;
    });
    if (direct) return std::pow(direct_power_avg(w, r, b, mu) / m, 1.0 / r);
    return std::exp(log_power_mean(w, r, b, mu, m));
}

ConstantResult muckenhoupt_constant(const Weight& w, double p, const BaseFamily& base,
                                    const Measure& mu) {
    if (!(p > 1.0) || !std::isfinite(p))
        throw Error(ErrorCode::ExponentOutOfRange, "A_p needs 1 < p < inf");
    const std::string key = cache_key("ap", p, base);
    if (auto hit = w.cached(key)) return *hit;
    auto r = power_mean_ratio(w, 1.0, -1.0 / (p - 1.0), base, mu);
    w.store(key, r);
    return r;
}

ConstantResult reverse_holder_constant(const Weight& w, double delta, const BaseFamily& base,
                                       const Measure& mu) {
    if (!(delta > 1.0) || !std::isfinite(delta))
        throw Error(ErrorCode::ExponentOutOfRange, "RH needs 1 < delta < inf");
    const std::string key = cache_key("rh", delta, base);
    if (auto hit = w.cached(key)) return *hit;
    auto r = power_mean_ratio(w, delta, 1.0, base, mu);
    w.store(key, r);
    return r;
}

ConstantResult a1_constant(const Weight& w, const BaseFamily& base, const Measure& mu,
                           const MaximalKind& kind) {
    const std::string key = std::string("a1:") + std::string(to_string(kind.mode)) + ":" + base.id;
    if (auto hit = w.cached(key)) return *hit;
    require_positive(w, mu);
    const GridFunction mw = maximal(w.values(), base, mu, kind);
    ConstantResult best{-INFINITY, {}, -1};
    for (Eigen::Index c = 0; c < mw.size(); ++c) {
        if (!(mu.masses[c] > 0.0)) continue;
        const double ratio = mw[c] / w[c];
        if (!std::isfinite(ratio)) throw Error(ErrorCode::OverflowGuard, "A_1 ratio overflow");
        if (ratio > best.value) best = {ratio, {}, static_cast<int>(c)};
    }
    const int i0 = best.argmax_cell / base.domain.sides[1];
    const int i1 = best.argmax_cell % base.domain.sides[1];
    double top = -INFINITY;
    for (std::size_t s = 0; s < base.sets.size(); ++s) {
        const BaseSet& b = base.sets[s];
        if (!eligible(b, kind.mode, i0, i1)) continue;
        const double a = box_sum(w.values(), mu.masses, b, base.domain) / base.set_mass[s];
        if (a > top) {
            top = a;
            best.argmax = b;
        }
    }
    w.store(key, best);
    return best;
}

std::string_view to_string(Setting s) {
    switch (s) {
        case Setting::EuclideanCubes: return "euclidean-cubes";
        case Setting::Rectangles: return "rectangles";
        case Setting::Homogeneous: return "homogeneous";
        case Setting::NonDoubling: return "non-doubling";
    }
    return "euclidean-cubes";
}

Setting parse_setting(std::string_view name) {
    for (auto s : {Setting::EuclideanCubes, Setting::Rectangles, Setting::Homogeneous,
                   Setting::NonDoubling})
        if (to_string(s) == name) return s;
    throw Error(ErrorCode::ParseError, "unknown setting '" + std::string(name) + "'");
}

SelfImprovement self_improvement(const SelfImprovementParams& params, double p, double t) {
    if (!(p > 1.0) || !(t >= 1.0))
        throw Error(ErrorCode::ExponentOutOfRange, "self improvement needs p > 1, t >= 1");
    switch (params.setting) {
        case Setting::EuclideanCubes:
            return {1.0 + 1.0 / (std::pow(2.0, params.dims + 1) * t - 1.0), 2.0};
        case Setting::Rectangles:
            return {1.0 + 1.0 / (std::pow(2.0, p + 2.0) * t), 2.0};
        case Setting::NonDoubling:
            return {1.0 + 1.0 / (std::pow(2.0, p + 1.0) * params.besicovitch * t), 2.0};
        case Setting::Homogeneous:
            return {1.0 + 1.0 / (params.tau * t), params.C};
    }
    return {2.0, 2.0};
}

CertificateReport power_bump_check(const Weight& u, double p, double delta,
                                   const BaseFamily& base, const Measure& mu) {
    if (!(p > 1.0) || !(delta > 1.0))
        throw Error(ErrorCode::ExponentOutOfRange, "power bump needs p > 1, delta > 1");
    const double q = 1.0 + delta * (p - 1.0);
    const Weight ud(u.values().pow(delta));
    const double lhs = muckenhoupt_constant(ud, q, base, mu).value;
    const double rh = reverse_holder_constant(u, delta, base, mu).value;
    const double ap = muckenhoupt_constant(u, p, base, mu).value;
    const double rhs = std::pow(rh * ap, delta);

    CertificateReport r;
    r.theorem = "POWER_BUMP";
    Digest d;
    d.update(u.id()).update(p).update(delta).update(base.id);
    r.inputs_digest = d.hex();
    r.add(make_check("power_bump:[u^delta]_Aq<=([u]_RH*[u]_Ap)^delta", lhs, rhs));
    r.metadata = {{"p", p}, {"delta", delta}, {"q", q}, {"rh", rh}, {"ap", ap}};
    return r;
}

double doubling_constant(const Weight& w, const BaseFamily& base, const Measure& mu) {
    const std::string key = "doubling:" + base.id;
    if (auto hit = w.cached(key)) return hit->value;
    const GridDomain& g = base.domain;
    const bool rect = is_rectangle(base.kind);
    const auto boxes = dyadic_boxes(g, rect);
    ConstantResult best{1.0, full_set(g), -1};
    for (const auto& child : boxes) {
        const double wc = box_sum(w.values(), mu.masses, child, g);
        if (!(wc > 0.0)) continue;
        std::vector<unsigned> masks;
        if (rect) {
            masks = {1u, 2u, 3u};
        } else {
            masks = {g.dims == 1 ? 1u : 3u};
        }
        for (unsigned mask : masks) {
            BaseSet parent = child;
            bool ok = true;
            for (int a = 0; a < 2; ++a) {
                if (!(mask & (1u << a))) continue;
                const int e = child.extent(a);
                if (e >= g.sides[a]) {
                    ok = false;
                    break;
                }
                parent.lo[a] = (child.lo[a] / (2 * e)) * 2 * e;
                parent.hi[a] = parent.lo[a] + 2 * e;
            }
            if (!ok) continue;
            const double ratio = box_sum(w.values(), mu.masses, parent, g) / wc;
            if (ratio > best.value) best = {ratio, child, -1};
        }
    }
    w.store(key, best);
    return best.value;
}

std::string_view to_string(WeightKind k) {
    switch (k) {
        case WeightKind::Power: return "power";
        case WeightKind::RandomLogBounded: return "random-log-bounded";
        case WeightKind::RubioA1: return "rubio-a1";
        case WeightKind::Checkerboard: return "checkerboard";
    }
    return "power";
}

WeightKind parse_weight_kind(std::string_view name) {
    for (auto k : {WeightKind::Power, WeightKind::RandomLogBounded, WeightKind::RubioA1,
                   WeightKind::Checkerboard})
        if (to_string(k) == name) return k;
    throw Error(ErrorCode::ParseError, "unknown weight kind '" + std::string(name) + "'");
}

Weight generate_weight(WeightKind kind, const GeneratorParams& params, std::uint64_t seed,
                       const GeneratorContext& ctx) {
    const GridDomain& g = ctx.domain;
    const int n = g.cells();
    std::mt19937_64 rng(seed);
    GridFunction v(n);
    nlohmann::json prov{{"kind", to_string(kind)}, {"seed", seed}};

    switch (kind) {
        case WeightKind::Power: {
            const double a = params.exponent;
            if (!(a > -static_cast<double>(g.dims)))
                throw Error(ErrorCode::BadParams, "power exponent must exceed -dims");
            for (int i0 = 0; i0 < g.sides[0]; ++i0)
                for (int i1 = 0; i1 < g.sides[1]; ++i1) {
                    const double x = (i0 + 0.5) / g.sides[0];
                    const double y = g.dims == 2 ? (i1 + 0.5) / g.sides[1] : 0.0;
                    v[g.index(i0, i1)] = std::pow(std::sqrt(x * x + y * y), a);
                }
            prov["exponent"] = a;
            break;
        }
        case WeightKind::RandomLogBounded: {
            const double m = params.bound;
            if (!(m >= 0.0) || m > kLogSafe) throw Error(ErrorCode::BadParams, "bad log bound");
            for (int c = 0; c < n; ++c) v[c] = std::exp(m * (2.0 * uniform01(rng) - 1.0));
            prov["bound"] = m;
            break;
        }
        case WeightKind::Checkerboard: {
            if (!(params.contrast > 0.0)) throw Error(ErrorCode::BadParams, "contrast must be > 0");
            for (int i0 = 0; i0 < g.sides[0]; ++i0)
                for (int i1 = 0; i1 < g.sides[1]; ++i1)
                    v[g.index(i0, i1)] = (i0 + i1) % 2 == 0 ? 1.0 : params.contrast;
            prov["contrast"] = params.contrast;
            break;
        }
        case WeightKind::RubioA1: {
            if (!ctx.measure || !ctx.base || !ctx.maximal)
                throw Error(ErrorCode::BadParams, "rubio-a1 needs a measure, base and maximal kind");
            if (params.spikes < 1) throw Error(ErrorCode::BadParams, "spikes must be >= 1");
            GridFunction spikes = GridFunction::Zero(n);
            for (int s = 0; s < params.spikes; ++s) {
                int c = static_cast<int>(uniform01(rng) * n);
                while (!(ctx.measure->masses[c] > 0.0)) c = (c + 1) % n;
                spikes[c] += 1.0;
            }
            auto r = rubio_de_francia(spikes, params.p, *ctx.base, *ctx.measure, *ctx.maximal,
                                      params.tol);
            prov["p"] = params.p;
            prov["spikes"] = params.spikes;
            prov["terms"] = r.terms;
            prov["bound"] = r.bound;
            prov["a1_ratio"] = r.a1_ratio;
            v = r.weight.values();
            // cells the series never reaches (zero mass, or corners the centered
            // operator cannot see) get 1 so the weight stays positive
            for (int c = 0; c < n; ++c)
                if (!(v[c] > 0.0)) v[c] = 1.0;
            break;
        }
    }
    return Weight(std::move(v), std::move(prov));
}

}  // namespace oscillab
