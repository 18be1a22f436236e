#pragma once

#include <cstdint>

#include "oscillab/certificate.hpp"
#include "oscillab/operators.hpp"

namespace oscillab {

ConstantResult muckenhoupt_constant(const Weight& w, double p, const BaseFamily& base,
                                    const Measure& mu);
ConstantResult a1_constant(const Weight& w, const BaseFamily& base, const Measure& mu,
                           const MaximalKind& kind);
ConstantResult reverse_holder_constant(const Weight& w, double delta, const BaseFamily& base,
                                       const Measure& mu);

// (avg_B w^r)^{1/r} for r != 0; log-space when a power leaves [1e-300, 1e300].
double power_mean(const GridFunction& w, double r, const BaseSet& b, const Measure& mu);

enum class Setting { EuclideanCubes, Rectangles, Homogeneous, NonDoubling };

std::string_view to_string(Setting s);
Setting parse_setting(std::string_view name);

struct SelfImprovementParams {
    Setting setting = Setting::EuclideanCubes;
    int dims = 1;
    double besicovitch = 2.0;  // B(n), non-doubling only
    double tau = 4.0;          // homogeneous: Delta = 1 + 1/(tau t)
    double C = 2.0;            // homogeneous: K = C
};

struct SelfImprovement {
    double delta;
    double K;
};

SelfImprovement self_improvement(const SelfImprovementParams& params, double p, double t);

// [u^delta]_{A_q} <= ([u]_{RH_delta} [u]_{A_p})^delta with q = 1 + delta (p - 1).
CertificateReport power_bump_check(const Weight& u, double p, double delta,
                                   const BaseFamily& base, const Measure& mu);

// max over dyadic boxes of w(parent)/w(child). A parent doubles the child along
// every axis (cube bases) or along any nonempty set of axes (rectangle bases).
double doubling_constant(const Weight& w, const BaseFamily& base, const Measure& mu);

enum class WeightKind { Power, RandomLogBounded, RubioA1, Checkerboard };

std::string_view to_string(WeightKind k);
WeightKind parse_weight_kind(std::string_view name);

struct GeneratorParams {
    double exponent = 0.0;  // power: w = ((i + 1/2)/side)^a per axis product
    double bound = 1.0;     // random-log-bounded: log w uniform in [-M, M]
    double contrast = 4.0;  // checkerboard: values 1 and contrast
    double p = 2.0;         // rubio-a1
    double tol = 1e-12;
    int spikes = 1;         // rubio-a1: number of random unit spikes in g
};

struct GeneratorContext {
    GridDomain domain;
    const Measure* measure = nullptr;
    const BaseFamily* base = nullptr;
    const MaximalKind* maximal = nullptr;
};

Weight generate_weight(WeightKind kind, const GeneratorParams& params, std::uint64_t seed,
                       const GeneratorContext& ctx);

// Uniform double in [0,1) from a 64-bit engine, identical on every platform.
template <class Engine>
double uniform01(Engine& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace oscillab
