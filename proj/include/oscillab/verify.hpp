#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>

#include "oscillab/certificate.hpp"
#include "oscillab/oscillation.hpp"

namespace oscillab {

enum class TheoremId {
    SMALLNEC,
    NEC,
    PSI,
    SUFF,
    INTERP,
    TWOWEIGHT_BMO,
    DUAL_HARDY,
    LITTLE_BMO,
    TL_DYADIC,
};

inline constexpr std::array<TheoremId, 9> kAllTheorems{
    TheoremId::SMALLNEC,      TheoremId::NEC,        TheoremId::PSI,
    TheoremId::SUFF,          TheoremId::INTERP,     TheoremId::TWOWEIGHT_BMO,
    TheoremId::DUAL_HARDY,    TheoremId::LITTLE_BMO, TheoremId::TL_DYADIC,
};

std::string_view to_string(TheoremId id);
TheoremId parse_theorem(std::string_view name);

// Labels each theorem may emit, in order.
const std::vector<std::string>& check_labels(TheoremId id);

struct GridSpace {
    GridDomain domain;
    Measure measure;
    BaseFamily base;
    MaximalKind maximal;
    SelfImprovementParams self_improvement;
};

std::shared_ptr<const GridSpace> make_space(const GridDomain& domain, const Measure& mu,
                                            BaseKind kind, int min_scale, MaximalKind maximal,
                                            SelfImprovementParams si);

struct CertificateInputs {
    std::shared_ptr<const GridSpace> space;
    std::optional<GridFunction> f;
    std::optional<TLSequence> seq;
    std::optional<Weight> w;
    std::optional<Weight> v;
    std::optional<Weight> w0;
    std::map<std::string, double> exponents;
    double rdf_tol = 1e-12;
    std::uint64_t seed = 0;

    double exponent(const std::string& key) const;  // MissingInput if absent
};

std::string inputs_digest(TheoremId id, const CertificateInputs& in);

CertificateReport certify(TheoremId id, const CertificateInputs& in);

// Deterministic random instance for a theorem; the seed fixes everything.
CertificateInputs random_inputs(TheoremId id, std::uint64_t seed);

// splitmix64 step, used to derive per-trial seeds
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

enum class ConstantKind { Cpq, Bwv, Psi };

std::string_view to_string(ConstantKind k);

struct ConstantArgs {
    double p = 1.0;
    double q = 2.0;
    double t = 1.0;        // psi: admissible [v]_{A_p} <= t
    bool weighted = false; // c_pq: use each entry's w instead of the unit weight
};

struct ConstantEstimate {
    ConstantKind kind = ConstantKind::Cpq;
    double value = 0.0;  // empirical maximum, a lower bound for the true constant
    std::string corpus_digest;
    ConstantArgs args;
    int used = 0;
};

ConstantEstimate estimate_constant(ConstantKind kind, const std::vector<CertificateInputs>& corpus,
                                   const ConstantArgs& args);

std::string corpus_digest(const std::vector<CertificateInputs>& corpus);

// 1-D uniform grids with dyadic cubes and the dyadic maximal operator,
// random log-bounded weights and assorted functions.
std::vector<CertificateInputs> standard_corpus(std::uint64_t seed, int size);

// All functions constant: every estimator reports AllDegenerate.
std::vector<CertificateInputs> trivial_corpus(int size);

// Upper-bound column for c_{1,p}: 2 K(p',t) c_{1,Delta(p',t)'} with
// t = 2 |M|_{p'}, the c constant taken from the same corpus.
struct UpperColumn {
    double value;
    double t;
    double delta;
    double K;
    double c_estimate;
};
UpperColumn c1p_upper_column(const std::vector<CertificateInputs>& corpus, double p);

// Random sparse coefficient map on the dyadic cubes of the domain.
TLSequence random_sequence(const GridDomain& domain, std::uint64_t seed, int nonzero);

}  // namespace oscillab
