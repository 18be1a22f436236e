#pragma once

#include <map>
#include <optional>
#include <variant>

#include "oscillab/weights.hpp"

namespace oscillab {

// |f(x) - f_{mu_v,B}|; v empty means the plain mu average.
struct CenteredDiff {
    std::optional<Weight> v;
};

// |f(x) - f_Q| / w(x) with f_Q the cell-count average; the ambient measure
// must be the density-w measure.
struct DualHardy {
    Weight w;
};

// sum over dyadic Q inside P holding x of (|Q|^{-1/2-alpha/n} |s_Q|)^q
struct TLSeq {
    double alpha = 0.0;
    double q = 2.0;
};

using OscillationSpec = std::variant<CenteredDiff, DualHardy, TLSeq>;

struct BaseSetLess {
    bool operator()(const BaseSet& a, const BaseSet& b) const { return canonical_less(a, b); }
};

struct TLSequence {
    GridDomain domain;
    std::map<BaseSet, double, BaseSetLess> coeffs;
};

// normalized volume cells(Q)/cells(domain)
double tl_volume(const BaseSet& q, const GridDomain& domain);

struct NormReport {
    double value = 0.0;
    double p = 1.0;
    std::string weight_id;
    BaseSet extremal;
    std::vector<double> per_set;  // ((1/w(B)) sum Lambda^p w mu)^{1/p}, when retained
};

NormReport oscillation_norm(const GridFunction& f, const OscillationSpec& spec, const Weight& w,
                            double p, const BaseFamily& base, const Measure& mu,
                            bool keep_per_set = false);
NormReport oscillation_norm(const TLSequence& s, const OscillationSpec& spec, const Weight& w,
                            double p, const BaseFamily& base, const Measure& mu,
                            bool keep_per_set = false);

// Lambda(f,B) on the cells of B, in row-major order within B.
std::vector<double> oscillation_values(const GridFunction& f, const OscillationSpec& spec,
                                       const BaseSet& b, const Measure& mu);
std::vector<double> oscillation_values(const TLSequence& s, const OscillationSpec& spec,
                                       const BaseSet& b, const Measure& mu);

// ((1/sum weights) sum values^p weights)^{1/p}, rescaled by the max value.
double weighted_power_mean(const std::vector<double>& values, const std::vector<double>& weights,
                           double p);

struct SharpReport {
    double value = 0.0;
    BaseSet extremal;
    double median = 0.0;  // minimizing constant on the extremal set
};

SharpReport sharp_oscillation(const GridFunction& f, const BaseFamily& base, const Measure& mu);

// lower mu-weighted median of f on B
double weighted_median(const GridFunction& f, const BaseSet& b, const Measure& mu);

struct CZReport {
    std::vector<BaseSet> sets;
    std::vector<double> averages;
    double center = 0.0;          // f_{w,R}
    double parent_average = 0.0;  // avg_{w,R} |f - f_{w,R}|
    double doubling = 1.0;
    double window_factor = 1.0;   // D^dims
    double realized_factor = 0.0; // max average / lambda over the selection
    bool disjoint = true;
    double selected_mass = 0.0;   // sum w(R_j)
    double chebyshev_bound = 0.0; // w(R) parent_average / lambda
    bool outside_ok = true;
    bool premise_holds = true;    // parent_average <= lambda
};

CZReport cz_selection(const GridFunction& f, const BaseSet& r, const Weight& w, double lambda,
                      const BaseFamily& base, const Measure& mu);

struct JNReport {
    double eta = 0.0;
    double N = 0.0;
    double T_N = 0.0;
    double log_T_N = 0.0;
    BaseSet extremal;
    std::vector<double> lambda_grid;
    std::vector<double> survival;  // max_B w({Lambda >= lambda} in B) / w(B)
    double c1_hat = 0.0;
    double c2_hat = 0.0;
    double doubling = 1.0;
    double bmo_norm = 0.0;
    double max_lambda = 0.0;  // largest Lambda value over all sets
};

JNReport jn_exp_moment(const GridFunction& f, const BaseFamily& base, const Measure& mu,
                       const Weight& w, double eta, double N, int grid_points = 33);

struct TLProbe {
    double unweighted = 0.0;
    double weighted = 0.0;
    double ratio = 0.0;
};

TLProbe tl_equivalence_probe(const TLSequence& s, double alpha, double q, double p,
                             const Weight& w, const BaseFamily& base, const Measure& mu);

}  // namespace oscillab
