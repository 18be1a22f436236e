#pragma once

#include <functional>

#include "oscillab/weight.hpp"

namespace oscillab {

enum class MaximalMode { Dyadic, Centered, Uncentered };

std::string_view to_string(MaximalMode mode);
MaximalMode parse_maximal_mode(std::string_view name);

struct MaximalKind {
    MaximalMode mode = MaximalMode::Dyadic;
    std::function<double(double)> norm_bound;  // p -> upper bound for |M| on L^p
    std::string bound_label;
};

// Defaults: Doob's p' for dyadic, the Marcinkiewicz form 2 (A p')^{1/p}
// with A = 3^dims (uncentered) or A = besicovitch (centered).
// A positive override replaces the bound by that constant.
MaximalKind make_maximal(MaximalMode mode, int dims, double besicovitch = 0.0,
                         double override_bound = 0.0);

// Sets of the base that the given mode takes the supremum over at `cell`.
bool eligible(const BaseSet& b, MaximalMode mode, int i0, int i1);

GridFunction maximal(const GridFunction& f, const BaseFamily& base, const Measure& mu,
                     const MaximalKind& kind);

double lp_norm(const GridFunction& f, const Measure& mu, double p);

struct RubioResult {
    Weight weight;
    int terms = 0;  // K: index of the last summed term
    double bound = 0.0;
    double tol = 0.0;
    double a1_ratio = 0.0;   // max Mu/u
    double lp_ratio = 0.0;   // |u|_p / |g|_p
    bool dominates = false;  // u >= |g|
    bool invariants_hold = false;
};

RubioResult rubio_de_francia(const GridFunction& g, double p, const BaseFamily& base,
                             const Measure& mu, const MaximalKind& kind, double tol = 1e-12);

}  // namespace oscillab
