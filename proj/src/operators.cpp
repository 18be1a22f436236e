#include "oscillab/operators.hpp"

#include <algorithm>
#include <cmath>

namespace oscillab {

std::string_view to_string(MaximalMode mode) {
    switch (mode) {
        case MaximalMode::Dyadic: return "dyadic";
        case MaximalMode::Centered: return "centered";
        case MaximalMode::Uncentered: return "uncentered";
    }
    return "dyadic";
}

MaximalMode parse_maximal_mode(std::string_view name) {
    for (auto m : {MaximalMode::Dyadic, MaximalMode::Centered, MaximalMode::Uncentered})
        if (to_string(m) == name) return m;
    throw Error(ErrorCode::ParseError, "unknown maximal mode '" + std::string(name) + "'");
}

MaximalKind make_maximal(MaximalMode mode, int dims, double besicovitch, double override_bound) {
    MaximalKind k;
    k.mode = mode;
    if (override_bound > 0.0) {
        k.norm_bound = [override_bound](double) { return override_bound; };
        k.bound_label = "constant:" + format_double(override_bound);
        return k;
    }
    if (mode == MaximalMode::Dyadic) {
        k.norm_bound = [](double p) { return p / (p - 1.0); };
        k.bound_label = "doob";
        return k;
    }
    double a = std::pow(3.0, dims);
    if (mode == MaximalMode::Centered)
        a = besicovitch > 0.0 ? besicovitch : (dims == 1 ? 2.0 : 16.0);
    k.norm_bound = [a](double p) { return 2.0 * std::pow(a * p / (p - 1.0), 1.0 / p); };
    k.bound_label = "marcinkiewicz:" + format_double(a);
    return k;
}

bool eligible(const BaseSet& b, MaximalMode mode, int i0, int i1) {
    if (!b.contains(i0, i1)) return false;
    switch (mode) {
        case MaximalMode::Uncentered: return true;
        case MaximalMode::Dyadic: return is_dyadic_box(b);
        case MaximalMode::Centered:
            return b.extent(0) % 2 == 1 && b.extent(1) % 2 == 1 &&
                   b.lo[0] + b.extent(0) / 2 == i0 && b.lo[1] + b.extent(1) / 2 == i1;
    }
    return false;
}

GridFunction maximal(const GridFunction& f, const BaseFamily& base, const Measure& mu,
                     const MaximalKind& kind) {
    const GridDomain& g = base.domain;
    if (kind.mode == MaximalMode::Centered && is_rectangle(base.kind))
        throw Error(ErrorCode::IncompatibleBase, "centered maximal needs a cube base");
    if (f.size() != g.cells()) throw Error(ErrorCode::BadDomain, "function size mismatch");
    const GridFunction af = f.abs();
    GridFunction out = GridFunction::Zero(g.cells());

    // Each eligible set is averaged once; cells then take the max over the
    // sets holding them. For dyadic mode the eligible sets are the tree
    // nodes, so the cost is O(N L).
    for (std::size_t s = 0; s < base.sets.size(); ++s) {
        const BaseSet& b = base.sets[s];
        switch (kind.mode) {
            case MaximalMode::Dyadic:
                if (!is_dyadic_box(b)) continue;
                break;
            case MaximalMode::Centered:
                if (b.extent(0) % 2 == 0 || b.extent(1) % 2 == 0) continue;
                break;
            case MaximalMode::Uncentered: break;
        }
        const double a = box_sum(af, mu.masses, b, g) / base.set_mass[s];
        if (kind.mode == MaximalMode::Centered) {
            const int c = g.index(b.lo[0] + b.extent(0) / 2, b.lo[1] + b.extent(1) / 2);
            out[c] = std::max(out[c], a);
        } else {
            for_each_cell(b, g, [&](int c) { out[c] = std::max(out[c], a); });
        }
    }
    for (Eigen::Index c = 0; c < out.size(); ++c)
        if (!(mu.masses[c] > 0.0)) out[c] = 0.0;
    return out;
}

double lp_norm(const GridFunction& f, const Measure& mu, double p) {
    double top = 0.0;
    for (Eigen::Index c = 0; c < f.size(); ++c)
        if (mu.masses[c] > 0.0) top = std::max(top, std::abs(f[c]));
    if (top == 0.0) return 0.0;
    CompensatedSum s;
    for (Eigen::Index c = 0; c < f.size(); ++c)
        if (mu.masses[c] > 0.0) s.add(std::pow(std::abs(f[c]) / top, p) * mu.masses[c]);
    return top * std::pow(s.value(), 1.0 / p);
}

RubioResult rubio_de_francia(const GridFunction& g, double p, const BaseFamily& base,
                             const Measure& mu, const MaximalKind& kind, double tol) {
    if (!(p > 1.0)) throw Error(ErrorCode::ExponentOutOfRange, "Rubio de Francia needs p > 1");
    if (!(tol > 0.0 && tol < 1.0)) throw Error(ErrorCode::BadParams, "tol must lie in (0,1)");
    const GridDomain& dom = base.domain;
    GridFunction h = g.abs();
    for (Eigen::Index c = 0; c < h.size(); ++c)
        if (!(mu.masses[c] > 0.0)) h[c] = 0.0;
    if (!(h.maxCoeff() > 0.0)) throw Error(ErrorCode::ZeroInput, "g vanishes");

    const double bound = kind.norm_bound(p);
    const double ratio = 1.0 / (2.0 * bound);
    const int depth = std::max(1, std::max(dom.levels(0), dom.levels(1)));
    const int cap = 10 * depth * static_cast<int>(std::ceil(std::log2(1.0 / tol)));

    GridFunction u = h;
    double scale = 1.0;
    int k = 0;
    for (;;) {
        h = maximal(h, base, mu, kind);
        scale *= ratio;
        double min_pos = INFINITY;
        for (Eigen::Index c = 0; c < u.size(); ++c)
            if (u[c] > 0.0) min_pos = std::min(min_pos, u[c]);
        const double next = scale * h.maxCoeff();
        if (next < tol * min_pos) break;
        u += scale * h;
        ++k;
        if (k > cap) throw Error(ErrorCode::NonConvergence, "Rubio de Francia series did not settle");
    }

    RubioResult r{Weight(u, {{"kind", "rubio-a1"},
                             {"p", p},
                             {"bound", bound},
                             {"terms", k},
                             {"tol", tol}}),
                  k, bound, tol};
    const GridFunction mu_u = maximal(u, base, mu, kind);
    const GridFunction ag = g.abs();
    r.dominates = true;
    double a1 = 0.0;
    for (Eigen::Index c = 0; c < u.size(); ++c) {
        if (!(mu.masses[c] > 0.0)) continue;
        if (u[c] < ag[c]) r.dominates = false;
        if (mu_u[c] > 0.0) a1 = std::max(a1, u[c] > 0.0 ? mu_u[c] / u[c] : INFINITY);
    }
    r.a1_ratio = a1;
    r.lp_ratio = lp_norm(u, mu, p) / lp_norm(ag, mu, p);
    r.invariants_hold = r.dominates && a1 <= 2.0 * bound * (1.0 + 10.0 * tol) &&
                        r.lp_ratio <= 2.0 * (1.0 + 10.0 * tol);
    return r;
}

}  // namespace oscillab
