#include "oscillab/oscillation.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace oscillab {

double tl_volume(const BaseSet& q, const GridDomain& domain) {
    return static_cast<double>(q.cells()) / static_cast<double>(domain.cells());
}

double weighted_power_mean(const std::vector<double>& values, const std::vector<double>& weights,
                           double p) {
    double top = 0.0;
    CompensatedSum total;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (weights[i] > 0.0) top = std::max(top, values[i]);
        total.add(weights[i]);
    }
    if (!(total.value() > 0.0)) throw Error(ErrorCode::ZeroMass, "power mean over zero mass");
    if (top == 0.0) return 0.0;
    CompensatedSum s;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (weights[i] > 0.0) s.add(std::pow(values[i] / top, p) * weights[i]);
    return top * std::pow(s.value() / total.value(), 1.0 / p);
}

namespace {

void require_density(const DualHardy& dh, const Measure& mu) {
    if (dh.w.size() != mu.masses.size() || !(dh.w.values() == mu.masses).all())
        throw Error(ErrorCode::IncompatibleSpec, "dual-Hardy needs the density-w measure");
}

std::vector<double> tl_values(const TLSequence& s, const TLSeq& spec, const BaseSet& b,
                              const GridDomain& g) {
    std::vector<double> out(static_cast<std::size_t>(b.cells()), 0.0);
    const double expo = 0.5 + spec.alpha / g.dims;
    const int width = b.extent(1);
    for (const auto& [q, coeff] : s.coeffs) {
        if (coeff == 0.0 || !b.contains(q)) continue;
        const double term = std::pow(std::abs(coeff) / std::pow(tl_volume(q, g), expo), spec.q);
        for (int i0 = q.lo[0]; i0 < q.hi[0]; ++i0)
            for (int i1 = q.lo[1]; i1 < q.hi[1]; ++i1)
                out[static_cast<std::size_t>((i0 - b.lo[0]) * width + (i1 - b.lo[1]))] += term;
    }
    return out;
}

// An average lies in the range of f over the charged cells; clamping removes
// rounding drift, so a function constant on B oscillates by exactly zero.
double within_range(double center, const GridFunction& f, const BaseSet& b, const GridDomain& g,
                    const GridFunction& charge) {
    double lo = INFINITY, hi = -INFINITY;
    for_each_cell(b, g, [&](int c) {
        if (charge[c] > 0.0) {
            lo = std::min(lo, f[c]);
            hi = std::max(hi, f[c]);
        }
    });
    return lo <= hi ? std::clamp(center, lo, hi) : center;
}

std::vector<double> cell_weights(const Weight& w, const BaseSet& b, const Measure& mu) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(b.cells()));
    for_each_cell(b, mu.domain, [&](int c) { out.push_back(w[c] * mu.masses[c]); });
    return out;
}

template <class ValuesFn>
NormReport norm_over_base(ValuesFn&& values, const Weight& w, double p, const BaseFamily& base,
                          const Measure& mu, bool keep) {
    if (!(p > 0.0) || !std::isfinite(p))
        throw Error(ErrorCode::ExponentOutOfRange, "norm exponent must be positive");
    require_positive(w, mu);
    NormReport r;
    r.p = p;
    r.weight_id = w.id();
    r.value = -1.0;
    if (keep) r.per_set.reserve(base.sets.size());
    for (const auto& b : base.sets) {
        const double v = weighted_power_mean(values(b), cell_weights(w, b, mu), p);
        if (keep) r.per_set.push_back(v);
        if (v > r.value) {
            r.value = v;
            r.extremal = b;
        }
    }
    return r;
}

}  // namespace

std::vector<double> oscillation_values(const GridFunction& f, const OscillationSpec& spec,
                                       const BaseSet& b, const Measure& mu) {
    const GridDomain& g = mu.domain;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(b.cells()));
    if (const auto* cd = std::get_if<CenteredDiff>(&spec)) {
        double center;
        if (cd->v) {
            const GridFunction& v = cd->v->values();
            CompensatedSum num, den;
            for_each_cell(b, g, [&](int c) {
                num.add(f[c] * v[c] * mu.masses[c]);
                den.add(v[c] * mu.masses[c]);
            });
            if (!(den.value() > 0.0)) throw Error(ErrorCode::ZeroMass, "v-mass of a base set is zero");
            center = within_range(num.value() / den.value(), f, b, g, v * mu.masses);
        } else {
            center = within_range(average(f, b, mu), f, b, g, mu.masses);
        }
        for_each_cell(b, g, [&](int c) { out.push_back(std::abs(f[c] - center)); });
    } else if (const auto* dh = std::get_if<DualHardy>(&spec)) {
        CompensatedSum s;
        for_each_cell(b, g, [&](int c) { s.add(f[c]); });
        const double center =
            within_range(s.value() / b.cells(), f, b, g, GridFunction::Ones(g.cells()));
        for_each_cell(b, g, [&](int c) {
            out.push_back(dh->w[c] > 0.0 ? std::abs(f[c] - center) / dh->w[c] : 0.0);
        });
    } else {
        throw Error(ErrorCode::IncompatibleSpec, "sequence functional applied to a grid function");
    }
    return out;
}

std::vector<double> oscillation_values(const TLSequence& s, const OscillationSpec& spec,
                                       const BaseSet& b, const Measure& mu) {
    const auto* tl = std::get_if<TLSeq>(&spec);
    if (!tl) throw Error(ErrorCode::IncompatibleSpec, "grid functional applied to a sequence");
    return tl_values(s, *tl, b, mu.domain);
}

NormReport oscillation_norm(const GridFunction& f, const OscillationSpec& spec, const Weight& w,
                            double p, const BaseFamily& base, const Measure& mu, bool keep) {
    if (f.size() != mu.domain.cells()) throw Error(ErrorCode::BadDomain, "function size mismatch");
    if (std::holds_alternative<TLSeq>(spec))
        throw Error(ErrorCode::IncompatibleSpec, "sequence functional applied to a grid function");
    if (const auto* dh = std::get_if<DualHardy>(&spec)) require_density(*dh, mu);
    return norm_over_base([&](const BaseSet& b) { return oscillation_values(f, spec, b, mu); }, w,
                          p, base, mu, keep);
}

NormReport oscillation_norm(const TLSequence& s, const OscillationSpec& spec, const Weight& w,
                            double p, const BaseFamily& base, const Measure& mu, bool keep) {
    const auto* tl = std::get_if<TLSeq>(&spec);
    if (!tl) throw Error(ErrorCode::IncompatibleSpec, "grid functional applied to a sequence");
    if (base.kind != BaseKind::DyadicCubes)
        throw Error(ErrorCode::IncompatibleSpec, "sequence norms run over dyadic cubes");
    if (!(tl->q > 0.0)) throw Error(ErrorCode::ExponentOutOfRange, "q must be positive");
    return norm_over_base([&](const BaseSet& b) { return tl_values(s, *tl, b, mu.domain); }, w, p,
                          base, mu, keep);
}

double weighted_median(const GridFunction& f, const BaseSet& b, const Measure& mu) {
    std::vector<std::pair<double, double>> items;
    for_each_cell(b, mu.domain, [&](int c) {
        if (mu.masses[c] > 0.0) items.emplace_back(f[c], mu.masses[c]);
    });
    if (items.empty()) throw Error(ErrorCode::ZeroMass, "median over zero-mass set");
    std::stable_sort(items.begin(), items.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    CompensatedSum total;
    for (const auto& it : items) total.add(it.second);
    CompensatedSum run;
    for (const auto& it : items) {
        run.add(it.second);
        if (2.0 * run.value() >= total.value()) return it.first;
    }
    return items.back().first;
}

SharpReport sharp_oscillation(const GridFunction& f, const BaseFamily& base, const Measure& mu) {
    SharpReport r;
    r.value = -1.0;
    for (std::size_t s = 0; s < base.sets.size(); ++s) {
        const BaseSet& b = base.sets[s];
        const double c = weighted_median(f, b, mu);
        CompensatedSum acc;
        for_each_cell(b, mu.domain, [&](int i) { acc.add(std::abs(f[i] - c) * mu.masses[i]); });
        const double v = acc.value() / base.set_mass[s];
        if (v > r.value) {
            r.value = v;
            r.extremal = b;
            r.median = c;
        }
    }
    return r;
}

namespace {

std::vector<BaseSet> children(const BaseSet& q) {
    std::vector<BaseSet> out{q};
    for (int a = 0; a < 2; ++a) {
        const int e = q.extent(a);
        if (e <= 1) continue;
        std::vector<BaseSet> next;
        for (const auto& c : out) {
            BaseSet lo = c, hi = c;
            lo.hi[a] = c.lo[a] + e / 2;
            hi.lo[a] = c.lo[a] + e / 2;
            next.push_back(lo);
            next.push_back(hi);
        }
        out = std::move(next);
    }
    if (out.size() == 1) out.clear();
    return out;
}

}  // namespace

CZReport cz_selection(const GridFunction& f, const BaseSet& r, const Weight& w, double lambda,
                      const BaseFamily& base, const Measure& mu) {
    if (!is_dyadic(base.kind) || !is_dyadic_box(r))
        throw Error(ErrorCode::NotDyadic, "stopping time needs a dyadic base and root");
    if (!(lambda > 0.0)) throw Error(ErrorCode::BadParams, "lambda must be positive");
    require_positive(w, mu);
    const GridDomain& g = mu.domain;
    const GridFunction wm = w.values() * mu.masses;
    const GridFunction ones = GridFunction::Ones(g.cells());

    CZReport rep;
    const double wr = box_sum(ones, wm, r, g);
    if (!(wr > 0.0)) throw Error(ErrorCode::ZeroMass, "root has zero w-mass");
    rep.center = within_range(box_sum(f, wm, r, g) / wr, f, r, g, wm);
    const GridFunction lam = (f - rep.center).abs();
    rep.parent_average = box_sum(lam, wm, r, g) / wr;
    rep.premise_holds = rep.parent_average <= lambda;
    rep.doubling = doubling_constant(w, base, mu);
    rep.window_factor = std::pow(rep.doubling, g.dims);
    rep.chebyshev_bound = wr * rep.parent_average / lambda;

    std::vector<BaseSet> stack = children(r);
    std::reverse(stack.begin(), stack.end());
    while (!stack.empty()) {
        const BaseSet q = stack.back();
        stack.pop_back();
        const double wq = box_sum(ones, wm, q, g);
        if (!(wq > 0.0)) continue;
        const double avg = box_sum(lam, wm, q, g) / wq;
        if (avg > lambda) {
            rep.sets.push_back(q);
            rep.averages.push_back(avg);
            continue;
        }
        auto kids = children(q);
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    }

    std::vector<std::size_t> order(rep.sets.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return canonical_less(rep.sets[a], rep.sets[b]); });
    std::vector<BaseSet> sets;
    std::vector<double> avgs;
    for (auto i : order) {
        sets.push_back(rep.sets[i]);
        avgs.push_back(rep.averages[i]);
    }
    rep.sets = std::move(sets);
    rep.averages = std::move(avgs);

    CompensatedSum sel;
    std::vector<char> covered(static_cast<std::size_t>(g.cells()), 0);
    for (std::size_t i = 0; i < rep.sets.size(); ++i) {
        sel.add(box_sum(ones, wm, rep.sets[i], g));
        rep.realized_factor = std::max(rep.realized_factor, rep.averages[i] / lambda);
        for_each_cell(rep.sets[i], g, [&](int c) {
            if (covered[static_cast<std::size_t>(c)]) rep.disjoint = false;
            covered[static_cast<std::size_t>(c)] = 1;
        });
    }
    rep.selected_mass = sel.value();
    for_each_cell(r, g, [&](int c) {
        if (!covered[static_cast<std::size_t>(c)] && wm[c] > 0.0 && lam[c] > lambda)
            rep.outside_ok = false;
    });
    return rep;
}

JNReport jn_exp_moment(const GridFunction& f, const BaseFamily& base, const Measure& mu,
                       const Weight& w, double eta, double N, int grid_points) {
    if (!(eta > 0.0) || !(N > 0.0)) throw Error(ErrorCode::BadParams, "eta and N must be positive");
    if (grid_points < 2) throw Error(ErrorCode::BadParams, "survival grid needs two points");
    require_positive(w, mu);
    {
        double lo = INFINITY, hi = -INFINITY;
        for (Eigen::Index c = 0; c < f.size(); ++c) {
            if (!(mu.masses[c] > 0.0)) continue;
            lo = std::min(lo, f[c]);
            hi = std::max(hi, f[c]);
        }
        if (!(hi > lo)) throw Error(ErrorCode::DegenerateInput, "f is constant");
    }
    const CenteredDiff spec{w};

    struct Sorted {
        std::vector<std::pair<double, double>> items;  // (Lambda, w mass), Lambda descending
        double mass;
    };
    std::vector<Sorted> per_set;
    per_set.reserve(base.sets.size());

    JNReport rep;
    rep.eta = eta;
    rep.N = N;
    rep.log_T_N = -INFINITY;
    for (const auto& b : base.sets) {
        const auto lam = oscillation_values(f, spec, b, mu);
        const auto wts = cell_weights(w, b, mu);
        double top = -INFINITY;
        CompensatedSum mass, first;
        for (std::size_t i = 0; i < lam.size(); ++i) {
            if (!(wts[i] > 0.0)) continue;
            top = std::max(top, std::min(lam[i], N) / eta);
            rep.max_lambda = std::max(rep.max_lambda, lam[i]);
            mass.add(wts[i]);
            first.add(lam[i] * wts[i]);
        }
        CompensatedSum acc;
        for (std::size_t i = 0; i < lam.size(); ++i)
            if (wts[i] > 0.0) acc.add(wts[i] * std::exp(std::min(lam[i], N) / eta - top));
        const double log_avg = top + std::log(acc.value() / mass.value());
        if (log_avg > rep.log_T_N) {
            rep.log_T_N = log_avg;
            rep.extremal = b;
        }
        rep.bmo_norm = std::max(rep.bmo_norm, first.value() / mass.value());

        Sorted s{{}, mass.value()};
        for (std::size_t i = 0; i < lam.size(); ++i)
            if (wts[i] > 0.0) s.items.emplace_back(lam[i], wts[i]);
        std::stable_sort(s.items.begin(), s.items.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        per_set.push_back(std::move(s));
    }
    rep.T_N = std::exp(rep.log_T_N);
    rep.doubling = doubling_constant(w, base, mu);

    for (int k = 0; k < grid_points; ++k)
        rep.lambda_grid.push_back(rep.max_lambda * k / (grid_points - 1));
    rep.survival.assign(rep.lambda_grid.size(), 0.0);
    for (const auto& s : per_set) {
        CompensatedSum run;
        std::size_t i = 0;
        // lambda ascending, so walk the grid from the top down
        for (int k = grid_points - 1; k >= 0; --k) {
            const double l = rep.lambda_grid[static_cast<std::size_t>(k)];
            while (i < s.items.size() && s.items[i].first >= l) run.add(s.items[i++].second);
            rep.survival[static_cast<std::size_t>(k)] =
                std::max(rep.survival[static_cast<std::size_t>(k)], run.value() / s.mass);
        }
    }

    std::vector<int> rows;
    for (int k = 0; k < grid_points; ++k)
        if (rep.survival[static_cast<std::size_t>(k)] > 0.0) rows.push_back(k);
    rep.c1_hat = 1.0;
    if (rows.size() >= 2) {
        Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), 2);
        Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const auto k = static_cast<std::size_t>(rows[r]);
            a(static_cast<Eigen::Index>(r), 0) = 1.0;
            a(static_cast<Eigen::Index>(r), 1) = -rep.lambda_grid[k];
            y(static_cast<Eigen::Index>(r)) = std::log(rep.survival[k]);
        }
        const Eigen::Vector2d coef = a.colPivHouseholderQr().solve(y);
        rep.c1_hat = std::exp(coef(0));
        rep.c2_hat = coef(1);
    }
    return rep;
}

TLProbe tl_equivalence_probe(const TLSequence& s, double alpha, double q, double p,
                             const Weight& w, const BaseFamily& base, const Measure& mu) {
    if (!(q > 0.0) || !(p > 0.0)) throw Error(ErrorCode::ExponentOutOfRange, "p, q must be positive");
    bool any = false;
    for (const auto& [k, v] : s.coeffs) any = any || v != 0.0;
    if (!any) throw Error(ErrorCode::EmptySequence, "sequence has no nonzero coefficient");
    const GridDomain& g = mu.domain;
    const double expo = 0.5 + alpha / g.dims;

    TLProbe out;
    for (const auto& P : base.sets) {
        CompensatedSum plain, plain_mass, weighted, weighted_mass;
        for_each_cell(P, g, [&](int c) {
            if (!(mu.masses[c] > 0.0)) return;
            const int i0 = c / g.sides[1], i1 = c % g.sides[1];
            CompensatedSum lam;
            for (const auto& [Q, coeff] : s.coeffs) {
                if (coeff == 0.0 || !P.contains(Q) || !Q.contains(i0, i1)) continue;
                lam.add(std::pow(std::abs(coeff) / std::pow(tl_volume(Q, g), expo), q));
            }
            plain.add(lam.value() * mu.masses[c]);
            plain_mass.add(mu.masses[c]);
            weighted.add(std::pow(lam.value(), p / q) * w[c] * mu.masses[c]);
            weighted_mass.add(w[c] * mu.masses[c]);
        });
        out.unweighted = std::max(out.unweighted, std::pow(plain.value() / plain_mass.value(), 1.0 / q));
        out.weighted =
            std::max(out.weighted, std::pow(weighted.value() / weighted_mass.value(), 1.0 / p));
    }
    out.ratio = out.weighted / out.unweighted;
    return out;
}

}  // namespace oscillab
