#include "oscillab/lattice.hpp"

#include <algorithm>
#include <bit>

namespace oscillab {

namespace {

bool power_of_two(int n) { return n >= 1 && std::has_single_bit(static_cast<unsigned>(n)); }

int log2i(int n) { return std::countr_zero(static_cast<unsigned>(n)); }

struct Interval {
    int lo, hi;
};

std::vector<Interval> dyadic_intervals(int side, int min_len) {
    std::vector<Interval> out;
    for (int len = side; len >= min_len; len /= 2) {
        for (int lo = 0; lo < side; lo += len) out.push_back({lo, lo + len});
        if (len == 1) break;
    }
    return out;
}

std::vector<Interval> all_intervals(int side, int min_len) {
    std::vector<Interval> out;
    for (int len = side; len >= min_len; --len)
        for (int lo = 0; lo + len <= side; ++lo) out.push_back({lo, lo + len});
    return out;
}

void digest_domain(Digest& d, const GridDomain& g) {
    d.update(std::int64_t{g.dims}).update(std::int64_t{g.sides[0]});
    d.update(std::int64_t{g.sides[1]}).update(std::int64_t{g.split ? 1 : 0});
}

std::string measure_digest(const GridDomain& g, MeasureKind kind, const GridFunction& m) {
    Digest d;
    digest_domain(d, g);
    d.update(to_string(kind));
    for (Eigen::Index i = 0; i < m.size(); ++i) d.update(m[i]);
    return d.hex();
}

}  // namespace

int GridDomain::levels(int axis) const { return log2i(sides[axis]); }

GridDomain make_domain(int dims, int side0, int side1, bool split) {
    if (dims != 1 && dims != 2) throw Error(ErrorCode::BadDomain, "dims must be 1 or 2");
    if (dims == 1) side1 = 1;
    if (!power_of_two(side0) || !power_of_two(side1))
        throw Error(ErrorCode::BadDomain, "sides must be powers of two");
    if (split && dims != 2) throw Error(ErrorCode::BadDomain, "split needs a 2-D grid");
    GridDomain g;
    g.dims = dims;
    g.sides = {side0, side1};
    g.split = split;
    return g;
}

bool canonical_less(const BaseSet& a, const BaseSet& b) {
    if (a.cells() != b.cells()) return a.cells() > b.cells();
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.hi < b.hi;
}

BaseSet full_set(const GridDomain& domain) { return BaseSet{{0, 0}, domain.sides}; }

std::string describe(const BaseSet& b, int dims) {
    std::string s = "[" + std::to_string(b.lo[0]) + "," + std::to_string(b.hi[0]) + ")";
    if (dims == 2) s += "x[" + std::to_string(b.lo[1]) + "," + std::to_string(b.hi[1]) + ")";
    return s;
}

std::string_view to_string(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::Uniform: return "uniform";
        case MeasureKind::Density: return "density";
        case MeasureKind::General: return "general";
    }
    return "general";
}

double Measure::total() const {
    CompensatedSum s;
    for (Eigen::Index i = 0; i < masses.size(); ++i) s.add(masses[i]);
    return s.value();
}

namespace {

Measure make_measure(const GridDomain& domain, MeasureKind kind, GridFunction masses) {
    if (masses.size() != domain.cells())
        throw Error(ErrorCode::BadDomain, "measure size does not match domain");
    for (Eigen::Index i = 0; i < masses.size(); ++i) {
        if (!(masses[i] >= 0.0) || !std::isfinite(masses[i]))
            throw Error(ErrorCode::BadParams, "masses must be finite and nonnegative");
    }
    Measure mu{domain, kind, std::move(masses), {}};
    if (!(mu.total() > 0.0)) throw Error(ErrorCode::ZeroMass, "total mass is zero");
    mu.digest = measure_digest(domain, kind, mu.masses);
    return mu;
}

}  // namespace

Measure uniform_measure(const GridDomain& domain) {
    return make_measure(domain, MeasureKind::Uniform, GridFunction::Ones(domain.cells()));
}

Measure density_measure(const GridDomain& domain, const GridFunction& density) {
    return make_measure(domain, MeasureKind::Density, density);
}

Measure general_measure(const GridDomain& domain, const GridFunction& masses) {
    return make_measure(domain, MeasureKind::General, masses);
}

std::string_view to_string(BaseKind kind) {
    switch (kind) {
        case BaseKind::DyadicCubes: return "dyadic-cubes";
        case BaseKind::AllCubes: return "all-cubes";
        case BaseKind::DyadicRectangles: return "dyadic-rectangles";
        case BaseKind::AllRectangles: return "all-rectangles";
    }
    return "dyadic-cubes";
}

BaseKind parse_base_kind(std::string_view name) {
    for (auto k : {BaseKind::DyadicCubes, BaseKind::AllCubes, BaseKind::DyadicRectangles,
                   BaseKind::AllRectangles}) {
        if (to_string(k) == name) return k;
    }
    throw Error(ErrorCode::ParseError, "unknown base kind '" + std::string(name) + "'");
}

double box_sum(const GridFunction& f, const GridFunction& masses, const BaseSet& b,
               const GridDomain& domain) {
    CompensatedSum s;
    for_each_cell(b, domain, [&](int c) { s.add(f[c] * masses[c]); });
    return s.value();
}

double box_mass(const GridFunction& masses, const BaseSet& b, const GridDomain& domain) {
    CompensatedSum s;
    for_each_cell(b, domain, [&](int c) { s.add(masses[c]); });
    return s.value();
}

double average(const GridFunction& f, const BaseSet& b, const Measure& mu) {
    const double m = box_mass(mu.masses, b, mu.domain);
    if (!(m > 0.0)) throw Error(ErrorCode::ZeroMass, "average over a zero-mass set");
    return box_sum(f, mu.masses, b, mu.domain) / m;
}

bool is_dyadic_box(const BaseSet& b) {
    for (int a = 0; a < 2; ++a) {
        const int e = b.extent(a);
        if (!power_of_two(e) || b.lo[a] % e != 0) return false;
    }
    return true;
}

std::vector<BaseSet> dyadic_boxes(const GridDomain& domain, bool rectangles) {
    std::vector<BaseSet> out;
    if (rectangles) {
        for (auto a : dyadic_intervals(domain.sides[0], 1))
            for (auto b : dyadic_intervals(domain.sides[1], 1))
                out.push_back(BaseSet{{a.lo, b.lo}, {a.hi, b.hi}});
    } else if (domain.dims == 1) {
        for (auto a : dyadic_intervals(domain.sides[0], 1))
            out.push_back(BaseSet{{a.lo, 0}, {a.hi, 1}});
    } else {
        if (domain.sides[0] != domain.sides[1])
            throw Error(ErrorCode::BadDomain, "dyadic cubes need a square domain");
        for (int len = domain.sides[0]; len >= 1; len /= 2) {
            for (int i = 0; i < domain.sides[0]; i += len)
                for (int j = 0; j < domain.sides[1]; j += len)
                    out.push_back(BaseSet{{i, j}, {i + len, j + len}});
            if (len == 1) break;
        }
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

BaseFamily build_base(const GridDomain& domain, const Measure& mu, BaseKind kind,
                      int min_scale) {
    if (!(mu.domain == domain)) throw Error(ErrorCode::BadDomain, "measure is on another domain");
    if (is_rectangle(kind) && !(domain.dims == 2 && domain.split))
        throw Error(ErrorCode::IncompatibleBase, "rectangle bases need a split 2-D grid");
    const int top = domain.dims == 1 ? domain.levels(0)
                                     : std::min(domain.levels(0), domain.levels(1));
    if (min_scale < 0 || min_scale > top)
        throw Error(ErrorCode::BadParams, "min_scale out of range");
    const int min_len = 1 << min_scale;

    std::vector<BaseSet> candidates;
    switch (kind) {
        case BaseKind::DyadicCubes:
            for (const auto& b : dyadic_boxes(domain, false))
                if (b.extent(0) >= min_len) candidates.push_back(b);
            break;
        case BaseKind::AllCubes:
            if (domain.dims == 1) {
                for (auto a : all_intervals(domain.sides[0], min_len))
                    candidates.push_back(BaseSet{{a.lo, 0}, {a.hi, 1}});
            } else {
                const int side = std::min(domain.sides[0], domain.sides[1]);
                for (int len = side; len >= min_len; --len)
                    for (int i = 0; i + len <= domain.sides[0]; ++i)
                        for (int j = 0; j + len <= domain.sides[1]; ++j)
                            candidates.push_back(BaseSet{{i, j}, {i + len, j + len}});
            }
            break;
        case BaseKind::DyadicRectangles:
            for (auto a : dyadic_intervals(domain.sides[0], min_len))
                for (auto b : dyadic_intervals(domain.sides[1], min_len))
                    candidates.push_back(BaseSet{{a.lo, b.lo}, {a.hi, b.hi}});
            break;
        case BaseKind::AllRectangles:
            for (auto a : all_intervals(domain.sides[0], min_len))
                for (auto b : all_intervals(domain.sides[1], min_len))
                    candidates.push_back(BaseSet{{a.lo, b.lo}, {a.hi, b.hi}});
            break;
    }
    std::sort(candidates.begin(), candidates.end(), canonical_less);

    BaseFamily base;
    base.kind = kind;
    base.min_scale = min_scale;
    base.domain = domain;
    base.measure_digest = mu.digest;
    for (const auto& b : candidates) {
        const double m = box_mass(mu.masses, b, domain);
        if (m > 0.0) {
            base.sets.push_back(b);
            base.set_mass.push_back(m);
        } else if (is_dyadic(kind)) {
            throw Error(ErrorCode::ZeroMassBaseSet,
                        "dyadic set " + describe(b, domain.dims) + " has zero mass");
        }
    }
    if (base.sets.empty()) throw Error(ErrorCode::EmptyBase, "no base set survived");

    Digest d;
    digest_domain(d, domain);
    d.update(to_string(kind)).update(std::int64_t{min_scale}).update(mu.digest);
    base.id = d.hex();
    return base;
}

}  // namespace oscillab
