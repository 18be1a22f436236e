#pragma once

#include <Eigen/Core>
#include <array>
#include <string>
#include <vector>

#include "oscillab/common.hpp"

namespace oscillab {

using GridFunction = Eigen::ArrayXd;

// One- or two-dimensional grid of 2^L x 2^M cells, stored row-major.
// A one-dimensional grid keeps sides[1] == 1.
struct GridDomain {
    int dims = 1;
    std::array<int, 2> sides{1, 1};
    bool split = false;  // axes factor as 1 + 1 (rectangle bases)

    int cells() const { return sides[0] * sides[1]; }
    int levels(int axis) const;
    int index(int i0, int i1) const { return i0 * sides[1] + i1; }
    bool operator==(const GridDomain&) const = default;
};

GridDomain make_domain(int dims, int side0, int side1 = 1, bool split = false);

// Half-open box [lo, hi) of whole cells.
struct BaseSet {
    std::array<int, 2> lo{0, 0};
    std::array<int, 2> hi{1, 1};

    int extent(int axis) const { return hi[axis] - lo[axis]; }
    int cells() const { return extent(0) * extent(1); }
    bool contains(int i0, int i1) const {
        return i0 >= lo[0] && i0 < hi[0] && i1 >= lo[1] && i1 < hi[1];
    }
    bool contains(const BaseSet& other) const {
        return other.lo[0] >= lo[0] && other.hi[0] <= hi[0] && other.lo[1] >= lo[1] &&
               other.hi[1] <= hi[1];
    }
    bool intersects(const BaseSet& other) const {
        return other.lo[0] < hi[0] && lo[0] < other.hi[0] && other.lo[1] < hi[1] &&
               lo[1] < other.hi[1];
    }
    bool operator==(const BaseSet&) const = default;
};

// Canonical order: more cells first, then lexicographic lo, then hi.
bool canonical_less(const BaseSet& a, const BaseSet& b);

BaseSet full_set(const GridDomain& domain);
std::string describe(const BaseSet& b, int dims);

template <class Fn>
void for_each_cell(const BaseSet& b, const GridDomain& domain, Fn&& fn) {
    for (int i0 = b.lo[0]; i0 < b.hi[0]; ++i0) {
        const int row = i0 * domain.sides[1];
        for (int i1 = b.lo[1]; i1 < b.hi[1]; ++i1) fn(row + i1);
    }
}

enum class MeasureKind { Uniform, Density, General };

std::string_view to_string(MeasureKind kind);

struct Measure {
    GridDomain domain;
    MeasureKind kind = MeasureKind::Uniform;
    GridFunction masses;
    std::string digest;

    bool positive(int cell) const { return masses[cell] > 0.0; }
    double total() const;
};

Measure uniform_measure(const GridDomain& domain);
Measure density_measure(const GridDomain& domain, const GridFunction& density);
Measure general_measure(const GridDomain& domain, const GridFunction& masses);

enum class BaseKind { DyadicCubes, AllCubes, DyadicRectangles, AllRectangles };

std::string_view to_string(BaseKind kind);
BaseKind parse_base_kind(std::string_view name);
inline bool is_dyadic(BaseKind k) {
    return k == BaseKind::DyadicCubes || k == BaseKind::DyadicRectangles;
}
inline bool is_rectangle(BaseKind k) {
    return k == BaseKind::DyadicRectangles || k == BaseKind::AllRectangles;
}

struct BaseFamily {
    BaseKind kind = BaseKind::DyadicCubes;
    int min_scale = 0;
    GridDomain domain;
    std::vector<BaseSet> sets;
    std::vector<double> set_mass;  // mu(B), aligned with sets
    std::string measure_digest;
    std::string id;
};

BaseFamily build_base(const GridDomain& domain, const Measure& mu, BaseKind kind,
                      int min_scale = 0);

// Every dyadic box of the domain. With rectangles = false only cubes
// (square domains and 1-D grids); otherwise products of dyadic intervals.
std::vector<BaseSet> dyadic_boxes(const GridDomain& domain, bool rectangles);

bool is_dyadic_box(const BaseSet& b);

// sum over B of f * mass, compensated, row-major cell order
double box_sum(const GridFunction& f, const GridFunction& masses, const BaseSet& b,
               const GridDomain& domain);
double box_mass(const GridFunction& masses, const BaseSet& b, const GridDomain& domain);

double average(const GridFunction& f, const BaseSet& b, const Measure& mu);

}  // namespace oscillab
