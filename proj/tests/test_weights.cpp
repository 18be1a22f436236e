#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "oscillab/weights.hpp"

using namespace oscillab;

namespace {

struct Line {
    GridDomain g;
    Measure mu;
    BaseFamily base;
    Line(int n, BaseKind kind = BaseKind::DyadicCubes)
        : g(make_domain(1, n)), mu(uniform_measure(g)), base(build_base(g, mu, kind)) {}
};

Weight two_cell() {
    GridFunction v(2);
    v << 1.0, 2.0;
    return Weight(v);
}

std::vector<oracle::Interval> intervals(const BaseFamily& b) {
    std::vector<oracle::Interval> out;
    for (const auto& s : b.sets) out.push_back({s.lo[0], s.hi[0]});
    return out;
}

}  // namespace

TEST_CASE("unit weight constants") {
    Line l(16, BaseKind::AllCubes);
    const Weight one = Weight::unit(l.g);
    for (double p : {1.1, 2.0, 7.5}) CHECK(std::abs(muckenhoupt_constant(one, p, l.base, l.mu).value - 1.0) <= 1e-12);
    for (double d : {1.05, 2.0, 9.0}) CHECK(std::abs(reverse_holder_constant(one, d, l.base, l.mu).value - 1.0) <= 1e-12);
    CHECK(a1_constant(one, l.base, l.mu, make_maximal(MaximalMode::Uncentered, 1)).value == doctest::Approx(1.0));
}

TEST_CASE("two-cell fixtures") {
    Line l(2);
    const Weight w = two_cell();
    const auto ap = muckenhoupt_constant(w, 2.0, l.base, l.mu);
    CHECK(std::abs(ap.value - 1.125) <= 1e-12);
    CHECK(ap.argmax == full_set(l.g));
    CHECK(std::abs(reverse_holder_constant(w, 2.0, l.base, l.mu).value - std::sqrt(2.5) / 1.5) <= 1e-12);
    CHECK(std::abs(a1_constant(w, l.base, l.mu, make_maximal(MaximalMode::Dyadic, 1)).value - 1.5) <= 1e-12);

    BaseFamily singles = l.base;
    singles.sets = {BaseSet{{0, 0}, {1, 1}}, BaseSet{{1, 0}, {2, 1}}};
    singles.set_mass = {1.0, 1.0};
    singles.id = "singletons";
    CHECK(muckenhoupt_constant(w, 2.0, singles, l.mu).value == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("a1 argmax next to a spike") {
    Line l(4);
    GridFunction v(4);
    v << 1.0, 1.0, 1.0, 100.0;
    const auto r = a1_constant(Weight(v), l.base, l.mu, make_maximal(MaximalMode::Dyadic, 1));
    CHECK(r.argmax_cell == 2);
    CHECK(r.value == doctest::Approx(50.5));
    CHECK(r.argmax == BaseSet{{2, 0}, {4, 1}});
}

TEST_CASE("self improvement formulas") {
    SelfImprovementParams e;
    auto a = self_improvement(e, 2.0, 1.0);
    CHECK(a.delta == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(a.K == 2.0);
    SelfImprovementParams r;
    r.setting = Setting::Rectangles;
    CHECK(self_improvement(r, 2.0, 1.0).delta == doctest::Approx(17.0 / 16.0).epsilon(1e-15));
    SelfImprovementParams nd;
    nd.setting = Setting::NonDoubling;
    nd.besicovitch = 2.0;
    CHECK(self_improvement(nd, 2.0, 1.0).delta == doctest::Approx(17.0 / 16.0).epsilon(1e-15));
    SelfImprovementParams h;
    h.setting = Setting::Homogeneous;
    h.tau = 5.0;
    h.C = 3.0;
    auto hh = self_improvement(h, 3.0, 2.0);
    CHECK(hh.delta == doctest::Approx(1.1).epsilon(1e-15));
    CHECK(hh.K == 3.0);
    // non-increasing in t
    for (auto s : {Setting::EuclideanCubes, Setting::Rectangles, Setting::NonDoubling}) {
        SelfImprovementParams q;
        q.setting = s;
        CHECK(self_improvement(q, 2.0, 4.0).delta <= self_improvement(q, 2.0, 2.0).delta);
    }
}

TEST_CASE("power bump equality on two cells") {
    Line l(2);
    const auto rep = power_bump_check(two_cell(), 2.0, 2.0, l.base, l.mu);
    REQUIRE(rep.checks.size() == 1);
    CHECK(std::abs(rep.checks[0].lhs - 45.0 / 32.0) <= 1e-12);
    CHECK(std::abs(rep.checks[0].rhs - 45.0 / 32.0) <= 1e-12);
    CHECK(rep.pass);
    CHECK(rep.metadata["q"].get<double>() == 3.0);
    const auto unit = power_bump_check(Weight::unit(l.g), 3.0, 1.5, l.base, l.mu);
    CHECK(unit.checks[0].lhs == doctest::Approx(1.0));
    CHECK(unit.checks[0].rhs == doctest::Approx(1.0));
}

TEST_CASE("property: constants agree with brute force") {
    oracle::Gen gen(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 << (1 + gen.below(6));
        const bool all = gen.below(2) == 1;
        Line l(n, all ? BaseKind::AllCubes : BaseKind::DyadicCubes);
        oracle::Vec w(n), m(n, 1.0);
        GridFunction v(n);
        const double M = gen.uni(0.1, 4.0);
        for (int i = 0; i < n; ++i) v[i] = w[i] = gen.log_uniform(M);
        const Weight W(v);
        const double p = gen.uni(1.1, 4.0), d = gen.uni(1.1, 3.0);
        const auto sets = intervals(l.base);
        CHECK(muckenhoupt_constant(W, p, l.base, l.mu).value ==
              doctest::Approx(oracle::ap(w, m, sets, p)).epsilon(1e-10));
        CHECK(reverse_holder_constant(W, d, l.base, l.mu).value ==
              doctest::Approx(oracle::rh(w, m, sets, d)).epsilon(1e-10));
        // monotone: A_p non-increasing in p, RH_d non-decreasing in d
        CHECK(muckenhoupt_constant(W, p + 0.5, l.base, l.mu).value <=
              muckenhoupt_constant(W, p, l.base, l.mu).value * (1 + 1e-12));
        CHECK(reverse_holder_constant(W, d * 0.9 > 1.0 ? d * 0.9 : 1.01, l.base, l.mu).value <=
              reverse_holder_constant(W, d, l.base, l.mu).value * (1 + 1e-12));
    }
}

TEST_CASE("log-space path is scale invariant") {
    Line l(8, BaseKind::AllCubes);
    oracle::Gen gen(5);
    GridFunction v(8);
    for (int i = 0; i < 8; ++i) v[i] = gen.log_uniform(2.0);
    const Weight a(v), b(v * std::exp(300.0));
    for (double p : {1.2, 1.5}) {
        CHECK(muckenhoupt_constant(b, p, l.base, l.mu).value ==
              doctest::Approx(muckenhoupt_constant(a, p, l.base, l.mu).value).epsilon(1e-9));
    }
    CHECK(reverse_holder_constant(b, 3.0, l.base, l.mu).value ==
          doctest::Approx(reverse_holder_constant(a, 3.0, l.base, l.mu).value).epsilon(1e-9));
}

TEST_CASE("overflow guard and exponent range") {
    Line l(2);
    GridFunction v(2);
    v << 1e-300, 1e300;
    bool guarded = false;
    try {
        muckenhoupt_constant(Weight(v), 1.01, l.base, l.mu);
    } catch (const Error& e) {
        guarded = e.code() == ErrorCode::OverflowGuard;
    }
    CHECK(guarded);
    CHECK_THROWS_AS(muckenhoupt_constant(two_cell(), 1.0, l.base, l.mu), Error);
    CHECK_THROWS_AS(reverse_holder_constant(two_cell(), 1.0, l.base, l.mu), Error);
}

TEST_CASE("constants are cached per weight") {
    Line l(4);
    GridFunction v(4);
    v << 1.0, 3.0, 2.0, 5.0;
    const Weight w(v);
    const double first = muckenhoupt_constant(w, 2.0, l.base, l.mu).value;
    const Weight copy = w;
    CHECK(copy.cached("ap:2:" + l.base.id).has_value());
    CHECK(muckenhoupt_constant(copy, 2.0, l.base, l.mu).value == first);
    CHECK(w.cached_values().size() == 1);
}

TEST_CASE("doubling constants") {
    Line l(8);
    CHECK(doubling_constant(Weight::unit(l.g), l.base, l.mu) == doctest::Approx(2.0));
    auto sq = make_domain(2, 4, 4);
    auto mu = uniform_measure(sq);
    CHECK(doubling_constant(Weight::unit(sq), build_base(sq, mu, BaseKind::DyadicCubes), mu) ==
          doctest::Approx(4.0));
    auto rg = make_domain(2, 4, 8, true);
    auto rmu = uniform_measure(rg);
    CHECK(doubling_constant(Weight::unit(rg), build_base(rg, rmu, BaseKind::DyadicRectangles), rmu) ==
          doctest::Approx(4.0));
    GridFunction v(8);
    v << 1, 1, 1, 1, 1, 1, 1, 9;
    // child {7} inside parent {6,7}: (1 + 9) / 9; child {6}: 10 / 1
    CHECK(doubling_constant(Weight(v), l.base, l.mu) == doctest::Approx(10.0));
}

TEST_CASE("generators") {
    Line l(16);
    const auto dy = make_maximal(MaximalMode::Dyadic, 1);
    GeneratorContext ctx{l.g, &l.mu, &l.base, &dy};
    GeneratorParams gp;
    gp.exponent = 0.0;
    CHECK((generate_weight(WeightKind::Power, gp, 1, ctx).values() == 1.0).all());
    gp.bound = 1.7;
    const Weight lb = generate_weight(WeightKind::RandomLogBounded, gp, 9, ctx);
    CHECK(lb.values().minCoeff() >= std::exp(-1.7));
    CHECK(lb.values().maxCoeff() <= std::exp(1.7));
    CHECK((generate_weight(WeightKind::RandomLogBounded, gp, 9, ctx).values() == lb.values()).all());
    CHECK(generate_weight(WeightKind::RandomLogBounded, gp, 10, ctx).id() != lb.id());
    gp.p = 2.0;
    const Weight a1 = generate_weight(WeightKind::RubioA1, gp, 3, ctx);
    CHECK(a1_constant(a1, l.base, l.mu, dy).value <= 2.0 * dy.norm_bound(2.0) * (1 + 1e-11));
    gp.contrast = 3.0;
    const Weight cb = generate_weight(WeightKind::Checkerboard, gp, 0, ctx);
    CHECK(cb[0] == 1.0);
    CHECK(cb[1] == 3.0);
    gp.exponent = -1.0;
    CHECK_THROWS_AS(generate_weight(WeightKind::Power, gp, 0, ctx), Error);
}
