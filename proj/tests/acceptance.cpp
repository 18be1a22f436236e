// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <future>
#include <sstream>
#include <string>
#include <thread>

#include "oracles.hpp"
#include "oscillab/cli.hpp"
#include "oscillab/io.hpp"
#include "oscillab/verify.hpp"

using namespace oscillab;
namespace fs = std::filesystem;

namespace {

// tolerances
constexpr double kExactTol = 1e-12;
constexpr double kFixtureTol = 1e-9;
constexpr double kBumpSlack = 1e-9;
constexpr double kRdfWorked = 1e-9;
constexpr double kJNStable = 1e-9;
constexpr double kHolderTol = 1e-10;
constexpr double kRH2 = 1.0540925533894598;  // sqrt(2.5)/1.5
constexpr double kBump = 1.40625;

int failed = 0;

void report(int n, const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", n, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failed;
}

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// worker pool over [0, n); returns the number of bad indices
template <class Fn>
int count_bad(int n, const Fn& bad) {
    const unsigned k = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    std::vector<std::future<int>> parts;
    for (unsigned t = 0; t < k; ++t)
        parts.push_back(std::async(std::launch::async, [&, t] {
            int c = 0;
            for (int i = static_cast<int>(t); i < n; i += static_cast<int>(k)) c += bad(i) ? 1 : 0;
            return c;
        }));
    int total = 0;
    for (auto& f : parts) total += f.get();
    return total;
}

GridDomain small_domain(oracle::Gen& gen) {
    if (gen.below(2) == 0) return make_domain(1, 1 << (1 + gen.below(6)));
    const int a = 1 << gen.below(4), b = 1 << gen.below(4);
    return a == b ? make_domain(2, a, b) : make_domain(2, a, b, true);
}

BaseKind base_for(const GridDomain& g, oracle::Gen& gen) {
    if (g.split) return gen.below(2) ? BaseKind::DyadicRectangles : BaseKind::AllRectangles;
    return gen.below(2) ? BaseKind::DyadicCubes : BaseKind::AllCubes;
}

void fixtures() {
    auto line = make_domain(1, 16);
    auto mu = uniform_measure(line);
    auto all = build_base(line, mu, BaseKind::AllCubes);
    const Weight one = Weight::unit(line);
    double worst = 0.0;
    for (double p : {1.1, 2.0, 5.0}) worst = std::max(worst, std::abs(muckenhoupt_constant(one, p, all, mu).value - 1));
    for (double d : {1.1, 2.0, 5.0})
        worst = std::max(worst, std::abs(reverse_holder_constant(one, d, all, mu).value - 1));
    bool ok = worst <= kExactTol;

    auto two = make_domain(1, 2);
    auto mu2 = uniform_measure(two);
    auto base2 = build_base(two, mu2, BaseKind::DyadicCubes);
    GridFunction v(2);
    v << 1.0, 2.0;
    const Weight w(v);
    const double a2 = muckenhoupt_constant(w, 2.0, base2, mu2).value;
    const double rh2 = reverse_holder_constant(w, 2.0, base2, mu2).value;
    ok = ok && near(a2, 1.125, kFixtureTol) && near(rh2, kRH2, kFixtureTol);
    const auto bump = power_bump_check(w, 2.0, 2.0, base2, mu2);
    ok = ok && bump.checks.size() == 1 && near(bump.checks[0].lhs, kBump, kExactTol) &&
         near(bump.checks[0].rhs, kBump, kExactTol);
    std::ostringstream d;
    d.precision(17);
    d << "unit dev " << worst << ", A2 " << a2 << ", RH2 " << rh2 << ", bump " << bump.checks[0].lhs << " <= "
      << bump.checks[0].rhs;
    report(1, "exact fixtures", ok, d.str());
}

void power_bump() {
    constexpr int kTrials = 10000;
    const int bad = count_bad(kTrials, [](int i) {
        oracle::Gen gen(0xb0b0 + static_cast<std::uint64_t>(i));
        const GridDomain g = small_domain(gen);
        const Measure mu = uniform_measure(g);
        const BaseFamily base = build_base(g, mu, base_for(g, gen));
        const double M = gen.uni(0.1, 3.0);
        GridFunction v(g.cells());
        for (int c = 0; c < g.cells(); ++c) v[c] = gen.log_uniform(M);
        const double p = gen.uni(1.1, 4.0), delta = gen.uni(1.1, 3.0);
        const auto rep = power_bump_check(Weight(v), p, delta, base, mu);
        for (const auto& c : rep.checks)
            if (c.rhs - c.lhs < -kBumpSlack * std::abs(c.rhs)) return true;
        return false;
    });
    report(2, "power bump property", bad == 0, std::to_string(kTrials) + " trials, " + std::to_string(bad) + " violations");
}

void rubio() {
    constexpr int kTrials = 1000;
    const int bad = count_bad(kTrials, [](int i) {
        oracle::Gen gen(0x5eed + static_cast<std::uint64_t>(i));
        const bool two = gen.below(3) == 0;
        const int side = two ? 1 << (1 + gen.below(3)) : 1 << (1 + gen.below(6));
        const GridDomain g = two ? make_domain(2, side, side) : make_domain(1, side);
        GridFunction m(g.cells()), f = GridFunction::Zero(g.cells());
        for (int c = 0; c < g.cells(); ++c) {
            m[c] = gen.uni(0.3, 3.0);
            if (gen.below(3) == 0) f[c] = gen.uni(-2.0, 2.0);
        }
        f[gen.below(g.cells())] = 1.0;
        const Measure mu = general_measure(g, m);
        const bool dyadic = gen.below(2) == 0;
        const BaseFamily base = build_base(g, mu, dyadic ? BaseKind::DyadicCubes : BaseKind::AllCubes);
        const auto kind = make_maximal(dyadic ? MaximalMode::Dyadic : MaximalMode::Uncentered, g.dims);
        const double p = gen.uni(1.1, 4.0);
        const auto r = rubio_de_francia(f, p, base, mu, kind);
        const GridFunction& u = r.weight.values();
        const GridFunction Mu = maximal(u, base, mu, kind);
        for (int c = 0; c < g.cells(); ++c) {
            if (u[c] < std::abs(f[c])) return true;
            if (Mu[c] > 2.0 * r.bound * u[c] * (1.0 + 10.0 * r.tol)) return true;
        }
        return lp_norm(u, mu, p) > 2.0 * lp_norm(f, mu, p) * (1.0 + 10.0 * r.tol);
    });
    auto g = make_domain(1, 4);
    auto mu = uniform_measure(g);
    auto base = build_base(g, mu, BaseKind::DyadicCubes);
    GridFunction f = GridFunction::Zero(4);
    f[0] = 1.0;
    const double u0 = rubio_de_francia(f, 2.0, base, mu, make_maximal(MaximalMode::Dyadic, 1)).weight[0];
    report(3, "rubio de francia invariants", bad == 0 && near(u0, 4.0 / 3.0, kRdfWorked),
           std::to_string(kTrials) + " trials, " + std::to_string(bad) + " violations, u(cell 1) = " +
               fmt("%.17g", u0));
}

void certificates() {
    constexpr int kTrials = 500;
    std::string detail;
    bool ok = true;
    for (auto id : kAllTheorems) {
        const int fails = count_bad(kTrials, [&](int t) {
            try {
                const auto rep = certify(id, random_inputs(id, mix_seed(20240, static_cast<std::uint64_t>(id) + 1,
                                                                        static_cast<std::uint64_t>(t))));
                for (const auto& c : rep.checks) {
                    if (c.status == CheckStatus::Skipped) continue;
                    if (c.slack < -kCheckTol * std::abs(c.rhs)) return true;
                }
                return !rep.pass;
            } catch (const Error&) {
                return true;
            }
        });
        ok = ok && fails == 0;
        detail += std::string(detail.empty() ? "" : ", ") + std::string(to_string(id)) + " " + std::to_string(fails);
    }
    report(4, "certificate suites (500 each, failing instances)", ok, detail);
}

void john_nirenberg() {
    constexpr int kInstances = 100;
    const double cap = 2.0 * std::exp(1.0);
    std::vector<double> worst_T(kInstances, 0.0), drift(kInstances, 0.0);
    std::vector<int> err(kInstances, 0);
    auto g = make_domain(2, 32, 32, true);
    auto mu = uniform_measure(g);
    auto base = build_base(g, mu, BaseKind::DyadicRectangles);
    count_bad(kInstances, [&](int i) {
        oracle::Gen gen(0x7a7a + static_cast<std::uint64_t>(i));
        GridFunction f(g.cells());
        const int shape = gen.below(3);
        for (int c = 0; c < g.cells(); ++c) {
            const int x = c % 32, y = c / 32;
            f[c] = shape == 0   ? gen.uni(-1.0, 1.0)
                   : shape == 1 ? std::log(1.0 + std::abs(x - 13.5) + std::abs(y - 17.5))
                                : (x < 16) != (y < 8) ? 1.0 : 0.0;
        }
        GridFunction wv(g.cells());
        const double M = gen.uni(0.2, 0.75);
        for (int c = 0; c < g.cells(); ++c) wv[c] = gen.log_uniform(M);
        const Weight w(wv);
        const double bmo = oscillation_norm(f, CenteredDiff{w}, w, 1.0, base, mu).value;
        const double D = doubling_constant(w, base, mu);
        if (!(bmo > 0.0) || D * D > 700.0) {
            err[i] = 1;
            return true;
        }
        const GridFunction h = f / bmo;
        const double eta = 2.0 * std::exp(D * D);
        const auto a = jn_exp_moment(h, base, mu, w, eta, 8.0);
        const double N1 = std::ceil(a.max_lambda) + 1.0;
        const auto b = jn_exp_moment(h, base, mu, w, eta, N1);
        const auto c = jn_exp_moment(h, base, mu, w, eta, 4.0 * N1 + 10.0);
        worst_T[i] = std::max({a.T_N, b.T_N, c.T_N});
        drift[i] = std::abs(b.T_N - c.T_N) / c.T_N;
        return false;
    });
    double T = 0.0, dr = 0.0;
    int errs = 0;
    for (int i = 0; i < kInstances; ++i) {
        T = std::max(T, worst_T[i]);
        dr = std::max(dr, drift[i]);
        errs += err[i];
    }
    report(5, "john-nirenberg moment", errs == 0 && T <= cap && dr <= kJNStable,
           fmt("max T_N %.17g (cap %.6g)", T, cap) + fmt(", max relative drift in N %.3g, %g degenerate", dr, errs));
}

void holder_interp() {
    constexpr int kSamples = 1000;
    const int bad = count_bad(kSamples, [](int i) {
        const auto in = random_inputs(TheoremId::INTERP, mix_seed(606, static_cast<std::uint64_t>(i)));
        const auto& sp = *in.space;
        const double r = in.exponents.at("r"), e = in.exponents.at("eps");
        const CenteredDiff plain{};
        const double lo = oscillation_norm(*in.f, plain, *in.w, r - 2.0 * e, sp.base, sp.measure).value;
        const double mid = oscillation_norm(*in.f, plain, *in.w, r - e, sp.base, sp.measure).value;
        const double hi = oscillation_norm(*in.f, plain, *in.w, r, sp.base, sp.measure).value;
        const double lhs = std::pow(mid, r - e);
        const double rhs = std::pow(lo, (r - 2.0 * e) / 2.0) * std::pow(hi, r / 2.0);
        return !(oracle::le_rel(lo, mid, kHolderTol) && oracle::le_rel(mid, hi, kHolderTol) &&
                 oracle::le_rel(lhs, rhs, kHolderTol));
    });
    report(6, "hoelder monotonicity and interpolation", bad == 0,
           std::to_string(kSamples) + " samples, " + std::to_string(bad) + " violations");
}

void c1p_column() {
    const auto corpus = standard_corpus(1, 24);
    bool ok = true;
    std::string detail;
    for (double p : {2.0, 4.0, 8.0, 16.0}) {
        ConstantArgs a;
        a.p = 1.0;
        a.q = p;
        const double est = estimate_constant(ConstantKind::Cpq, corpus, a).value;
        const auto up = c1p_upper_column(corpus, p);
        ok = ok && est <= up.value;
        if (!detail.empty()) detail += ", ";
        detail += fmt("p=%g: ", p) + fmt("%.6g <= %.6g", est, up.value);
    }
    report(7, "c1p estimates below the upper column", ok, detail);
}

void triebel_lizorkin() {
    bool exact = true;
    for (int dims : {1, 2}) {
        auto g = dims == 1 ? make_domain(1, 32) : make_domain(2, 16, 16);
        auto mu = uniform_measure(g);
        auto base = build_base(g, mu, BaseKind::DyadicCubes);
        const BaseSet q0 = dims == 1 ? BaseSet{{8, 0}, {16, 1}} : BaseSet{{4, 8}, {8, 12}};
        for (double alpha : {-0.5, 0.0, 0.75}) {
            for (double q : {0.5, 1.0, 2.0, 3.5}) {
                TLSequence s{g, {}};
                s.coeffs[q0] = std::pow(tl_volume(q0, g), 0.5 + alpha / dims);
                exact = exact && oscillation_norm(s, TLSeq{alpha, q}, Weight::unit(g), q, base, mu).value == 1.0;
            }
        }
    }
    constexpr int kSequences = 200;
    std::vector<double> ratio(kSequences, 0.0);
    const int bad = count_bad(kSequences, [&](int i) {
        oracle::Gen gen(0x71 + static_cast<std::uint64_t>(i));
        const bool two = gen.below(3) == 0;
        const GridDomain g = two ? make_domain(2, 8, 8) : make_domain(1, 8 << gen.below(3));
        const Measure mu = uniform_measure(g);
        const BaseFamily base = build_base(g, mu, BaseKind::DyadicCubes);
        const auto s = random_sequence(g, mix_seed(88, static_cast<std::uint64_t>(i)), 1 + gen.below(8));
        const double alpha = gen.uni(-1.0, 1.0), q = gen.uni(0.5, 3.0), p = q + gen.uni(0.0, 3.0);
        const auto flat = tl_equivalence_probe(s, alpha, q, p, Weight::unit(g), base, mu);
        GridFunction wv(g.cells());
        for (int c = 0; c < g.cells(); ++c) wv[c] = gen.log_uniform(1.0);
        ratio[static_cast<std::size_t>(i)] = tl_equivalence_probe(s, alpha, q, p, Weight(wv), base, mu).ratio;
        return !oracle::le_rel(flat.unweighted, flat.weighted, kCheckTol);
    });
    double lo = INFINITY, hi = 0.0;
    for (double r : ratio) {
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    const bool finite = std::isfinite(lo) && std::isfinite(hi) && lo > 0.0;
    report(8, "triebel-lizorkin dyadic", exact && bad == 0 && finite,
           std::string("single coefficient exact: ") + (exact ? "yes" : "no") + ", " + std::to_string(bad) +
               " power-mean violations in 200" + fmt(", ratio band [%.6g, %.6g]", lo, hi));
}

int run_verify(const fs::path& out) {
    const std::string o = out.string();
    const char* argv[] = {"oscillab", "verify", "--suite", "all", "--trials", "10", "--seed", "1", "--out", o.c_str()};
    std::ostringstream sink, err;
    return cli::run(10, argv, sink, err);
}

void determinism() {
    const char* env = std::getenv("OSCILLAB_TEST_TMP");
    const fs::path root = (env ? fs::path(env) : fs::temp_directory_path() / "oscillab-test") / "acceptance";
    fs::remove_all(root);
    const int a = run_verify(root / "a");
    const int b = run_verify(root / "b");
    int files = 0, diffs = 0;
    for (const auto& e : fs::directory_iterator(root / "a")) {
        ++files;
        const fs::path other = root / "b" / e.path().filename();
        if (!fs::exists(other) || io::read_text(e.path()) != io::read_text(other)) ++diffs;
    }
    report(9, "determinism of verify reports", a == 0 && b == 0 && files > 0 && diffs == 0,
           "exit " + std::to_string(a) + "/" + std::to_string(b) + ", " + std::to_string(files) + " files, " +
               std::to_string(diffs) + " differ");
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    fixtures();
    power_bump();
    rubio();
    certificates();
    john_nirenberg();
    holder_interp();
    c1p_column();
    triebel_lizorkin();
    determinism();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d of 9 criteria failed (%.1f s)\n", failed, secs);
    return failed == 0 ? 0 : 1;
}
