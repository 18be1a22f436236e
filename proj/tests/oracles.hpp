#pragma once

// Brute-force reference evaluations. Plain loops over std::vector, no
// library internals, so they can disagree with the toolkit when it is wrong.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
using Interval = std::pair<int, int>;  // [lo, hi)

// xorshift64* with a splitmix seed scramble; enough for property sampling.
class Gen {
public:
    explicit Gen(std::uint64_t seed) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        s_ = (z ^ (z >> 31)) | 1;
    }
    std::uint64_t next() {
        s_ ^= s_ >> 12;
        s_ ^= s_ << 25;
        s_ ^= s_ >> 27;
        return s_ * 0x2545f4914f6cdd1dULL;
    }
    double uni(double a = 0.0, double b = 1.0) {
        return a + (b - a) * static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
    double log_uniform(double m) { return std::exp(uni(-m, m)); }

private:
    std::uint64_t s_;
};

inline std::vector<Interval> dyadic_intervals(int n) {
    std::vector<Interval> out;
    for (int len = n; len >= 1; len /= 2)
        for (int lo = 0; lo < n; lo += len) out.push_back({lo, lo + len});
    return out;
}

inline std::vector<Interval> all_intervals(int n) {
    std::vector<Interval> out;
    for (int lo = 0; lo < n; ++lo)
        for (int hi = lo + 1; hi <= n; ++hi) out.push_back({lo, hi});
    return out;
}

inline double mass(const Vec& m, Interval I) {
    double s = 0.0;
    for (int i = I.first; i < I.second; ++i) s += m[i];
    return s;
}

inline double avg_pow(const Vec& w, const Vec& m, Interval I, double r) {
    double s = 0.0;
    for (int i = I.first; i < I.second; ++i) s += std::pow(w[i], r) * m[i];
    return s / mass(m, I);
}

inline double ap(const Vec& w, const Vec& m, const std::vector<Interval>& sets, double p) {
    double best = 0.0;
    for (auto I : sets) {
        if (!(mass(m, I) > 0.0)) continue;
        const double a = avg_pow(w, m, I, 1.0);
        const double b = std::pow(avg_pow(w, m, I, -1.0 / (p - 1.0)), p - 1.0);
        best = std::max(best, a * b);
    }
    return best;
}

inline double rh(const Vec& w, const Vec& m, const std::vector<Interval>& sets, double d) {
    double best = 0.0;
    for (auto I : sets) {
        if (!(mass(m, I) > 0.0)) continue;
        best = std::max(best, std::pow(avg_pow(w, m, I, d), 1.0 / d) / avg_pow(w, m, I, 1.0));
    }
    return best;
}

inline Vec maximal(const Vec& f, const Vec& m, const std::vector<Interval>& sets) {
    Vec out(f.size(), 0.0);
    for (std::size_t x = 0; x < f.size(); ++x) {
        if (!(m[x] > 0.0)) continue;
        for (auto I : sets) {
            if (static_cast<int>(x) < I.first || static_cast<int>(x) >= I.second) continue;
            double s = 0.0;
            for (int i = I.first; i < I.second; ++i) s += std::abs(f[i]) * m[i];
            out[x] = std::max(out[x], s / mass(m, I));
        }
    }
    return out;
}

// sup over B of ((1/w(B)) sum |f - f_B|^p w m)^{1/p}, f_B the m-average
inline double osc_norm(const Vec& f, const Vec& w, const Vec& m, const std::vector<Interval>& sets,
                       double p) {
    double best = 0.0;
    for (auto I : sets) {
        if (!(mass(m, I) > 0.0)) continue;
        double fb = 0.0;
        for (int i = I.first; i < I.second; ++i) fb += f[i] * m[i];
        fb /= mass(m, I);
        double num = 0.0, den = 0.0;
        for (int i = I.first; i < I.second; ++i) {
            num += std::pow(std::abs(f[i] - fb), p) * w[i] * m[i];
            den += w[i] * m[i];
        }
        best = std::max(best, std::pow(num / den, 1.0 / p));
    }
    return best;
}

// inf over c of avg |f - c|, by trying every value of f as c
inline double sharp(const Vec& f, const Vec& m, const std::vector<Interval>& sets) {
    double best = 0.0;
    for (auto I : sets) {
        if (!(mass(m, I) > 0.0)) continue;
        double inf = INFINITY;
        for (int c = I.first; c < I.second; ++c) {
            double s = 0.0;
            for (int i = I.first; i < I.second; ++i) s += std::abs(f[i] - f[c]) * m[i];
            inf = std::min(inf, s / mass(m, I));
        }
        best = std::max(best, inf);
    }
    return best;
}

inline bool le_rel(double lhs, double rhs, double tol) { return rhs - lhs >= -tol * std::abs(rhs); }

}  // namespace oracle
