#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace oscillab {

inline constexpr std::string_view kVersion = "0.4.1";

enum class ErrorCode {
    ZeroMassBaseSet,
    EmptyBase,
    ZeroMass,
    ExponentOutOfRange,
    OverflowGuard,
    BadParams,
    BadDomain,
    IncompatibleBase,
    IncompatibleSpec,
    NonPositiveWeight,
    NonConvergence,
    ZeroInput,
    NotDyadic,
    DegenerateInput,
    EmptySequence,
    MissingInput,
    EmptyCorpus,
    AllDegenerate,
    ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Neumaier summation. Every reduction in the toolkit goes through this so
// that results depend only on the (canonical) order of the terms.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// 64-bit FNV-1a over a stream of typed fields. Used for content digests
// embedded in reports, not for anything security related.
class Digest {
public:
    Digest& update(std::string_view bytes) noexcept;
    Digest& update(double x) noexcept;
    Digest& update(std::int64_t x) noexcept;
    std::uint64_t value() const noexcept { return state_; }
    std::string hex() const;

private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

// Shortest round-trip, locale independent.
std::string format_double(double x);

inline double conjugate_exponent(double p) { return p / (p - 1.0); }

}  // namespace oscillab
