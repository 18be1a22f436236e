#include "oscillab/common.hpp"

#include <array>
#include <charconv>
#include <cstring>

namespace oscillab {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroMassBaseSet: return "ZeroMassBaseSet";
        case ErrorCode::EmptyBase: return "EmptyBase";
        case ErrorCode::ZeroMass: return "ZeroMass";
        case ErrorCode::ExponentOutOfRange: return "ExponentOutOfRange";
        case ErrorCode::OverflowGuard: return "OverflowGuard";
        case ErrorCode::BadParams: return "BadParams";
        case ErrorCode::BadDomain: return "BadDomain";
        case ErrorCode::IncompatibleBase: return "IncompatibleBase";
        case ErrorCode::IncompatibleSpec: return "IncompatibleSpec";
        case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::ZeroInput: return "ZeroInput";
        case ErrorCode::NotDyadic: return "NotDyadic";
        case ErrorCode::DegenerateInput: return "DegenerateInput";
        case ErrorCode::EmptySequence: return "EmptySequence";
        case ErrorCode::MissingInput: return "MissingInput";
        case ErrorCode::EmptyCorpus: return "EmptyCorpus";
        case ErrorCode::AllDegenerate: return "AllDegenerate";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

Digest& Digest::update(std::string_view bytes) noexcept {
    for (unsigned char c : bytes) {
        state_ ^= c;
        state_ *= 0x100000001b3ULL;
    }
    return *this;
}

Digest& Digest::update(double x) noexcept {
    if (x == 0.0) x = 0.0;  // fold -0
    char raw[sizeof(double)];
    std::memcpy(raw, &x, sizeof(double));
    return update(std::string_view(raw, sizeof(double)));
}

Digest& Digest::update(std::int64_t x) noexcept {
    char raw[sizeof(x)];
    std::memcpy(raw, &x, sizeof(x));
    return update(std::string_view(raw, sizeof(x)));
}

std::string Digest::hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    std::uint64_t v = state_;
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

}  // namespace oscillab
