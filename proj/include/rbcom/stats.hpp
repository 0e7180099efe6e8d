#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

namespace rbcom {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Wilson score interval for a binomial proportion (z = 1.96 gives 95 %).
inline Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.96) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

/// Gaussian tail probability Q(x) = P(N(0,1) > x).
inline double gaussian_q(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

inline constexpr unsigned gray_code(unsigned index) noexcept { return index ^ (index >> 1); }

/// Bit errors between two level indices under Gray labelling.
inline constexpr int gray_bit_errors(int sent, int detected) noexcept {
    return std::popcount(gray_code(static_cast<unsigned>(sent)) ^
                         gray_code(static_cast<unsigned>(detected)));
}

/// Symbol/bit error tallies with 95 % Wilson intervals.
struct ErrorStats {
    std::uint64_t symbols = 0;
    std::uint64_t symbol_errors = 0;
    std::uint64_t bits = 0;
    std::uint64_t bit_errors = 0;

    double ser() const { return symbols ? double(symbol_errors) / double(symbols) : 0.0; }
    double ber() const { return bits ? double(bit_errors) / double(bits) : 0.0; }
    Interval ser_ci() const { return wilson_interval(symbol_errors, symbols); }
    Interval ber_ci() const { return wilson_interval(bit_errors, bits); }

    void add(int sent, int detected, int bits_per_symbol) {
        ++symbols;
        bits += static_cast<std::uint64_t>(bits_per_symbol);
        if (sent != detected) {
            ++symbol_errors;
            bit_errors += static_cast<std::uint64_t>(gray_bit_errors(sent, detected));
        }
    }

    /// Symbol that could not be demodulated; every bit is counted as lost.
    void add_erasure(int bits_per_symbol) {
        ++symbols;
        ++symbol_errors;
        bits += static_cast<std::uint64_t>(bits_per_symbol);
        bit_errors += static_cast<std::uint64_t>(bits_per_symbol);
    }

    ErrorStats& operator+=(const ErrorStats& o) {
        symbols += o.symbols;
        symbol_errors += o.symbol_errors;
        bits += o.bits;
        bit_errors += o.bit_errors;
        return *this;
    }
};

}  // namespace rbcom
