#include "rbcom/framing.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rbcom/error.hpp"
#include "rbcom/physics.hpp"
#include "rbcom/rng.hpp"

namespace rbcom {

SymbolAlphabet::SymbolAlphabet(int order, double depth) : depth_(depth) {
    if (order < 2) throw InvalidArgument("alphabet: order must be at least 2");
    if (!(depth > 0.0 && depth < 1.0)) throw InvalidArgument("alphabet: depth must lie in (0, 1)");
    levels_.resize(static_cast<std::size_t>(order));
    const double m1 = order - 1;
    for (int i = 0; i < order; ++i) levels_[i] = 1.0 - depth * (m1 - i) / m1;
}

int SymbolAlphabet::bits_per_symbol() const noexcept {
    return std::bit_width(static_cast<unsigned>(order())) - 1;
}

int SymbolAlphabet::slice(double amplitude) const noexcept {
    // Levels are sorted, so the nearest one is adjacent to the insertion point.
    const auto it = std::lower_bound(levels_.begin(), levels_.end(), amplitude);
    if (it == levels_.begin()) return 0;
    if (it == levels_.end()) return order() - 1;
    const int hi = static_cast<int>(it - levels_.begin());
    const double d_lo = amplitude - levels_[hi - 1];
    const double d_hi = levels_[hi] - amplitude;
    return d_hi < d_lo ? hi : hi - 1;
}

SymbolAlphabet build_alphabet(int order, double depth) { return SymbolAlphabet(order, depth); }

std::vector<double> Frame::symbols() const {
    std::vector<double> all(ss);
    all.insert(all.end(), payload.begin(), payload.end());
    return all;
}

int frame_length(double d, double b_mod) {
    if (!(d > 0.0)) throw InvalidArgument("frame_length: distance must be positive");
    if (!(b_mod > 0.0)) throw InvalidArgument("frame_length: modulation bandwidth must be positive");
    const double slots = std::floor(round_trip_time(d) * b_mod);
    if (slots < 2.0) {
        throw FrameTooShort("frame_length: " + std::to_string(static_cast<long long>(slots)) +
                            " symbol slot(s) per round trip at d=" + std::to_string(d) + " m");
    }
    if (slots > static_cast<double>(std::numeric_limits<int>::max()))
        throw InvalidArgument("frame_length: frame too long");
    return static_cast<int>(slots);
}

int default_ss_length(int frame_symbols) noexcept { return std::min(16, frame_symbols - 1); }

namespace {

int peak_sidelobe(const std::vector<int>& chips) {
    const int n = static_cast<int>(chips.size());
    int peak = 0;
    for (int lag = 1; lag < n; ++lag) {
        int acc = 0;
        for (int i = 0; i + lag < n; ++i) acc += chips[i] * chips[i + lag];
        peak = std::max(peak, std::abs(acc));
    }
    return peak;
}

}  // namespace

std::vector<double> make_ss(int l_ss, const SymbolAlphabet& alphabet, std::uint64_t seed) {
    if (l_ss < 4) throw InvalidArgument("make_ss: sequence length must be at least 4");

    constexpr int kCandidates = 64;
    std::vector<int> best;
    int best_psl = std::numeric_limits<int>::max();
    for (int c = 0; c < kCandidates; ++c) {
        Rng rng = make_stream(seed, static_cast<std::uint64_t>(c), StreamTag::Sequence);
        std::vector<int> chips(static_cast<std::size_t>(l_ss));
        for (auto& chip : chips) chip = (rng() >> 63) ? 1 : -1;
        const bool constant =
            std::all_of(chips.begin(), chips.end(), [&](int v) { return v == chips.front(); });
        if (constant) continue;
        const int psl = peak_sidelobe(chips);
        if (psl < best_psl) {
            best_psl = psl;
            best = std::move(chips);
        }
    }
    if (best.empty()) {
        // Unreachable in practice: 64 constant draws in a row.
        best.assign(static_cast<std::size_t>(l_ss), 1);
        best.front() = -1;
    }

    std::vector<double> ss(best.size());
    std::transform(best.begin(), best.end(), ss.begin(), [&](int chip) {
        return chip > 0 ? alphabet.max_level() : alphabet.min_level();
    });
    return ss;
}

double normalized_xcorr(std::span<const double> window, std::span<const double> pattern) {
    const std::size_t n = pattern.size();
    double mw = 0.0, mp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mw += window[i];
        mp += pattern[i];
    }
    mw /= static_cast<double>(n);
    mp /= static_cast<double>(n);
    double cross = 0.0, ew = 0.0, ep = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = window[i] - mw;
        const double b = pattern[i] - mp;
        cross += a * b;
        ew += a * a;
        ep += b * b;
    }
    if (ew <= 0.0 || ep <= 0.0) return 0.0;
    return cross / std::sqrt(ew * ep);
}

std::optional<std::size_t> detect_ss(std::span<const double> signal,
                                     std::span<const double> ss, double threshold) {
    if (ss.empty()) throw InvalidArgument("detect_ss: empty synchronization sequence");
    if (signal.size() < ss.size())
        throw InvalidArgument("detect_ss: signal shorter than synchronization sequence");
    if (!(threshold > 0.0 && threshold <= 1.0))
        throw InvalidArgument("detect_ss: threshold must lie in (0, 1]");
    for (std::size_t off = 0; off + ss.size() <= signal.size(); ++off) {
        if (normalized_xcorr(signal.subspan(off, ss.size()), ss) >= threshold) return off;
    }
    return std::nullopt;
}

MultiAccessPlan plan_from_frame_lengths(std::span<const std::int64_t> lengths) {
    if (lengths.empty()) throw InvalidArgument("multiaccess: no users");
    MultiAccessPlan plan;
    plan.user_frames.assign(lengths.begin(), lengths.end());
    std::int64_t acc = 1;
    for (const std::int64_t n : lengths) {
        if (n < 1) throw InvalidArgument("multiaccess: frame lengths must be positive");
        const std::int64_t step = n / std::gcd(acc, n);
        if (acc > std::numeric_limits<std::int64_t>::max() / step)
            throw InvalidArgument("multiaccess: access-point frame length overflows");
        acc *= step;
    }
    plan.ap_frame = acc;
    return plan;
}

MultiAccessPlan plan_multiaccess_frames(std::span<const double> distances, double b_mod) {
    if (distances.empty()) throw InvalidArgument("multiaccess: no users");
    std::vector<std::int64_t> lengths;
    lengths.reserve(distances.size());
    for (const double d : distances) lengths.push_back(frame_length(d, b_mod));
    return plan_from_frame_lengths(lengths);
}

}  // namespace rbcom
