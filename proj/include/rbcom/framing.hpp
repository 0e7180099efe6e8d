#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace rbcom {

/// Finite intensity-modulation alphabet: M uniformly spaced amplitudes in [1 - depth, 1].
class SymbolAlphabet {
public:
    SymbolAlphabet(int order, double depth);

    int order() const noexcept { return static_cast<int>(levels_.size()); }
    double depth() const noexcept { return depth_; }
    double level(int i) const { return levels_.at(static_cast<std::size_t>(i)); }
    double min_level() const noexcept { return levels_.front(); }
    double max_level() const noexcept { return levels_.back(); }
    std::span<const double> levels() const noexcept { return levels_; }
    int bits_per_symbol() const noexcept;  ///< floor(log2 M)

    /// Index of the nearest level; exact midpoints resolve to the lower level.
    int slice(double amplitude) const noexcept;

private:
    double depth_;
    std::vector<double> levels_;
};

SymbolAlphabet build_alphabet(int order, double depth);

struct Frame {
    std::vector<double> ss;
    std::vector<double> payload;

    std::size_t size() const noexcept { return ss.size() + payload.size(); }
    std::vector<double> symbols() const;
};

/// Symbols that fit in one reflection round: floor(2d/c * b_mod). Throws FrameTooShort below 2.
int frame_length(double d, double b_mod);

/// Default synchronization-sequence length for a frame of N symbols.
int default_ss_length(int frame_symbols) noexcept;

/// Two-level pseudo-random synchronization sequence over {min level, max level}.
/// Deterministic in (l_ss, seed); among a handful of seeded candidates the one with
/// the lowest aperiodic autocorrelation sidelobe is kept.
std::vector<double> make_ss(int l_ss, const SymbolAlphabet& alphabet, std::uint64_t seed);

/// Zero-mean normalized cross-correlation of `window` against `pattern` (same length).
/// Returns 0 when either side has zero variance.
double normalized_xcorr(std::span<const double> window, std::span<const double> pattern);

/// First offset whose normalized cross-correlation reaches `threshold`.
std::optional<std::size_t> detect_ss(std::span<const double> signal,
                                     std::span<const double> ss, double threshold);

struct MultiAccessPlan {
    std::vector<std::int64_t> user_frames;
    std::int64_t ap_frame = 0;  ///< LCM of all user frame lengths
};

MultiAccessPlan plan_multiaccess_frames(std::span<const double> distances, double b_mod);
MultiAccessPlan plan_from_frame_lengths(std::span<const std::int64_t> lengths);

}  // namespace rbcom
