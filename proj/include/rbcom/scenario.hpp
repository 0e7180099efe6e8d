#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rbcom/physics.hpp"
#include "rbcom/rng.hpp"

namespace rbcom {

enum class GainMode { Constant, Saturable };

/// Detector branch of the receiver: splitter (1 - alpha) after one pass of link loss delta.
struct ReceivePath {
    double alpha = 0.9;
    double delta = 1.0;

    static ReceivePath from(const CavityLink& link) { return {link.alpha, link_loss(link)}; }
    /// sqrt((1 - alpha) * delta), the amplitude factor from modulated symbol to detector.
    double amplitude() const;
};

/// y[n] = sqrt((1 - alpha) delta) s[n] + z[n], z ~ N(0, sigma2) i.i.d.
std::vector<double> receive(std::span<const double> s, const ReceivePath& path, double sigma2,
                            Rng& rng);
std::vector<double> receive(std::span<const double> s, const ReceivePath& path, double sigma2,
                            std::uint64_t seed);

/// Everything a link-level Monte Carlo run needs besides the seed.
struct LinkScenario {
    CavityLink link{};
    double b_mod = 1e8;            ///< EOAM modulation bandwidth, Hz
    int order = 2;
    double depth = 0.1;
    int ss_length = 0;             ///< 0 selects default_ss_length(N)
    double sigma2 = 0.0;           ///< detector noise variance, W
    double sync_threshold = 0.9;
    GainMode gain_mode = GainMode::Constant;  ///< direct scheme only

    int frame_symbols() const;
    int resolved_ss_length() const;
    void validate() const;
};

/// Noise variance giving electrical SNR (1 - alpha) delta P_t / sigma2 equal to `snr_db`.
double sigma2_for_snr(const CavityLink& link, double snr_db);

/// Result of one frame-acquisition attempt.
struct Acquisition {
    std::size_t true_offset = 0;
    std::optional<std::size_t> detected;
    bool locked() const { return detected && *detected == true_offset; }
};

/// One acquisition attempt on frame `attempt`: the receiver starts listening a random
/// number of samples (in [0, N)) before the frame, so the search buffer is the tail of
/// `preceding` followed by `frame`. Locked only if the SS is found at the true offset.
Acquisition acquire_frame_sync(std::span<const double> preceding, std::span<const double> frame,
                               std::span<const double> ss, double threshold, std::uint64_t seed,
                               std::uint64_t attempt);

/// First-frame acquisition: the stream before frame 1 is the unmodulated beam
/// (`idle_amplitude` plus noise).
Acquisition acquire_frame_sync(std::span<const double> first_frame, double idle_amplitude,
                               std::span<const double> ss, double sigma2, double threshold,
                               std::uint64_t seed);

}  // namespace rbcom
