#pragma once

// Adaptive-modulation echo-interference elimination: the transmitter pump is
// steered so the beam entering the modulator always has its steady-state
// intensity, which turns the cavity into a memoryless AWGN channel.

#include <cstdint>
#include <span>
#include <vector>

#include "rbcom/framing.hpp"
#include "rbcom/physics.hpp"
#include "rbcom/scenario.hpp"
#include "rbcom/stats.hpp"

namespace rbcom {

struct PumpCommand {
    double required = 1.0;  ///< i_target / i_echo
    double gain = 1.0;      ///< applied gain, clamped to [1, g0]
    bool feasible = true;
};

/// Gain the transmitter medium must supply to lift `i_echo` to `i_target`.
/// Feasible when 1 <= required <= g0 (the gain reachable at full pump).
PumpCommand pump_compensation(double i_echo, double i_target, const GainMedium& medium);

std::vector<double> modulate_adaptive(std::span<const double> x, double p_t);

std::vector<double> receive_adaptive(std::span<const double> s, const ReceivePath& path,
                                     double sigma2, std::uint64_t seed);

/// Energy detection: nearest level to y / reference_amplitude.
std::vector<int> demodulate_adaptive(std::span<const double> y, double reference_amplitude,
                                     const SymbolAlphabet& alphabet);
/// Reference amplitude sqrt((1-alpha) delta) sqrt(P_t) taken from the link.
std::vector<int> demodulate_adaptive(std::span<const double> y, const CavityLink& link,
                                     const SymbolAlphabet& alphabet);

struct AdaptiveLinkState {
    double i_target = 0.0;  ///< steady-state intensity at the transmitter medium output
    double sigma2 = 0.0;
    SymbolAlphabet alphabet{2, 0.1};
};

/// Intensity returning to the transmitter medium after the modulator emitted
/// `modulated_intensity` (one pass out, receiver medium, one pass back).
double echo_intensity(const CavityLink& link, double delta, double modulated_intensity);

struct CompensationStep {
    PumpCommand command;
    double i_echo = 0.0;
    double coefficient = 1.0;  ///< achieved / target modulator-input intensity
};

/// Per-frame pump control. Frame k's echo comes from frame k-1's mean modulated power.
class PumpController {
public:
    PumpController(const CavityLink& link, const SteadyState& ss);

    /// `prev_mean_square` is the mean x^2 of the previous frame (ignored for the first frame).
    CompensationStep step(double prev_mean_square);
    const AdaptiveLinkState& state() const noexcept { return state_; }

private:
    CavityLink link_;
    double delta_;
    double i_ss_;
    AdaptiveLinkState state_;
    double prev_coefficient_ = 1.0;
    bool first_ = true;
};

struct AdaptiveStats {
    ErrorStats errors;
    std::vector<double> coefficient_trace;
    std::vector<bool> feasible_trace;
    std::uint64_t outage_frames = 0;
    std::uint64_t sync_misses = 0;
    std::uint64_t acquisition_frames = 0;  ///< frames spent searching for the SS; not in `errors`
    bool acquired = false;

    double outage_fraction() const {
        return coefficient_trace.empty()
                   ? 0.0
                   : double(outage_frames) / double(coefficient_trace.size());
    }
};

AdaptiveStats simulate_adaptive_link(const LinkScenario& scenario, int n_frames,
                                     std::uint64_t seed);

}  // namespace rbcom
