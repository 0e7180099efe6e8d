#pragma once

// Direct-modulation echo-interference elimination.
//
// The transmitter modulates symbols onto whatever beam returns from the
// receiver, so s_k[n] = sqrt(h(s_{k-1}[n])) x_k[n] with h(s) = alpha delta^2
// G_T G_R s^2. The receiver undoes the recursion by dividing the current
// sample by the channel coefficient predicted from the previous frame's sample.

#include <cstdint>
#include <span>
#include <vector>

#include "rbcom/framing.hpp"
#include "rbcom/physics.hpp"
#include "rbcom/scenario.hpp"
#include "rbcom/stats.hpp"

namespace rbcom {

/// Link gain function h(s) = c * kappa(s) * s^2.
///
/// In Constant mode kappa == 1 and c is alpha delta^2 G_T G_R at the steady-state
/// operating point. In Saturable mode the two medium gains are re-evaluated at the
/// intensity implied by s; kappa(s) is their product relative to the operating point.
class LinkGain {
public:
    static LinkGain constant(double coefficient);
    /// Solves the steady state of `link`; throws BelowThreshold if none exists.
    static LinkGain for_link(const CavityLink& link, GainMode mode);

    double operator()(double s) const;
    double shape(double s) const;
    double coefficient() const noexcept { return coefficient_; }
    GainMode mode() const noexcept { return mode_; }

private:
    LinkGain() = default;
    double saturable_gain_product(double s) const;

    GainMode mode_ = GainMode::Constant;
    double coefficient_ = 1.0;
    double operating_product_ = 1.0;  // G_T * G_R at steady state
    double alpha_ = 1.0;
    double delta_ = 1.0;
    double beam_area_ = 1.0;
    GainMedium tx_{};
    GainMedium rx_{};
};

double link_gain(double s, const CavityLink& link, GainMode mode);

struct DirectLinkState {
    // transmitter side
    std::vector<double> prev_s;
    int k = 1;
    // receiver side
    std::vector<double> prev_y;
    int rx_k = 1;
    double c_hat = 0.0;
    double sigma2 = 0.0;
    GainMode gain_mode = GainMode::Constant;
};

/// Modulates one frame and advances the transmitter (k, prev_s).
std::vector<double> modulate_direct(std::span<const double> x, DirectLinkState& state,
                                    const LinkGain& gain, double p_t);

std::vector<double> receive_direct(std::span<const double> s, const ReceivePath& path,
                                   double sigma2, std::uint64_t seed);

/// Least-squares channel constant from the synchronization sequence.
///
/// `prev_s_ss` is the previous-frame amplitude at the SS positions. The amplitude
/// fit g = <y,a>/<a,a> estimates sqrt(c); the returned c_hat = g^2 - sigma2/<a,a>
/// removes the noise bias of the square. Throws EstimationError when <a,a> == 0.
double estimate_link_gain(std::span<const double> y_ss, std::span<const double> x_ss,
                          std::span<const double> prev_s_ss, const ReceivePath& path,
                          const LinkGain& gain, double sigma2);

struct DemodResult {
    std::vector<double> x_hat;   ///< NaN where demodulation failed
    std::vector<int> indices;    ///< sliced level index, -1 on failure
    int failures = 0;
};

/// Demodulates a synchronized frame and advances the receiver (rx_k, prev_y).
/// Frame 1 divides by sqrt((1-alpha) delta P_t); later frames use c_hat from `state`.
DemodResult demodulate_direct(std::span<const double> y, DirectLinkState& state,
                              const ReceivePath& path, const LinkGain& gain,
                              const SymbolAlphabet& alphabet, double p_t);

struct DirectStats {
    ErrorStats errors;
    std::vector<double> c_hat_trace;   ///< NaN for frame 1
    std::vector<double> power_trace;   ///< mean s^2 of each transmitted frame
    std::uint64_t demod_failures = 0;
    std::uint64_t sync_misses = 0;     ///< frames whose SS check fell below threshold
    double max_symbol_deviation = 0.0; ///< max |x_hat - x| over successfully demodulated payload
    std::uint64_t acquisition_frames = 0;  ///< frames spent searching for the SS; not in `errors`
    bool acquired = false;
};

/// End-to-end run: modulate, receive, synchronize, estimate, demodulate. The receiver
/// searches each frame for the SS until it locks, then tracks by frame period.
DirectStats simulate_direct_link(const LinkScenario& scenario, int n_frames, std::uint64_t seed);

}  // namespace rbcom
