#pragma once

// Round-by-round kinematics of a receiver moving in a straight line away from
// (or past) the transmitter. Each reflection round moves the receiver for one
// round-trip time and Doppler-shifts the circulating beam by (1 - 2 v_r / c).

#include <cstdint>
#include <optional>

#include "rbcom/physics.hpp"

namespace rbcom {

struct MobilityState {
    double x = 0.0;          ///< receiver position along the initial cavity axis, m
    double y = 0.0;          ///< transverse position, m
    double vx = 0.0;         ///< velocity, m/s
    double vy = 0.0;
    double f_beam = 0.0;     ///< current beam frequency, Hz
    double f_center = 0.0;   ///< frequency a compensation event restores, Hz
    std::int64_t round = 0;
    double distance = 0.0;   ///< m

    double speed() const;
};

/// Receiver at `d0` on the axis moving at `speed` with direction angle `angle_rad`
/// (0 = straight away from the transmitter, pi/2 = transverse).
MobilityState make_mobility_state(double d0, double speed, double angle_rad, double f0);

MobilityState doppler_step(const MobilityState& state);

struct CompensationResult {
    MobilityState state;
    bool reset = false;
};

/// Nonlinear-crystal frequency reset: restores f_center once |f_beam - f_center| > threshold.
CompensationResult frequency_compensation(const MobilityState& state, double threshold);

struct MobilityOptions {
    std::int64_t max_rounds = 10'000'000;
    std::optional<double> compensation_threshold;  ///< Hz; enables frequency compensation
    bool distance_dependent_loss = true;           ///< false freezes delta at its initial value
};

struct BreakResult {
    std::optional<std::int64_t> rounds;  ///< empty when the link survived max_rounds
    std::int64_t compensations = 0;

    bool unbroken() const { return !rounds.has_value(); }
};

/// Small-signal round-trip gain alpha delta^2 G_T(0,f) G_R(0,f).
double small_signal_round_trip(const CavityLink& link, double delta, double f);

/// Iterates doppler_step until the small-signal round-trip gain at the shifted
/// frequency and new distance drops below one. Throws BelowThreshold if the
/// initial state is already infeasible.
BreakResult rounds_until_break(const MobilityState& initial, const CavityLink& link,
                               const MobilityOptions& options = {});

}  // namespace rbcom
