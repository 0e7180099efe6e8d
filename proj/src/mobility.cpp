#include "rbcom/mobility.hpp"

#include <cmath>

#include "rbcom/constants.hpp"
#include "rbcom/error.hpp"

namespace rbcom {

double MobilityState::speed() const { return std::hypot(vx, vy); }

MobilityState make_mobility_state(double d0, double speed, double angle_rad, double f0) {
    if (!(d0 > 0.0)) throw InvalidArgument("mobility: initial distance must be positive");
    if (!(speed >= 0.0)) throw InvalidArgument("mobility: speed must be non-negative");
    if (!(angle_rad >= 0.0 && angle_rad <= kPi))
        throw InvalidArgument("mobility: direction angle must lie in [0, pi]");
    if (!(f0 > 0.0)) throw InvalidArgument("mobility: beam frequency must be positive");
    MobilityState s;
    s.x = d0;
    s.vx = speed * std::cos(angle_rad);
    s.vy = speed * std::sin(angle_rad);
    s.f_beam = f0;
    s.f_center = f0;
    s.distance = d0;
    return s;
}

MobilityState doppler_step(const MobilityState& state) {
    MobilityState next = state;
    ++next.round;
    if (state.vx == 0.0 && state.vy == 0.0) return next;

    const double dt = round_trip_time(state.distance);
    // Radial velocity at the reflection, positive when receding.
    const double v_r = (state.x * state.vx + state.y * state.vy) / state.distance;
    next.f_beam = state.f_beam * (1.0 - 2.0 * v_r / kSpeedOfLight);
    next.x = state.x + state.vx * dt;
    next.y = state.y + state.vy * dt;
    next.distance = std::hypot(next.x, next.y);
    return next;
}

CompensationResult frequency_compensation(const MobilityState& state, double threshold) {
    if (!(threshold > 0.0))
        throw InvalidArgument("frequency_compensation: threshold must be positive");
    CompensationResult out{state, false};
    if (std::abs(state.f_beam - state.f_center) > threshold) {
        out.state.f_beam = state.f_center;
        out.reset = true;
    }
    return out;
}

double small_signal_round_trip(const CavityLink& link, double delta, double f) {
    return link.alpha * delta * delta * saturated_gain(0.0, f, link.medium_tx) *
           saturated_gain(0.0, f, link.medium_rx);
}

BreakResult rounds_until_break(const MobilityState& initial, const CavityLink& link,
                               const MobilityOptions& options) {
    link.validate();
    if (options.compensation_threshold && !(*options.compensation_threshold > 0.0))
        throw InvalidArgument("rounds_until_break: compensation threshold must be positive");

    const double delta0 = gaussian_capture(link.aperture_radius, link.wavelength,
                                           link.divergence, initial.distance);
    if (small_signal_round_trip(link, delta0, initial.f_beam) < 1.0)
        throw BelowThreshold("rounds_until_break: initial cavity is below lasing threshold");

    BreakResult result;
    // A stationary receiver never changes distance or frequency.
    if (initial.vx == 0.0 && initial.vy == 0.0) return result;

    MobilityState state = initial;
    for (std::int64_t r = 0; r < options.max_rounds; ++r) {
        state = doppler_step(state);
        if (options.compensation_threshold) {
            const CompensationResult comp =
                frequency_compensation(state, *options.compensation_threshold);
            state = comp.state;
            if (comp.reset) ++result.compensations;
        }
        const double delta = options.distance_dependent_loss
                                 ? gaussian_capture(link.aperture_radius, link.wavelength,
                                                    link.divergence, state.distance)
                                 : delta0;
        if (small_signal_round_trip(link, delta, state.f_beam) < 1.0) {
            result.rounds = state.round;
            return result;
        }
    }
    return result;
}

}  // namespace rbcom
