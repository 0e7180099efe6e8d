#pragma once

// Resonant-cavity physics: Lorentzian gain line, homogeneously broadened
// saturable gain, Gaussian-beam capture loss between the two retroreflectors,
// and the steady-state operating point of the cavity.

#include <functional>

#include "rbcom/constants.hpp"

namespace rbcom {

struct GainMedium {
    double g0 = 1.0e4;                 ///< small-signal power gain per pass (> 1)
    double i_sat = 1.2e7;              ///< saturation intensity, W/m^2
    double f0 = kSpeedOfLight / 1064e-9;  ///< line center, Hz
    double fwhm = 1.0e11;              ///< gain bandwidth, Hz

    void validate() const;
};

struct CavityLink {
    double distance = 200.0;           ///< m
    double aperture_radius = 3e-3;     ///< m
    double divergence = 1.2e-3;        ///< far-field half angle, rad
    double wavelength = 1064e-9;       ///< m
    double alpha = 0.9;                ///< splitter transmission kept in the cavity
    GainMedium medium_tx{};
    GainMedium medium_rx{};
    double p_t = 1.0;                  ///< transmission power, W
    double beam_area = kPi * 3e-3 * 3e-3;  ///< m^2, converts symbol power to intensity

    void validate() const;
    /// Copy of this link placed at another distance.
    CavityLink at_distance(double d) const;
};

double lorentzian_profile(double f, const GainMedium& medium);

/// Power gain of one pass for input intensity `i_in` at optical frequency `f`.
double saturated_gain(double i_in, double f, const GainMedium& medium);

/// Waist radius of a diffraction-limited Gaussian beam with the given divergence.
double beam_waist(double wavelength, double divergence);

/// Fraction of a Gaussian beam captured by a circular aperture after `d` metres.
double gaussian_capture(double aperture_radius, double wavelength, double divergence,
                        double d);

/// delta: single-pass link loss between the retroreflectors.
double link_loss(const CavityLink& link);

/// How the receiver-side medium intensity relates to the transmitter-side one.
enum class RxIntensity {
    Propagated,  ///< I_rx = I * alpha * delta * G_T(I)
    Equal,       ///< both media see I (symmetric simplification)
};

struct SteadyState {
    double intensity = 0.0;   ///< I_ss at the transmitter medium input, W/m^2
    double rx_intensity = 0.0;
    double gain_tx = 0.0;
    double gain_rx = 0.0;
    double link_loss = 0.0;
    double residual = 0.0;    ///< |round-trip product - 1| at I_ss

    /// alpha * delta^2 * G_T * G_R at the operating point.
    double round_trip_gain(double alpha) const {
        return alpha * link_loss * link_loss * gain_tx * gain_rx;
    }
};

/// Round-trip power product alpha*delta^2*G_T*G_R for circulating intensity I, on line center.
double round_trip_product(const CavityLink& link, double intensity,
                          RxIntensity mode = RxIntensity::Propagated);

/// Solves the round-trip balance by bisection. Throws BelowThreshold when the
/// small-signal round trip cannot reach unity.
SteadyState steady_state_intensity(const CavityLink& link,
                                   RxIntensity mode = RxIntensity::Propagated);

/// Bisection for the root of a monotonically decreasing function on [lo, hi].
/// Stops when the function value is within `tol` of zero or the bracket collapses.
double bisect_decreasing(const std::function<double(double)>& fn, double lo, double hi,
                         double tol);

double round_trip_time(double d);

/// Energy released when an obstacle interrupts a beam of power `p` in a cavity of length `d`.
double beam_break_energy(double p, double d);

}  // namespace rbcom
