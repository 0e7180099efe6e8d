#include "rbcom/physics.hpp"

#include <cmath>

#include "rbcom/error.hpp"

namespace rbcom {

using detail::require;

void GainMedium::validate() const {
    require(g0 > 1.0, "gain medium: g0 must exceed 1");
    require(i_sat > 0.0, "gain medium: saturation intensity must be positive");
    require(f0 > 0.0, "gain medium: line center must be positive");
    require(fwhm > 0.0, "gain medium: fwhm must be positive");
}

void CavityLink::validate() const {
    require(alpha > 0.0 && alpha < 1.0, "cavity: alpha must lie in (0, 1)");
    require(distance >= 0.0, "cavity: distance must be non-negative");
    require(aperture_radius > 0.0, "cavity: aperture radius must be positive");
    require(wavelength > 0.0, "cavity: wavelength must be positive");
    require(divergence > 0.0, "cavity: divergence must be positive");
    require(p_t > 0.0, "cavity: transmission power must be positive");
    require(beam_area > 0.0, "cavity: beam area must be positive");
    medium_tx.validate();
    medium_rx.validate();
}

CavityLink CavityLink::at_distance(double d) const {
    CavityLink copy = *this;
    copy.distance = d;
    return copy;
}

double lorentzian_profile(double f, const GainMedium& medium) {
    const double x = (f - medium.f0) / (0.5 * medium.fwhm);
    return 1.0 / (1.0 + x * x);
}

double saturated_gain(double i_in, double f, const GainMedium& medium) {
    require(i_in >= 0.0, "saturated_gain: input intensity must be non-negative");
    return 1.0 + (medium.g0 - 1.0) * lorentzian_profile(f, medium) / (1.0 + i_in / medium.i_sat);
}

double beam_waist(double wavelength, double divergence) {
    return wavelength / (kPi * divergence);
}

double gaussian_capture(double aperture_radius, double wavelength, double divergence,
                        double d) {
    const double w0 = beam_waist(wavelength, divergence);
    const double spread = divergence * d;
    const double w2 = w0 * w0 + spread * spread;
    // -expm1 keeps precision when the captured fraction is tiny.
    return -std::expm1(-2.0 * aperture_radius * aperture_radius / w2);
}

double link_loss(const CavityLink& link) {
    return gaussian_capture(link.aperture_radius, link.wavelength, link.divergence,
                            link.distance);
}

namespace {

double product_at(const CavityLink& link, double delta, double intensity, RxIntensity mode,
                  double* g_tx = nullptr, double* g_rx = nullptr, double* i_rx = nullptr) {
    const double gt = saturated_gain(intensity, link.medium_tx.f0, link.medium_tx);
    const double rx_in =
        mode == RxIntensity::Equal ? intensity : intensity * link.alpha * delta * gt;
    const double gr = saturated_gain(rx_in, link.medium_rx.f0, link.medium_rx);
    if (g_tx) *g_tx = gt;
    if (g_rx) *g_rx = gr;
    if (i_rx) *i_rx = rx_in;
    return link.alpha * delta * delta * gt * gr;
}

}  // namespace

double round_trip_product(const CavityLink& link, double intensity, RxIntensity mode) {
    return product_at(link, link_loss(link), intensity, mode);
}

double bisect_decreasing(const std::function<double(double)>& fn, double lo, double hi,
                         double tol) {
    for (;;) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) return mid;  // bracket collapsed to adjacent doubles
        const double v = fn(mid);
        if (std::abs(v) <= tol) return mid;
        (v > 0.0 ? lo : hi) = mid;
    }
}

SteadyState steady_state_intensity(const CavityLink& link, RxIntensity mode) {
    link.validate();
    const double delta = link_loss(link);
    const double small_signal = product_at(link, delta, 0.0, mode);
    if (small_signal < 1.0) {
        throw BelowThreshold("steady state: small-signal round-trip gain " +
                             std::to_string(small_signal) + " is below unity");
    }

    // Both gains tend to 1 as the intensity grows, so the product ends below alpha * delta^2.
    double i_max = link.medium_tx.i_sat * (link.medium_tx.g0 - 1.0);
    while (product_at(link, delta, i_max, mode) >= 1.0) {
        i_max *= 2.0;
        if (!std::isfinite(i_max))
            throw Error("steady state: round-trip product does not fall below unity");
    }
    // The residual is relative to 1, so the tolerance is absolute on the product.
    constexpr double kTol = 1e-12;
    const double intensity = bisect_decreasing(
        [&](double i) { return product_at(link, delta, i, mode) - 1.0; }, 0.0, i_max, kTol);

    SteadyState ss;
    ss.intensity = intensity;
    ss.link_loss = delta;
    const double product =
        product_at(link, delta, intensity, mode, &ss.gain_tx, &ss.gain_rx, &ss.rx_intensity);
    ss.residual = std::abs(product - 1.0);
    return ss;
}

double round_trip_time(double d) {
    require(d >= 0.0, "round_trip_time: distance must be non-negative");
    return 2.0 * d / kSpeedOfLight;
}

double beam_break_energy(double p, double d) {
    require(p >= 0.0, "beam_break_energy: power must be non-negative");
    return p * round_trip_time(d);
}

}  // namespace rbcom
