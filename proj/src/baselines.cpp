#include "rbcom/baselines.hpp"

#include <cmath>

#include "rbcom/constants.hpp"
#include "rbcom/error.hpp"

namespace rbcom {

using detail::require;

namespace {

double deg2rad(double deg) { return deg * kPi / 180.0; }

double shannon(double bandwidth, double responsivity, double p_rx, double sigma2) {
    const double current = responsivity * p_rx;
    return bandwidth * std::log2(1.0 + current * current / sigma2);
}

}  // namespace

void VlcConfig::validate() const {
    require(half_angle_deg > 0.0 && half_angle_deg < 90.0, "vlc: half angle must lie in (0, 90)");
    require(irradiation_angle_deg >= 0.0 && irradiation_angle_deg < 90.0,
            "vlc: irradiation angle must lie in [0, 90)");
    require(incidence_angle_deg >= 0.0, "vlc: incidence angle must be non-negative");
    require(fov_semi_angle_deg > 0.0 && fov_semi_angle_deg <= 90.0,
            "vlc: field of view must lie in (0, 90]");
    require(pd_area > 0.0 && refractive_index > 0.0 && filter_gain > 0.0 &&
                responsivity > 0.0 && bandwidth > 0.0 && p_t > 0.0,
            "vlc: area, index, filter gain, responsivity, bandwidth and power must be positive");
}

void FocConfig::validate() const {
    require(wavelength > 0.0 && divergence > 0.0 && rx_aperture_radius > 0.0 &&
                responsivity > 0.0 && bandwidth > 0.0 && p_t > 0.0,
            "foc: all parameters must be positive");
}

double noise_variance(const NoiseModel& noise) {
    require(noise.bandwidth > 0.0, "noise: bandwidth must be positive");
    return std::pow(10.0, (noise.psd_dbm_per_hz - 30.0) / 10.0) * noise.bandwidth;
}

double lambertian_order(double half_angle_deg) {
    return -std::log(2.0) / std::log(std::cos(deg2rad(half_angle_deg)));
}

double vlc_dc_gain(const VlcConfig& cfg, double d) {
    require(d > 0.0, "vlc: distance must be positive");
    if (cfg.incidence_angle_deg > cfg.fov_semi_angle_deg) return 0.0;
    const double m = lambertian_order(cfg.half_angle_deg);
    const double sin_fov = std::sin(deg2rad(cfg.fov_semi_angle_deg));
    const double concentrator = cfg.refractive_index * cfg.refractive_index / (sin_fov * sin_fov);
    return (m + 1.0) * cfg.pd_area / (2.0 * kPi * d * d) *
           std::pow(std::cos(deg2rad(cfg.irradiation_angle_deg)), m) * cfg.filter_gain *
           concentrator * std::cos(deg2rad(cfg.incidence_angle_deg));
}

double vlc_rate(const VlcConfig& cfg, const NoiseModel& noise, double d) {
    return shannon(cfg.bandwidth, cfg.responsivity, cfg.p_t * vlc_dc_gain(cfg, d),
                   noise_variance(noise));
}

double foc_capture(const FocConfig& cfg, double d) {
    require(d > 0.0, "foc: distance must be positive");
    return gaussian_capture(cfg.rx_aperture_radius, cfg.wavelength, cfg.divergence, d);
}

double foc_rate(const FocConfig& cfg, const NoiseModel& noise, double d) {
    return shannon(cfg.bandwidth, cfg.responsivity, cfg.p_t * foc_capture(cfg, d),
                   noise_variance(noise));
}

double rbcom_detected_power(const CavityLink& link, double d) {
    require(d > 0.0, "rbcom: distance must be positive");
    const CavityLink at = link.at_distance(d);
    try {
        const SteadyState ss = steady_state_intensity(at);
        // The circulating beam is normalized so the transmitter-side modulated power is p_t.
        return (1.0 - at.alpha) * ss.link_loss * at.p_t;
    } catch (const BelowThreshold&) {
        return 0.0;
    }
}

double rbcom_rate(const RbcomRateConfig& cfg, const NoiseModel& noise, double d) {
    return shannon(cfg.bandwidth, cfg.responsivity, rbcom_detected_power(cfg.link, d),
                   noise_variance(noise));
}

std::vector<RateRow> rate_sweep(const VlcConfig& vlc, const RbcomRateConfig& rbcom,
                                const FocConfig& foc, const NoiseModel& noise,
                                std::span<const double> distances) {
    if (distances.empty()) throw InvalidArgument("rate_sweep: empty distance grid");
    vlc.validate();
    foc.validate();
    rbcom.link.validate();
    std::vector<RateRow> rows;
    rows.reserve(distances.size());
    for (const double d : distances)
        rows.push_back({d, vlc_rate(vlc, noise, d), rbcom_rate(rbcom, noise, d),
                        foc_rate(foc, noise, d)});
    return rows;
}

}  // namespace rbcom
