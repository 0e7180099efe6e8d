#pragma once

// Transmission-rate models used to compare the resonant-beam link against
// indoor visible-light (Lambertian LED) and free-space laser links. All three
// use B log2(1 + (eta P_rx)^2 / sigma^2) so the comparison is like for like.

#include <span>
#include <vector>

#include "rbcom/physics.hpp"

namespace rbcom {

struct VlcConfig {
    double half_angle_deg = 60.0;
    double irradiation_angle_deg = 45.0;
    double incidence_angle_deg = 45.0;
    double fov_semi_angle_deg = 90.0;
    double pd_area = 4e-4;          ///< m^2
    double refractive_index = 1.5;
    double filter_gain = 1.0;
    double responsivity = 0.53;
    double bandwidth = 1e8;         ///< Hz
    double p_t = 1.0;               ///< W

    void validate() const;
};

struct FocConfig {
    double wavelength = 1064e-9;
    double divergence = 1.2e-3;
    double rx_aperture_radius = 3e-3;
    double responsivity = 0.53;
    double bandwidth = 1e8;
    double p_t = 1.0;

    void validate() const;
};

struct RbcomRateConfig {
    CavityLink link{};              ///< link.distance is overridden per evaluation
    double responsivity = 0.53;
    double bandwidth = 1e8;
};

struct NoiseModel {
    double psd_dbm_per_hz = -170.0;
    double bandwidth = 1e8;         ///< Hz
};

/// sigma^2 = 10^((psd_dBm/Hz - 30)/10) * B, in W.
double noise_variance(const NoiseModel& noise);

double lambertian_order(double half_angle_deg);
double vlc_dc_gain(const VlcConfig& cfg, double d);
double vlc_rate(const VlcConfig& cfg, const NoiseModel& noise, double d);

double foc_capture(const FocConfig& cfg, double d);
double foc_rate(const FocConfig& cfg, const NoiseModel& noise, double d);

/// Optical power reaching the RBCom photodetector, (1 - alpha) delta(d) p_t; 0 when
/// the cavity cannot lase at `d`.
double rbcom_detected_power(const CavityLink& link, double d);
double rbcom_rate(const RbcomRateConfig& cfg, const NoiseModel& noise, double d);

struct RateRow {
    double distance = 0.0;
    double vlc = 0.0;
    double rbcom = 0.0;
    double foc = 0.0;
};

std::vector<RateRow> rate_sweep(const VlcConfig& vlc, const RbcomRateConfig& rbcom,
                                const FocConfig& foc, const NoiseModel& noise,
                                std::span<const double> distances);

}  // namespace rbcom
