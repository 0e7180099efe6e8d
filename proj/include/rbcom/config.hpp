#pragma once

// Experiment configuration: flat `section.key = value` text, one entry per line,
// `#` starts a comment. Omitted keys take the documented defaults; unknown keys
// are rejected. See README.md for the key reference.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rbcom/baselines.hpp"
#include "rbcom/mobility.hpp"
#include "rbcom/physics.hpp"
#include "rbcom/scenario.hpp"

namespace rbcom {

enum class Experiment {
    SteadyState,
    BerDirect,
    BerAdaptive,
    Mobility,
    Rates,
    MultiaccessPlan,
    Safety,
};

std::string_view experiment_name(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view name);

struct ExperimentConfig {
    std::optional<Experiment> experiment;
    std::uint64_t seed = 1;
    std::string output_dir;

    CavityLink link{};
    double modulation_bandwidth = 1e8;
    NoiseModel noise{};
    double responsivity = 0.53;

    int order = 2;
    double depth = 0.1;
    int ss_length = 0;
    double sync_threshold = 0.9;

    GainMode gain_mode = GainMode::Constant;
    int ber_frames = 200;
    std::vector<double> snr_db;

    double mobility_initial_distance = 200.0;
    std::vector<double> speeds;
    double angle_start_deg = 0.0;
    double angle_stop_deg = 180.0;
    double angle_step_deg = 1.0;
    std::int64_t max_rounds = 10'000'000;
    bool compensation = false;
    double compensation_threshold = 0.0;

    VlcConfig vlc{};
    double rates_min = 1.0;
    double rates_max = 200.0;
    double rates_step = 1.0;

    std::vector<double> user_distances;

    double safety_power = 1.0;
    double safety_distance = 10.0;

    /// Effective value of every key after defaults, in key order.
    std::map<std::string, std::string> effective;

    LinkScenario link_scenario(double sigma2) const;
    FocConfig foc() const;
    RbcomRateConfig rbcom_rates() const;
    std::vector<double> angle_grid() const;
    std::vector<double> rate_grid() const;
    /// One `key=value` line per effective key except output_dir; stable across runs.
    std::string canonical_text() const;
};

/// Parses and validates configuration text. Throws ConfigError carrying the line
/// number (parse errors) or the offending key (validation errors).
ExperimentConfig parse_config(std::string_view text);

/// Every recognized key with its default, as documented.
std::vector<std::pair<std::string, std::string>> config_defaults();

/// 64-bit FNV-1a, used to fingerprint configurations in the run manifest.
std::uint64_t fnv1a64(std::string_view data);

}  // namespace rbcom
