#include "rbcom/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>

#include "rbcom/constants.hpp"
#include "rbcom/error.hpp"
#include "rbcom/framing.hpp"

namespace rbcom {

namespace {

constexpr std::string_view kAuto = "auto";

constexpr std::pair<Experiment, std::string_view> kExperiments[] = {
    {Experiment::SteadyState, "steady-state"},
    {Experiment::BerDirect, "ber-direct"},
    {Experiment::BerAdaptive, "ber-adaptive"},
    {Experiment::Mobility, "mobility"},
    {Experiment::Rates, "rates"},
    {Experiment::MultiaccessPlan, "multiaccess-plan"},
    {Experiment::Safety, "safety"},
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void invalid(const std::string& key, const std::string& why) {
    throw ConfigError("invalid value for '" + key + "': " + why, key);
}

double to_double(const std::string& key, std::string_view v) {
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size() || !std::isfinite(out))
        invalid(key, "expected a finite number, got '" + std::string(v) + "'");
    return out;
}

std::int64_t to_int(const std::string& key, std::string_view v) {
    std::int64_t out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        invalid(key, "expected an integer, got '" + std::string(v) + "'");
    return out;
}

std::uint64_t to_u64(const std::string& key, std::string_view v) {
    std::uint64_t out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        invalid(key, "expected an unsigned 64-bit integer, got '" + std::string(v) + "'");
    return out;
}

bool to_bool(const std::string& key, std::string_view v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    invalid(key, "expected true or false, got '" + std::string(v) + "'");
}

std::vector<double> to_list(const std::string& key, std::string_view v) {
    std::vector<double> out;
    while (!v.empty()) {
        const auto comma = v.find(',');
        const std::string_view item = trim(v.substr(0, comma));
        if (item.empty()) invalid(key, "empty list element");
        out.push_back(to_double(key, item));
        if (comma == std::string_view::npos) break;
        v.remove_prefix(comma + 1);
    }
    if (out.empty()) invalid(key, "list must not be empty");
    return out;
}

void check(bool ok, const std::string& key, const std::string& why) {
    if (!ok) invalid(key, why);
}

using Setter = std::function<void(ExperimentConfig&, const std::string& key, std::string_view)>;

struct KeySpec {
    std::string_view key;
    std::string_view default_value;
    Setter set;
};

// Setters that store a number and validate the range right away.
Setter positive(double ExperimentConfig::*field) {
    return [field](ExperimentConfig& c, const std::string& k, std::string_view v) {
        const double x = to_double(k, v);
        check(x > 0.0, k, "must be positive");
        c.*field = x;
    };
}

template <typename Get>
Setter positive_at(Get get) {
    return [get](ExperimentConfig& c, const std::string& k, std::string_view v) {
        const double x = to_double(k, v);
        check(x > 0.0, k, "must be positive");
        get(c) = x;
    };
}

template <typename Get>
Setter number_at(Get get) {
    return [get](ExperimentConfig& c, const std::string& k, std::string_view v) {
        get(c) = to_double(k, v);
    };
}

const std::vector<KeySpec>& key_specs() {
    static const std::vector<KeySpec> specs = {
        {"experiment", "", [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             if (v.empty()) return;
             const auto e = parse_experiment(v);
             if (!e) invalid(k, "unknown experiment '" + std::string(v) + "'");
             c.experiment = e;
         }},
        {"seed", "1", [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             c.seed = to_u64(k, v);
         }},
        {"output_dir", "", [](ExperimentConfig& c, const std::string&, std::string_view v) {
             c.output_dir = std::string(v);
         }},

        {"cavity.distance_m", "200",
         positive_at([](ExperimentConfig& c) -> double& { return c.link.distance; })},
        {"cavity.aperture_radius_m", "0.003",
         positive_at([](ExperimentConfig& c) -> double& { return c.link.aperture_radius; })},
        {"cavity.divergence_rad", "0.0012",
         positive_at([](ExperimentConfig& c) -> double& { return c.link.divergence; })},
        {"cavity.wavelength_m", "1.064e-6",
         positive_at([](ExperimentConfig& c) -> double& { return c.link.wavelength; })},
        {"cavity.alpha", "0.9",
         [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             const double x = to_double(k, v);
             check(x > 0.0 && x < 1.0, k, "splitter coefficient must lie in (0, 1)");
             c.link.alpha = x;
         }},
        {"cavity.tx_power_w", "1",
         positive_at([](ExperimentConfig& c) -> double& { return c.link.p_t; })},
        {"cavity.beam_area_m2", kAuto,
         [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             if (v == kAuto) {
                 c.link.beam_area = kPi * c.link.aperture_radius * c.link.aperture_radius;
                 return;
             }
             const double x = to_double(k, v);
             check(x > 0.0, k, "must be positive");
             c.link.beam_area = x;
         }},

        {"medium.small_signal_gain", "10000",
         [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             const double x = to_double(k, v);
             check(x > 1.0, k, "small-signal gain must exceed 1");
             c.link.medium_tx.g0 = c.link.medium_rx.g0 = x;
         }},
        {"medium.saturation_intensity_w_m2", "1.2e7",
         [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             const double x = to_double(k, v);
             check(x > 0.0, k, "must be positive");
             c.link.medium_tx.i_sat = c.link.medium_rx.i_sat = x;
         }},
        {"medium.center_frequency_hz", kAuto,
         [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             double x = 0.0;
             if (v == kAuto) {
                 x = kSpeedOfLight / c.link.wavelength;
             } else {
                 x = to_double(k, v);
                 check(x > 0.0, k, "must be positive");
             }
             c.link.medium_tx.f0 = c.link.medium_rx.f0 = x;
         }},
        {"medium.fwhm_hz", "1e11",
         [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             const double x = to_double(k, v);
             check(x > 0.0, k, "must be positive");
             c.link.medium_tx.fwhm = c.link.medium_rx.fwhm = x;
         }},

        {"modulation.bandwidth_hz", "1e8", positive(&ExperimentConfig::modulation_bandwidth)},
        {"noise.psd_dbm_hz", "-170",
         number_at([](ExperimentConfig& c) -> double& { return c.noise.psd_dbm_per_hz; })},
        {"noise.bandwidth_hz", "1e8",
         positive_at([](ExperimentConfig& c) -> double& { return c.noise.bandwidth; })},
        {"receiver.responsivity", "0.53", positive(&ExperimentConfig::responsivity)},

        {"alphabet.order", "2",
         [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             const auto m = to_int(k, v);
             check(m >= 2 && m <= 1024, k, "order must lie in [2, 1024]");
             check((m & (m - 1)) == 0, k, "order must be a power of two for bit accounting");
             c.order = static_cast<int>(m);
         }},
        {"alphabet.depth", "0.1",
         [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             const double x = to_double(k, v);
             check(x > 0.0 && x < 1.0, k, "modulation depth must lie in (0, 1)");
             c.depth = x;
         }},
        {"frame.ss_length", kAuto,
         [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             if (v == kAuto) {
                 c.ss_length = 0;
                 return;
             }
             const auto l = to_int(k, v);
             check(l >= 4 && l <= 1'000'000, k, "synchronization sequence length must be >= 4");
             c.ss_length = static_cast<int>(l);
         }},
        {"sync.threshold", "0.9",
         [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             const double x = to_double(k, v);
             check(x > 0.0 && x <= 1.0, k, "threshold must lie in (0, 1]");
             c.sync_threshold = x;
         }},

        {"ber.gain_mode", "constant",
         [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             if (v == "constant")
                 c.gain_mode = GainMode::Constant;
             else if (v == "saturable")
                 c.gain_mode = GainMode::Saturable;
             else
                 invalid(k, "expected 'constant' or 'saturable'");
         }},
        {"ber.frames", "200",
         [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             const auto n = to_int(k, v);
             check(n >= 1 && n <= 100'000'000, k, "frame count must lie in [1, 1e8]");
             c.ber_frames = static_cast<int>(n);
         }},
        {"ber.snr_db", "20,25,30,35,40",
         [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             c.snr_db = to_list(k, v);
         }},

        {"mobility.initial_distance_m", "200",
         positive(&ExperimentConfig::mobility_initial_distance)},
        {"mobility.speeds_mps", "5,10,20",
         [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             c.speeds = to_list(k, v);
             for (const double s : c.speeds) check(s >= 0.0, k, "speeds must be non-negative");
         }},
        {"mobility.angle_start_deg", "0",
         number_at([](ExperimentConfig& c) -> double& { return c.angle_start_deg; })},
        {"mobility.angle_stop_deg", "180",
         number_at([](ExperimentConfig& c) -> double& { return c.angle_stop_deg; })},
        {"mobility.angle_step_deg", "1", positive(&ExperimentConfig::angle_step_deg)},
        {"mobility.max_rounds", "10000000",
         [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             const auto n = to_int(k, v);
             check(n >= 1, k, "must be at least 1");
             c.max_rounds = n;
         }},
        {"mobility.compensation", "false",
         [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             c.compensation = to_bool(k, v);
         }},
        {"mobility.compensation_threshold_hz", kAuto,
         [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             if (v == kAuto) {
                 c.compensation_threshold = 0.5 * c.link.medium_tx.fwhm;
                 return;
             }
             const double x = to_double(k, v);
             check(x > 0.0, k, "must be positive");
             c.compensation_threshold = x;
         }},

        {"vlc.half_angle_deg", "60",
         [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             const double x = to_double(k, v);
             check(x > 0.0 && x < 90.0, k, "must lie in (0, 90)");
             c.vlc.half_angle_deg = x;
         }},
        {"vlc.irradiation_angle_deg", "45",
         [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             const double x = to_double(k, v);
             check(x >= 0.0 && x < 90.0, k, "must lie in [0, 90)");
             c.vlc.irradiation_angle_deg = x;
         }},
        {"vlc.incidence_angle_deg", kAuto,
         [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             if (v == kAuto) {
                 c.vlc.incidence_angle_deg = c.vlc.irradiation_angle_deg;
                 return;
             }
             const double x = to_double(k, v);
             check(x >= 0.0 && x < 90.0, k, "must lie in [0, 90)");
             c.vlc.incidence_angle_deg = x;
         }},
        {"vlc.fov_semi_angle_deg", "90",
         [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             const double x = to_double(k, v);
             check(x > 0.0 && x <= 90.0, k, "must lie in (0, 90]");
             c.vlc.fov_semi_angle_deg = x;
         }},
        {"vlc.pd_area_m2", "4e-4",
         positive_at([](ExperimentConfig& c) -> double& { return c.vlc.pd_area; })},
        {"vlc.refractive_index", "1.5",
         positive_at([](ExperimentConfig& c) -> double& { return c.vlc.refractive_index; })},
        {"vlc.filter_gain", "1",
         positive_at([](ExperimentConfig& c) -> double& { return c.vlc.filter_gain; })},

        {"rates.distance_min_m", "1", positive(&ExperimentConfig::rates_min)},
        {"rates.distance_max_m", "200", positive(&ExperimentConfig::rates_max)},
        {"rates.distance_step_m", "1", positive(&ExperimentConfig::rates_step)},

        {"multiaccess.distances_m", "20,30,45",
         [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             c.user_distances = to_list(k, v);
             for (const double d : c.user_distances) check(d > 0.0, k, "distances must be positive");
         }},

        {"safety.power_w", "1",
         [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             const double x = to_double(k, v);
             check(x >= 0.0, k, "must be non-negative");
             c.safety_power = x;
         }},
        {"safety.distance_m", "10",
         [](ExperimentConfig& c, const std::string& k, std::string_view v) {
             const double x = to_double(k, v);
             check(x >= 0.0, k, "must be non-negative");
             c.safety_distance = x;
         }},
    };
    return specs;
}

void cross_validate(ExperimentConfig& c) {
    c.vlc.responsivity = c.responsivity;
    c.vlc.bandwidth = c.modulation_bandwidth;
    c.vlc.p_t = c.link.p_t;
    check(c.angle_start_deg >= 0.0 && c.angle_start_deg <= 180.0, "mobility.angle_start_deg",
          "must lie in [0, 180]");
    check(c.angle_stop_deg >= c.angle_start_deg && c.angle_stop_deg <= 180.0,
          "mobility.angle_stop_deg", "must lie in [angle_start_deg, 180]");
    check(c.rates_max >= c.rates_min, "rates.distance_max_m", "must not be below distance_min_m");
    // Derived quantities are checked here so a bad value is reported before any simulation.
    try {
        c.link.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what(), "cavity");
    }
    if (c.ss_length > 0) {
        try {
            const int n = frame_length(c.link.distance, c.modulation_bandwidth);
            check(c.ss_length < n, "frame.ss_length",
                  "must be shorter than the frame (" + std::to_string(n) + " symbols)");
        } catch (const FrameTooShort&) {
            // reported by the experiments that need frames
        }
    }
}

}  // namespace

std::string_view experiment_name(Experiment e) {
    for (const auto& [id, name] : kExperiments)
        if (id == e) return name;
    return "unknown";
}

std::optional<Experiment> parse_experiment(std::string_view name) {
    for (const auto& [id, n] : kExperiments)
        if (n == name) return id;
    return std::nullopt;
}

std::vector<std::pair<std::string, std::string>> config_defaults() {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& spec : key_specs())
        out.emplace_back(std::string(spec.key), std::string(spec.default_value));
    return out;
}

ExperimentConfig parse_config(std::string_view text) {
    std::map<std::string, std::string, std::less<>> raw;
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'", {},
                              line_no);
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": missing key", {}, line_no);
        const bool known = std::any_of(key_specs().begin(), key_specs().end(),
                                       [&](const KeySpec& s) { return s.key == key; });
        if (!known)
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'",
                              key, line_no);
        if (!raw.emplace(key, value).second)
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'",
                              key, line_no);
    }

    ExperimentConfig cfg;
    // Specs are ordered so that every "auto" default only reads keys applied before it.
    for (const auto& spec : key_specs()) {
        const std::string key(spec.key);
        const auto it = raw.find(key);
        const std::string value = it != raw.end() ? it->second : std::string(spec.default_value);
        spec.set(cfg, key, value);
        cfg.effective[key] = value;
    }
    cross_validate(cfg);
    return cfg;
}

LinkScenario ExperimentConfig::link_scenario(double sigma2) const {
    LinkScenario s;
    s.link = link;
    s.b_mod = modulation_bandwidth;
    s.order = order;
    s.depth = depth;
    s.ss_length = ss_length;
    s.sigma2 = sigma2;
    s.sync_threshold = sync_threshold;
    s.gain_mode = gain_mode;
    return s;
}

FocConfig ExperimentConfig::foc() const {
    FocConfig f;
    f.wavelength = link.wavelength;
    f.divergence = link.divergence;
    f.rx_aperture_radius = link.aperture_radius;
    f.responsivity = responsivity;
    f.bandwidth = modulation_bandwidth;
    f.p_t = link.p_t;
    return f;
}

RbcomRateConfig ExperimentConfig::rbcom_rates() const {
    return {link, responsivity, modulation_bandwidth};
}

namespace {
std::vector<double> grid(double lo, double hi, double step) {
    std::vector<double> out;
    const auto count = static_cast<std::int64_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    out.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
    return out;
}
}  // namespace

std::vector<double> ExperimentConfig::angle_grid() const {
    return grid(angle_start_deg, angle_stop_deg, angle_step_deg);
}

std::vector<double> ExperimentConfig::rate_grid() const {
    return grid(rates_min, rates_max, rates_step);
}

std::string ExperimentConfig::canonical_text() const {
    std::ostringstream out;
    for (const auto& [k, v] : effective)
        if (k != "output_dir") out << k << '=' << v << '\n';
    return out.str();
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace rbcom
