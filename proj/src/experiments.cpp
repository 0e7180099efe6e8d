#include "rbcom/experiments.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "rbcom/baselines.hpp"
#include "rbcom/csv.hpp"
#include "rbcom/framing.hpp"
#include "rbcom/kernels.hpp"
#include "rbcom/rng.hpp"
#include "rbcom/scheme_adaptive.hpp"
#include "rbcom/scheme_direct.hpp"
#include "rbcom/svg_plot.hpp"

namespace rbcom {

namespace {

std::string hex64(std::uint64_t v) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    return out;
}

Artifact csv(std::string name, const CsvWriter& w) { return {std::move(name), w.str()}; }
Artifact svg(std::string name, const Plot& p) { return {std::move(name), p.to_svg()}; }

std::vector<Artifact> steady_state(const ExperimentConfig& cfg) {
    const SteadyState ss = steady_state_intensity(cfg.link);

    CsvWriter table({"distance_m", "intensity_w_m2", "rx_intensity_w_m2", "gain_tx", "gain_rx",
                     "link_loss", "round_trip_gain", "residual"});
    table.row({to_field(cfg.link.distance), to_field(ss.intensity), to_field(ss.rx_intensity),
               to_field(ss.gain_tx), to_field(ss.gain_rx), to_field(ss.link_loss),
               to_field(ss.round_trip_gain(cfg.link.alpha)), to_field(ss.residual)});

    // Round-trip product across intensity; it crosses 1 at the operating point.
    CsvWriter curve({"intensity_w_m2", "round_trip_product"});
    PlotSeries product{"round-trip product", {}, {}};
    PlotSeries unity{"unity", {}, {}};
    constexpr int kPoints = 201;
    const double i_max = 2.0 * ss.intensity;
    for (int i = 0; i < kPoints; ++i) {
        const double intensity = i_max * i / (kPoints - 1);
        const double p = round_trip_product(cfg.link, intensity);
        curve.row({to_field(intensity), to_field(p)});
        product.x.push_back(intensity);
        product.y.push_back(p);
    }
    unity.x = {0.0, i_max};
    unity.y = {1.0, 1.0};

    Plot plot{"Round-trip gain at " + format_number(cfg.link.distance, 6) + " m",
              "circulating intensity (W/m^2)", "round-trip product", true, {product, unity}};
    return {csv("steady_state.csv", table), csv("steady_state_curve.csv", curve),
            svg("steady_state.svg", plot)};
}

std::vector<std::string> ber_fields(double snr, double sigma2, const ErrorStats& e) {
    if (e.symbols == 0) {
        // Never synchronized: no symbol was demodulated, so no rate is defined.
        const std::string nan = to_field(std::nan(""));
        return {to_field(snr), to_field(sigma2), "0", "0", nan, nan, nan, "0", "0", nan, nan, nan};
    }
    const Interval sci = e.ser_ci();
    const Interval bci = e.ber_ci();
    return {to_field(snr),           to_field(sigma2),        to_field(e.symbols),
            to_field(e.symbol_errors), to_field(e.ser()),     to_field(sci.lo),
            to_field(sci.hi),        to_field(e.bits),        to_field(e.bit_errors),
            to_field(e.ber()),       to_field(bci.lo),        to_field(bci.hi)};
}

const std::vector<std::string> kBerHeader = {
    "snr_db", "sigma2_w", "symbols", "symbol_errors", "ser", "ser_lo", "ser_hi",
    "bits",   "bit_errors", "ber",   "ber_lo",        "ber_hi"};

Plot ber_plot(std::string title, std::vector<PlotSeries> series) {
    return {std::move(title), "electrical SNR (dB)", "error rate", true, std::move(series)};
}

std::vector<Artifact> ber_direct(const ExperimentConfig& cfg) {
    auto header = kBerHeader;
    header.insert(header.end(), {"demod_failures", "sync_misses", "acquisition_frames"});
    CsvWriter table(header);
    PlotSeries ser{"SER", {}, {}, true};
    PlotSeries ber{"BER", {}, {}, true};

    for (std::size_t i = 0; i < cfg.snr_db.size(); ++i) {
        const double snr = cfg.snr_db[i];
        const double sigma2 = sigma2_for_snr(cfg.link, snr);
        const DirectStats st = simulate_direct_link(cfg.link_scenario(sigma2), cfg.ber_frames,
                                                    stream_seed(cfg.seed, i, StreamTag::Trial));
        auto row = ber_fields(snr, sigma2, st.errors);
        row.insert(row.end(), {to_field(st.demod_failures), to_field(st.sync_misses),
                               to_field(st.acquisition_frames)});
        table.row(std::move(row));
        if (st.errors.symbols == 0) continue;
        ser.x.push_back(snr);
        ser.y.push_back(st.errors.ser());
        ber.x.push_back(snr);
        ber.y.push_back(st.errors.ber());
    }
    return {csv("ber_direct.csv", table),
            svg("ber_direct.svg", ber_plot("Direct modulation", {ser, ber}))};
}

/// Symbol error rate of uniformly spaced M-level intensity modulation in AWGN.
double pam_ser(const ExperimentConfig& cfg, double sigma2) {
    const double g = ReceivePath::from(cfg.link).amplitude() * std::sqrt(cfg.link.p_t);
    const double spacing = g * cfg.depth / (cfg.order - 1);
    const double m = cfg.order;
    return 2.0 * (m - 1.0) / m * gaussian_q(spacing / (2.0 * std::sqrt(sigma2)));
}

std::vector<Artifact> ber_adaptive(const ExperimentConfig& cfg) {
    auto header = kBerHeader;
    header.insert(header.end(), {"ser_awgn", "outage_fraction", "sync_misses", "acquisition_frames"});
    CsvWriter table(header);
    PlotSeries ser{"SER", {}, {}, true};
    PlotSeries theory{"SER (AWGN)", {}, {}};

    for (std::size_t i = 0; i < cfg.snr_db.size(); ++i) {
        const double snr = cfg.snr_db[i];
        const double sigma2 = sigma2_for_snr(cfg.link, snr);
        const AdaptiveStats st =
            simulate_adaptive_link(cfg.link_scenario(sigma2), cfg.ber_frames,
                                   stream_seed(cfg.seed, i, StreamTag::Trial));
        const double awgn = pam_ser(cfg, sigma2);
        auto row = ber_fields(snr, sigma2, st.errors);
        row.insert(row.end(), {to_field(awgn), to_field(st.outage_fraction()),
                               to_field(st.sync_misses), to_field(st.acquisition_frames)});
        table.row(std::move(row));
        theory.x.push_back(snr);
        theory.y.push_back(awgn);
        if (st.errors.symbols == 0) continue;
        ser.x.push_back(snr);
        ser.y.push_back(st.errors.ser());
    }
    return {csv("ber_adaptive.csv", table),
            svg("ber_adaptive.svg", ber_plot("Adaptive modulation", {ser, theory}))};
}

std::vector<Artifact> mobility(const ExperimentConfig& cfg) {
    kernels::MobilityScenario scenario;
    scenario.link = cfg.link.at_distance(cfg.mobility_initial_distance);
    scenario.options.max_rounds = cfg.max_rounds;
    if (cfg.compensation) scenario.options.compensation_threshold = cfg.compensation_threshold;

    const auto angles = cfg.angle_grid();
    const auto cells = kernels::parallel::mobility_sweep(cfg.speeds, angles, scenario);

    CsvWriter table({"speed_mps", "angle_deg", "broken", "rounds", "compensations"});
    std::vector<PlotSeries> series;
    for (const auto& cell : cells) {
        const bool broken = !cell.result.unbroken();
        const std::int64_t rounds = broken ? *cell.result.rounds : cfg.max_rounds;
        table.row({to_field(cell.speed), to_field(cell.angle_deg), to_field(broken),
                   to_field(rounds), to_field(cell.result.compensations)});
        if (series.empty() || series.back().name != format_number(cell.speed, 6) + " m/s")
            series.push_back({format_number(cell.speed, 6) + " m/s", {}, {}});
        series.back().x.push_back(cell.angle_deg);
        series.back().y.push_back(static_cast<double>(rounds));
    }
    Plot plot{"Reflection rounds before beam break", "direction angle (deg)", "rounds", true,
              std::move(series)};
    return {csv("mobility.csv", table), svg("mobility.svg", plot)};
}

std::vector<Artifact> rates(const ExperimentConfig& cfg) {
    const auto distances = cfg.rate_grid();
    const auto rows = rate_sweep(cfg.vlc, cfg.rbcom_rates(), cfg.foc(), cfg.noise, distances);

    CsvWriter table({"distance_m", "vlc_bps", "rbcom_bps", "foc_bps"});
    PlotSeries vlc{"VLC", {}, {}}, rb{"RBCom", {}, {}}, foc{"FOC", {}, {}};
    for (const auto& r : rows) {
        table.row({to_field(r.distance), to_field(r.vlc), to_field(r.rbcom), to_field(r.foc)});
        vlc.x.push_back(r.distance);
        vlc.y.push_back(r.vlc);
        rb.x.push_back(r.distance);
        rb.y.push_back(r.rbcom);
        foc.x.push_back(r.distance);
        foc.y.push_back(r.foc);
    }
    Plot plot{"Transmission rate vs distance", "distance (m)", "rate (bit/s)", true,
              {vlc, rb, foc}};
    return {csv("rates.csv", table), svg("rates.svg", plot)};
}

std::vector<Artifact> multiaccess(const ExperimentConfig& cfg) {
    const MultiAccessPlan plan = plan_multiaccess_frames(cfg.user_distances,
                                                         cfg.modulation_bandwidth);
    CsvWriter table({"user", "distance_m", "frame_symbols", "frames_per_ap_frame"});
    PlotSeries bars{"frame length", {}, {}, true};
    for (std::size_t i = 0; i < plan.user_frames.size(); ++i) {
        const auto n = plan.user_frames[i];
        table.row({std::to_string(i + 1), to_field(cfg.user_distances[i]), to_field(n),
                   to_field(plan.ap_frame / n)});
        bars.x.push_back(cfg.user_distances[i]);
        bars.y.push_back(static_cast<double>(n));
    }
    table.row({"ap", "", to_field(plan.ap_frame), "1"});
    Plot plot{"Per-user frame length (AP frame " + std::to_string(plan.ap_frame) + ")",
              "distance (m)", "symbols per frame", false, {bars}};
    return {csv("multiaccess.csv", table), svg("multiaccess.svg", plot)};
}

std::vector<Artifact> safety(const ExperimentConfig& cfg) {
    const double t = round_trip_time(cfg.safety_distance);
    const double e = beam_break_energy(cfg.safety_power, cfg.safety_distance);
    CsvWriter table({"power_w", "distance_m", "break_time_s", "energy_j"});
    table.row({format_number(cfg.safety_power, 4), format_number(cfg.safety_distance, 4),
               format_number(t, 4), format_number(e, 4)});

    PlotSeries curve{"energy", {}, {}};
    constexpr int kPoints = 101;
    const double d_max = std::max(2.0 * cfg.safety_distance, 1.0);
    for (int i = 0; i < kPoints; ++i) {
        const double d = d_max * i / (kPoints - 1);
        curve.x.push_back(d);
        curve.y.push_back(beam_break_energy(cfg.safety_power, d));
    }
    Plot plot{"Energy released on beam interruption at " + format_number(cfg.safety_power, 6) +
                  " W",
              "cavity length (m)", "energy (J)", false, {curve}};
    return {csv("safety.csv", table), svg("safety.svg", plot)};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

ExitCode exit_code_for(const std::exception& e) noexcept {
    if (dynamic_cast<const ConfigError*>(&e)) return ExitCode::Config;
    if (dynamic_cast<const BelowThreshold*>(&e)) return ExitCode::BelowThreshold;
    if (dynamic_cast<const FrameTooShort*>(&e)) return ExitCode::FrameTooShort;
    if (dynamic_cast<const IoError*>(&e)) return ExitCode::Io;
    if (dynamic_cast<const std::filesystem::filesystem_error*>(&e)) return ExitCode::Io;
    return ExitCode::Model;
}

std::vector<Artifact> compute_experiment(const ExperimentConfig& cfg) {
    if (!cfg.experiment) throw ConfigError("no experiment selected", "experiment");
    switch (*cfg.experiment) {
        case Experiment::SteadyState: return steady_state(cfg);
        case Experiment::BerDirect: return ber_direct(cfg);
        case Experiment::BerAdaptive: return ber_adaptive(cfg);
        case Experiment::Mobility: return mobility(cfg);
        case Experiment::Rates: return rates(cfg);
        case Experiment::MultiaccessPlan: return multiaccess(cfg);
        case Experiment::Safety: return safety(cfg);
    }
    throw ConfigError("unknown experiment", "experiment");
}

std::string manifest_text(const ExperimentConfig& cfg, const std::vector<Artifact>& outputs) {
    std::ostringstream m;
    m << "tool=" << kToolName << '\n';
    m << "version=" << kToolVersion << '\n';
    m << "experiment=" << (cfg.experiment ? experiment_name(*cfg.experiment) : "") << '\n';
    m << "seed=" << cfg.seed << '\n';
    m << "config_hash=fnv1a64:" << hex64(fnv1a64(cfg.canonical_text())) << '\n';
    m << "outputs=";
    for (std::size_t i = 0; i < outputs.size(); ++i) m << (i ? "," : "") << outputs[i].name;
    m << '\n';
    return m.str();
}

std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& cfg,
                                                  const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    // Everything is computed before the first byte is written.
    std::vector<Artifact> outputs = compute_experiment(cfg);
    outputs.push_back({"manifest.txt", manifest_text(cfg, outputs)});

    std::error_code ec;
    const bool created_dir = !fs::exists(out_dir, ec);
    std::vector<fs::path> written;
    try {
        fs::create_directories(out_dir);
        for (const auto& a : outputs) {
            const fs::path path = out_dir / a.name;
            written.push_back(path);
            write_file(path, a.content);
        }
    } catch (...) {
        for (const auto& p : written) fs::remove(p, ec);
        if (created_dir) fs::remove(out_dir, ec);
        throw;
    }
    return written;
}

}  // namespace rbcom
