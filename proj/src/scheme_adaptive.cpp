#include "rbcom/scheme_adaptive.hpp"

#include <algorithm>
#include <cmath>

#include "rbcom/error.hpp"
#include "rbcom/kernels.hpp"
#include "rbcom/rng.hpp"

namespace rbcom {

PumpCommand pump_compensation(double i_echo, double i_target, const GainMedium& medium) {
    if (!(i_echo > 0.0)) throw InvalidArgument("pump_compensation: no echo beam to amplify");
    if (!(i_target > 0.0)) throw InvalidArgument("pump_compensation: target must be positive");
    PumpCommand cmd;
    cmd.required = i_target / i_echo;
    const double ceiling = saturated_gain(0.0, medium.f0, medium);
    cmd.feasible = cmd.required >= 1.0 && cmd.required <= ceiling;
    cmd.gain = std::clamp(cmd.required, 1.0, ceiling);
    return cmd;
}

std::vector<double> modulate_adaptive(std::span<const double> x, double p_t) {
    const double amp = std::sqrt(p_t);
    std::vector<double> s(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) s[n] = amp * x[n];
    return s;
}

std::vector<double> receive_adaptive(std::span<const double> s, const ReceivePath& path,
                                     double sigma2, std::uint64_t seed) {
    return receive(s, path, sigma2, seed);
}

std::vector<int> demodulate_adaptive(std::span<const double> y, double reference_amplitude,
                                     const SymbolAlphabet& alphabet) {
    if (!(reference_amplitude > 0.0))
        throw InvalidArgument("demodulate_adaptive: reference amplitude must be positive");
    std::vector<int> out(y.size());
    for (std::size_t n = 0; n < y.size(); ++n) out[n] = alphabet.slice(y[n] / reference_amplitude);
    return out;
}

std::vector<int> demodulate_adaptive(std::span<const double> y, const CavityLink& link,
                                     const SymbolAlphabet& alphabet) {
    return demodulate_adaptive(y, ReceivePath::from(link).amplitude() * std::sqrt(link.p_t),
                               alphabet);
}

double echo_intensity(const CavityLink& link, double delta, double modulated_intensity) {
    const double rx_in = modulated_intensity * delta;
    return delta * saturated_gain(rx_in, link.medium_rx.f0, link.medium_rx) * rx_in;
}

PumpController::PumpController(const CavityLink& link, const SteadyState& ss)
    : link_(link), delta_(ss.link_loss), i_ss_(ss.intensity) {
    state_.i_target = ss.intensity * ss.gain_tx;
}

CompensationStep PumpController::step(double prev_mean_square) {
    CompensationStep out;
    if (first_) {
        // The unmodulated steady-state beam is the first echo.
        out.i_echo = i_ss_;
        first_ = false;
    } else {
        const double modulated =
            state_.i_target * link_.alpha * prev_coefficient_ * prev_mean_square;
        out.i_echo = echo_intensity(link_, delta_, modulated);
    }
    out.command = pump_compensation(out.i_echo, state_.i_target, link_.medium_tx);
    out.coefficient =
        out.command.feasible ? 1.0 : out.command.gain * out.i_echo / state_.i_target;
    prev_coefficient_ = out.coefficient;
    return out;
}

AdaptiveStats simulate_adaptive_link(const LinkScenario& scenario, int n_frames,
                                     std::uint64_t seed) {
    scenario.validate();
    if (n_frames < 1) throw InvalidArgument("simulate_adaptive_link: need at least one frame");

    const CavityLink& link = scenario.link;
    const SteadyState ss = steady_state_intensity(link);
    const SymbolAlphabet alphabet(scenario.order, scenario.depth);
    const int n_sym = scenario.frame_symbols();
    const int l_ss = scenario.resolved_ss_length();
    const ReceivePath path = ReceivePath::from(link);
    const std::vector<double> ss_seq = make_ss(l_ss, alphabet, seed);

    AdaptiveStats stats;
    stats.coefficient_trace.reserve(static_cast<std::size_t>(n_frames));
    stats.feasible_trace.reserve(static_cast<std::size_t>(n_frames));

    PumpController pump(link, ss);
    double prev_mean_square = 1.0;
    for (int k = 1; k <= n_frames; ++k) {
        const CompensationStep step = pump.step(prev_mean_square);
        stats.coefficient_trace.push_back(step.coefficient);
        stats.feasible_trace.push_back(step.command.feasible);
        if (!step.command.feasible) ++stats.outage_frames;
        const std::vector<double> x =
            kernels::frame_symbols(ss_seq, alphabet, n_sym, seed, static_cast<std::uint64_t>(k));
        double acc = 0.0;
        for (const double v : x) acc += v * v;
        prev_mean_square = acc / static_cast<double>(x.size());
    }

    kernels::AdaptiveFrameJob job{ss_seq,        alphabet, path, link.p_t, scenario.sigma2,
                                  scenario.sync_threshold, n_sym, seed, stats.coefficient_trace};

    // Search frame by frame until the SS is found at its true position.
    const double ref = path.amplitude() * std::sqrt(link.p_t);
    std::vector<double> prev_y;
    for (int k = 1; k <= n_frames; ++k) {
        const std::vector<double> y = kernels::adaptive_received_frame(job, static_cast<std::uint64_t>(k));
        const Acquisition acq =
            k == 1 ? acquire_frame_sync(y, ref, ss_seq, scenario.sigma2, scenario.sync_threshold, seed)
                   : acquire_frame_sync(prev_y, y, ss_seq, scenario.sync_threshold, seed,
                                        static_cast<std::uint64_t>(k));
        if (acq.locked()) {
            stats.acquired = true;
            job.first_frame = static_cast<std::uint64_t>(k);
            break;
        }
        ++stats.acquisition_frames;
        prev_y = y;
    }
    if (!stats.acquired) return stats;

    const std::vector<kernels::FrameTally> tallies = kernels::parallel::adaptive_frames(job);
    for (const auto& t : tallies) {
        stats.errors += t.errors;
        if (t.sync_miss) ++stats.sync_misses;
    }
    return stats;
}

}  // namespace rbcom
