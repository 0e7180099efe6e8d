#include "rbcom/kernels.hpp"

#include <cmath>
#include <exception>
#include <random>

#include "rbcom/constants.hpp"
#include "rbcom/error.hpp"
#include "rbcom/rng.hpp"
#include "rbcom/scheme_adaptive.hpp"

namespace rbcom::kernels {

std::vector<int> draw_payload(const SymbolAlphabet& alphabet, std::size_t count,
                              std::uint64_t seed, std::uint64_t k) {
    Rng rng = make_stream(seed, k, StreamTag::Data);
    std::uniform_int_distribution<int> pick(0, alphabet.order() - 1);
    std::vector<int> idx(count);
    for (auto& i : idx) i = pick(rng);
    return idx;
}

std::vector<double> frame_symbols(std::span<const double> ss, const SymbolAlphabet& alphabet,
                                  int n_sym, std::uint64_t seed, std::uint64_t k) {
    const std::size_t payload = static_cast<std::size_t>(n_sym) - ss.size();
    const std::vector<int> idx = draw_payload(alphabet, payload, seed, k);
    std::vector<double> x(ss.begin(), ss.end());
    x.reserve(static_cast<std::size_t>(n_sym));
    for (const int i : idx) x.push_back(alphabet.level(i));
    return x;
}

std::optional<std::size_t> first_crossing(std::span<const double> profile, double threshold) {
    for (std::size_t i = 0; i < profile.size(); ++i)
        if (profile[i] >= threshold) return i;
    return std::nullopt;
}

std::vector<double> adaptive_received_frame(const AdaptiveFrameJob& job, std::uint64_t k) {
    const std::vector<double> x = frame_symbols(job.ss, job.alphabet, job.n_sym, job.seed, k);
    const double coefficient = job.coefficients[k - 1];
    const std::vector<double> s = modulate_adaptive(x, job.p_t * coefficient);
    return receive(s, job.path, job.sigma2, stream_seed(job.seed, k, StreamTag::Noise));
}

FrameTally adaptive_frame(const AdaptiveFrameJob& job, std::uint64_t k) {
    const std::size_t l_ss = job.ss.size();
    const std::vector<int> sent =
        draw_payload(job.alphabet, static_cast<std::size_t>(job.n_sym) - l_ss, job.seed, k);
    const std::vector<double> y = adaptive_received_frame(job, k);
    const std::span<const double> y_span(y);

    FrameTally tally;
    tally.sync_miss = normalized_xcorr(y_span.first(l_ss), job.ss) < job.sync_threshold;
    const std::vector<int> det = demodulate_adaptive(
        y_span.subspan(l_ss), job.path.amplitude() * std::sqrt(job.p_t), job.alphabet);
    const int bps = job.alphabet.bits_per_symbol();
    for (std::size_t i = 0; i < sent.size(); ++i) tally.errors.add(sent[i], det[i], bps);
    return tally;
}

namespace {

MobilityCell mobility_cell(double speed, double angle_deg, const MobilityScenario& scenario) {
    const MobilityState init =
        make_mobility_state(scenario.link.distance, speed, angle_deg * kPi / 180.0,
                            scenario.link.medium_tx.f0);
    return {speed, angle_deg, rounds_until_break(init, scenario.link, scenario.options)};
}

std::size_t frame_count(const AdaptiveFrameJob& job) {
    if (job.first_frame < 1) throw InvalidArgument("adaptive_frames: frames are numbered from 1");
    const std::size_t total = job.coefficients.size();
    return job.first_frame > total ? 0 : total - job.first_frame + 1;
}

void check_signal(std::span<const double> signal, std::span<const double> ss) {
    if (ss.empty()) throw InvalidArgument("ncc_profile: empty synchronization sequence");
    if (signal.size() < ss.size())
        throw InvalidArgument("ncc_profile: signal shorter than synchronization sequence");
}

}  // namespace

namespace serial {

std::vector<double> ncc_profile(std::span<const double> signal, std::span<const double> ss) {
    check_signal(signal, ss);
    std::vector<double> out(signal.size() - ss.size() + 1);
    for (std::size_t off = 0; off < out.size(); ++off)
        out[off] = normalized_xcorr(signal.subspan(off, ss.size()), ss);
    return out;
}

std::vector<FrameTally> adaptive_frames(const AdaptiveFrameJob& job) {
    std::vector<FrameTally> out(frame_count(job));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = adaptive_frame(job, job.first_frame + i);
    return out;
}

std::vector<MobilityCell> mobility_sweep(std::span<const double> speeds,
                                         std::span<const double> angles_deg,
                                         const MobilityScenario& scenario) {
    std::vector<MobilityCell> out;
    out.reserve(speeds.size() * angles_deg.size());
    for (const double v : speeds)
        for (const double a : angles_deg) out.push_back(mobility_cell(v, a, scenario));
    return out;
}

}  // namespace serial

namespace parallel {

std::vector<double> ncc_profile(std::span<const double> signal, std::span<const double> ss) {
    check_signal(signal, ss);
    const std::int64_t count = static_cast<std::int64_t>(signal.size() - ss.size() + 1);
    std::vector<double> out(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static)
    for (std::int64_t off = 0; off < count; ++off)
        out[off] = normalized_xcorr(signal.subspan(static_cast<std::size_t>(off), ss.size()), ss);
    return out;
}

std::vector<FrameTally> adaptive_frames(const AdaptiveFrameJob& job) {
    const std::int64_t frames = static_cast<std::int64_t>(frame_count(job));
    std::vector<FrameTally> out(static_cast<std::size_t>(frames));
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < frames; ++i)
        out[i] = adaptive_frame(job, job.first_frame + static_cast<std::uint64_t>(i));
    return out;
}

std::vector<MobilityCell> mobility_sweep(std::span<const double> speeds,
                                         std::span<const double> angles_deg,
                                         const MobilityScenario& scenario) {
    scenario.link.validate();
    const std::int64_t na = static_cast<std::int64_t>(angles_deg.size());
    const std::int64_t total = static_cast<std::int64_t>(speeds.size()) * na;
    std::vector<MobilityCell> out(static_cast<std::size_t>(total));
    // Exceptions must not escape the parallel region; the first one is rethrown.
    std::exception_ptr error;
    // Cells near 90 degrees run orders of magnitude longer than the rest.
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < total; ++i) {
        try {
            out[i] = mobility_cell(speeds[i / na], angles_deg[i % na], scenario);
        } catch (...) {
#pragma omp critical(rbcom_mobility_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace parallel

}  // namespace rbcom::kernels
