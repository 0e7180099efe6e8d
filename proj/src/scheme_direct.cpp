#include "rbcom/scheme_direct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rbcom/error.hpp"
#include "rbcom/kernels.hpp"
#include "rbcom/rng.hpp"

namespace rbcom {

LinkGain LinkGain::constant(double coefficient) {
    if (!(coefficient > 0.0)) throw InvalidArgument("link gain: coefficient must be positive");
    LinkGain g;
    g.mode_ = GainMode::Constant;
    g.coefficient_ = coefficient;
    return g;
}

LinkGain LinkGain::for_link(const CavityLink& link, GainMode mode) {
    const SteadyState ss = steady_state_intensity(link);
    LinkGain g;
    g.mode_ = mode;
    g.alpha_ = link.alpha;
    g.delta_ = ss.link_loss;
    g.beam_area_ = link.beam_area;
    g.tx_ = link.medium_tx;
    g.rx_ = link.medium_rx;
    g.operating_product_ = ss.gain_tx * ss.gain_rx;
    g.coefficient_ = ss.round_trip_gain(link.alpha);
    return g;
}

double LinkGain::saturable_gain_product(double s) const {
    const double intensity = s * s / beam_area_;
    const double gt = saturated_gain(intensity, tx_.f0, tx_);
    const double gr = saturated_gain(intensity * alpha_ * delta_ * gt, rx_.f0, rx_);
    return gt * gr;
}

double LinkGain::operator()(double s) const {
    if (mode_ == GainMode::Constant) return coefficient_ * s * s;
    return alpha_ * delta_ * delta_ * saturable_gain_product(s) * s * s;
}

double LinkGain::shape(double s) const {
    if (mode_ == GainMode::Constant) return 1.0;
    return saturable_gain_product(s) / operating_product_;
}

double link_gain(double s, const CavityLink& link, GainMode mode) {
    if (!(s >= 0.0)) throw InvalidArgument("link_gain: amplitude must be non-negative");
    return LinkGain::for_link(link, mode)(s);
}

std::vector<double> modulate_direct(std::span<const double> x, DirectLinkState& state,
                                    const LinkGain& gain, double p_t) {
    if (state.k < 1) throw ProtocolError("modulate_direct: frame index must start at 1");
    std::vector<double> s(x.size());
    if (state.k == 1) {
        const double amp = std::sqrt(p_t);
        for (std::size_t n = 0; n < x.size(); ++n) s[n] = amp * x[n];
    } else {
        if (state.prev_s.size() != x.size())
            throw ProtocolError("modulate_direct: previous frame missing or of different length");
        for (std::size_t n = 0; n < x.size(); ++n) s[n] = std::sqrt(gain(state.prev_s[n])) * x[n];
    }
    state.prev_s = s;
    ++state.k;
    return s;
}

std::vector<double> receive_direct(std::span<const double> s, const ReceivePath& path,
                                   double sigma2, std::uint64_t seed) {
    return receive(s, path, sigma2, seed);
}

double estimate_link_gain(std::span<const double> y_ss, std::span<const double> x_ss,
                          std::span<const double> prev_s_ss, const ReceivePath& path,
                          const LinkGain& gain, double sigma2) {
    if (y_ss.size() != x_ss.size() || prev_s_ss.size() != x_ss.size())
        throw InvalidArgument("estimate_link_gain: mismatched sequence lengths");
    if (x_ss.size() < 4)
        throw InvalidArgument("estimate_link_gain: synchronization sequence shorter than 4");
    const double g = path.amplitude();
    double ya = 0.0, aa = 0.0;
    for (std::size_t n = 0; n < x_ss.size(); ++n) {
        const double prev = std::abs(prev_s_ss[n]);
        const double a = g * std::sqrt(gain.shape(prev)) * prev * x_ss[n];
        ya += y_ss[n] * a;
        aa += a * a;
    }
    if (!(aa > 0.0) || !std::isfinite(aa))
        throw EstimationError("estimate_link_gain: reference sequence carries no energy");
    const double amp = ya / aa;
    return amp * amp - sigma2 / aa;
}

DemodResult demodulate_direct(std::span<const double> y, DirectLinkState& state,
                              const ReceivePath& path, const LinkGain& gain,
                              const SymbolAlphabet& alphabet, double p_t) {
    const double g = path.amplitude();
    DemodResult out;
    out.x_hat.resize(y.size());
    out.indices.resize(y.size());

    if (state.rx_k == 1) {
        const double ref = g * std::sqrt(p_t);
        for (std::size_t n = 0; n < y.size(); ++n) {
            out.x_hat[n] = y[n] / ref;
            out.indices[n] = alphabet.slice(out.x_hat[n]);
        }
    } else {
        if (state.prev_y.size() != y.size())
            throw ProtocolError("demodulate_direct: previous received frame missing");
        for (std::size_t n = 0; n < y.size(); ++n) {
            const double s_prev = state.prev_y[n] / g;
            const double h = state.c_hat * gain.shape(std::abs(s_prev)) * s_prev * s_prev;
            const double x_hat = y[n] / (g * std::sqrt(h));
            if (!(h > 0.0) || !std::isfinite(x_hat)) {
                out.x_hat[n] = std::numeric_limits<double>::quiet_NaN();
                out.indices[n] = -1;
                ++out.failures;
                continue;
            }
            out.x_hat[n] = x_hat;
            out.indices[n] = alphabet.slice(x_hat);
        }
    }
    state.prev_y.assign(y.begin(), y.end());
    ++state.rx_k;
    return out;
}

DirectStats simulate_direct_link(const LinkScenario& scenario, int n_frames, std::uint64_t seed) {
    scenario.validate();
    if (n_frames < 1) throw InvalidArgument("simulate_direct_link: need at least one frame");

    const CavityLink& link = scenario.link;
    const int n_sym = scenario.frame_symbols();
    const int l_ss = scenario.resolved_ss_length();
    const SymbolAlphabet alphabet(scenario.order, scenario.depth);
    const int bps = alphabet.bits_per_symbol();
    const LinkGain gain = LinkGain::for_link(link, scenario.gain_mode);
    const ReceivePath path = ReceivePath::from(link);
    const double g = path.amplitude();
    const std::vector<double> ss = make_ss(l_ss, alphabet, seed);
    const std::span<const double> ss_span(ss);

    DirectLinkState state;
    state.sigma2 = scenario.sigma2;
    state.gain_mode = scenario.gain_mode;

    DirectStats stats;
    stats.c_hat_trace.reserve(static_cast<std::size_t>(n_frames));
    stats.power_trace.reserve(static_cast<std::size_t>(n_frames));

    std::vector<double> prev_y;
    std::vector<int> sent(static_cast<std::size_t>(n_sym - l_ss));
    std::vector<double> x(static_cast<std::size_t>(n_sym));
    std::copy(ss.begin(), ss.end(), x.begin());

    for (int k = 1; k <= n_frames; ++k) {
        sent = kernels::draw_payload(alphabet, sent.size(), seed, static_cast<std::uint64_t>(k));
        for (std::size_t i = 0; i < sent.size(); ++i) x[l_ss + i] = alphabet.level(sent[i]);

        const std::vector<double> s = modulate_direct(x, state, gain, link.p_t);
        double power = 0.0;
        for (const double v : s) power += v * v;
        stats.power_trace.push_back(power / static_cast<double>(s.size()));

        const std::vector<double> y = receive(
            s, path, scenario.sigma2,
            stream_seed(seed, static_cast<std::uint64_t>(k), StreamTag::Noise));
        const std::span<const double> y_span(y);

        if (!stats.acquired) {
            const Acquisition acq =
                k == 1 ? acquire_frame_sync(y, g * std::sqrt(link.p_t), ss, scenario.sigma2,
                                            scenario.sync_threshold, seed)
                       : acquire_frame_sync(prev_y, y, ss, scenario.sync_threshold, seed,
                                            static_cast<std::uint64_t>(k));
            if (!acq.locked()) {
                ++stats.acquisition_frames;
                stats.c_hat_trace.push_back(std::numeric_limits<double>::quiet_NaN());
                prev_y = y;
                continue;
            }
            stats.acquired = true;
            // Once aligned, the buffered previous frame is usable for demodulation.
            if (k >= 2) {
                state.rx_k = k;
                state.prev_y = prev_y;
            }
        }

        if (normalized_xcorr(y_span.first(ss.size()), ss_span) < scenario.sync_threshold)
            ++stats.sync_misses;

        if (k >= 2) {
            std::vector<double> s_prev(ss.size());
            for (std::size_t n = 0; n < ss.size(); ++n) s_prev[n] = state.prev_y[n] / g;
            try {
                state.c_hat = estimate_link_gain(y_span.first(ss.size()), ss_span, s_prev, path,
                                                 gain, scenario.sigma2);
            } catch (const EstimationError&) {
                // keep the last estimate
            }
            stats.c_hat_trace.push_back(state.c_hat);
        } else {
            stats.c_hat_trace.push_back(std::numeric_limits<double>::quiet_NaN());
        }

        const DemodResult demod = demodulate_direct(y, state, path, gain, alphabet, link.p_t);
        prev_y = y;
        for (std::size_t i = 0; i < sent.size(); ++i) {
            const std::size_t n = static_cast<std::size_t>(l_ss) + i;
            const int det = demod.indices[n];
            if (det < 0) {
                ++stats.demod_failures;
                stats.errors.add_erasure(bps);
                continue;
            }
            stats.errors.add(sent[i], det, bps);
            stats.max_symbol_deviation =
                std::max(stats.max_symbol_deviation, std::abs(demod.x_hat[n] - x[n]));
        }
    }
    return stats;
}

}  // namespace rbcom
