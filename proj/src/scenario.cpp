#include "rbcom/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rbcom/error.hpp"
#include "rbcom/framing.hpp"

namespace rbcom {

double ReceivePath::amplitude() const { return std::sqrt((1.0 - alpha) * delta); }

std::vector<double> receive(std::span<const double> s, const ReceivePath& path, double sigma2,
                            Rng& rng) {
    if (!(sigma2 >= 0.0)) throw InvalidArgument("receive: noise variance must be non-negative");
    const double g = path.amplitude();
    std::vector<double> y(s.size());
    if (sigma2 == 0.0) {
        for (std::size_t n = 0; n < s.size(); ++n) y[n] = g * s[n];
        return y;
    }
    std::normal_distribution<double> noise(0.0, std::sqrt(sigma2));
    for (std::size_t n = 0; n < s.size(); ++n) y[n] = g * s[n] + noise(rng);
    return y;
}

std::vector<double> receive(std::span<const double> s, const ReceivePath& path, double sigma2,
                            std::uint64_t seed) {
    Rng rng(seed);
    return receive(s, path, sigma2, rng);
}

int LinkScenario::frame_symbols() const { return frame_length(link.distance, b_mod); }

int LinkScenario::resolved_ss_length() const {
    return ss_length > 0 ? ss_length : default_ss_length(frame_symbols());
}

void LinkScenario::validate() const {
    link.validate();
    if (!(sigma2 >= 0.0)) throw InvalidArgument("scenario: noise variance must be non-negative");
    if (!(sync_threshold > 0.0 && sync_threshold <= 1.0))
        throw InvalidArgument("scenario: sync threshold must lie in (0, 1]");
    (void)SymbolAlphabet(order, depth);
    const int n = frame_symbols();
    const int l = resolved_ss_length();
    if (l < 4)
        throw FrameTooShort("scenario: frame of " + std::to_string(n) +
                            " symbols cannot hold a synchronization sequence of 4 or more");
    if (l >= n)
        throw InvalidArgument("scenario: synchronization sequence must leave room for payload");
}

double sigma2_for_snr(const CavityLink& link, double snr_db) {
    const double signal = (1.0 - link.alpha) * link_loss(link) * link.p_t;
    return signal / std::pow(10.0, snr_db / 10.0);
}

Acquisition acquire_frame_sync(std::span<const double> preceding, std::span<const double> frame,
                               std::span<const double> ss, double threshold, std::uint64_t seed,
                               std::uint64_t attempt) {
    if (frame.empty()) throw InvalidArgument("acquire_frame_sync: empty frame");
    Rng rng = make_stream(seed, attempt, StreamTag::Sync);
    const std::size_t max_offset = std::min(frame.size() - 1, preceding.size());
    std::uniform_int_distribution<std::size_t> offset(0, max_offset);
    Acquisition acq;
    acq.true_offset = offset(rng);

    std::vector<double> buffer(preceding.end() - static_cast<std::ptrdiff_t>(acq.true_offset),
                               preceding.end());
    buffer.insert(buffer.end(), frame.begin(), frame.end());
    acq.detected = detect_ss(buffer, ss, threshold);
    return acq;
}

Acquisition acquire_frame_sync(std::span<const double> first_frame, double idle_amplitude,
                               std::span<const double> ss, double sigma2, double threshold,
                               std::uint64_t seed) {
    Rng rng = make_stream(seed, 0, StreamTag::Sync);
    std::vector<double> idle(first_frame.size(), idle_amplitude);
    if (sigma2 > 0.0) {
        std::normal_distribution<double> noise(0.0, std::sqrt(sigma2));
        for (auto& v : idle) v += noise(rng);
    }
    return acquire_frame_sync(idle, first_frame, ss, threshold, seed, 1);
}

}  // namespace rbcom
