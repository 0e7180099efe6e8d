#pragma once

// Data-parallel kernels. Each kernel has a serial reference in `serial::` and an
// OpenMP version in `parallel::`; both produce identical results because every
// work item draws from its own random stream and reductions run in index order.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rbcom/framing.hpp"
#include "rbcom/mobility.hpp"
#include "rbcom/physics.hpp"
#include "rbcom/scenario.hpp"
#include "rbcom/stats.hpp"

namespace rbcom::kernels {

/// Payload level indices of frame `k`, drawn from the frame's data stream.
std::vector<int> draw_payload(const SymbolAlphabet& alphabet, std::size_t count,
                              std::uint64_t seed, std::uint64_t k);

/// Frame `k`: the synchronization sequence followed by its payload levels.
std::vector<double> frame_symbols(std::span<const double> ss, const SymbolAlphabet& alphabet,
                                  int n_sym, std::uint64_t seed, std::uint64_t k);

/// First index at which `profile` reaches `threshold`.
std::optional<std::size_t> first_crossing(std::span<const double> profile, double threshold);

struct AdaptiveFrameJob {
    std::span<const double> ss;
    SymbolAlphabet alphabet;
    ReceivePath path;
    double p_t = 1.0;
    double sigma2 = 0.0;
    double sync_threshold = 0.9;
    int n_sym = 0;
    std::uint64_t seed = 0;
    std::span<const double> coefficients;  ///< per-frame channel coefficient, frame k at k-1
    std::uint64_t first_frame = 1;         ///< frames before this one are not demodulated
};

struct FrameTally {
    ErrorStats errors;
    bool sync_miss = false;
};

std::vector<double> adaptive_received_frame(const AdaptiveFrameJob& job, std::uint64_t k);
FrameTally adaptive_frame(const AdaptiveFrameJob& job, std::uint64_t k);
/// Frames first_frame..coefficients.size(); element i holds frame first_frame + i.

struct MobilityScenario {
    CavityLink link{};            ///< link.distance is the initial distance
    MobilityOptions options{};
};

struct MobilityCell {
    double speed = 0.0;
    double angle_deg = 0.0;
    BreakResult result;
};

namespace serial {
std::vector<double> ncc_profile(std::span<const double> signal, std::span<const double> ss);
std::vector<FrameTally> adaptive_frames(const AdaptiveFrameJob& job);
/// Row-major over (speed, angle).
std::vector<MobilityCell> mobility_sweep(std::span<const double> speeds,
                                         std::span<const double> angles_deg,
                                         const MobilityScenario& scenario);
}  // namespace serial

namespace parallel {
std::vector<double> ncc_profile(std::span<const double> signal, std::span<const double> ss);
std::vector<FrameTally> adaptive_frames(const AdaptiveFrameJob& job);
std::vector<MobilityCell> mobility_sweep(std::span<const double> speeds,
                                         std::span<const double> angles_deg,
                                         const MobilityScenario& scenario);
}  // namespace parallel

}  // namespace rbcom::kernels
