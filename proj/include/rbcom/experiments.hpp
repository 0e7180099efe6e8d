#pragma once

#include <exception>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rbcom/config.hpp"
#include "rbcom/error.hpp"

namespace rbcom {

inline constexpr std::string_view kToolName = "rbcom-sim";
inline constexpr std::string_view kToolVersion = "1.0.0";

/// Process exit statuses of the command-line runner.
enum class ExitCode : int {
    Ok = 0,
    Usage = 1,
    Config = 2,
    BelowThreshold = 3,
    FrameTooShort = 4,
    Model = 5,
    Io = 6,
};

/// Maps a caught exception to its exit status.
ExitCode exit_code_for(const std::exception& e) noexcept;

/// Raised when writing outputs fails.
class IoError : public Error {
public:
    using Error::Error;
};

struct Artifact {
    std::string name;     ///< file name inside the output directory
    std::string content;
};

/// Runs the configured experiment entirely in memory. Model errors propagate.
std::vector<Artifact> compute_experiment(const ExperimentConfig& cfg);

/// Manifest text for a finished run.
std::string manifest_text(const ExperimentConfig& cfg, const std::vector<Artifact>& outputs);

/// Computes the experiment and writes its CSV/SVG files plus manifest.txt into
/// `out_dir`. Nothing is left behind if any step fails. Returns the written paths.
std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& cfg,
                                                  const std::filesystem::path& out_dir);

}  // namespace rbcom
