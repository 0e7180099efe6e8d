// rbcom-sim: batch runner for resonant-beam link experiments.
//
//   rbcom-sim run --config <file> --out <dir> [--seed <u64>] [--experiment <name>]
//   rbcom-sim validate --config <file>
//
// RBCOM_SEED and RBCOM_OUT override the config file; command-line flags override both.

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rbcom/config.hpp"
#include "rbcom/experiments.hpp"

namespace {

using rbcom::ExitCode;

int code(ExitCode c) { return static_cast<int>(c); }

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw rbcom::IoError("cannot read config '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::optional<std::string> env(const char* name) {
    const char* v = std::getenv(name);
    if (!v || !*v) return std::nullopt;
    return std::string(v);
}

std::uint64_t parse_seed(const std::string& text, const char* source) {
    std::uint64_t out = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw rbcom::ConfigError(std::string(source) + ": invalid seed '" + text + "'", "seed");
    return out;
}

void report(const std::string& context, const std::exception& e) {
    std::cerr << "rbcom-sim: " << context << ": " << e.what() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Resonant beam communication link simulator", "rbcom-sim"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(rbcom::kToolVersion));

    std::string config_path, out_dir, seed_text, experiment_text;
    auto* run = app.add_subcommand("run", "run an experiment and write its outputs");
    run->add_option("--config", config_path, "configuration file")->required();
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--seed", seed_text, "64-bit seed");
    run->add_option("--experiment", experiment_text, "experiment name");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "parse and validate a configuration file");
    validate->add_option("--config", validate_path, "configuration file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : code(ExitCode::Usage);
    }

    if (*validate) {
        try {
            const auto cfg = rbcom::parse_config(read_text(validate_path));
            std::cout << "ok: " << cfg.effective.size() << " keys\n";
            return code(ExitCode::Ok);
        } catch (const std::exception& e) {
            report(validate_path, e);
            return code(rbcom::exit_code_for(e));
        }
    }

    std::string context = config_path;
    try {
        rbcom::ExperimentConfig cfg = rbcom::parse_config(read_text(config_path));

        if (auto s = env("RBCOM_SEED")) cfg.seed = parse_seed(*s, "RBCOM_SEED");
        if (!seed_text.empty()) cfg.seed = parse_seed(seed_text, "--seed");
        if (auto o = env("RBCOM_OUT")) cfg.output_dir = *o;
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (!experiment_text.empty()) {
            const auto e = rbcom::parse_experiment(experiment_text);
            if (!e) {
                std::cerr << "rbcom-sim: unknown experiment '" << experiment_text << "'\n";
                return code(ExitCode::Usage);
            }
            cfg.experiment = e;
        }
        if (!cfg.experiment) {
            std::cerr << "rbcom-sim: no experiment given (config key 'experiment' or --experiment)\n";
            return code(ExitCode::Usage);
        }
        if (cfg.output_dir.empty()) {
            std::cerr << "rbcom-sim: no output directory (--out, RBCOM_OUT or 'output_dir')\n";
            return code(ExitCode::Usage);
        }
        // Overrides are part of the run identity recorded in the manifest.
        cfg.effective["seed"] = std::to_string(cfg.seed);
        cfg.effective["experiment"] = std::string(rbcom::experiment_name(*cfg.experiment));

        context = "experiment '" + std::string(rbcom::experiment_name(*cfg.experiment)) + "'";
        const auto files = rbcom::run_experiment(cfg, cfg.output_dir);
        for (const auto& f : files) std::cout << f.string() << '\n';
        return code(ExitCode::Ok);
    } catch (const std::exception& e) {
        report(context, e);
        return code(rbcom::exit_code_for(e));
    }
}
