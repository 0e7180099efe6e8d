// Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero if
// any criterion fails. Tolerances and runtime limits are fixed here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rbcom/config.hpp"
#include "rbcom/constants.hpp"
#include "rbcom/error.hpp"
#include "rbcom/experiments.hpp"
#include "rbcom/framing.hpp"
#include "rbcom/kernels.hpp"
#include "rbcom/physics.hpp"
#include "rbcom/rng.hpp"
#include "rbcom/scheme_adaptive.hpp"
#include "rbcom/scheme_direct.hpp"
#include "rbcom/stats.hpp"

using namespace rbcom;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Table = std::vector<std::vector<std::string>>;

Table parse_csv(const std::string& text) {
    Table rows;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(f);
        if (!line.empty() && line.back() == ',') fields.emplace_back();
        rows.push_back(std::move(fields));
    }
    return rows;
}

const Artifact& artifact(const std::vector<Artifact>& all, const std::string& name) {
    for (const auto& a : all)
        if (a.name == name) return a;
    throw std::runtime_error("missing output " + name);
}

ExperimentConfig defaults_for(Experiment e) {
    ExperimentConfig c = parse_config("");
    c.experiment = e;
    return c;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// 1. Break time and released energy at 1 W, 10 m.
Outcome safety_numbers() {
    const auto out = compute_experiment(defaults_for(Experiment::Safety));
    const auto rows = parse_csv(artifact(out, "safety.csv").content);
    if (rows.size() != 1) return {false, "expected one row"};
    const double t = std::stod(rows[0][2]);
    const double e = std::stod(rows[0][3]);
    const double et = std::abs(t / 66.7e-9 - 1.0), ee = std::abs(e / 66.7e-9 - 1.0);
    return {et <= 5e-3 && ee <= 5e-3 && rows[0][0] == "1.0" && rows[0][1] == "10.0",
            "t=" + rows[0][2] + " s (err " + fmt("%.3g", et) + "), E=" + rows[0][3] +
                " J (err " + fmt("%.3g", ee) + "), tol 0.5%"};
}

// 2. Noiseless direct scheme recovers every symbol exactly.
Outcome echo_elimination() {
    std::uint64_t symbols = 0, errors = 0;
    double worst = 0.0;
    bool all_locked = true;
    for (GainMode mode : {GainMode::Constant, GainMode::Saturable})
        for (int m : {2, 4})
            for (double depth : {0.05, 0.1, 0.3}) {
                LinkScenario sc;
                sc.order = m;
                sc.depth = depth;
                sc.gain_mode = mode;
                const DirectStats st = simulate_direct_link(sc, 1000, 1000 + m);
                symbols += st.errors.symbols;
                errors += st.errors.symbol_errors;
                worst = std::max(worst, st.max_symbol_deviation);
                all_locked = all_locked && st.acquired && st.acquisition_frames == 0;
            }
    return {errors == 0 && worst <= 1e-12 && all_locked,
            std::to_string(symbols) + " symbols, " + std::to_string(errors) +
                " errors, max |x_hat - x| = " + fmt("%.3g", worst) + " (tol 1e-12)"};
}

// 3. Adaptive scheme: constant channel coefficient and Gaussian-tail BER.
Outcome adaptive_awgn() {
    LinkScenario base;
    const AdaptiveStats noiseless = simulate_adaptive_link(base, 1000, 7);
    double mean = 0.0;
    for (double c : noiseless.coefficient_trace) mean += c;
    mean /= double(noiseless.coefficient_trace.size());
    double var = 0.0;
    for (double c : noiseless.coefficient_trace) var += (c - mean) * (c - mean);
    bool pass = var == 0.0 && noiseless.coefficient_trace.size() == 1000;
    std::string detail = "coef variance " + fmt("%g", var) + ";";

    const double g = ReceivePath::from(base.link).amplitude() * std::sqrt(base.link.p_t);
    const int payload = base.frame_symbols() - base.resolved_ss_length();
    const double kZJoint = 2.5758;  // two-sided 99%
    const int frames = (1'000'000 + payload - 1) / payload + 100;
    for (double snr : {28.0, 30.0, 32.0, 34.0, 36.0}) {
        LinkScenario sc = base;
        sc.sigma2 = sigma2_for_snr(sc.link, snr);
        const AdaptiveStats st = simulate_adaptive_link(sc, frames, 3);
        const double want = gaussian_q(g * sc.depth / (2.0 * std::sqrt(sc.sigma2)));
        // Five points compared jointly: 95% family confidence, Bonferroni per point.
        const Interval ci = wilson_interval(st.errors.bit_errors, st.errors.bits, kZJoint);
        const bool ok = st.errors.bits >= 1'000'000 && ci.lo <= want && want <= ci.hi;
        pass = pass && ok;
        detail += " " + fmt("%g", snr) + "dB: " + fmt("%.4g", st.errors.ber()) + " [" +
                  fmt("%.4g", ci.lo) + "," + fmt("%.4g", ci.hi) + "] vs " + fmt("%.4g", want) +
                  (ok ? "" : " MISS") + ";";
    }
    return {pass, detail};
}

// 4. In saturable mode the next frame depends on history only through s_{k-1}.
Outcome markov_property() {
    const CavityLink link;
    const LinkGain gain = LinkGain::for_link(link, GainMode::Saturable);
    const SymbolAlphabet a(4, 0.3);
    Rng rng(404);
    std::uniform_int_distribution<int> pick(0, a.order() - 1);
    std::uniform_real_distribution<double> power(0.2, 5.0);
    const auto frame = [&] {
        std::vector<double> x(133);
        for (auto& v : x) v = a.level(pick(rng));
        return x;
    };
    int identical = 0, distinct_histories = 0;
    for (int pair = 0; pair < 100; ++pair) {
        DirectLinkState h1, h2;
        const double p1 = power(rng), p2 = power(rng);
        for (int k = 1; k <= 9; ++k) {
            modulate_direct(frame(), h1, gain, p1);
            modulate_direct(frame(), h2, gain, p2);
        }
        distinct_histories += h1.prev_s != h2.prev_s;
        // Both histories now end in the same s_{k-1}; frame counters stay independent.
        h2.prev_s = h1.prev_s;
        const auto x = frame();
        identical += modulate_direct(x, h1, gain, p1) == modulate_direct(x, h2, gain, p2);
    }
    return {identical == 100 && distinct_histories == 100,
            std::to_string(identical) + "/100 pairs bit-identical, " +
                std::to_string(distinct_histories) + "/100 histories distinct"};
}

// 5. Rate ordering and monotonicity on 1..200 m.
Outcome rate_ordering() {
    const auto out = compute_experiment(defaults_for(Experiment::Rates));
    const auto rows = parse_csv(artifact(out, "rates.csv").content);
    int order_bad = 0, mono_bad = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double v = std::stod(rows[i][1]), r = std::stod(rows[i][2]), f = std::stod(rows[i][3]);
        order_bad += !(v <= r && r <= f);
        if (i > 0)
            for (int c = 1; c <= 3; ++c)
                mono_bad += std::stod(rows[i][c]) > std::stod(rows[i - 1][c]);
    }
    return {rows.size() == 200 && order_bad == 0 && mono_bad == 0,
            std::to_string(rows.size()) + " rows, " + std::to_string(order_bad) +
                " ordering violations, " + std::to_string(mono_bad) + " monotonicity violations"};
}

// 6. Mobility sweep shape.
Outcome mobility_shape() {
    const auto out = compute_experiment(defaults_for(Experiment::Mobility));
    const auto rows = parse_csv(artifact(out, "mobility.csv").content);
    std::map<double, std::vector<std::pair<double, long long>>> curves;
    int unbroken = 0;
    for (const auto& r : rows) {
        unbroken += r[2] != "true";
        curves[std::stod(r[0])].emplace_back(std::stod(r[1]), std::stoll(r[3]));
    }
    bool pass = unbroken == 0 && curves.size() == 3;
    std::string detail;
    for (const auto& [v, curve] : curves) {
        std::size_t peak = 0;
        for (std::size_t i = 0; i < curve.size(); ++i)
            if (curve[i].second > curve[peak].second) peak = i;
        bool unimodal = true;
        for (std::size_t i = 1; i < curve.size(); ++i) {
            if (i <= peak && curve[i].second < curve[i - 1].second) unimodal = false;
            if (i > peak && curve[i].second > curve[i - 1].second) unimodal = false;
        }
        const bool near90 = std::abs(curve[peak].first - 90.0) <= 5.0;
        pass = pass && unimodal && near90;
        detail += fmt("v=%g: ", v) + "peak " + fmt("%g", curve[peak].first) + " deg (" +
                  std::to_string(curve[peak].second) + " rounds)" +
                  (unimodal ? ", unimodal; " : ", NOT unimodal; ");
    }
    int speed_bad = 0;
    const auto& c5 = curves[5.0];
    const auto& c10 = curves[10.0];
    const auto& c20 = curves[20.0];
    for (std::size_t i = 0; i < std::min({c5.size(), c10.size(), c20.size()}); ++i)
        speed_bad += !(c5[i].second >= c10[i].second && c10[i].second >= c20[i].second);
    pass = pass && speed_bad == 0;
    detail += std::to_string(speed_bad) + " speed-order violations; ";

    kernels::MobilityScenario still;
    const std::vector<double> zero{0.0};
    std::vector<double> angles;
    for (int a = 0; a <= 180; ++a) angles.push_back(a);
    int still_unbroken = 0;
    for (const auto& cell : kernels::parallel::mobility_sweep(zero, angles, still))
        still_unbroken += cell.result.unbroken();
    pass = pass && still_unbroken == 181;
    detail += "v=0 unbroken at " + std::to_string(still_unbroken) + "/181 angles";
    return {pass, detail};
}

// 7. Steady-state solver accuracy.
Outcome steady_state_solver() {
    Rng rng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto log_uniform = [&](double lo, double hi) {
        return std::exp(std::log(lo) + u(rng) * (std::log(hi) - std::log(lo)));
    };
    int feasible = 0, residual_bad = 0, closed_bad = 0, draws = 0;
    double worst_residual = 0.0, worst_rel = 0.0;
    while (feasible < 1000 && draws < 100000) {
        ++draws;
        CavityLink link;
        link.distance = log_uniform(0.5, 500.0);
        link.aperture_radius = log_uniform(5e-4, 1e-2);
        link.divergence = log_uniform(2e-4, 5e-3);
        link.alpha = 0.05 + 0.9 * u(rng);
        link.medium_tx.g0 = log_uniform(1.5, 1e5);
        link.medium_rx.g0 = u(rng) < 0.5 ? link.medium_tx.g0 : log_uniform(1.5, 1e5);
        link.medium_tx.i_sat = log_uniform(1e5, 1e9);
        link.medium_rx.i_sat = u(rng) < 0.5 ? link.medium_tx.i_sat : log_uniform(1e5, 1e9);
        try {
            const SteadyState ss = steady_state_intensity(link);
            ++feasible;
            worst_residual = std::max(worst_residual, ss.residual);
            residual_bad += !(ss.residual <= 1e-9);

            // Symmetric subclass: identical media, both seeing the same intensity.
            CavityLink sym = link;
            sym.medium_rx = sym.medium_tx;
            const double delta = link_loss(sym);
            const double g_req = 1.0 / (delta * std::sqrt(sym.alpha));
            const GainMedium& m = sym.medium_tx;
            if (m.g0 > g_req) {
                const double want = m.i_sat * ((m.g0 - 1.0) / (g_req - 1.0) - 1.0);
                const double got = steady_state_intensity(sym, RxIntensity::Equal).intensity;
                const double rel = std::abs(got / want - 1.0);
                worst_rel = std::max(worst_rel, rel);
                closed_bad += !(rel <= 1e-6);
            }
        } catch (const BelowThreshold&) {
        }
    }
    return {feasible == 1000 && residual_bad == 0 && closed_bad == 0,
            std::to_string(feasible) + " feasible scenarios, worst residual " +
                fmt("%.3g", worst_residual) + " (tol 1e-9), worst closed-form error " +
                fmt("%.3g", worst_rel) + " (tol 1e-6)"};
}

// 8. Synchronization detection and false-lock rates.
Outcome synchronization() {
    const SymbolAlphabet a(2, 0.1);
    const auto ss = make_ss(16, a, 8);
    double mean = 0.0;
    for (double v : ss) mean += v;
    mean /= double(ss.size());
    double var = 0.0;
    for (double v : ss) var += (v - mean) * (v - mean);
    var /= double(ss.size());
    const double sigma = std::sqrt(var / 100.0);  // 20 dB sample SNR

    Rng rng(8080);
    std::normal_distribution<double> z(0.0, sigma);
    std::uniform_int_distribution<std::size_t> where(0, 116);
    constexpr int kTrials = 10000;
    int hits = 0, false_locks = 0;
    for (int t = 0; t < kTrials; ++t) {
        std::vector<double> sig(133, a.max_level());
        const std::size_t at = where(rng);
        std::copy(ss.begin(), ss.end(), sig.begin() + static_cast<std::ptrdiff_t>(at));
        for (auto& v : sig) v += z(rng);
        const auto off = detect_ss(sig, ss, 0.8);
        hits += off && *off == at;

        std::vector<double> noise(133, a.max_level());
        for (auto& v : noise) v += z(rng);
        false_locks += detect_ss(noise, ss, 0.9).has_value();
    }
    const double rate = double(hits) / kTrials;
    const double fl = double(false_locks) / kTrials;
    return {rate >= 0.99 && fl <= 1e-3,
            "detection " + fmt("%.4f", rate) + " (>= 0.99), false lock " + fmt("%.4g", fl) +
                " (<= 1e-3)"};
}

// 9. Access-point frame equals the LCM from prime factorization.
std::int64_t lcm_by_factoring(const std::vector<std::int64_t>& n) {
    std::map<std::int64_t, int> exps;
    for (std::int64_t v : n) {
        for (std::int64_t p = 2; p * p <= v; ++p) {
            int e = 0;
            while (v % p == 0) {
                v /= p;
                ++e;
            }
            if (e) exps[p] = std::max(exps[p], e);
        }
        if (v > 1) exps[v] = std::max(exps[v], 1);
    }
    std::int64_t out = 1;
    for (const auto& [p, e] : exps)
        for (int i = 0; i < e; ++i) out *= p;
    return out;
}

Outcome multiaccess() {
    Rng rng(909);
    std::uniform_int_distribution<int> users(1, 6);
    std::uniform_int_distribution<std::int64_t> len(2, 500);
    const double b = 1e8;
    int bad = 0;
    for (int t = 0; t < 1000; ++t) {
        std::vector<std::int64_t> n(static_cast<std::size_t>(users(rng)));
        std::vector<double> d;
        for (auto& v : n) {
            v = len(rng);
            d.push_back((double(v) + 0.5) * kSpeedOfLight / (2.0 * b));
        }
        const MultiAccessPlan plan = plan_multiaccess_frames(d, b);
        const std::int64_t want = lcm_by_factoring(n);
        bool ok = plan.user_frames == n && plan.ap_frame == want;
        for (std::int64_t v : n) ok = ok && plan.ap_frame % v == 0;
        bad += !ok;
    }
    return {bad == 0, std::to_string(1000 - bad) + "/1000 user sets agree"};
}

// 10. Byte-identical reruns of every experiment.
std::map<std::string, std::string> read_dir(const std::filesystem::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        std::ifstream in(e.path(), std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        out[e.path().filename().string()] = s.str();
    }
    return out;
}

Outcome determinism() {
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / "rbcom_acceptance_determinism";
    fs::remove_all(root);
    int compared = 0, differ = 0;
    for (Experiment e : {Experiment::SteadyState, Experiment::BerDirect, Experiment::BerAdaptive,
                         Experiment::Mobility, Experiment::Rates, Experiment::MultiaccessPlan,
                         Experiment::Safety}) {
        const ExperimentConfig cfg = defaults_for(e);
        const std::string name(experiment_name(e));
        run_experiment(cfg, root / (name + "_a"));
        run_experiment(cfg, root / (name + "_b"));
        const auto a = read_dir(root / (name + "_a"));
        const auto b = read_dir(root / (name + "_b"));
        for (const auto& [file, content] : a) {
            if (file.size() < 4 || file.substr(file.size() - 4) != ".csv") continue;
            ++compared;
            const auto it = b.find(file);
            differ += it == b.end() || it->second != content;
        }
    }
    fs::remove_all(root);
    return {compared >= 7 && differ == 0,
            std::to_string(compared) + " CSV files compared, " + std::to_string(differ) + " differ"};
}

struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0: no runtime limit
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "safety break time and energy", 1.0, safety_numbers},
        {2, "direct-scheme echo elimination", 10.0, echo_elimination},
        {3, "adaptive scheme is memoryless AWGN", 60.0, adaptive_awgn},
        {4, "saturable-mode Markov property", 0.0, markov_property},
        {5, "rate ordering and monotonicity", 10.0, rate_ordering},
        {6, "mobility sweep shape", 60.0, mobility_shape},
        {7, "steady-state solver", 0.0, steady_state_solver},
        {8, "synchronization", 0.0, synchronization},
        {9, "multiaccess planning", 0.0, multiaccess},
        {10, "determinism", 0.0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string timing = fmt("%.2f s", secs);
        if (c.limit_s > 0.0) {
            timing += fmt(" (limit %g s)", c.limit_s);
            if (secs > c.limit_s) {
                o.pass = false;
                o.detail += "; runtime limit exceeded";
            }
        }
        failed += !o.pass;
        std::printf("%s [%d] %s: %s [%s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str(), timing.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
