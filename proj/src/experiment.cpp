#include "gjr/experiment.hpp"

#include "csv_util.hpp"
#include "gjr/chain_io.hpp"
#include "gjr/errors.hpp"
#include "gjr/rng.hpp"
#include "gjr/series_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <sstream>
#include <system_error>

namespace gjr {

namespace {

/// Removes every registered file unless released.
class OutputGuard {
public:
    explicit OutputGuard(std::vector<std::filesystem::path>& files) : files_(files) {}
    OutputGuard(const OutputGuard&) = delete;
    OutputGuard& operator=(const OutputGuard&) = delete;
    ~OutputGuard() {
        if (released_) return;
        std::error_code ec;
        for (const auto& f : files_) std::filesystem::remove(f, ec);
    }
    void release() noexcept { released_ = true; }

private:
    std::vector<std::filesystem::path>& files_;
    bool released_ = false;
};

void prepare_output_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    if (std::filesystem::exists(dir, ec) && !std::filesystem::is_directory(dir, ec)) {
        throw IoError("output path '" + dir.string() + "' exists and is not a directory");
    }
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    }
}

void write_alpha_history(const std::filesystem::path& path, const Chain& chain) {
    auto out = detail::open_for_write(path);
    out << "step,alpha\n";
    for (std::size_t i = 0; i < chain.size(); ++i) {
        out << (i + 1) << ',' << detail::format_double(chain.draws[i].alpha) << '\n';
    }
    detail::check_written(out, path);
}

std::string cell(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%16.5g", v);
    return buf;
}

std::string tau_cell(double v, double err) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4g +- %.2g", v, err);
    char out[40];
    std::snprintf(out, sizeof out, "%16s", buf);
    return out;
}

void table_row(std::ostringstream& os, const char* label, const std::array<double, 4>& values) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%-12s", label);
    os << buf;
    for (double v : values) os << cell(v);
    os << '\n';
}

void summary_block(std::ostringstream& os, const char* title, const DiagnosticsReport& r) {
    os << title << '\n';
    std::array<double, 4> mean{}, sd{}, se{};
    for (std::size_t i = 0; i < 4; ++i) {
        mean[i] = r.params[i].mean;
        sd[i] = r.params[i].sd;
        se[i] = r.params[i].ok() ? r.params[i].se : std::nan("");
    }
    table_row(os, "estimate", mean);
    table_row(os, "SD", sd);
    table_row(os, "SE", se);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%-12s", "2tau");
    os << buf;
    for (const auto& p : r.params) {
        os << (p.ok() ? tau_cell(p.two_tau, 2.0 * p.tau_err) : std::string("             n/a"));
    }
    os << '\n';
    os << "acceptance  " << cell(r.acceptance) << '\n';
}

void reference_block(std::ostringstream& os, const char* title, const ReferenceRow& r) {
    os << title << '\n';
    table_row(os, "estimate", r.estimate);
    table_row(os, "SD", r.sd);
    table_row(os, "SE", r.se);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%-12s", "2tau");
    os << buf;
    for (std::size_t i = 0; i < 4; ++i) os << tau_cell(r.two_tau[i], r.two_tau_err[i]);
    os << '\n';
}

}  // namespace

void ExperimentSpec::validate() const {
    if (!true_params.in_support()) throw InvalidParams("true_params outside support");
    if (!(true_params.persistence() < 1.0)) {
        throw InvalidParams("true_params must have persistence below 1");
    }
    if (n < 10) throw ConfigError("experiment needs n >= 10");
    AdaptiveConfig probe = adaptive;
    probe.metropolis_steps = metropolis_d;
    probe.validate();
    adaptive.validate();
}

ExperimentSpec quick_experiment_spec(ExperimentSpec base) {
    base.n = 200;
    base.adaptive.retained = 10000;
    return base;
}

std::size_t threads_from_env() {
    const char* env = std::getenv("GARCH_MCMC_THREADS");
    if (env == nullptr) return 1;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) return 1;
    return static_cast<std::size_t>(v);
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    prepare_output_dir(spec.output_dir);

    ExperimentReport report{simulate(spec.true_params, spec.n, spec.data_seed), {}, {}, {}, {},
                            std::nullopt, {}};
    OutputGuard guard(report.files);
    const auto& dir = spec.output_dir;

    AdaptiveConfig adaptive = spec.adaptive;
    adaptive.seed = spec.adaptive_seed;
    if (!adaptive.theta_init) adaptive.theta_init = default_theta_init(report.data);
    AdaptiveConfig metropolis = adaptive;
    metropolis.seed = spec.metropolis_seed;
    metropolis.metropolis_steps = spec.metropolis_d;

    const LogTarget target = posterior_target(report.data, adaptive.sigma2_init);

    if (spec.auto_tune) {
        Rng rng(derive_seed(spec.metropolis_seed, 1));
        report.tuning = tune_metropolis_steps(spec.metropolis_d, *adaptive.theta_init, target, rng);
        metropolis.metropolis_steps = report.tuning->steps;
        adaptive.metropolis_steps = report.tuning->steps;
    }

    if (spec.threads >= 2) {
        auto pending = std::async(std::launch::async,
                                  [&] { return run_adaptive(adaptive, target); });
        report.metropolis = run_metropolis(metropolis, target);
        report.adaptive = pending.get();
    } else {
        report.adaptive = run_adaptive(adaptive, target);
        report.metropolis = run_metropolis(metropolis, target);
    }

    report.adaptive_summary = summarize(report.adaptive.chain);
    report.metropolis_summary = summarize(report.metropolis);

    auto track = [&](const std::filesystem::path& p) {
        report.files.push_back(p);
        return p;
    };
    write_series_csv(track(dir / "data.csv"), report.data);
    write_chain_csv(track(dir / "chain_adaptive.csv"), report.adaptive.chain);
    write_chain_csv(track(dir / "chain_metropolis.csv"), report.metropolis);
    write_alpha_history(track(dir / "history_adaptive.csv"), report.adaptive.chain);
    write_alpha_history(track(dir / "history_metropolis.csv"), report.metropolis);
    write_history_csv(track(dir / "proposal_history.csv"), report.adaptive.history);
    write_report_files((dir / "adaptive_").string(), report.adaptive_summary, report.files);
    write_report_files((dir / "metropolis_").string(), report.metropolis_summary, report.files);
    {
        const auto path = track(dir / "acceptance.csv");
        auto out = detail::open_for_write(path);
        out << "window,fraction\n";
        for (const auto& w : report.adaptive_summary.acceptance_trace) {
            out << w.index << ',' << detail::format_double(w.fraction) << '\n';
        }
        detail::check_written(out, path);
    }
    {
        const auto path = track(dir / "table1.txt");
        auto out = detail::open_for_write(path);
        out << format_table(spec, report);
        detail::check_written(out, path);
    }

    guard.release();
    return report;
}

std::string format_table(const ExperimentSpec& spec, const ExperimentReport& report) {
    std::ostringstream os;
    os << "GJR-GARCH posterior summary (n = " << report.data.size()
       << ", retained = " << report.adaptive.chain.size() << ")\n";
    char buf[24];
    std::snprintf(buf, sizeof buf, "%-12s", "");
    os << buf;
    for (const char* name : kParamNames) {
        std::snprintf(buf, sizeof buf, "%16s", name);
        os << buf;
    }
    os << '\n';
    const auto& t = spec.true_params;
    table_row(os, "true", {t.alpha, t.beta, t.omega, t.lambda});
    os << '\n';
    summary_block(os, "[adaptive]", report.adaptive_summary);
    os << '\n';
    summary_block(os, "[metropolis]", report.metropolis_summary);
    os << '\n';
    reference_block(os, "[reference adaptive]", kReferenceAdaptive);
    os << '\n';
    reference_block(os, "[reference metropolis]", kReferenceMetropolis);
    return os.str();
}

}  // namespace gjr
