// Command-line front end: simulate / fit / diagnose / experiment.
//
// Exit codes: 0 success, 2 usage / invalid input, 3 I/O failure,
// 4 degenerate proposal covariance, 5 experiment failure, 6 diagnostics
// incomplete (report written, some parameter flagged).

#include "gjr/chain_io.hpp"
#include "gjr/config.hpp"
#include "gjr/diagnostics.hpp"
#include "gjr/errors.hpp"
#include "gjr/experiment.hpp"
#include "gjr/samplers.hpp"
#include "gjr/series_io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

enum Exit : int {
    kOk = 0,
    kInvalid = 2,
    kIo = 3,
    kDegenerate = 4,
    kExperiment = 5,
    kIncomplete = 6,
};

int fail(const std::string& code, const std::string& what, int exit_code) {
    std::cerr << "error[" << code << "]: " << what << '\n';
    return exit_code;
}

int exit_code_for(const gjr::Error& e) {
    if (dynamic_cast<const gjr::IoError*>(&e)) return kIo;
    if (dynamic_cast<const gjr::DegenerateCovariance*>(&e)) return kDegenerate;
    return kInvalid;
}

int report_error(const gjr::Error& e) {
    std::string what = e.what();
    if (dynamic_cast<const gjr::DegenerateCovariance*>(&e)) {
        what += " (hint: lengthen burn_in or initial_pool, or reduce metropolis_steps so the "
                "pilot chain moves)";
    }
    return fail(e.code(), what, exit_code_for(e));
}

void log(const std::string& msg) { std::cerr << "gjr-mcmc: " << msg << '\n'; }

std::string join_steps(const std::array<double, 4>& d) {
    std::string s;
    for (std::size_t i = 0; i < 4; ++i) {
        if (i) s += ',';
        s += std::to_string(d[i]);
    }
    return s;
}

gjr::ConfigMap load_config(const std::string& path, const std::vector<std::string>& overrides) {
    gjr::ConfigMap config;
    if (!path.empty()) config.load(std::filesystem::path(path));
    for (const auto& o : overrides) config.set_assignment(o);
    return config;
}

int finish_diagnostics(const gjr::DiagnosticsReport& report) {
    if (report.all_ok()) return kOk;
    for (std::size_t i = 0; i < gjr::ParamVector::size; ++i) {
        const auto& p = report.params[i];
        if (!p.ok()) {
            std::cerr << "error[" << *p.error << "]: " << gjr::kParamNames[i] << ": "
                      << p.error_message << '\n';
        }
    }
    return kIncomplete;
}

struct SimulateArgs {
    double alpha = 0.03, beta = 0.85, omega = 0.05, lambda = 0.1;
    long long n = 2000;
    std::uint64_t seed = 2010;
    std::string sigma2_init = "unconditional";
    std::string out;
};

int simulate_cmd(const SimulateArgs& a) {
    if (a.n <= 0) return fail("usage", "--n must be a positive integer", kInvalid);
    const gjr::ParamVector params{a.alpha, a.beta, a.omega, a.lambda};
    if (!params.in_support()) {
        return fail("invalid-params", "parameters outside support", kInvalid);
    }
    const auto series = gjr::simulate(params, static_cast<std::size_t>(a.n), a.seed,
                                      gjr::Sigma2Init::parse(a.sigma2_init));
    gjr::write_series_csv(std::filesystem::path(a.out), series);
    return kOk;
}

struct FitArgs {
    std::string data;
    std::string sampler = "adaptive";
    std::string config;
    std::string out_prefix;
    bool auto_tune = false;
    std::optional<std::size_t> freeze_after;
    std::vector<std::string> overrides;
};

int fit_cmd(const FitArgs& a) {
    auto overrides = a.overrides;
    if (a.freeze_after) overrides.push_back("freeze_after=" + std::to_string(*a.freeze_after));
    if (a.auto_tune) overrides.push_back("auto_tune=1");
    const auto config_map = load_config(a.config, overrides);
    auto config = gjr::apply_config(gjr::AdaptiveConfig{}, config_map);

    const auto data = gjr::read_series_csv(std::filesystem::path(a.data));
    if (data.size() < 10) {
        return fail("invalid-data", "need at least 10 observations, found " +
                                        std::to_string(data.size()),
                    kInvalid);
    }
    if (!(data.sample_variance() > 0.0)) {
        return fail("constant-series", "return series is constant; the posterior is degenerate",
                    kInvalid);
    }
    if (!config.theta_init) config.theta_init = gjr::default_theta_init(data);
    config.validate();

    const auto target = gjr::posterior_target(data, config.sigma2_init);
    if (gjr::auto_tune_requested(config_map)) {
        gjr::Rng rng(gjr::derive_seed(config.seed, 1));
        const auto tuned = gjr::tune_metropolis_steps(config.metropolis_steps, *config.theta_init,
                                                      target, rng);
        config.metropolis_steps = tuned.steps;
        log("auto-tune: d=" + join_steps(tuned.steps) +
            " acceptance=" + std::to_string(tuned.acceptance) +
            " rounds=" + std::to_string(tuned.rounds) +
            (tuned.converged ? "" : " (band not reached)"));
    }

    gjr::Chain chain;
    std::vector<gjr::ProposalUpdate> history;
    if (a.sampler == "adaptive") {
        auto run = gjr::run_adaptive(config, target);
        chain = std::move(run.chain);
        history = std::move(run.history);
    } else {
        chain = gjr::run_metropolis(config, target);
    }

    gjr::write_chain_csv(std::filesystem::path(a.out_prefix + "chain.csv"), chain);
    if (a.sampler == "adaptive") {
        gjr::write_history_csv(std::filesystem::path(a.out_prefix + "proposal_history.csv"),
                               history);
    }
    const auto report = gjr::summarize(chain);
    std::vector<std::filesystem::path> written;
    gjr::write_report_files(a.out_prefix, report, written);
    log(a.sampler + ": " + std::to_string(chain.size()) +
        " draws, acceptance=" + std::to_string(report.acceptance));
    gjr::write_report(std::cout, report);
    return finish_diagnostics(report);
}

int diagnose_cmd(const std::string& chain_path, const std::string& out_prefix) {
    const auto chain = gjr::read_chain_csv(std::filesystem::path(chain_path));
    if (chain.size() == 0) return fail("invalid-data", "chain file holds no draws", kInvalid);
    const auto report = gjr::summarize(chain);
    std::vector<std::filesystem::path> written;
    gjr::write_report_files(out_prefix, report, written);
    gjr::write_report(std::cout, report);
    return finish_diagnostics(report);
}

int experiment_cmd(const std::string& config_path, const std::string& out_dir, bool quick,
                   const std::vector<std::string>& overrides) {
    const auto config_map = load_config(config_path, overrides);
    auto spec = gjr::apply_config(gjr::ExperimentSpec{}, config_map);
    if (quick) spec = gjr::quick_experiment_spec(spec);
    spec.output_dir = out_dir;
    spec.threads = gjr::threads_from_env();
    spec.validate();
    try {
        const auto report = gjr::run_experiment(spec);
        std::cout << gjr::format_table(spec, report);
        if (report.tuning) {
            log("auto-tune: d=" + join_steps(report.tuning->steps) +
                " acceptance=" + std::to_string(report.tuning->acceptance));
        }
        return kOk;
    } catch (const gjr::IoError& e) {
        return fail(e.code(), e.what(), kIo);
    } catch (const gjr::Error& e) {
        return fail(e.code(), e.what(), kExperiment);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian inference for the GJR-GARCH(1,1) model by MCMC"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Simulate a GJR-GARCH return series");
    simulate->add_option("--alpha", sim.alpha, "ARCH coefficient");
    simulate->add_option("--beta", sim.beta, "GARCH coefficient");
    simulate->add_option("--omega", sim.omega, "Variance intercept");
    simulate->add_option("--lambda", sim.lambda, "Asymmetry coefficient");
    simulate->add_option("--n", sim.n, "Number of observations");
    simulate->add_option("--seed", sim.seed, "Generator seed");
    simulate->add_option("--sigma2-init", sim.sigma2_init, "'unconditional' or a positive value");
    simulate->add_option("--out", sim.out, "Output CSV")->required();

    FitArgs fit;
    std::size_t freeze_after = 0;
    auto* fitc = app.add_subcommand("fit", "Sample the posterior of a return series");
    fitc->add_option("--data", fit.data, "Return series CSV")->required();
    fitc->add_option("--sampler", fit.sampler, "adaptive or metropolis")
        ->check(CLI::IsMember({"adaptive", "metropolis"}));
    fitc->add_option("--config", fit.config, "key=value configuration file");
    fitc->add_option("--out-prefix", fit.out_prefix, "Prefix for output files")->required();
    fitc->add_flag("--auto-tune", fit.auto_tune, "Pilot-tune the random-walk step sizes");
    auto* freeze = fitc->add_option("--freeze-after", freeze_after,
                                    "Stop rebuilding the proposal after K rebuilds");
    fitc->add_option("--set", fit.overrides, "Override a configuration key (key=value)");

    std::string chain_path;
    std::string diag_prefix;
    auto* diagnose = app.add_subcommand("diagnose", "Diagnostics for a chain CSV");
    diagnose->add_option("--chain", chain_path, "Chain CSV")->required();
    diagnose->add_option("--out-prefix", diag_prefix, "Prefix for output files")->required();

    std::string exp_config;
    std::string out_dir;
    bool quick = false;
    std::vector<std::string> exp_overrides;
    auto* experiment = app.add_subcommand("experiment", "Run the full synthetic-data study");
    experiment->add_option("--config", exp_config, "key=value configuration file");
    experiment->add_option("--out-dir", out_dir, "Output directory")->required();
    experiment->add_flag("--quick", quick, "Small run: n=200, retained=10000");
    experiment->add_option("--set", exp_overrides, "Override a configuration key (key=value)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what(), kInvalid);
    }

    try {
        if (*simulate) return simulate_cmd(sim);
        if (*fitc) {
            if (*freeze) fit.freeze_after = freeze_after;
            return fit_cmd(fit);
        }
        if (*diagnose) return diagnose_cmd(chain_path, diag_prefix);
        if (*experiment) return experiment_cmd(exp_config, out_dir, quick, exp_overrides);
    } catch (const gjr::Error& e) {
        return report_error(e);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), kExperiment);
    }
    return kOk;
}
