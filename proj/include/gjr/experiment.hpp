#pragma once

#include "gjr/diagnostics.hpp"
#include "gjr/model.hpp"
#include "gjr/samplers.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gjr {

struct ExperimentSpec {
    ParamVector true_params{0.03, 0.85, 0.05, 0.1};
    std::size_t n = 2000;
    std::uint64_t data_seed = 2010;
    std::uint64_t metropolis_seed = 7;
    std::uint64_t adaptive_seed = 11;
    /// Schedule for the adaptive run; `retained`, `burn_in`, `theta_init` and
    /// `sigma2_init` are shared with the Metropolis baseline.
    AdaptiveConfig adaptive;
    std::array<double, 4> metropolis_d{0.004, 0.01, 0.01, 0.01};
    /// Pilot-tune the random-walk steps of both runs before sampling.
    bool auto_tune = false;
    /// Chains run concurrently when >= 2.
    std::size_t threads = 1;
    std::filesystem::path output_dir = "experiment_out";

    /// Throws InvalidParams / ConfigError.
    void validate() const;
};

/// Reduced-size run for smoke tests: n = 200, retained = 10000.
[[nodiscard]] ExperimentSpec quick_experiment_spec(ExperimentSpec base);

struct ExperimentReport {
    ReturnSeries data;
    AdaptiveRun adaptive;
    Chain metropolis;
    DiagnosticsReport adaptive_summary;
    DiagnosticsReport metropolis_summary;
    std::optional<TuningResult> tuning;
    std::vector<std::filesystem::path> files;
};

/// Simulates the series, runs both samplers on it, summarises both chains and
/// writes every output file into `spec.output_dir`. Files written by a failed
/// run are removed before the error propagates.
[[nodiscard]] ExperimentReport run_experiment(const ExperimentSpec& spec);

/// Side-by-side comparison table: true values, then estimate / SD / SE /
/// 2tau rows for each sampler, then the reference values.
[[nodiscard]] std::string format_table(const ExperimentSpec& spec, const ExperimentReport& report);

/// Reference results for the default experiment.
struct ReferenceRow {
    std::array<double, 4> estimate;
    std::array<double, 4> sd;
    std::array<double, 4> se;
    std::array<double, 4> two_tau;
    std::array<double, 4> two_tau_err;
};
inline constexpr ReferenceRow kReferenceAdaptive{{0.03285, 0.85540, 0.04522, 0.08719},
                                                 {0.0015, 0.040, 0.019, 0.026},
                                                 {0.00011, 0.00025, 0.00011, 0.00066},
                                                 {2.8, 3.3, 4.6, 2.6},
                                                 {0.2, 0.7, 0.8, 0.2}};
inline constexpr ReferenceRow kReferenceMetropolis{{0.0323, 0.855, 0.0454, 0.0895},
                                                   {0.0015, 0.038, 0.018, 0.026},
                                                   {0.0007, 0.004, 0.0018, 0.0015},
                                                   {320, 1050, 990, 350},
                                                   {100, 350, 330, 110}};

/// Number of concurrent chains allowed by GARCH_MCMC_THREADS (default 1).
[[nodiscard]] std::size_t threads_from_env();

}  // namespace gjr
