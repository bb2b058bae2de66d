#pragma once

#include "gjr/model.hpp"
#include "gjr/proposal.hpp"
#include "gjr/rng.hpp"

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gjr {

/// Unnormalised log-density over raw candidates; -infinity outside support.
using LogTarget = std::function<double(const ParamVector&)>;

/// The flat-prior GJR-GARCH posterior for `y` (captured by reference).
[[nodiscard]] LogTarget posterior_target(const ReturnSeries& y,
                                         Sigma2Init init = Sigma2Init::unconditional());

enum class KernelTag { metropolis, adaptive_mh };

[[nodiscard]] std::string to_string(KernelTag tag);

struct Chain {
    std::vector<ParamVector> draws;
    std::vector<bool> accepted;
    std::size_t burn_in = 0;
    KernelTag kernel = KernelTag::metropolis;
    std::uint64_t seed = 0;

    [[nodiscard]] std::size_t size() const noexcept { return draws.size(); }
    [[nodiscard]] std::vector<double> component(std::size_t i) const;
    [[nodiscard]] double acceptance_rate() const noexcept;
};

/// Current state of a chain together with its cached log-target value.
struct SamplerState {
    ParamVector theta;
    double log_target = 0.0;
};

/// Random-walk step: theta' = theta + d * (r - 0.5), r ~ U[0,1]^4, accepted
/// with probability min(1, target(theta') / target(theta)).
bool metropolis_step(SamplerState& state, const std::array<double, 4>& d,
                     const LogTarget& target, Rng& rng);

/// Independence step with candidate drawn from `spec`; the acceptance ratio
/// carries the g(theta)/g(theta') correction.
bool mh_independence_step(SamplerState& state, const ProposalSpec& spec, const LogTarget& target,
                          Rng& rng);

struct AdaptiveConfig {
    std::size_t burn_in = 5000;
    std::size_t initial_pool = 1000;
    std::size_t rebuild_every = 1000;
    std::size_t retained = 100000;
    double nu = 10.0;
    std::array<double, 4> metropolis_steps{0.004, 0.01, 0.01, 0.01};
    /// Empty means the data-driven default from `default_theta_init`.
    std::optional<ParamVector> theta_init;
    std::uint64_t seed = 1;
    /// Stop rebuilding the proposal after this many rebuilds.
    std::optional<std::size_t> freeze_after;
    Sigma2Init sigma2_init;

    /// Throws ConfigError.
    void validate() const;
};

/// alpha = 0.05, beta = 0.80, omega = 0.1 * var(y), lambda = 0.05.
[[nodiscard]] ParamVector default_theta_init(const ReturnSeries& y);

/// One proposal (re)build: the accumulated mean and covariance V at that point.
struct ProposalUpdate {
    std::size_t index = 0;
    std::size_t count = 0;
    Eigen::Vector4d mean = Eigen::Vector4d::Zero();
    Eigen::Matrix4d covariance = Eigen::Matrix4d::Zero();
};

struct AdaptiveRun {
    Chain chain;
    std::vector<ProposalUpdate> history;
};

/// `burn_in` discarded steps, then `retained` recorded Metropolis steps.
[[nodiscard]] Chain run_metropolis(const AdaptiveConfig& config, const LogTarget& target);
[[nodiscard]] Chain run_metropolis(const AdaptiveConfig& config, const ReturnSeries& y);

/// Adaptive construction: Metropolis burn-in (discarded), an initial pool of
/// Metropolis draws that seeds the moment accumulator and counts toward
/// `retained`, then independence MH steps with the Student's t proposal
/// rebuilt from the cumulative accumulator every `rebuild_every` steps.
/// The returned history has one row for the initial build and one per
/// rebuild.
[[nodiscard]] AdaptiveRun run_adaptive(const AdaptiveConfig& config, const LogTarget& target);
[[nodiscard]] AdaptiveRun run_adaptive(const AdaptiveConfig& config, const ReturnSeries& y);

struct TuningResult {
    std::array<double, 4> steps{};
    double acceptance = 0.0;
    std::size_t rounds = 0;
    bool converged = false;
};

/// Pilot tuner for the random-walk steps: runs `window`-step pilots from
/// `start`, doubling every step size when acceptance exceeds `high` and
/// halving when it falls below `low`, until the acceptance lands in the band.
[[nodiscard]] TuningResult tune_metropolis_steps(std::array<double, 4> steps,
                                                 const ParamVector& start,
                                                 const LogTarget& target, Rng& rng,
                                                 std::size_t window = 500, double low = 0.5,
                                                 double high = 0.8, std::size_t max_rounds = 40);

}  // namespace gjr
