#include "gjr/samplers.hpp"

#include "gjr/errors.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace gjr {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double evaluate(const LogTarget& target, const ParamVector& theta) {
    const double v = target(theta);
    return std::isnan(v) ? kNegInf : v;
}

/// Accept with probability min(1, exp(log_ratio)); the uniform is drawn only
/// when the outcome is not already decided.
bool accept(double log_ratio, Rng& rng) {
    if (std::isnan(log_ratio) || log_ratio == kNegInf) return false;
    if (log_ratio >= 0.0) return true;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    return std::log(unif(rng)) < log_ratio;
}

SamplerState initial_state(const AdaptiveConfig& config, const LogTarget& target) {
    if (!config.theta_init) {
        throw ConfigError("theta_init must be resolved before sampling");
    }
    SamplerState state{*config.theta_init, evaluate(target, *config.theta_init)};
    if (state.log_target == kNegInf) {
        throw ConfigError("theta_init has zero posterior density");
    }
    return state;
}

void record(Chain& chain, const SamplerState& state, bool accepted) {
    chain.draws.push_back(state.theta);
    chain.accepted.push_back(accepted);
}

ProposalUpdate snapshot(std::size_t index, const MomentAccumulator& acc) {
    return {index, acc.count(), acc.mean(), acc.covariance()};
}

}  // namespace

LogTarget posterior_target(const ReturnSeries& y, Sigma2Init init) {
    return [&y, init](const ParamVector& theta) { return log_posterior(theta, y.y(), init); };
}

std::string to_string(KernelTag tag) {
    return tag == KernelTag::metropolis ? "metropolis" : "adaptive_mh";
}

std::vector<double> Chain::component(std::size_t i) const {
    std::vector<double> out;
    out.reserve(draws.size());
    for (const auto& d : draws) out.push_back(d[i]);
    return out;
}

double Chain::acceptance_rate() const noexcept {
    if (accepted.empty()) return 0.0;
    std::size_t n = 0;
    for (bool a : accepted) n += a ? 1 : 0;
    return static_cast<double>(n) / static_cast<double>(accepted.size());
}

bool metropolis_step(SamplerState& state, const std::array<double, 4>& d,
                     const LogTarget& target, Rng& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    ParamVector candidate = state.theta;
    for (std::size_t i = 0; i < 4; ++i) {
        candidate[i] += d[i] * (unif(rng) - 0.5);
    }
    const double lp = evaluate(target, candidate);
    if (lp == kNegInf) return false;
    if (!accept(lp - state.log_target, rng)) return false;
    state = {candidate, lp};
    return true;
}

bool mh_independence_step(SamplerState& state, const ProposalSpec& spec, const LogTarget& target,
                          Rng& rng) {
    const ParamVector candidate = student_t_sample(spec, rng);
    const double lp = evaluate(target, candidate);
    if (lp == kNegInf) return false;
    const double lg_candidate = student_t_log_density(candidate, spec);
    const double lg_current = student_t_log_density(state.theta, spec);
    const double log_ratio = (lp - state.log_target) + (lg_current - lg_candidate);
    if (!accept(log_ratio, rng)) return false;
    state = {candidate, lp};
    return true;
}

void AdaptiveConfig::validate() const {
    if (initial_pool < 2) throw ConfigError("initial_pool must be at least 2");
    if (rebuild_every < 1) throw ConfigError("rebuild_every must be at least 1");
    if (!(nu > 2.0) || !std::isfinite(nu)) throw ConfigError("nu must exceed 2");
    bool any_positive = false;
    for (double d : metropolis_steps) {
        if (!(d >= 0.0) || !std::isfinite(d)) {
            throw ConfigError("metropolis_steps must be finite and non-negative");
        }
        any_positive = any_positive || d > 0.0;
    }
    if (!any_positive) throw ConfigError("at least one metropolis step must be positive");
}

ParamVector default_theta_init(const ReturnSeries& y) {
    return {0.05, 0.80, 0.1 * y.sample_variance(), 0.05};
}

Chain run_metropolis(const AdaptiveConfig& config, const LogTarget& target) {
    config.validate();
    Rng rng(config.seed);
    SamplerState state = initial_state(config, target);

    Chain chain;
    chain.kernel = KernelTag::metropolis;
    chain.seed = config.seed;
    chain.burn_in = config.burn_in;
    chain.draws.reserve(config.retained);
    chain.accepted.reserve(config.retained);

    for (std::size_t i = 0; i < config.burn_in; ++i) {
        metropolis_step(state, config.metropolis_steps, target, rng);
    }
    for (std::size_t i = 0; i < config.retained; ++i) {
        const bool acc = metropolis_step(state, config.metropolis_steps, target, rng);
        record(chain, state, acc);
    }
    return chain;
}

Chain run_metropolis(const AdaptiveConfig& config, const ReturnSeries& y) {
    AdaptiveConfig resolved = config;
    if (!resolved.theta_init) resolved.theta_init = default_theta_init(y);
    return run_metropolis(resolved, posterior_target(y, config.sigma2_init));
}

AdaptiveRun run_adaptive(const AdaptiveConfig& config, const LogTarget& target) {
    config.validate();
    Rng rng(config.seed);
    SamplerState state = initial_state(config, target);

    AdaptiveRun run;
    Chain& chain = run.chain;
    chain.kernel = KernelTag::adaptive_mh;
    chain.seed = config.seed;
    chain.burn_in = config.burn_in;
    chain.draws.reserve(config.retained);
    chain.accepted.reserve(config.retained);

    for (std::size_t i = 0; i < config.burn_in; ++i) {
        metropolis_step(state, config.metropolis_steps, target, rng);
    }

    MomentAccumulator acc;
    for (std::size_t i = 0; i < config.initial_pool; ++i) {
        const bool a = metropolis_step(state, config.metropolis_steps, target, rng);
        acc.add(state.theta);
        if (chain.size() < config.retained) record(chain, state, a);
    }
    if (chain.size() >= config.retained) return run;

    ProposalSpec spec = build_spec(acc, config.nu);
    run.history.push_back(snapshot(0, acc));

    std::size_t rebuilds = 0;
    std::size_t since_rebuild = 0;
    while (chain.size() < config.retained) {
        const bool a = mh_independence_step(state, spec, target, rng);
        acc.add(state.theta);
        record(chain, state, a);
        if (++since_rebuild == config.rebuild_every) {
            since_rebuild = 0;
            if (!config.freeze_after || rebuilds < *config.freeze_after) {
                spec = build_spec(acc, config.nu);
                ++rebuilds;
                run.history.push_back(snapshot(rebuilds, acc));
            }
        }
    }
    return run;
}

AdaptiveRun run_adaptive(const AdaptiveConfig& config, const ReturnSeries& y) {
    AdaptiveConfig resolved = config;
    if (!resolved.theta_init) resolved.theta_init = default_theta_init(y);
    return run_adaptive(resolved, posterior_target(y, config.sigma2_init));
}

TuningResult tune_metropolis_steps(std::array<double, 4> steps, const ParamVector& start,
                                   const LogTarget& target, Rng& rng, std::size_t window,
                                   double low, double high, std::size_t max_rounds) {
    SamplerState state{start, evaluate(target, start)};
    if (state.log_target == kNegInf) {
        throw ConfigError("tuning start point has zero posterior density");
    }
    TuningResult result;
    for (std::size_t round = 0; round < max_rounds; ++round) {
        std::size_t accepted = 0;
        for (std::size_t i = 0; i < window; ++i) {
            accepted += metropolis_step(state, steps, target, rng) ? 1 : 0;
        }
        result.rounds = round + 1;
        result.acceptance = static_cast<double>(accepted) / static_cast<double>(window);
        if (result.acceptance >= low && result.acceptance <= high) {
            result.converged = true;
            break;
        }
        const double factor = result.acceptance < low ? 0.5 : 2.0;
        for (double& d : steps) d *= factor;
    }
    result.steps = steps;
    return result;
}

}  // namespace gjr
