#include "gjr/errors.hpp"
#include "gjr/samplers.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

using gjr::ParamVector;

namespace {

const gjr::ReturnSeries& default_data() {
    static const auto series = gjr::simulate({0.03, 0.85, 0.05, 0.1}, 2000, 2010);
    return series;
}

gjr::AdaptiveConfig small_config(std::uint64_t seed) {
    gjr::AdaptiveConfig c;
    c.burn_in = 2000;
    c.initial_pool = 1000;
    c.rebuild_every = 1000;
    c.retained = 6000;
    c.seed = seed;
    return c;
}

void check_chain_consistency(const gjr::Chain& chain) {
    REQUIRE(chain.draws.size() == chain.accepted.size());
    for (std::size_t i = 1; i < chain.size(); ++i) {
        if (!chain.accepted[i]) REQUIRE(chain.draws[i] == chain.draws[i - 1]);
    }
}

}  // namespace

TEST_CASE("metropolis step always accepts uphill moves", "[samplers]") {
    const gjr::LogTarget flat = [](const ParamVector&) { return 0.0; };
    gjr::SamplerState state{{0.1, 0.5, 0.1, 0.0}, 0.0};
    gjr::Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        REQUIRE(gjr::metropolis_step(state, {0.01, 0.01, 0.01, 0.01}, flat, rng));
    }
}

TEST_CASE("out-of-support candidates are always rejected", "[samplers]") {
    // Flat over the support, so the walk lingers near the boundary.
    ParamVector last_candidate;
    const gjr::LogTarget target = [&](const ParamVector& p) {
        last_candidate = p;
        return p.in_support() ? 0.0 : -std::numeric_limits<double>::infinity();
    };
    const ParamVector start{1e-4, 0.85, 1e-3, 0.1};
    gjr::SamplerState state{start, target(start)};
    gjr::Rng rng(4);
    int outside = 0;
    for (int i = 0; i < 2000; ++i) {
        const ParamVector before = state.theta;
        const bool accepted = gjr::metropolis_step(state, {0.01, 0.01, 0.01, 0.01}, target, rng);
        if (!last_candidate.in_support()) {
            ++outside;
            REQUIRE_FALSE(accepted);
            REQUIRE(state.theta == before);
        }
        REQUIRE(state.theta.in_support());
    }
    CHECK(outside > 20);
}

TEST_CASE("acceptance falls as the random-walk step grows", "[samplers]") {
    const auto target = gjr::posterior_target(default_data());
    double previous = 1.1;
    for (double d : {0.001, 0.01, 0.1}) {
        const ParamVector start{0.035, 0.85, 0.055, 0.085};
        gjr::SamplerState state{start, target(start)};
        gjr::Rng rng(77);
        int accepted = 0;
        const int n = 20000;
        for (int i = 0; i < n; ++i) {
            accepted += gjr::metropolis_step(state, {0.0, 0.0, d, 0.0}, target, rng) ? 1 : 0;
        }
        const double rate = static_cast<double>(accepted) / n;
        CHECK(rate <= previous);
        previous = rate;
    }
}

TEST_CASE("independence step accepts everything when target equals proposal", "[samplers]") {
    Eigen::Matrix4d s = Eigen::Matrix4d::Identity() * 0.01;
    s(1, 2) = s(2, 1) = 0.004;
    const gjr::ProposalSpec spec(Eigen::Vector4d(0.03, 0.85, 0.05, 0.1), s, 10.0);
    const gjr::LogTarget target = [&](const ParamVector& p) {
        return gjr::student_t_log_density(p, spec);
    };
    const ParamVector start{0.0, 0.0, 0.0, 0.0};
    gjr::SamplerState state{start, target(start)};
    gjr::Rng rng(3);
    for (int i = 0; i < 10000; ++i) {
        REQUIRE(gjr::mh_independence_step(state, spec, target, rng));
    }
}

TEST_CASE("independence step rejects out-of-support draws", "[samplers]") {
    const auto& y = default_data();
    // Proposal centred on the omega = 0 boundary: about half the draws are invalid.
    const gjr::ProposalSpec spec(Eigen::Vector4d(0.03, 0.85, 0.0, 0.1),
                                 Eigen::Matrix4d::Identity() * 1e-4, 10.0);
    const auto target = gjr::posterior_target(y);
    const ParamVector start{0.03, 0.85, 0.05, 0.1};
    gjr::SamplerState state{start, target(start)};
    gjr::Rng rng(8);
    for (int i = 0; i < 2000; ++i) {
        gjr::mh_independence_step(state, spec, target, rng);
        REQUIRE(state.theta.in_support());
        REQUIRE(std::isfinite(state.log_target));
    }
}

TEST_CASE("run_metropolis basics", "[samplers]") {
    auto config = small_config(5);
    config.retained = 0;
    const auto empty = gjr::run_metropolis(config, default_data());
    CHECK(empty.size() == 0);
    CHECK(empty.kernel == gjr::KernelTag::metropolis);

    config.retained = 3000;
    const auto a = gjr::run_metropolis(config, default_data());
    const auto b = gjr::run_metropolis(config, default_data());
    REQUIRE(a.size() == 3000);
    CHECK(a.draws == b.draws);
    CHECK(a.accepted == b.accepted);
    CHECK(a.burn_in == 2000);
    check_chain_consistency(a);
    for (const auto& d : a.draws) REQUIRE(d.in_support());
}

TEST_CASE("run_adaptive schedule", "[samplers]") {
    const auto config = small_config(9);
    const auto run = gjr::run_adaptive(config, default_data());
    REQUIRE(run.chain.size() == 6000);
    CHECK(run.chain.kernel == gjr::KernelTag::adaptive_mh);
    // initial build after the pool, then one rebuild per 1000 MH steps
    REQUIRE(run.history.size() == 6);
    for (std::size_t i = 0; i < run.history.size(); ++i) {
        CHECK(run.history[i].index == i);
        CHECK(run.history[i].count == 1000 * (i + 1));
    }
    check_chain_consistency(run.chain);
    for (const auto& d : run.chain.draws) REQUIRE(d.in_support());

    const auto again = gjr::run_adaptive(config, default_data());
    CHECK(again.chain.draws == run.chain.draws);
}

TEST_CASE("freezing the proposal only changes draws after the freeze", "[samplers]") {
    auto config = small_config(13);
    const auto free_run = gjr::run_adaptive(config, default_data());
    config.freeze_after = 1;
    const auto frozen = gjr::run_adaptive(config, default_data());
    REQUIRE(frozen.history.size() == 2);
    // pool (1000) + first MH block (1000) + second MH block (1000) share the
    // same proposals in both runs.
    for (std::size_t i = 0; i < 3000; ++i) {
        REQUIRE(frozen.chain.draws[i] == free_run.chain.draws[i]);
    }
    bool differs = false;
    for (std::size_t i = 3000; i < 6000; ++i) {
        differs = differs || !(frozen.chain.draws[i] == free_run.chain.draws[i]);
    }
    CHECK(differs);
}

TEST_CASE("pool larger than the chain", "[samplers]") {
    auto config = small_config(2);
    config.retained = 500;
    const auto run = gjr::run_adaptive(config, default_data());
    CHECK(run.chain.size() == 500);
    CHECK(run.history.empty());
}

TEST_CASE("configuration validation", "[samplers]") {
    gjr::AdaptiveConfig c;
    c.nu = 2.0;
    CHECK_THROWS_AS(c.validate(), gjr::ConfigError);
    c = {};
    c.initial_pool = 1;
    CHECK_THROWS_AS(c.validate(), gjr::ConfigError);
    c = {};
    c.metropolis_steps = {0, 0, 0, 0};
    CHECK_THROWS_AS(c.validate(), gjr::ConfigError);
    c = {};
    c.theta_init = ParamVector{0.03, 0.85, -1.0, 0.1};
    CHECK_THROWS_AS(gjr::run_metropolis(c, default_data()), gjr::ConfigError);
}

TEST_CASE("pilot tuner lands in the acceptance band", "[samplers]") {
    const auto target = gjr::posterior_target(default_data());
    gjr::Rng rng(19);
    const ParamVector start = gjr::default_theta_init(default_data());
    const auto big = gjr::tune_metropolis_steps({0.1, 0.5, 0.5, 0.5}, start, target, rng);
    CHECK(big.converged);
    CHECK(big.acceptance >= 0.5);
    CHECK(big.acceptance <= 0.8);
    CHECK(big.steps[0] < 0.1);
    const auto tiny = gjr::tune_metropolis_steps({1e-6, 1e-6, 1e-6, 1e-6}, start, target, rng);
    CHECK(tiny.converged);
    CHECK(tiny.steps[0] > 1e-6);
}

TEST_CASE("ratio arithmetic never produces NaN on valid inputs", "[samplers]") {
    const auto& y = default_data();
    int calls = 0;
    const gjr::LogTarget target = [&](const ParamVector& p) {
        const double v = gjr::log_posterior(p, y.y());
        ++calls;
        REQUIRE_FALSE(std::isnan(v));
        return v;
    };
    auto config = small_config(23);
    config.theta_init = gjr::default_theta_init(y);
    const auto run = gjr::run_adaptive(config, target);
    CHECK(calls > 8000);
    CHECK(run.chain.size() == 6000);
}
