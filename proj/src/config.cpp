#include "gjr/config.hpp"

#include "csv_util.hpp"
#include "gjr/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <string_view>

namespace gjr {

namespace {

constexpr std::array<std::string_view, 17> kKnownKeys = {
    // sampler
    "burn_in", "initial_pool", "rebuild_every", "retained", "nu", "metropolis_steps",
    "theta_init", "seed", "freeze_after", "sigma2_init", "auto_tune",
    // experiment
    "true_params", "n", "data_seed", "metropolis_seed", "adaptive_seed", "metropolis_d"};

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const char* expected) {
    throw ConfigError("key '" + key + "': expected " + expected + ", got '" + value + "'");
}

std::uint64_t to_uint(const std::string& key, const std::string& value) {
    std::uint64_t v = 0;
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, v);
    if (ec != std::errc{} || ptr != end || value.empty()) {
        bad_value(key, value, "a non-negative integer");
    }
    return v;
}

double to_real(const std::string& key, const std::string& value) {
    double v = 0.0;
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, v);
    if (ec != std::errc{} || ptr != end || value.empty() || !std::isfinite(v)) {
        bad_value(key, value, "a real number");
    }
    return v;
}

std::array<double, 4> to_vec4(const std::string& key, const std::string& value) {
    const auto fields = detail::split(value);
    if (fields.size() != 4) bad_value(key, value, "four comma-separated reals");
    std::array<double, 4> out{};
    for (std::size_t i = 0; i < 4; ++i) out[i] = to_real(key, std::string(fields[i]));
    return out;
}

ParamVector to_params(const std::string& key, const std::string& value) {
    const auto v = to_vec4(key, value);
    return {v[0], v[1], v[2], v[3]};
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "1" || value == "true" || value == "yes") return true;
    if (value == "0" || value == "false" || value == "no") return false;
    bad_value(key, value, "a boolean");
}

}  // namespace

bool ConfigMap::is_known(const std::string& key) {
    return std::find(kKnownKeys.begin(), kKnownKeys.end(), key) != kKnownKeys.end();
}

void ConfigMap::set(const std::string& key, const std::string& value) {
    if (!is_known(key)) throw ConfigError("unknown configuration key '" + key + "'");
    values_[key] = value;
}

void ConfigMap::set_assignment(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("expected key=value, got '" + assignment + "'");
    }
    set(std::string(detail::trim(std::string_view(assignment).substr(0, eq))),
        std::string(detail::trim(std::string_view(assignment).substr(eq + 1))));
}

void ConfigMap::load(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        try {
            set_assignment(std::string(t));
        } catch (const ConfigError& e) {
            throw ConfigError(source + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void ConfigMap::load(const std::filesystem::path& path) {
    auto in = detail::open_for_read(path);
    load(in, path.string());
}

const std::string& ConfigMap::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing configuration key '" + key + "'");
    return it->second;
}

AdaptiveConfig apply_config(AdaptiveConfig base, const ConfigMap& config) {
    for (const auto& [key, value] : config.values()) {
        if (key == "burn_in") base.burn_in = to_uint(key, value);
        else if (key == "initial_pool") base.initial_pool = to_uint(key, value);
        else if (key == "rebuild_every") base.rebuild_every = to_uint(key, value);
        else if (key == "retained") base.retained = to_uint(key, value);
        else if (key == "nu") base.nu = to_real(key, value);
        else if (key == "metropolis_steps") base.metropolis_steps = to_vec4(key, value);
        else if (key == "theta_init") base.theta_init = to_params(key, value);
        else if (key == "seed") base.seed = to_uint(key, value);
        else if (key == "freeze_after") {
            if (value == "none") base.freeze_after.reset();
            else base.freeze_after = to_uint(key, value);
        } else if (key == "sigma2_init") base.sigma2_init = Sigma2Init::parse(value);
    }
    return base;
}

ExperimentSpec apply_config(ExperimentSpec base, const ConfigMap& config) {
    base.adaptive = apply_config(base.adaptive, config);
    for (const auto& [key, value] : config.values()) {
        if (key == "true_params") base.true_params = to_params(key, value);
        else if (key == "n") base.n = to_uint(key, value);
        else if (key == "data_seed") base.data_seed = to_uint(key, value);
        else if (key == "metropolis_seed") base.metropolis_seed = to_uint(key, value);
        else if (key == "adaptive_seed") base.adaptive_seed = to_uint(key, value);
        else if (key == "metropolis_d") base.metropolis_d = to_vec4(key, value);
    }
    if (!config.has("metropolis_d") && config.has("metropolis_steps")) {
        base.metropolis_d = base.adaptive.metropolis_steps;
    }
    if (config.has("auto_tune")) base.auto_tune = auto_tune_requested(config);
    return base;
}

bool auto_tune_requested(const ConfigMap& config) {
    return config.has("auto_tune") && to_bool("auto_tune", config.get("auto_tune"));
}

}  // namespace gjr
