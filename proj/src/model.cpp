#include "gjr/model.hpp"

#include "gjr/errors.hpp"
#include "gjr/rng.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace gjr {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

void require_support(const ParamVector& p) {
    if (!p.in_support()) {
        std::ostringstream os;
        os << "parameters outside support (alpha=" << p.alpha << ", beta=" << p.beta
           << ", omega=" << p.omega << ", lambda=" << p.lambda << ")";
        throw InvalidParams(os.str());
    }
}

inline double next_sigma2(const ParamVector& p, double y_prev, double sigma2_prev) noexcept {
    const double y2 = y_prev * y_prev;
    const double arch = y_prev < 0.0 ? p.alpha + p.lambda : p.alpha;
    return p.omega + arch * y2 + p.beta * sigma2_prev;
}

}  // namespace

double ParamVector::operator[](std::size_t i) const noexcept {
    switch (i) {
        case 0: return alpha;
        case 1: return beta;
        case 2: return omega;
        default: return lambda;
    }
}

double& ParamVector::operator[](std::size_t i) noexcept {
    switch (i) {
        case 0: return alpha;
        case 1: return beta;
        case 2: return omega;
        default: return lambda;
    }
}

bool ParamVector::in_support() const noexcept {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(omega) ||
        !std::isfinite(lambda)) {
        return false;
    }
    return omega > 0.0 && alpha >= 0.0 && beta >= 0.0 && alpha + lambda >= 0.0;
}

ReturnSeries::ReturnSeries(std::vector<double> y, std::optional<std::vector<double>> sigma2_true)
    : y_(std::move(y)), sigma2_true_(std::move(sigma2_true)) {
    if (y_.empty()) {
        throw InvalidParams("return series must hold at least one observation");
    }
    for (double v : y_) {
        if (!std::isfinite(v)) {
            throw InvalidParams("return series contains a non-finite value");
        }
    }
    if (sigma2_true_) {
        if (sigma2_true_->size() != y_.size()) {
            throw InvalidParams("sigma2_true length differs from y");
        }
        for (double v : *sigma2_true_) {
            if (!(v > 0.0) || !std::isfinite(v)) {
                throw InvalidParams("sigma2_true entries must be finite and positive");
            }
        }
    }
}

double ReturnSeries::sample_variance() const noexcept {
    double mean = 0.0;
    for (double v : y_) mean += v;
    mean /= static_cast<double>(y_.size());
    double ss = 0.0;
    for (double v : y_) ss += (v - mean) * (v - mean);
    return ss / static_cast<double>(y_.size());
}

double Sigma2Init::resolve(const ParamVector& params) const {
    return fixed ? *fixed : unconditional_variance(params);
}

std::string Sigma2Init::to_string() const {
    if (!fixed) return "unconditional";
    std::ostringstream os;
    os.precision(17);
    os << *fixed;
    return os.str();
}

Sigma2Init Sigma2Init::parse(const std::string& text) {
    if (text == "unconditional") return unconditional();
    double v = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || !(v > 0.0) || !std::isfinite(v)) {
        throw ConfigError("sigma2_init must be 'unconditional' or a positive number, got '" +
                          text + "'");
    }
    return constant(v);
}

double unconditional_variance(const ParamVector& params) {
    const double p = params.persistence();
    if (!(p < 1.0)) {
        std::ostringstream os;
        os << "persistence alpha+beta+lambda/2 = " << p << " >= 1";
        throw PersistenceError(os.str());
    }
    return params.omega / (1.0 - p);
}

VolatilityPath volatility_path(const ParamVector& params, std::span<const double> y,
                               double sigma2_init) {
    require_support(params);
    if (!(sigma2_init > 0.0)) {
        throw InvalidParams("sigma2_init must be positive");
    }
    VolatilityPath path;
    path.sigma2_init = sigma2_init;
    path.sigma2.resize(y.size());
    if (y.empty()) return path;
    path.sigma2[0] = sigma2_init;
    for (std::size_t t = 1; t < y.size(); ++t) {
        path.sigma2[t] = next_sigma2(params, y[t - 1], path.sigma2[t - 1]);
    }
    return path;
}

ReturnSeries simulate(const ParamVector& params, std::size_t n, std::uint64_t seed,
                      Sigma2Init init) {
    require_support(params);
    if (n == 0) {
        throw InvalidParams("simulate needs n >= 1");
    }
    const double s0 = init.resolve(params);
    if (!(s0 > 0.0)) {
        throw InvalidParams("sigma2_init must be positive");
    }

    Rng rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> y(n);
    std::vector<double> sigma2(n);
    sigma2[0] = s0;
    y[0] = std::sqrt(s0) * normal(rng);
    for (std::size_t t = 1; t < n; ++t) {
        sigma2[t] = next_sigma2(params, y[t - 1], sigma2[t - 1]);
        y[t] = std::sqrt(sigma2[t]) * normal(rng);
    }
    return ReturnSeries(std::move(y), std::move(sigma2));
}

double log_likelihood(const ParamVector& params, std::span<const double> y, Sigma2Init init) {
    require_support(params);
    double sigma2 = init.resolve(params);
    if (!(sigma2 > 0.0)) {
        throw InvalidParams("sigma2_init must be positive");
    }
    // Accumulate sum(log sigma2) and sum(y^2/sigma2) separately.
    double log_sum = 0.0;
    double quad = 0.0;
    for (std::size_t t = 0; t < y.size(); ++t) {
        if (t > 0) sigma2 = next_sigma2(params, y[t - 1], sigma2);
        log_sum += std::log(sigma2);
        quad += y[t] * y[t] / sigma2;
    }
    return -0.5 * (static_cast<double>(y.size()) * kLog2Pi + log_sum + quad);
}

double log_posterior(const ParamVector& params, std::span<const double> y,
                     Sigma2Init init) noexcept {
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    if (!params.in_support()) return kNegInf;
    if (!init.fixed && !(params.persistence() < 1.0)) return kNegInf;
    try {
        const double ll = log_likelihood(params, y, init);
        return std::isnan(ll) ? kNegInf : ll;
    } catch (const Error&) {
        return kNegInf;
    }
}

}  // namespace gjr
