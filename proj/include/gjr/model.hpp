#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gjr {

/// GJR-GARCH(1,1) parameters in canonical order (alpha, beta, omega, lambda).
///
///   sigma2[t] = omega + alpha*y[t-1]^2 + lambda*1{y[t-1]<0}*y[t-1]^2 + beta*sigma2[t-1]
///
/// A ParamVector may hold any raw candidate; `in_support()` tells whether it
/// lies in the region where the recursion keeps every variance positive.
struct ParamVector {
    double alpha = 0.0;
    double beta = 0.0;
    double omega = 0.0;
    double lambda = 0.0;

    static constexpr std::size_t size = 4;

    [[nodiscard]] static ParamVector from_vector(const Eigen::Vector4d& v) noexcept {
        return {v[0], v[1], v[2], v[3]};
    }
    [[nodiscard]] Eigen::Vector4d to_vector() const noexcept {
        return {alpha, beta, omega, lambda};
    }

    [[nodiscard]] double operator[](std::size_t i) const noexcept;
    [[nodiscard]] double& operator[](std::size_t i) noexcept;

    /// omega > 0, alpha >= 0, beta >= 0, alpha + lambda >= 0, all finite.
    [[nodiscard]] bool in_support() const noexcept;

    /// alpha + beta + lambda/2.
    [[nodiscard]] double persistence() const noexcept { return alpha + beta + 0.5 * lambda; }

    friend bool operator==(const ParamVector&, const ParamVector&) = default;
};

/// Names of the four parameters in canonical order.
inline constexpr const char* kParamNames[ParamVector::size] = {"alpha", "beta", "omega",
                                                               "lambda"};

/// Observed (or simulated) returns y_1..y_n. `sigma2_true` is only present
/// for simulated series.
class ReturnSeries {
public:
    explicit ReturnSeries(std::vector<double> y,
                          std::optional<std::vector<double>> sigma2_true = std::nullopt);

    [[nodiscard]] std::span<const double> y() const noexcept { return y_; }
    [[nodiscard]] const std::optional<std::vector<double>>& sigma2_true() const noexcept {
        return sigma2_true_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return y_.size(); }

    /// Population (1/n) variance of y.
    [[nodiscard]] double sample_variance() const noexcept;

private:
    std::vector<double> y_;
    std::optional<std::vector<double>> sigma2_true_;
};

struct VolatilityPath {
    std::vector<double> sigma2;
    double sigma2_init = 1.0;
};

/// How sigma2 at t = 1 is seeded. The default evaluates the unconditional
/// variance at the parameters being scored; `fixed` pins it to a constant.
struct Sigma2Init {
    std::optional<double> fixed;

    [[nodiscard]] static Sigma2Init unconditional() noexcept { return {}; }
    [[nodiscard]] static Sigma2Init constant(double v) noexcept { return {v}; }

    /// Throws PersistenceError when unconditional and persistence >= 1.
    [[nodiscard]] double resolve(const ParamVector& params) const;

    /// "unconditional" or the fixed value.
    [[nodiscard]] std::string to_string() const;
    /// Inverse of to_string(); throws ConfigError.
    [[nodiscard]] static Sigma2Init parse(const std::string& text);
};

/// omega / (1 - alpha - beta - lambda/2).
[[nodiscard]] double unconditional_variance(const ParamVector& params);

[[nodiscard]] VolatilityPath volatility_path(const ParamVector& params, std::span<const double> y,
                                             double sigma2_init);

/// Draws y_t = sigma_t * eps_t with eps_t ~ N(0,1) from a generator seeded
/// with `seed`. Bit-identical output for identical arguments.
[[nodiscard]] ReturnSeries simulate(const ParamVector& params, std::size_t n, std::uint64_t seed,
                                    Sigma2Init init = Sigma2Init::unconditional());

/// Gaussian log-likelihood summed in log space. Throws InvalidParams outside
/// the support and PersistenceError when the seed variance is undefined.
[[nodiscard]] double log_likelihood(const ParamVector& params, std::span<const double> y,
                                    Sigma2Init init = Sigma2Init::unconditional());

/// Flat-prior log-posterior (up to the normalising constant). Total: returns
/// -infinity for candidates outside the support or with undefined seed
/// variance.
[[nodiscard]] double log_posterior(const ParamVector& params, std::span<const double> y,
                                   Sigma2Init init = Sigma2Init::unconditional()) noexcept;

}  // namespace gjr
