#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace testing_support {

/// x_t = rho x_{t-1} + e_t, started from the stationary distribution.
inline std::vector<double> ar1(std::size_t n, double rho, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<double> x(n);
    x[0] = normal(rng) / std::sqrt(1.0 - rho * rho);
    for (std::size_t t = 1; t < n; ++t) x[t] = rho * x[t - 1] + normal(rng);
    return x;
}

inline std::vector<double> white_noise(std::size_t n, std::uint64_t seed) {
    return ar1(n, 0.0, seed);
}

/// Direct O(N L) autocorrelation with 1/N lag normalisation.
inline std::vector<double> direct_acf(const std::vector<double>& x, std::size_t max_lag) {
    const auto n = static_cast<double>(x.size());
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= n;
    std::vector<double> out(max_lag + 1);
    for (std::size_t t = 0; t <= max_lag; ++t) {
        double s = 0.0;
        for (std::size_t j = 0; j + t < x.size(); ++j) s += (x[j] - mean) * (x[j + t] - mean);
        out[t] = s / n / var;
    }
    return out;
}

}  // namespace testing_support
