#pragma once

#include "gjr/samplers.hpp"

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gjr {

/// `literal` divides every lag sum by N, matching the usual biased estimator;
/// `unbiased` divides the lag-t sum by N - t.
enum class AcfNormalization { literal, unbiased };

/// Autocorrelation for lags 0..max_lag. Lag sums are computed by FFT.
/// Throws ConstantSeries for a zero-variance series and InvalidParams for
/// N < 2 or max_lag >= N.
[[nodiscard]] std::vector<double> acf(std::span<const double> series, std::size_t max_lag,
                                      AcfNormalization norm = AcfNormalization::literal);

struct ActOptions {
    /// Window rule: smallest W with W >= c * tau(W).
    double window_factor = 6.0;
    std::size_t jackknife_blocks = 20;
    AcfNormalization norm = AcfNormalization::literal;
};

struct ActEstimate {
    double tau = 0.5;
    double tau_err = 0.0;
    std::size_t window = 0;
};

/// Integrated autocorrelation time tau = 1/2 + sum_{t=1}^{W} ACF(t) with a
/// self-consistent window, and a delete-one-block jackknife error.
/// Throws ConstantSeries, WindowNotFound, or InvalidParams for N < 100.
[[nodiscard]] ActEstimate act(std::span<const double> series, const ActOptions& options = {});

/// Point estimate only (no jackknife).
[[nodiscard]] std::pair<double, std::size_t> act_point(std::span<const double> series,
                                                       const ActOptions& options = {});

struct ParamDiagnostics {
    double mean = 0.0;
    double sd = 0.0;
    double se = 0.0;
    double tau = 0.5;
    double tau_err = 0.0;
    double two_tau = 1.0;
    std::size_t window = 0;
    std::vector<double> acf;
    /// Error code (e.g. "constant-series") when tau could not be estimated;
    /// se, tau and acf are then not meaningful.
    std::optional<std::string> error;
    std::string error_message;

    [[nodiscard]] bool ok() const noexcept { return !error.has_value(); }
};

struct AcceptanceWindow {
    std::size_t index = 0;
    double fraction = 0.0;
};

struct DiagnosticsReport {
    std::size_t length = 0;
    double acceptance = 0.0;
    std::array<ParamDiagnostics, 4> params;
    std::vector<AcceptanceWindow> acceptance_trace;

    [[nodiscard]] bool all_ok() const noexcept;
};

struct SummaryOptions {
    ActOptions act;
    /// Acceptance windows of this many consecutive steps; a trailing partial
    /// window is dropped.
    std::size_t acceptance_window = 1000;
    /// ACF lags reported: min(max_acf_lag, N / 10).
    std::size_t max_acf_lag = 500;
};

/// Posterior mean, SD (1/N), tau, SE = SD * sqrt(2 tau / N), ACF and the
/// acceptance trace. Per-parameter failures are recorded in the report.
[[nodiscard]] DiagnosticsReport summarize(const Chain& chain, const SummaryOptions& options = {});

/// Windowed acceptance fractions over `accepted`.
[[nodiscard]] std::vector<AcceptanceWindow> acceptance_trace(const std::vector<bool>& accepted,
                                                             std::size_t window);

/// key=value text block per parameter.
void write_report(std::ostream& out, const DiagnosticsReport& report);

/// Writes `<prefix>report.txt`, `<prefix>acf_<param>.csv` and
/// `<prefix>acceptance.csv`, appending each path to `written` as soon as the
/// file is created.
void write_report_files(const std::string& prefix, const DiagnosticsReport& report,
                        std::vector<std::filesystem::path>& written);

}  // namespace gjr
