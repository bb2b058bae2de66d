#include "gjr/diagnostics.hpp"

#include "csv_util.hpp"
#include "gjr/errors.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <ostream>

namespace gjr {

namespace {

/// Lag sums s[t] = sum_j x[j] x[j+t] of the centred series for t = 0..max_lag,
/// via zero-padded FFT.
std::vector<double> lag_sums(const std::vector<double>& centred, std::size_t max_lag) {
    const std::size_t n = centred.size();
    std::size_t padded = 1;
    while (padded < 2 * n) padded <<= 1;

    std::vector<double> buf(padded, 0.0);
    std::copy(centred.begin(), centred.end(), buf.begin());

    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> spec;
    fft.fwd(spec, buf);
    for (auto& c : spec) c = std::complex<double>(std::norm(c), 0.0);
    std::vector<double> out;
    fft.inv(out, spec);
    out.resize(max_lag + 1);
    return out;
}

std::vector<double> centre(std::span<const double> series, double& variance) {
    const auto n = static_cast<double>(series.size());
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= n;
    std::vector<double> c(series.begin(), series.end());
    double ss = 0.0;
    for (double& v : c) {
        v -= mean;
        ss += v * v;
    }
    variance = ss / n;
    return c;
}

bool is_constant(std::span<const double> series) {
    return std::all_of(series.begin(), series.end(),
                       [&](double v) { return v == series.front(); });
}

}  // namespace

std::vector<double> acf(std::span<const double> series, std::size_t max_lag,
                        AcfNormalization norm) {
    const std::size_t n = series.size();
    if (n < 2) throw InvalidParams("acf needs at least two values");
    if (max_lag >= n) throw InvalidParams("acf max_lag must be below the series length");
    if (is_constant(series)) throw ConstantSeries("series is constant; ACF undefined");

    double variance = 0.0;
    const auto centred = centre(series, variance);
    if (!(variance > 0.0)) throw ConstantSeries("series has zero variance; ACF undefined");

    auto sums = lag_sums(centred, max_lag);
    std::vector<double> rho(max_lag + 1);
    for (std::size_t t = 0; t <= max_lag; ++t) {
        const double denom = norm == AcfNormalization::literal ? static_cast<double>(n)
                                                               : static_cast<double>(n - t);
        rho[t] = sums[t] / denom / variance;
    }
    // Lag 0 is 1 by definition; pin it to remove FFT round-off.
    rho[0] = 1.0;
    return rho;
}

std::pair<double, std::size_t> act_point(std::span<const double> series,
                                         const ActOptions& options) {
    const std::size_t n = series.size();
    if (n < 100) throw InvalidParams("autocorrelation time needs at least 100 values");
    const std::size_t max_window = n / 2;
    const auto rho = acf(series, max_window, options.norm);

    double tau = 0.5;
    for (std::size_t w = 1; w <= max_window; ++w) {
        tau += rho[w];
        if (static_cast<double>(w) >= options.window_factor * tau) {
            return {tau, w};
        }
    }
    throw WindowNotFound("no self-consistent window below N/2 (N = " + std::to_string(n) +
                         "); the chain is too short for its autocorrelation time");
}

ActEstimate act(std::span<const double> series, const ActOptions& options) {
    const auto [tau, window] = act_point(series, options);

    const std::size_t n = series.size();
    const std::size_t blocks = options.jackknife_blocks;
    ActEstimate est{tau, 0.0, window};
    if (blocks < 2 || n / blocks < 1) return est;

    const std::size_t block = n / blocks;
    std::vector<double> replicates;
    replicates.reserve(blocks);
    std::vector<double> reduced;
    reduced.reserve(n);
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t lo = b * block;
        const std::size_t hi = b + 1 == blocks ? n : lo + block;
        reduced.clear();
        reduced.insert(reduced.end(), series.begin(), series.begin() + static_cast<long>(lo));
        reduced.insert(reduced.end(), series.begin() + static_cast<long>(hi), series.end());
        replicates.push_back(act_point(reduced, options).first);
    }
    double mean = 0.0;
    for (double r : replicates) mean += r;
    mean /= static_cast<double>(blocks);
    double ss = 0.0;
    for (double r : replicates) ss += (r - mean) * (r - mean);
    est.tau_err = std::sqrt(ss * static_cast<double>(blocks - 1) / static_cast<double>(blocks));
    return est;
}

std::vector<AcceptanceWindow> acceptance_trace(const std::vector<bool>& accepted,
                                               std::size_t window) {
    std::vector<AcceptanceWindow> trace;
    if (window == 0) return trace;
    for (std::size_t w = 0; (w + 1) * window <= accepted.size(); ++w) {
        std::size_t n = 0;
        for (std::size_t i = w * window; i < (w + 1) * window; ++i) n += accepted[i] ? 1 : 0;
        trace.push_back({w, static_cast<double>(n) / static_cast<double>(window)});
    }
    return trace;
}

bool DiagnosticsReport::all_ok() const noexcept {
    return std::all_of(params.begin(), params.end(), [](const auto& p) { return p.ok(); });
}

DiagnosticsReport summarize(const Chain& chain, const SummaryOptions& options) {
    if (chain.size() == 0) throw InvalidParams("cannot summarise an empty chain");

    DiagnosticsReport report;
    report.length = chain.size();
    report.acceptance = chain.acceptance_rate();
    report.acceptance_trace = acceptance_trace(chain.accepted, options.acceptance_window);

    const auto k = static_cast<double>(chain.size());
    const std::size_t lags = std::min(options.max_acf_lag, chain.size() / 10);
    for (std::size_t i = 0; i < ParamVector::size; ++i) {
        auto& p = report.params[i];
        const auto xs = chain.component(i);
        double variance = 0.0;
        double mean = 0.0;
        for (double v : xs) mean += v;
        mean /= k;
        for (double v : xs) variance += (v - mean) * (v - mean);
        variance /= k;
        p.mean = mean;
        p.sd = std::sqrt(variance);
        try {
            const auto est = act(xs, options.act);
            p.tau = est.tau;
            p.tau_err = est.tau_err;
            p.window = est.window;
            p.two_tau = 2.0 * est.tau;
            p.se = p.sd * std::sqrt(p.two_tau / k);
            p.acf = acf(xs, lags, options.act.norm);
        } catch (const Error& e) {
            p.error = e.code();
            p.error_message = e.what();
        }
    }
    return report;
}

void write_report(std::ostream& out, const DiagnosticsReport& report) {
    using detail::format_double;
    out << "length=" << report.length << '\n';
    out << "acceptance=" << format_double(report.acceptance) << '\n';
    for (std::size_t i = 0; i < ParamVector::size; ++i) {
        const auto& p = report.params[i];
        out << '[' << kParamNames[i] << "]\n";
        out << "mean=" << format_double(p.mean) << '\n';
        out << "sd=" << format_double(p.sd) << '\n';
        if (p.ok()) {
            out << "se=" << format_double(p.se) << '\n';
            out << "tau=" << format_double(p.tau) << '\n';
            out << "tau_err=" << format_double(p.tau_err) << '\n';
            out << "two_tau=" << format_double(p.two_tau) << '\n';
            out << "window=" << p.window << '\n';
        } else {
            out << "error=" << *p.error << '\n';
        }
    }
}

void write_report_files(const std::string& prefix, const DiagnosticsReport& report,
                        std::vector<std::filesystem::path>& written) {
    const std::filesystem::path report_path = prefix + "report.txt";
    {
        auto out = detail::open_for_write(report_path);
        written.push_back(report_path);
        write_report(out, report);
        detail::check_written(out, report_path);
    }
    for (std::size_t i = 0; i < ParamVector::size; ++i) {
        const auto& p = report.params[i];
        if (!p.ok()) continue;
        const std::filesystem::path path = prefix + "acf_" + kParamNames[i] + ".csv";
        auto out = detail::open_for_write(path);
        written.push_back(path);
        out << "lag,acf\n";
        for (std::size_t t = 0; t < p.acf.size(); ++t) {
            out << t << ',' << detail::format_double(p.acf[t]) << '\n';
        }
        detail::check_written(out, path);
    }
    const std::filesystem::path acc_path = prefix + "acceptance.csv";
    auto out = detail::open_for_write(acc_path);
    written.push_back(acc_path);
    out << "window,fraction\n";
    for (const auto& w : report.acceptance_trace) {
        out << w.index << ',' << detail::format_double(w.fraction) << '\n';
    }
    detail::check_written(out, acc_path);
}

}  // namespace gjr
