#include "gjr/proposal.hpp"

#include "gjr/errors.hpp"

#include <Eigen/Cholesky>

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>

namespace gjr {

namespace {

constexpr double kDim = static_cast<double>(ParamVector::size);
constexpr double kPivotTolerance = 1e-12;

std::optional<Eigen::Matrix4d> try_cholesky(const Eigen::Matrix4d& m) {
    Eigen::LLT<Eigen::Matrix4d> llt(m);
    if (llt.info() != Eigen::Success) return std::nullopt;
    Eigen::Matrix4d l = llt.matrixL();
    // Pivots this small relative to the largest variance mean the matrix is
    // numerically rank deficient even if LLT reported success.
    const double floor = kPivotTolerance * m.diagonal().maxCoeff();
    for (int i = 0; i < 4; ++i) {
        const double d = l(i, i);
        if (!std::isfinite(d) || !(d * d > floor)) return std::nullopt;
    }
    return l;
}

}  // namespace

ProposalSpec::ProposalSpec(const Eigen::Vector4d& mean, const Eigen::Matrix4d& sigma, double nu)
    : mean_(mean), sigma_(0.5 * (sigma + sigma.transpose())), nu_(nu) {
    if (!(nu > 2.0) || !std::isfinite(nu)) {
        throw InvalidParams("proposal degrees of freedom must exceed 2");
    }
    if (!mean_.allFinite() || !sigma_.allFinite()) {
        throw DegenerateCovariance("proposal location or scale is not finite");
    }
    auto l = try_cholesky(sigma_);
    if (!l) {
        throw DegenerateCovariance("proposal scale matrix is not positive definite");
    }
    chol_ = *l;
    half_log_det_ = chol_.diagonal().array().log().sum();
    log_norm_ = std::lgamma(0.5 * (nu_ + kDim)) - std::lgamma(0.5 * nu_) - half_log_det_ -
                0.5 * kDim * std::log(nu_ * std::numbers::pi);
}

double student_t_log_density(const ParamVector& theta, const ProposalSpec& spec) noexcept {
    const Eigen::Vector4d diff = theta.to_vector() - spec.mean_;
    const Eigen::Vector4d z =
        spec.chol_.triangularView<Eigen::Lower>().solve(diff);
    const double q = z.squaredNorm();
    return spec.log_norm_ - 0.5 * (spec.nu_ + kDim) * std::log1p(q / spec.nu_);
}

ParamVector student_t_sample(const ProposalSpec& spec, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::chi_squared_distribution<double> chi2(spec.nu());
    Eigen::Vector4d z;
    for (int i = 0; i < 4; ++i) z[i] = normal(rng);
    const double w = chi2(rng);
    const Eigen::Vector4d x = spec.mean() + spec.chol() * z * std::sqrt(spec.nu() / w);
    return ParamVector::from_vector(x);
}

void MomentAccumulator::add(const Eigen::Vector4d& x) noexcept {
    ++count_;
    const Eigen::Vector4d delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    const Eigen::Vector4d delta2 = x - mean_;
    m2_ += delta * delta2.transpose();
}

Eigen::Matrix4d MomentAccumulator::covariance() const {
    if (count_ == 0) {
        throw DegenerateCovariance("covariance of an empty accumulator");
    }
    const Eigen::Matrix4d c = m2_ / static_cast<double>(count_);
    return 0.5 * (c + c.transpose());
}

ProposalSpec build_spec(const MomentAccumulator& acc, double nu) {
    if (acc.count() < 2) {
        throw DegenerateCovariance("need at least two accumulated draws to build a proposal");
    }
    if (!(nu > 2.0)) {
        throw InvalidParams("proposal degrees of freedom must exceed 2");
    }
    const Eigen::Matrix4d v = acc.covariance();
    const Eigen::Matrix4d sigma = v * ((nu - 2.0) / nu);
    if (try_cholesky(sigma)) {
        return ProposalSpec(acc.mean(), sigma, nu);
    }
    const double scale = v.trace() / kDim;
    for (double eps : std::array{1e-10, 1e-9, 1e-8, 1e-7, 1e-6}) {
        Eigen::Matrix4d jittered = sigma;
        jittered.diagonal().array() += eps * scale;
        if (try_cholesky(jittered)) {
            return ProposalSpec(acc.mean(), jittered, nu);
        }
    }
    throw DegenerateCovariance(
        "accumulated covariance is singular even after jitter; the chain has collapsed");
}

}  // namespace gjr
