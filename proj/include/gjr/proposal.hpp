#pragma once

#include "gjr/model.hpp"
#include "gjr/rng.hpp"

#include <Eigen/Core>

#include <cstddef>

namespace gjr {

/// Multivariate Student's t over the 4 parameters with location `mean`,
/// scale matrix `sigma` and `nu` degrees of freedom. Its covariance is
/// nu/(nu-2) * sigma. Immutable once built; the Cholesky factor of sigma is
/// cached and used for both density evaluation and sampling.
class ProposalSpec {
public:
    /// Throws DegenerateCovariance if `sigma` is not SPD and InvalidParams if
    /// nu <= 2. `sigma` is symmetrised before factorisation.
    ProposalSpec(const Eigen::Vector4d& mean, const Eigen::Matrix4d& sigma, double nu);

    [[nodiscard]] const Eigen::Vector4d& mean() const noexcept { return mean_; }
    [[nodiscard]] const Eigen::Matrix4d& sigma() const noexcept { return sigma_; }
    [[nodiscard]] const Eigen::Matrix4d& chol() const noexcept { return chol_; }
    [[nodiscard]] double nu() const noexcept { return nu_; }

    /// 0.5 * log det sigma, from the Cholesky diagonal.
    [[nodiscard]] double half_log_det() const noexcept { return half_log_det_; }

private:
    Eigen::Vector4d mean_;
    Eigen::Matrix4d sigma_;
    Eigen::Matrix4d chol_;
    double nu_;
    double half_log_det_ = 0.0;
    double log_norm_ = 0.0;

    friend double student_t_log_density(const ParamVector&, const ProposalSpec&) noexcept;
};

[[nodiscard]] double student_t_log_density(const ParamVector& theta,
                                           const ProposalSpec& spec) noexcept;

/// M + L z sqrt(nu / w), z ~ N(0, I), w ~ chi2(nu). The draw is a raw
/// candidate and may fall outside the parameter support.
[[nodiscard]] ParamVector student_t_sample(const ProposalSpec& spec, Rng& rng);

/// Streaming mean and centred outer-product sum (Welford).
class MomentAccumulator {
public:
    void add(const Eigen::Vector4d& x) noexcept;
    void add(const ParamVector& theta) noexcept { add(theta.to_vector()); }

    [[nodiscard]] std::size_t count() const noexcept { return count_; }
    [[nodiscard]] const Eigen::Vector4d& mean() const noexcept { return mean_; }
    /// Population covariance, sum / count. Requires count >= 1.
    [[nodiscard]] Eigen::Matrix4d covariance() const;

private:
    std::size_t count_ = 0;
    Eigen::Vector4d mean_ = Eigen::Vector4d::Zero();
    Eigen::Matrix4d m2_ = Eigen::Matrix4d::Zero();
};

/// Returns `acc` with `theta` folded in.
[[nodiscard]] inline MomentAccumulator accumulate(MomentAccumulator acc, const ParamVector& theta) {
    acc.add(theta);
    return acc;
}

/// Moment-matched proposal: mean = accumulated mean, sigma = V (nu-2)/nu where
/// V is the accumulated covariance. On a failed factorisation a diagonal
/// jitter eps*trace(V)/4 is added, eps = 1e-10 .. 1e-6; DegenerateCovariance
/// is thrown when that also fails.
[[nodiscard]] ProposalSpec build_spec(const MomentAccumulator& acc, double nu);

}  // namespace gjr
