#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/SpecialFunctions>

#include <cmath>
#include <optional>
#include <span>

namespace egs::stats {

/// Maximum likelihood covariance (divides by the row count).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
covariance_mle(const Eigen::MatrixBase<Derived>& x) {
    using Scalar = typename Derived::Scalar;
    const auto centered = (x.rowwise() - x.colwise().mean()).eval();
    return (centered.adjoint() * centered) / static_cast<Scalar>(x.rows());
}

/// Zero-variance columns get zero correlation with everything else.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
correlation_from_covariance(const Eigen::MatrixBase<Derived>& cov) {
    using Scalar = typename Derived::Scalar;
    const Eigen::Index n = cov.rows();
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> inv_sd(n);
    for (Eigen::Index i = 0; i < n; ++i)
        inv_sd(i) = cov(i, i) > Scalar(0) ? Scalar(1) / std::sqrt(cov(i, i)) : Scalar(0);
    return inv_sd.asDiagonal() * cov * inv_sd.asDiagonal();
}

/// Partial correlation of (x, y) given `given`, read off the inverse of the
/// correlation submatrix over {x, y} + given. std::nullopt when that
/// submatrix is singular at the given pivot tolerance.
template <typename Derived>
std::optional<typename Derived::Scalar> partial_correlation(const Eigen::MatrixBase<Derived>& corr,
                                                            int x, int y, std::span<const int> given,
                                                            double pivot_tolerance = 1e-12) {
    using Scalar = typename Derived::Scalar;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (given.empty()) return corr(x, y);
    const Eigen::Index k = static_cast<Eigen::Index>(given.size()) + 2;
    std::vector<int> idx{x, y};
    idx.insert(idx.end(), given.begin(), given.end());
    Matrix sub(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = corr(idx[i], idx[j]);
    Eigen::FullPivLU<Matrix> lu(sub);
    lu.setThreshold(pivot_tolerance);
    if (!lu.isInvertible()) return std::nullopt;
    const Matrix precision = lu.inverse();
    const Scalar denom = precision(0, 0) * precision(1, 1);
    if (!(denom > Scalar(0))) return std::nullopt;
    return -precision(0, 1) / std::sqrt(denom);
}

/// P(|Z| >= |z|) for standard normal Z.
inline double normal_two_sided_p(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

/// Upper tail of the chi-square distribution.
inline double chi_square_sf(double statistic, double df) {
    if (statistic <= 0.0) return 1.0;
    return Eigen::numext::igammac(df / 2.0, statistic / 2.0);
}

}  // namespace egs::stats
