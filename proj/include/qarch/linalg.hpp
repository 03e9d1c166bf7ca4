#pragma once

// Dense complex factorizations used by the unitary projection step and by
// the gate compiler. Everything here is a pure function of its inputs.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qarch {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
          residual(residual) {}
    double residual;
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename Derived>
using ComplexMatrixOf = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Two factors whose product (in the factorization's own sense) rebuilds the input.
template <typename MatrixType = ComplexMatrix>
struct FactorPair {
    MatrixType first;
    MatrixType second;
};

template <typename MatrixType = ComplexMatrix, typename RealVectorType = RealVector>
struct SvdResult {
    MatrixType w;
    RealVectorType sigma;
    MatrixType v;
};

template <typename MatrixType = ComplexMatrix, typename RealVectorType = RealVector>
struct UnitaryEigen {
    MatrixType vectors;
    RealVectorType phases;
};

namespace detail {

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* who) {
    if (m.rows() != m.cols()) {
        throw DimensionError(std::string(who) + ": matrix must be square, got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

template <typename Real>
Real principal_angle(Real a) {
    constexpr Real pi = std::numbers::pi_v<Real>;
    a = std::remainder(a, 2 * pi);
    if (a <= -pi) a += 2 * pi;
    return a;
}

}  // namespace detail

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
    return m.allFinite();
}

template <typename Derived>
typename Derived::RealScalar unitarity_residual(const Eigen::MatrixBase<Derived>& m) {
    const auto n = m.rows();
    return (m.adjoint() * m - ComplexMatrixOf<Derived>::Identity(n, n)).norm();
}

/// Householder QR with diag(R) real and non-negative, which makes Q unique
/// for full-rank input.
template <typename Derived>
FactorPair<ComplexMatrixOf<Derived>> qr_decompose(const Eigen::MatrixBase<Derived>& m) {
    using Matrix = ComplexMatrixOf<Derived>;
    using Scalar = typename Derived::Scalar;
    detail::require_square(m, "qr_decompose");
    const auto n = m.rows();
    Eigen::HouseholderQR<Matrix> qr(m.eval());
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    Matrix r = qr.matrixQR().template triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto mag = std::abs(r(j, j));
        const Scalar phase = mag > 0 ? r(j, j) / mag : Scalar(1);
        q.col(j) *= phase;
        r.row(j) *= std::conj(phase);
        r(j, j) = Scalar(mag);
    }
    return {std::move(q), std::move(r)};
}

/// Complex Schur form m = Q T Q^H. Returns {Q, T}.
template <typename Derived>
FactorPair<ComplexMatrixOf<Derived>> schur_decompose(const Eigen::MatrixBase<Derived>& m) {
    using Matrix = ComplexMatrixOf<Derived>;
    detail::require_square(m, "schur_decompose");
    const auto n = m.rows();
    Eigen::ComplexSchur<Matrix> schur(n);
    schur.setMaxIterations(100 * std::max<Eigen::Index>(n, 1));
    schur.compute(m.eval(), true);
    if (schur.info() != Eigen::Success) {
        const Matrix& q = schur.matrixU();
        const Matrix& t = schur.matrixT();
        throw ConvergenceError("schur_decompose: QR iteration did not converge",
                               static_cast<double>((q * t * q.adjoint() - m).norm()));
    }
    return {schur.matrixU(), schur.matrixT()};
}

/// m = W diag(sigma) V^H with sigma descending.
template <typename Derived>
SvdResult<ComplexMatrixOf<Derived>,
          Eigen::Matrix<typename Derived::RealScalar, Eigen::Dynamic, 1>>
svd(const Eigen::MatrixBase<Derived>& m) {
    using Matrix = ComplexMatrixOf<Derived>;
    Eigen::JacobiSVD<Matrix> jacobi(m.eval(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (jacobi.info() != Eigen::Success) {
        throw ConvergenceError("svd: Jacobi sweeps did not converge", 0.0);
    }
    return {jacobi.matrixU(), jacobi.singularValues(), jacobi.matrixV()};
}

/// Polar form m = U P, U the Frobenius-nearest unitary and P = V Sigma V^H.
template <typename Derived>
FactorPair<ComplexMatrixOf<Derived>> polar_decompose(const Eigen::MatrixBase<Derived>& m) {
    using Real = typename Derived::RealScalar;
    detail::require_square(m, "polar_decompose");
    auto [w, sigma, v] = svd(m);
    const Real largest = sigma.size() ? sigma(0) : Real(0);
    const Real smallest = sigma.size() ? sigma(sigma.size() - 1) : Real(0);
    if (!(largest > 0) || !(smallest > Real(1e-12) * largest)) {
        throw SingularityError("polar_decompose: matrix is rank deficient, unitary factor not unique");
    }
    return {w * v.adjoint(), v * sigma.asDiagonal() * v.adjoint()};
}

/// Eigendecomposition of a unitary matrix via its Schur form. Phases lie in (-pi, pi].
template <typename Derived>
UnitaryEigen<ComplexMatrixOf<Derived>,
             Eigen::Matrix<typename Derived::RealScalar, Eigen::Dynamic, 1>>
eig_unitary(const Eigen::MatrixBase<Derived>& u) {
    using Real = typename Derived::RealScalar;
    detail::require_square(u, "eig_unitary");
    const Real residual = unitarity_residual(u);
    if (!(residual <= Real(1e-8))) {
        throw PreconditionError("eig_unitary: input is not unitary (residual " +
                                std::to_string(static_cast<double>(residual)) + ")");
    }
    auto [q, t] = schur_decompose(u);
    Eigen::Matrix<Real, Eigen::Dynamic, 1> phases(u.rows());
    for (Eigen::Index j = 0; j < u.rows(); ++j) {
        phases(j) = detail::principal_angle(std::arg(t(j, j)));
    }
    return {std::move(q), std::move(phases)};
}

/// min over phi of ||a - e^{i phi} b||_F.
template <typename DerivedA, typename DerivedB>
typename DerivedA::RealScalar dist_up_to_global_phase(const Eigen::MatrixBase<DerivedA>& a,
                                                      const Eigen::MatrixBase<DerivedB>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("dist_up_to_global_phase: dimension mismatch");
    }
    // The optimal phase aligns tr(a^H b) with the real axis. Evaluating the
    // norm at that phase avoids the cancellation of the expanded closed form.
    const auto overlap = a.conjugate().cwiseProduct(b).sum();
    const auto phase = std::abs(overlap) > 0 ? std::conj(overlap) / std::abs(overlap) : decltype(overlap)(1);
    return (a - phase * b).norm();
}

}  // namespace qarch
