#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace bell {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

inline Matrix sigma_x() { return (Matrix(2, 2) << 0, 1, 1, 0).finished(); }

inline Matrix sigma_y()
{
    return (Matrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
}

inline Matrix sigma_z() { return (Matrix(2, 2) << 1, 0, 0, -1).finished(); }

/// Projector onto the +1 eigenvector of the Bloch direction
/// cos(phi) sigma_z + sin(phi) sigma_x.
inline Matrix planar_projector(double phi, int outcome)
{
    const double s = outcome == 0 ? 1.0 : -1.0;
    Matrix m(2, 2);
    m << 0.5 * (1.0 + s * std::cos(phi)), 0.5 * s * std::sin(phi),
        0.5 * s * std::sin(phi), 0.5 * (1.0 - s * std::cos(phi));
    return m;
}

template <typename DerivedA, typename DerivedB>
Matrix kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b)
{
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                Complex(a(i, j)) * b;
    return out;
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m)
{
    return m.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = 1e-12)
{
    if (m.rows() != m.cols()) return false;
    return max_abs(m - m.adjoint()) <= tol;
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& m, double tol = 1e-10)
{
    if (m.rows() != m.cols()) return false;
    const Matrix mm = m * m.adjoint();
    return max_abs(mm - Matrix::Identity(m.rows(), m.cols())) <= tol;
}

template <typename Derived>
bool is_projector(const Eigen::MatrixBase<Derived>& m, double tol = 1e-10)
{
    if (!is_hermitian(m, tol)) return false;
    const Matrix mm = m * m;
    return max_abs(mm - m) <= tol;
}

/// Trace out the subsystems with keep[i] == false. `dims` are the local
/// dimensions in tensor order; `rho` acts on the full product space.
Matrix partial_trace(const Matrix& rho, const std::vector<int>& dims,
                     const std::vector<bool>& keep);

struct HermitianEigen {
    Eigen::VectorXd values;  // ascending
    Matrix vectors;          // column k pairs with values[k]
    double max() const { return values(values.size() - 1); }
    double min() const { return values(0); }
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix. Deterministic sweep
/// order, so repeated runs give bit-identical output. Throws
/// std::invalid_argument if the input fails the Hermiticity check.
HermitianEigen hermitian_eig(const Matrix& m, double hermiticity_tol = 1e-12);

}  // namespace bell
