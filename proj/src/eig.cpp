#include "bell/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bell {

Matrix partial_trace(const Matrix& rho, const std::vector<int>& dims,
                     const std::vector<bool>& keep)
{
    if (dims.size() != keep.size())
        throw std::invalid_argument("partial_trace: dims/keep size mismatch");
    Eigen::Index total = 1;
    for (int d : dims) total *= d;
    if (rho.rows() != total || rho.cols() != total)
        throw std::invalid_argument("partial_trace: dimension mismatch");

    const int n = static_cast<int>(dims.size());
    Eigen::Index kept = 1, traced = 1;
    for (int i = 0; i < n; ++i) (keep[i] ? kept : traced) *= dims[i];

    // Row index of the full space from (kept multi-index, traced multi-index).
    auto full_index = [&](Eigen::Index k, Eigen::Index t) {
        Eigen::Index idx = 0;
        Eigen::Index kk = k, tt = t;
        // Recover digits from the least significant subsystem upwards.
        std::vector<int> digit(n);
        for (int i = n - 1; i >= 0; --i) {
            if (keep[i]) {
                digit[i] = static_cast<int>(kk % dims[i]);
                kk /= dims[i];
            } else {
                digit[i] = static_cast<int>(tt % dims[i]);
                tt /= dims[i];
            }
        }
        for (int i = 0; i < n; ++i) idx = idx * dims[i] + digit[i];
        return idx;
    };

    Matrix out = Matrix::Zero(kept, kept);
    for (Eigen::Index r = 0; r < kept; ++r)
        for (Eigen::Index c = 0; c < kept; ++c) {
            Complex sum = 0;
            for (Eigen::Index t = 0; t < traced; ++t)
                sum += rho(full_index(r, t), full_index(c, t));
            out(r, c) = sum;
        }
    return out;
}

namespace {

double off_diagonal_norm(const Matrix& a)
{
    double s = 0;
    for (Eigen::Index p = 0; p < a.rows(); ++p)
        for (Eigen::Index q = 0; q < a.cols(); ++q)
            if (p != q) s += std::norm(a(p, q));
    return std::sqrt(s);
}

}  // namespace

HermitianEigen hermitian_eig(const Matrix& m, double hermiticity_tol)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("hermitian_eig: matrix is not square");
    if (!is_hermitian(m, hermiticity_tol))
        throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");

    const Eigen::Index n = m.rows();
    Matrix a = 0.5 * (m + Matrix(m.adjoint()));  // symmetrize roundoff
    Matrix v = Matrix::Identity(n, n);

    const double scale = std::max(1.0, a.norm());
    const double target = 1e-12 * scale;
    const int max_sweeps = 100;

    for (int sweep = 0; sweep < max_sweeps && off_diagonal_norm(a) > target; ++sweep) {
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300) continue;
                const double app = std::real(a(p, p));
                const double aqq = std::real(a(q, q));
                const Complex phase = apq / r;  // e^{i arg(apq)}
                const double tau = (app - aqq) / (2.0 * r);
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Columns: [p q] <- [p q] * [[c, -s*phase], [s*conj(phase), c]]
                for (Eigen::Index i = 0; i < n; ++i) {
                    const Complex aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip + s * std::conj(phase) * aiq;
                    a(i, q) = -s * phase * aip + c * aiq;
                }
                for (Eigen::Index j = 0; j < n; ++j) {
                    const Complex apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj + s * phase * aqj;
                    a(q, j) = -s * std::conj(phase) * apj + c * aqj;
                }
                for (Eigen::Index i = 0; i < n; ++i) {
                    const Complex vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip + s * std::conj(phase) * viq;
                    v(i, q) = -s * phase * vip + c * viq;
                }
                a(p, q) = 0;
                a(q, p) = 0;
            }
        }
    }

    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        return std::real(a(i, i)) < std::real(a(j, j));
    });

    HermitianEigen out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values(k) = std::real(a(order[k], order[k]));
        out.vectors.col(k) = v.col(order[k]);
    }
    return out;
}

}  // namespace bell
