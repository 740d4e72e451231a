#include "bell/seesaw.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <random>
#include <stdexcept>

namespace bell {

namespace {

Matrix reshape_state(const Vector& psi, int dim_a, int dim_b)
{
    Matrix m(dim_a, dim_b);
    for (int i = 0; i < dim_a; ++i)
        for (int j = 0; j < dim_b; ++j) m(i, j) = psi(i * dim_b + j);
    return m;
}

Vector flatten_state(const Matrix& m)
{
    Vector psi(m.rows() * m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) psi(i * m.cols() + j) = m(i, j);
    return psi;
}

Matrix haar_unitary(int dim, std::mt19937_64& rng)
{
    std::normal_distribution<double> gauss;
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

std::vector<Matrix> basis_to_projectors(const Matrix& basis)
{
    std::vector<Matrix> out;
    for (Eigen::Index a = 0; a < basis.cols(); ++a)
        out.push_back(basis.col(a) * basis.col(a).adjoint());
    return out;
}

// Maximize sum_a <v_a|M_a|v_a> over orthonormal bases by pairwise 2x2
// rotations; each pass is exact on its pair, so the objective never drops.
void optimize_basis(Matrix& basis, const std::vector<Matrix>& weights)
{
    const int n = static_cast<int>(basis.cols());
    for (int sweep = 0; sweep < 12; ++sweep) {
        double moved = 0;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                Matrix p(basis.rows(), 2);
                p.col(0) = basis.col(a);
                p.col(1) = basis.col(b);
                const Matrix t = p.adjoint() * (weights[a] - weights[b]) * p;
                const HermitianEigen eig = hermitian_eig(t, 1e-9);
                const Vector u = eig.vectors.col(1);  // top of the 2x2
                Vector uperp(2);
                uperp(0) = -std::conj(u(1));
                uperp(1) = std::conj(u(0));
                const Vector va = p * u;
                const Vector vb = p * uperp;
                moved += (va - basis.col(a)).norm();
                basis.col(a) = va;
                basis.col(b) = vb;
            }
        if (moved < 1e-14) break;
    }
}

struct Side {
    Matrix psi_matrix;  // dA x dB reshape of the state
};

}  // namespace

SeesawResult seesaw_maximize(const BellExpression& expr, int dim_a, int dim_b,
                             const SeesawOptions& opt)
{
    const Scenario& s = expr.scenario();
    if (!s.is_bipartite())
        throw std::invalid_argument("seesaw_maximize: bipartite expressions only");
    if (dim_a != s.outputs(0) || dim_b != s.outputs(1))
        throw std::invalid_argument(
            "seesaw_maximize: rank-one parametrization needs dim == outcome count");
    if (dim_a > 8 || dim_b > 8)
        throw std::invalid_argument("seesaw_maximize: dims above 8 unsupported");

    const int ma = s.inputs(0), mb = s.inputs(1);
    const int na = s.outputs(0), nb = s.outputs(1);

    SeesawResult best;
    best.value = -std::numeric_limits<double>::infinity();

    for (int restart = 0; restart < opt.restarts; ++restart) {
        std::mt19937_64 rng(opt.seed * 0x9e3779b97f4a7c15ULL + restart);

        std::vector<Matrix> alice(ma), bob(mb);
        for (int x = 0; x < ma; ++x) alice[x] = haar_unitary(dim_a, rng);
        for (int y = 0; y < mb; ++y) bob[y] = haar_unitary(dim_b, rng);

        std::normal_distribution<double> gauss;
        Vector psi(dim_a * dim_b);
        for (Eigen::Index i = 0; i < psi.size(); ++i)
            psi(i) = Complex(gauss(rng), gauss(rng));
        psi.normalize();

        double value = -std::numeric_limits<double>::infinity();
        int iter = 0;
        for (; iter < opt.max_iterations; ++iter) {
            const Matrix mpsi = reshape_state(psi, dim_a, dim_b);

            // Alice step: per input, rotate her basis against the partial
            // contraction of the Bob-side operators.
            for (int x = 0; x < ma; ++x) {
                std::vector<Matrix> weights(na);
                for (int a = 0; a < na; ++a) {
                    Matrix bop = Matrix::Zero(dim_b, dim_b);
                    for (int y = 0; y < mb; ++y)
                        for (int b = 0; b < nb; ++b) {
                            const int outs[2] = {a, b};
                            const int ins[2] = {x, y};
                            bop += expr.coeff(outs, ins) *
                                   (bob[y].col(b) * bob[y].col(b).adjoint());
                        }
                    weights[a] = mpsi * bop.transpose() * mpsi.adjoint();
                }
                optimize_basis(alice[x], weights);
            }

            // Bob step, symmetric.
            for (int y = 0; y < mb; ++y) {
                std::vector<Matrix> weights(nb);
                for (int b = 0; b < nb; ++b) {
                    Matrix aop = Matrix::Zero(dim_a, dim_a);
                    for (int x = 0; x < ma; ++x)
                        for (int a = 0; a < na; ++a) {
                            const int outs[2] = {a, b};
                            const int ins[2] = {x, y};
                            aop += expr.coeff(outs, ins) *
                                   (alice[x].col(a) * alice[x].col(a).adjoint());
                        }
                    weights[b] = mpsi.transpose() * aop.transpose() * mpsi.conjugate();
                }
                optimize_basis(bob[y], weights);
            }

            // State step: top eigenvector of the Bell operator.
            Matrix bell_op = Matrix::Zero(dim_a * dim_b, dim_a * dim_b);
            for (int x = 0; x < ma; ++x)
                for (int y = 0; y < mb; ++y)
                    for (int a = 0; a < na; ++a)
                        for (int b = 0; b < nb; ++b) {
                            const int outs[2] = {a, b};
                            const int ins[2] = {x, y};
                            const double v = expr.coeff(outs, ins);
                            if (v != 0.0)
                                bell_op += v * kron(alice[x].col(a) * alice[x].col(a).adjoint(),
                                                    bob[y].col(b) * bob[y].col(b).adjoint());
                        }
            const HermitianEigen eig = hermitian_eig(bell_op);
            psi = eig.vectors.col(eig.values.size() - 1);
            const double new_value = eig.max();

            const double scale = std::max(1.0, std::abs(new_value));
            if (new_value < value - 1e-9 * scale)
                throw std::logic_error("seesaw_maximize: objective decreased");
            if (new_value - value < opt.stagnation * scale) {
                value = new_value;
                break;
            }
            value = new_value;
        }

        best.restart_values.push_back(value);
        if (value > best.value + 1e-12) {
            best.value = value;
            best.best_restart = restart;
            best.iterations = iter;
            Realization r;
            r.dims = {dim_a, dim_b};
            r.state = psi;
            r.projectors.resize(2);
            r.projectors[0].resize(ma);
            r.projectors[1].resize(mb);
            for (int x = 0; x < ma; ++x) r.projectors[0][x] = basis_to_projectors(alice[x]);
            for (int y = 0; y < mb; ++y) r.projectors[1][y] = basis_to_projectors(bob[y]);
            best.realization = std::move(r);
        }
    }

    best.realization = canonicalize(best.realization);
    return best;
}

Realization canonicalize(const Realization& r)
{
    if (r.dims.size() != 2) return r;
    const int da = r.dims[0], db = r.dims[1];
    Matrix m = reshape_state(r.state, da, db);

    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Matrix u = svd.matrixU();
    Matrix v = svd.matrixV();

    // Fix the joint column phases so the leading component of each Schmidt
    // vector on the A side is real positive.
    for (Eigen::Index k = 0; k < u.cols(); ++k) {
        Eigen::Index lead = 0;
        double mag = 0;
        for (Eigen::Index i = 0; i < u.rows(); ++i)
            if (std::abs(u(i, k)) > mag + 1e-12) {
                mag = std::abs(u(i, k));
                lead = i;
            }
        if (mag > 1e-12) {
            const Complex phase = u(lead, k) / mag;
            u.col(k) /= phase;
            if (k < v.cols()) v.col(k) /= phase;
        }
    }

    Realization out;
    out.dims = r.dims;
    Matrix diag = Matrix::Zero(da, db);
    const auto& sv = svd.singularValues();
    for (Eigen::Index k = 0; k < sv.size(); ++k) diag(k, k) = sv(k);
    out.state = flatten_state(diag);

    out.projectors.resize(2);
    out.projectors[0].reserve(r.projectors[0].size());
    for (const auto& input : r.projectors[0]) {
        std::vector<Matrix> rotated;
        for (const Matrix& proj : input) rotated.push_back(u.adjoint() * proj * u);
        out.projectors[0].push_back(std::move(rotated));
    }
    out.projectors[1].reserve(r.projectors[1].size());
    for (const auto& input : r.projectors[1]) {
        std::vector<Matrix> rotated;
        // B-side Schmidt vectors are the conjugated right singular vectors.
        for (const Matrix& proj : input)
            rotated.push_back(v.transpose() * proj * v.conjugate());
        out.projectors[1].push_back(std::move(rotated));
    }
    return out;
}

}  // namespace bell
