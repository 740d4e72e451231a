#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bell/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <random>

using namespace bell;

namespace {

Matrix random_hermitian(int n, std::mt19937_64& rng)
{
    std::normal_distribution<double> gauss;
    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    return 0.5 * (g + Matrix(g.adjoint()));
}

}  // namespace

TEST_CASE("pauli spectra")
{
    const HermitianEigen ez = hermitian_eig(sigma_z());
    CHECK(ez.values(0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(ez.values(1) == doctest::Approx(1.0).epsilon(1e-14));

    // I + sigma_z / sqrt(2): the first effective operator of the XOR game.
    const Matrix m = identity(2) + sigma_z() / std::sqrt(2.0);
    const HermitianEigen e = hermitian_eig(m);
    CHECK(e.max() == doctest::Approx(1.0 + 1.0 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("jacobi matches the Eigen solver on random hermitian matrices")
{
    std::mt19937_64 rng(7);
    for (int n : {2, 3, 5, 8, 16}) {
        for (int rep = 0; rep < 5; ++rep) {
            const Matrix m = random_hermitian(n, rng);
            const HermitianEigen mine = hermitian_eig(m);

            Eigen::SelfAdjointEigenSolver<Matrix> ref(m);
            for (int k = 0; k < n; ++k)
                CHECK(mine.values(k) ==
                      doctest::Approx(ref.eigenvalues()(k)).epsilon(1e-11));

            // residual and reconstruction
            for (int k = 0; k < n; ++k) {
                const Vector v = mine.vectors.col(k);
                CHECK((m * v - mine.values(k) * v).norm() <= 1e-10);
            }
            Matrix recon = Matrix::Zero(n, n);
            for (int k = 0; k < n; ++k)
                recon += mine.values(k) * mine.vectors.col(k) *
                         mine.vectors.col(k).adjoint();
            CHECK(max_abs(Matrix(recon - m)) <= 1e-9);

            const Matrix gram = mine.vectors.adjoint() * mine.vectors;
            CHECK(max_abs(Matrix(gram - identity(n))) <= 1e-10);
        }
    }
}

TEST_CASE("non-hermitian input is rejected")
{
    Matrix m(2, 2);
    m << 1, 2, 3, 4;
    CHECK_THROWS_AS(hermitian_eig(m), std::invalid_argument);
}

TEST_CASE("predicates")
{
    CHECK(is_hermitian(sigma_y()));
    CHECK(is_unitary(sigma_y()));
    CHECK(!is_projector(sigma_y()));
    CHECK(is_projector(planar_projector(0.3, 0)));
    const Matrix sum = planar_projector(0.3, 0) + planar_projector(0.3, 1);
    CHECK(max_abs(Matrix(sum - identity(2))) <= 1e-14);
}

TEST_CASE("kron and partial trace")
{
    std::mt19937_64 rng(3);
    const Matrix a = random_hermitian(2, rng);
    const Matrix b = random_hermitian(3, rng);
    const Matrix ab = kron(a, b);
    CHECK(ab.rows() == 6);

    // Tr_B[a (x) b] = a * tr(b)
    const Matrix ta = partial_trace(ab, {2, 3}, {true, false});
    CHECK(max_abs(Matrix(ta - a * b.trace())) <= 1e-12);
    const Matrix tb = partial_trace(ab, {2, 3}, {false, true});
    CHECK(max_abs(Matrix(tb - b * a.trace())) <= 1e-12);

    // three factors, keep the middle one
    const Matrix c = random_hermitian(2, rng);
    const Matrix abc = kron(kron(a, b), c);
    const Matrix tm = partial_trace(abc, {2, 3, 2}, {false, true, false});
    CHECK(max_abs(Matrix(tm - b * (a.trace() * c.trace()))) <= 1e-12);
}
