#include "bell/cglmp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bell {

namespace {

constexpr double kPi = std::numbers::pi;

void require_d(int d)
{
    if (d < 2) throw std::invalid_argument("cglmp: d must be >= 2");
}

int imod(int v, int d) { return ((v % d) + d) % d; }

}  // namespace

BellExpression zohren_gill(int d)
{
    require_d(d);
    const Scenario s = bipartite_scenario(2, 2, d, d);
    std::vector<long long> v(s.table_size(), 0);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            const int outs[2] = {a, b};
            const int xy00[2] = {0, 0};
            const int xy01[2] = {0, 1};
            const int xy10[2] = {1, 0};
            const int xy11[2] = {1, 1};
            if (a <= b) v[s.index(outs, xy00)] = 1;
            if (a >= b) v[s.index(outs, xy01)] = 1;
            if (a >= b) v[s.index(outs, xy10)] = 1;
            if (a < b) v[s.index(outs, xy11)] = 1;
        }
    return BellExpression::from_integers(s, std::move(v),
                                         "zg-" + std::to_string(d));
}

BellExpression gd_game(int d)
{
    require_d(d);
    const Scenario s = bipartite_scenario(2, 2, d, d);
    std::vector<long long> v(s.table_size(), 0);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) {
                    // a - b = (-1)^{x+y} (Delta + 1) - xy  (mod d)
                    const int sign = ((x + y) % 2 == 0) ? 1 : -1;
                    const int delta = imod(sign * (a - b + x * y) - 1, d);
                    const int outs[2] = {a, b};
                    const int ins[2] = {x, y};
                    v[s.index(outs, ins)] = delta;
                }
    return BellExpression::from_integers(s, std::move(v), "gd-" + std::to_string(d));
}

namespace {

Matrix ket_projector(const Vector& k) { return k * k.adjoint(); }

Vector fourier_ket(int d, double outcome_sign, int outcome, double phase)
{
    Vector v(d);
    for (int k = 0; k < d; ++k)
        v(k) = std::polar(1.0 / std::sqrt(static_cast<double>(d)),
                          outcome_sign * 2.0 * kPi * k * outcome / d + k * phase);
    return v;
}

}  // namespace

std::vector<std::vector<Matrix>> cglmp_alice_projectors(int d)
{
    require_d(d);
    const double phi[2] = {0.0, kPi / d};
    std::vector<std::vector<Matrix>> out(2);
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < d; ++a)
            out[x].push_back(ket_projector(fourier_ket(d, +1.0, a, phi[x])));
    return out;
}

std::vector<std::vector<Matrix>> cglmp_bob_projectors(int d)
{
    require_d(d);
    const double theta[2] = {-kPi / (2.0 * d), kPi / (2.0 * d)};
    std::vector<std::vector<Matrix>> out(2);
    for (int y = 0; y < 2; ++y)
        for (int b = 0; b < d; ++b)
            out[y].push_back(ket_projector(fourier_ket(d, -1.0, b, theta[y])));
    return out;
}

double kernel_f0(int d, int k, int kp)
{
    double sum = 0;
    for (int delta = 0; delta < d; ++delta)
        sum += delta * std::cos(kPi / (2.0 * d) * (k - kp) * (4.0 * delta + 3.0));
    return 2.0 / d * sum;
}

Complex kernel_f1(int d, int k, int kp)
{
    return kernel_f0(d, k, kp) * std::polar(1.0, -kPi * (k - kp) / d);
}

Matrix analytic_effective_operator(int d, int x, int a)
{
    require_d(d);
    if (x < 0 || x > 1 || a < 0 || a >= d)
        throw std::out_of_range("analytic_effective_operator: context out of range");
    Matrix m(d, d);
    for (int k = 0; k < d; ++k)
        for (int kp = 0; kp < d; ++kp) {
            const Complex f = (x == 0) ? Complex(kernel_f0(d, k, kp))
                                       : kernel_f1(d, k, kp);
            m(k, kp) = std::polar(1.0, -2.0 * kPi * a * (k - kp) / d) * f;
        }
    return m;
}

Matrix covariance_unitary_u(int d, int a_to, int a_from)
{
    Matrix u = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k)
        u(k, k) = std::polar(1.0, -2.0 * kPi * (a_to - a_from) * k / d);
    return u;
}

Matrix covariance_unitary_v(int d)
{
    Matrix u = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) u(k, k) = std::polar(1.0, -kPi * k / d);
    return u;
}

Eigen::VectorXd optimal_schmidt_vector(int d)
{
    const Matrix b00 = analytic_effective_operator(d, 0, 0);
    const HermitianEigen eig = hermitian_eig(b00);
    if (d > 1 && eig.values(d - 1) - eig.values(d - 2) < 1e-9)
        throw std::runtime_error("optimal_schmidt_vector: degenerate top eigenvalue");
    Vector top = eig.vectors.col(d - 1);
    // B(0,0) is real symmetric, so the top eigenvector can be made real.
    Eigen::Index lead = 0;
    while (lead < top.size() && std::abs(top(lead)) < 1e-12) ++lead;
    if (lead < top.size()) top *= std::abs(top(lead)) / top(lead);
    Eigen::VectorXd beta(d);
    for (int k = 0; k < d; ++k) {
        if (std::abs(top(k).imag()) > 1e-9)
            throw std::runtime_error("optimal_schmidt_vector: eigenvector not real");
        beta(k) = top(k).real();
    }
    return beta;
}

Realization cglmp_optimal_realization(int d)
{
    require_d(d);
    const Eigen::VectorXd beta = optimal_schmidt_vector(d);
    Realization r;
    r.dims = {d, d};
    r.state = Vector::Zero(d * d);
    for (int k = 0; k < d; ++k) r.state(k * d + k) = beta(k);
    r.projectors = {cglmp_alice_projectors(d), cglmp_bob_projectors(d)};
    return r;
}

OwReport cglmp3_report(double tol)
{
    return ow_report(zohren_gill(3), cglmp_optimal_realization(3),
                     Steering::kAliceToBob, tol);
}

}  // namespace bell
