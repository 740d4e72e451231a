#include "bell/families.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bell {

namespace {

constexpr double kPi = std::numbers::pi;

// Tables in the visual block layout: rows (x,a), columns (y,b).
BellExpression make_2222_int(const std::array<long long, 16>& rows, std::string label)
{
    const Scenario s = bipartite_scenario(2, 2, 2, 2);
    std::vector<long long> v(16, 0);
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a)
            for (int y = 0; y < 2; ++y)
                for (int b = 0; b < 2; ++b) {
                    const int outs[2] = {a, b};
                    const int ins[2] = {x, y};
                    v[s.index(outs, ins)] = rows[4 * (2 * x + a) + (2 * y + b)];
                }
    return BellExpression::from_integers(s, std::move(v), std::move(label));
}

BellExpression make_2222(const std::array<double, 16>& rows, std::string label)
{
    const Scenario s = bipartite_scenario(2, 2, 2, 2);
    Eigen::ArrayXd v(16);
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a)
            for (int y = 0; y < 2; ++y)
                for (int b = 0; b < 2; ++b) {
                    const int outs[2] = {a, b};
                    const int ins[2] = {x, y};
                    v(static_cast<Eigen::Index>(s.index(outs, ins))) =
                        rows[4 * (2 * x + a) + (2 * y + b)];
                }
    return BellExpression(s, std::move(v), std::move(label));
}

Realization two_qubit_planar(const Vector& state, double a0, double a1, double b0,
                             double b1)
{
    Realization r;
    r.dims = {2, 2};
    r.state = state;
    r.projectors = {
        {{planar_projector(a0, 0), planar_projector(a0, 1)},
         {planar_projector(a1, 0), planar_projector(a1, 1)}},
        {{planar_projector(b0, 0), planar_projector(b0, 1)},
         {planar_projector(b1, 0), planar_projector(b1, 1)}},
    };
    return r;
}

Vector phi_plus()
{
    Vector psi(4);
    psi << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
    return psi;
}

}  // namespace

BellExpression chsh_xor()
{
    return make_2222_int({1, 0, 1, 0,   //
                          0, 1, 0, 1,   //
                          1, 0, 0, 1,   //
                          0, 1, 1, 0},
                         "chsh-xor");
}

BellExpression cglmp2_zg()
{
    return make_2222_int({1, 1, 1, 0,   //
                          0, 1, 1, 1,   //
                          1, 0, 0, 1,   //
                          1, 1, 0, 0},
                         "cglmp2-zg");
}

Realization canonical_chsh_realization()
{
    return two_qubit_planar(phi_plus(), 0.0, kPi / 2, kPi / 4, -kPi / 4);
}

namespace {

BellExpression counterexample_base(Counterexample which)
{
    if (which == Counterexample::kC1)
        return make_2222_int({1, 0, 0, 0,   //
                              0, 0, 1, 0,   //
                              0, 1, 0, 1,   //
                              1, 0, 0, 0},
                             "c1-base");
    return make_2222_int({1, 0, 0, 1,   //
                          0, 1, 1, 0,   //
                          0, 1, 0, 1,   //
                          1, 0, 0, 0},
                         "c2-base");
}

BellExpression counterexample_addition(Counterexample which, double g)
{
    if (which == Counterexample::kC1)
        return make_2222({g, 1, g, 1,                   //
                          g, 1, g, 1,                   //
                          0, g - 1, 0, g - 1,           //
                          0, g - 1, 0, g - 1},
                         "c1-addition");
    return make_2222({0, g, -g, 0,   //
                      0, g, -g, 0,   //
                      g, 0, 0, -g,   //
                      g, 0, 0, -g},
                     "c2-addition");
}

}  // namespace

BellExpression counterexample_game(Counterexample which, double gamma)
{
    BellExpression e = counterexample_base(which) + counterexample_addition(which, gamma);
    e.set_label((which == Counterexample::kC1 ? std::string("c1(") : std::string("c2(")) +
                std::to_string(gamma) + ")");
    return e;
}

GammaFamily counterexample_family(Counterexample which)
{
    GammaFamily f{counterexample_game(which, 0.0),
                  counterexample_addition(which, 1.0) - counterexample_addition(which, 0.0),
                  0.0, 1.0};
    f.direction.set_label(which == Counterexample::kC1 ? "c1-direction" : "c2-direction");
    return f;
}

BoundaryPoint3Param::BoundaryPoint3Param(double a00_, double a01_, double a10_,
                                         double a11_)
    : a00(a00_), a01(a01_), a10(a10_), a11(a11_)
{
    for (double a : {a00, a01, a10, a11})
        if (!(a > 0.0 && a < kPi))
            throw std::invalid_argument("BoundaryPoint3Param: angle outside (0, pi)");
    if (boundary_residual() > 1e-10)
        throw std::invalid_argument("BoundaryPoint3Param: not on the correlation boundary");
}

double BoundaryPoint3Param::boundary_residual() const
{
    const double lhs = std::asin(std::cos(a00)) + std::asin(std::cos(a01)) +
                       std::asin(std::cos(a10)) - std::asin(std::cos(a11));
    return std::abs(lhs - kPi);
}

Realization BoundaryPoint3Param::realization() const
{
    return two_qubit_planar(phi_plus(), 0.0, -a00 - a10, -a00, a01);
}

BellExpression weighted_xor_game(const BoundaryPoint3Param& p)
{
    const double w00 = 1.0 / std::sin(p.a00);
    const double w01 = 1.0 / std::sin(p.a01);
    const double w10 = 1.0 / std::sin(p.a10);
    const double w11 = -1.0 / std::sin(p.a11);
    return make_2222({w00, 0, w01, 0,   //
                      0, w00, 0, w01,   //
                      w10, 0, w11, 0,   //
                      0, w10, 0, w11},
                     "three-param-xor");
}

BoundaryPoint3Param boundary_sample(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> angle(0.0, kPi);
    while (true) {
        const double a00 = angle(rng);
        const double a01 = angle(rng);
        const double a10 = angle(rng);
        const double sum = a00 + a01 + a10;
        if (sum >= kPi) continue;
        if (a00 < 1e-6 || a01 < 1e-6 || a10 < 1e-6) continue;
        return BoundaryPoint3Param(a00, a01, a10, sum);
    }
}

TiltedPoint::TiltedPoint(double theta_) : theta(theta_)
{
    if (!(theta > 0.0 && theta <= kPi / 4 + 1e-12))
        throw std::invalid_argument("TiltedPoint: theta outside (0, pi/4]");
    const double s2 = std::sin(2 * theta);
    const double c2 = std::cos(2 * theta);
    alpha = 2.0 * c2 / std::sqrt(1.0 + s2 * s2);
    mu = std::atan(s2);
}

Realization TiltedPoint::realization() const
{
    Vector psi(4);
    psi << std::cos(theta), 0, 0, std::sin(theta);
    return two_qubit_planar(psi, 0.0, kPi / 2, mu, -mu);
}

namespace {

BellExpression tilted_base(const TiltedPoint& p)
{
    const double al = p.alpha;
    return make_2222({1 + al, al, 1, 0,   //
                      0, 1, 0, 1,         //
                      1, 0, 0, 1,         //
                      0, 1, 1, 0},
                     "tilted-base");
}

BellExpression tilted_addition(const TiltedPoint& p)
{
    const double c2 = std::cos(2 * p.theta);
    const double s2q = std::sin(p.theta) * std::sin(p.theta);
    const double c2q = std::cos(p.theta) * std::cos(p.theta);
    return make_2222({0, -c2, 0, -c2,           //
                      0, -c2, 0, -c2,           //
                      s2q, c2q, s2q, c2q,       //
                      s2q, c2q, s2q, c2q},
                     "tilted-addition");
}

BellExpression tilted_prime_addition_weights(const TiltedPoint& p, double x1, double x2)
{
    const double al = p.alpha;
    return make_2222({-al, -al, 0, 0,                   //
                      x1 - al, x1 - al, -x1, -x1,       //
                      0, 0, 1, 1,                       //
                      x2, x2, 1 - x2, 1 - x2},
                     "tilted-prime-addition");
}

BellExpression tilted_prime_addition(const TiltedPoint& p)
{
    const TiltedPrimeWeights w = tilted_prime_weights(p.theta);
    return tilted_prime_addition_weights(p, w.x1, w.x2);
}

}  // namespace

BellExpression tilted_chsh(const TiltedPoint& p, double gamma)
{
    BellExpression e = tilted_base(p) - tilted_addition(p).scaled(gamma);
    e.set_label("tilted(" + std::to_string(p.theta) + "," + std::to_string(gamma) + ")");
    return e;
}

BellExpression tilted_chsh_prime(const TiltedPoint& p, double gamma)
{
    BellExpression e = tilted_base(p) + tilted_prime_addition(p).scaled(gamma);
    e.set_label("tilted-prime(" + std::to_string(p.theta) + "," +
                std::to_string(gamma) + ")");
    return e;
}

GammaFamily tilted_family(const TiltedPoint& p)
{
    return {tilted_chsh(p, 0.0), tilted_addition(p).scaled(-1.0), 0.0, 1.0};
}

GammaFamily tilted_prime_family(const TiltedPoint& p)
{
    return {tilted_chsh_prime(p, 0.0), tilted_prime_addition(p), 0.0, 1.0};
}

BellExpression tilted_chsh_prime_balanced(const TiltedPoint& p, double gamma)
{
    const double v = 0.5 * p.alpha;
    BellExpression e =
        tilted_base(p) + tilted_prime_addition_weights(p, v, v).scaled(gamma);
    e.set_label("tilted-prime-balanced(" + std::to_string(p.theta) + "," +
                std::to_string(gamma) + ")");
    return e;
}

GammaFamily tilted_prime_balanced_family(const TiltedPoint& p)
{
    const double v = 0.5 * p.alpha;
    return {tilted_chsh_prime_balanced(p, 0.0),
            tilted_prime_addition_weights(p, v, v), 0.0, 1.0};
}

TiltedPrimeWeights tilted_prime_weights(double theta)
{
    const double s2 = std::sin(2 * theta);
    const double c2 = std::cos(2 * theta);
    const double root = std::sqrt(1.0 + s2 * s2);
    TiltedPrimeWeights w;
    w.lambda_plus = 2.0 * s2 * s2 / (c2 + root);
    w.lambda_minus = 2.0 * s2 * s2 / (c2 - root);
    const double span = w.lambda_plus - w.lambda_minus;
    if (std::abs(span) < 1e-12)
        throw std::domain_error("tilted_prime_weights: degenerate split");
    w.x1 = (2.0 - w.lambda_plus - w.lambda_minus) / span;
    w.x2 = (2.0 * w.lambda_plus * w.lambda_minus - w.lambda_plus - w.lambda_minus) / span;
    return w;
}

BellExpression tilted_correlator(double alpha)
{
    std::array<double, 16> rows{};
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a)
            for (int y = 0; y < 2; ++y)
                for (int b = 0; b < 2; ++b) {
                    const double sign = (x == 1 && y == 1) ? -1.0 : 1.0;
                    double v = sign * (a == b ? 1.0 : -1.0);
                    // alpha * E^A_0 written on the (0,0) block.
                    if (x == 0 && y == 0) v += alpha * (a == 0 ? 1.0 : -1.0);
                    rows[4 * (2 * x + a) + (2 * y + b)] = v;
                }
    return make_2222(rows, "tilted-correlator(" + std::to_string(alpha) + ")");
}

}  // namespace bell
