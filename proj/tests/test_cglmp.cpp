#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bell/cglmp.hpp"
#include "bell/families.hpp"
#include "bell/seesaw.hpp"

#include <cmath>

using namespace bell;

namespace {

const OwContext& context_of(const OwReport& r, std::vector<int> ctx)
{
    for (const OwContext& c : r.contexts)
        if (c.context == ctx) return c;
    throw std::runtime_error("context not found");
}

}  // namespace

TEST_CASE("d = 2 members collapse to the chsh fixtures")
{
    CHECK((zohren_gill(2).coefficients() == cglmp2_zg().coefficients()).all());
    CHECK((gd_game(2).coefficients() == chsh_xor().coefficients()).all());

    // same behavior as the canonical qubit realization
    const Behavior a = behavior_of(cglmp_optimal_realization(2));
    const Behavior b = behavior_of(canonical_chsh_realization());
    CHECK(((a.probabilities() - b.probabilities()).abs() < 1e-12).all());
}

TEST_CASE("cumulative game local bound is 3")
{
    for (int d = 2; d <= 6; ++d) {
        const LocalBound lb = local_bound(zohren_gill(d));
        CHECK(lb.value == 3.0);
        CHECK(lb.exact);
    }
}

TEST_CASE("game table structure")
{
    for (int d : {3, 5, 8}) {
        const BellExpression g = gd_game(d);
        REQUIRE(g.exact().has_value());
        for (long long v : *g.exact()) {
            CHECK(v >= 0);
            CHECK(v <= d - 1);
        }
        // circulant blocks: entry depends on a-b only, per (x,y)
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int a = 0; a < d; ++a)
                    for (int b = 0; b < d; ++b) {
                        const int outs[2] = {a, b};
                        const int shifted[2] = {(a + 1) % d, (b + 1) % d};
                        const int ins[2] = {x, y};
                        CHECK(g.coeff(outs, ins) == g.coeff(shifted, ins));
                    }
    }
}

TEST_CASE("measurement bases are orthonormal and complete")
{
    {
        const auto alice = cglmp_alice_projectors(5);
        for (int x = 0; x < 2; ++x)
            for (int a = 0; a < 5; ++a)
                for (int a2 = a; a2 < 5; ++a2) {
                    const Matrix prod = alice[x][a] * alice[x][a2];
                    if (a == a2)
                        CHECK(max_abs(Matrix(prod - alice[x][a])) <= 1e-12);
                    else CHECK(max_abs(prod) <= 1e-12);
                }
    }
    {
        const auto bob = cglmp_bob_projectors(7);
        for (int y = 0; y < 2; ++y) {
            Matrix sum = Matrix::Zero(7, 7);
            for (const Matrix& p : bob[y]) sum += p;
            CHECK(max_abs(Matrix(sum - identity(7))) <= 1e-12);
        }
    }
}

TEST_CASE("analytic kernels match the projector sums")
{
    for (int d : {2, 3, 5}) {
        const BellExpression game = gd_game(d);
        const Realization r = cglmp_optimal_realization(d);
        for (int x = 0; x < 2; ++x)
            for (int a = 0; a < d; ++a) {
                const int ctx[2] = {x, a};
                const EffectiveOperator eff =
                    effective_operator(game, r, Steering::kAliceToBob, ctx);
                const Matrix analytic = analytic_effective_operator(d, x, a);
                CHECK(max_abs(Matrix(eff.op - analytic)) <= 1e-9);
            }
    }
}

TEST_CASE("kernel structure")
{
    for (int d : {3, 6}) {
        for (int k = 0; k < d; ++k)
            for (int kp = 0; kp < d; ++kp) {
                CHECK(kernel_f0(d, k, kp) ==
                      doctest::Approx(kernel_f0(d, kp, k)).epsilon(1e-12));
                CHECK(std::abs(kernel_f1(d, k, kp)) ==
                      doctest::Approx(std::abs(kernel_f0(d, k, kp))).epsilon(1e-12));
                // depends on k - k' only
                if (k + 1 < d && kp + 1 < d)
                    CHECK(kernel_f0(d, k, kp) ==
                          doctest::Approx(kernel_f0(d, k + 1, kp + 1)).epsilon(1e-12));
            }
        const Matrix b00 = analytic_effective_operator(d, 0, 0);
        CHECK(is_hermitian(b00, 1e-12));
    }
}

TEST_CASE("covariance unitaries relate the four operators")
{
    for (int d = 2; d <= 8; ++d) {
        const Matrix v = covariance_unitary_v(d);
        CHECK(is_unitary(v));
        for (int x = 0; x < 2; ++x) {
            const Matrix b0 = analytic_effective_operator(d, x, 0);
            for (int a = 1; a < d; ++a) {
                const Matrix u = covariance_unitary_u(d, a, 0);
                CHECK(is_unitary(u));
                const Matrix lhs = u * b0 * u.adjoint();
                CHECK(max_abs(Matrix(lhs - analytic_effective_operator(d, x, a))) <=
                      1e-10);
            }
        }
        const Matrix rotated = v * analytic_effective_operator(d, 0, 0) * v.adjoint();
        CHECK(max_abs(Matrix(rotated - analytic_effective_operator(d, 1, 0))) <= 1e-10);
    }
}

TEST_CASE("all contexts share the top eigenvalue")
{
    for (int d = 2; d <= 8; ++d) {
        const double lam = hermitian_eig(analytic_effective_operator(d, 0, 0)).max();
        for (int x = 0; x < 2; ++x)
            for (int a = 0; a < d; ++a)
                CHECK(hermitian_eig(analytic_effective_operator(d, x, a)).max() ==
                      doctest::Approx(lam).epsilon(1e-9));
    }
}

TEST_CASE("the weighted game saturates for d = 2..8")
{
    for (int d = 2; d <= 8; ++d) {
        const Realization r = cglmp_optimal_realization(d);
        r.validate();
        const OwReport rep = ow_report(gd_game(d), r, Steering::kAliceToBob, 1e-8);
        CHECK(rep.verdict);
        CHECK(rep.max_gap <= 1e-8);
    }
}

TEST_CASE("steered states are the phase-twisted schmidt vectors")
{
    for (int d : {3, 4}) {
        const Realization r = cglmp_optimal_realization(d);
        const Eigen::VectorXd beta = optimal_schmidt_vector(d);
        const double phi[2] = {0.0, M_PI / d};
        for (int x = 0; x < 2; ++x)
            for (int a = 0; a < d; ++a) {
                const SteeredState st = steered_state(r, 0, x, a);
                REQUIRE(!st.zero_weight);
                Vector expect(d);
                for (int k = 0; k < d; ++k)
                    expect(k) = std::polar(beta(k), -2.0 * M_PI * a * k / d - k * phi[x]);
                const Matrix proj = expect * expect.adjoint();
                CHECK(max_abs(Matrix(st.rho - proj)) <= 1e-10);
            }
    }
}

TEST_CASE("schmidt profile at d = 3")
{
    const Eigen::VectorXd beta = optimal_schmidt_vector(3);
    const double gamma = (std::sqrt(11.0) - std::sqrt(3.0)) / 2.0;
    const double norm = std::sqrt(2.0 + gamma * gamma);
    CHECK(beta(0) == doctest::Approx(1.0 / norm).epsilon(1e-9));
    CHECK(beta(1) == doctest::Approx(gamma / norm).epsilon(1e-9));
    CHECK(beta(2) == doctest::Approx(1.0 / norm).epsilon(1e-9));
    CHECK(beta(1) / beta(0) == doctest::Approx(gamma).epsilon(1e-9));
}

TEST_CASE("the d = 3 cumulative game fails saturation with the known profile")
{
    const OwReport rep = cglmp3_report();
    CHECK(!rep.verdict);
    const double lam[6] = {2, 2, 2, 1.7454, 1.7454, 1};
    const double expv[6] = {1.8083, 1.8407, 1.8083, 1.7287, 1.7287, 1};
    int i = 0;
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 3; ++a, ++i) {
            const OwContext& c = context_of(rep, {x, a});
            CHECK(c.lambda_max == doctest::Approx(lam[i]).epsilon(1e-3));
            CHECK(c.expectation == doctest::Approx(expv[i]).epsilon(1e-3));
        }
    // the trivially saturated line
    CHECK(context_of(rep, {1, 2}).gap <= 1e-10);
}

TEST_CASE("frozen quantum value of the d = 3 cumulative game")
{
    // (8 + sqrt(11/3)) / 3, from the shared top eigenvalue of the kernels
    const double frozen = (8.0 + std::sqrt(11.0 / 3.0)) / 3.0;
    const Realization r = cglmp_optimal_realization(3);
    const double value = evaluate(zohren_gill(3), behavior_of(r));
    CHECK(value == doctest::Approx(frozen).epsilon(1e-12));
    CHECK(value > 3.0 + 0.25);  // clear quantum-classical margin

    const double game_value = evaluate(gd_game(3), behavior_of(r));
    const double lam = hermitian_eig(analytic_effective_operator(3, 0, 0)).max();
    CHECK(game_value == doctest::Approx(2.0 * lam).epsilon(1e-12));
}

TEST_CASE("seesaw consistency for the weighted games")
{
    SeesawOptions opt;
    opt.restarts = 8;
    opt.seed = 19;
    for (int d = 3; d <= 5; ++d) {
        const double lam = hermitian_eig(analytic_effective_operator(d, 0, 0)).max();
        const SeesawResult res = seesaw_maximize(gd_game(d), d, d, opt);
        CHECK(res.value == doctest::Approx(2.0 * lam).epsilon(1e-6));
    }
}

TEST_CASE("invalid dimensions are rejected")
{
    CHECK_THROWS_AS(zohren_gill(1), std::invalid_argument);
    CHECK_THROWS_AS(gd_game(0), std::invalid_argument);
    CHECK_THROWS_AS(analytic_effective_operator(3, 2, 0), std::out_of_range);
}
