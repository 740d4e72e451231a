#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bell/cglmp.hpp"
#include "bell/families.hpp"
#include "bell/ns_algebra.hpp"

#include <random>

using namespace bell;

namespace {

const Scenario k2222 = bipartite_scenario(2, 2, 2, 2);

BellExpression table_from_rows(const std::array<double, 16>& rows)
{
    Eigen::ArrayXd v(16);
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a)
            for (int y = 0; y < 2; ++y)
                for (int b = 0; b < 2; ++b) {
                    const int outs[2] = {a, b};
                    const int ins[2] = {x, y};
                    v(static_cast<Eigen::Index>(k2222.index(outs, ins))) =
                        rows[4 * (2 * x + a) + (2 * y + b)];
                }
    return BellExpression(k2222, std::move(v));
}

// The complicated constant-3 table: chsh = 2*cglmp2 - that table.
BellExpression constant3_table() { return cglmp2_zg().scaled(2.0) - chsh_xor(); }

std::array<double, 4> block_sums(const BellExpression& e)
{
    std::array<double, 4> s{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const int outs[2] = {a, b};
                    const int ins[2] = {x, y};
                    s[2 * x + y] += e.coeff(outs, ins);
                }
    return s;
}

BellExpression random_table(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    Eigen::ArrayXd v(16);
    for (Eigen::Index i = 0; i < 16; ++i) v(i) = u(rng);
    return BellExpression(k2222, std::move(v));
}

Behavior random_local_behavior(std::mt19937_64& rng)
{
    const auto dets = deterministic_behaviors(k2222);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::ArrayXd p = Eigen::ArrayXd::Zero(16);
    double total = 0;
    for (const Behavior& d : dets) {
        const double w = u(rng);
        p += w * d.probabilities();
        total += w;
    }
    return Behavior(k2222, p / total);
}

}  // namespace

TEST_CASE("difference table of the xor game")
{
    const DifferenceTable d = difference_table(chsh_xor());
    using D = DifferenceTable;
    // block (0,0) of the xor table is the identity pattern
    CHECK(d.at(0, 0, D::kTop) == 1.0);
    CHECK(d.at(0, 0, D::kLeft) == 1.0);
    CHECK(d.at(0, 0, D::kRight) == -1.0);
    CHECK(d.at(0, 0, D::kBottom) == -1.0);
    CHECK(d.consistent(0.0));
}

TEST_CASE("difference table of constant tables vanishes blockwise")
{
    for (const BellExpression& g : constant_basis(k2222, 1.5)) {
        const auto v = ns_constant_value(g);
        REQUIRE(v.has_value());
        CHECK(*v == doctest::Approx(1.5).epsilon(1e-12));
    }
    // normalization generators have all-zero difference tables
    const auto basis = constant_basis(k2222, 2.0);
    for (int i = 0; i < 4; ++i)
        CHECK(difference_table(basis[i]).max_abs() == 0.0);
}

TEST_CASE("bob-ns generator difference table matches a row of eq-7")
{
    // first Bob generator: k on (b=0, y=0) at x=0 and (b=1, y=0) at x=1
    const auto basis = constant_basis(k2222, 1.0);
    using D = DifferenceTable;
    const DifferenceTable d = difference_table(basis[4]);
    CHECK(d.at(0, 0, D::kTop) == 1.0);
    CHECK(d.at(0, 0, D::kBottom) == 1.0);
    CHECK(d.at(1, 0, D::kTop) == -1.0);
    CHECK(d.at(1, 0, D::kBottom) == -1.0);
    const DifferenceTable expect = delta_stencil({1, 0, 0, 0});
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int slot = 0; slot < 4; ++slot)
                CHECK(d.at(x, y, slot) == expect.at(x, y, slot));
}

TEST_CASE("delta group laws")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int rep = 0; rep < 50; ++rep) {
        const DifferenceTable d = difference_table(random_table(rng));
        const DeltaParams p{u(rng), u(rng), u(rng), u(rng)};
        const DifferenceTable same = apply_delta(d, {0, 0, 0, 0});
        const DifferenceTable round = apply_delta(apply_delta(d, p), -p);
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int slot = 0; slot < 4; ++slot) {
                    CHECK(same.at(x, y, slot) == d.at(x, y, slot));
                    CHECK(round.at(x, y, slot) ==
                          doctest::Approx(d.at(x, y, slot)).epsilon(1e-13));
                }
    }
}

TEST_CASE("the constant-3 rewriting certifies")
{
    const BellExpression t = constant3_table();
    const auto value = ns_constant_value(t);
    REQUIRE(value.has_value());
    CHECK(*value == 3.0);

    const auto cert = ns_constant_certificate(t);
    REQUIRE(cert.has_value());
    CHECK(cert->k == doctest::Approx(3.0).epsilon(1e-12));
    REQUIRE(cert->witness.has_value());
    // replaying the witness: delta parameters zero the difference table
    const DifferenceTable reduced =
        apply_delta(difference_table(t), *cert->witness);
    CHECK(reduced.max_abs() <= 1e-12);
    // and the certificate constant reproduces on every deterministic point
    for (const Behavior& p : deterministic_behaviors(k2222))
        CHECK(evaluate(t, p) == doctest::Approx(cert->k).epsilon(1e-12));
}

TEST_CASE("ns_constant_value on the family additions")
{
    // c1 addition at gamma=1 represents 2, its direction table represents 2
    const GammaFamily c1 = counterexample_family(Counterexample::kC1);
    CHECK(*ns_constant_value(c1.direction) == doctest::Approx(2.0));
    const BellExpression add1 =
        counterexample_game(Counterexample::kC1, 1.0) -
        counterexample_game(Counterexample::kC1, 0.0);
    CHECK(*ns_constant_value(add1) == doctest::Approx(2.0));

    // c2 addition represents 0
    const GammaFamily c2 = counterexample_family(Counterexample::kC2);
    CHECK(*ns_constant_value(c2.direction) == doctest::Approx(0.0).epsilon(1e-12));

    // a genuinely non-constant table is rejected
    CHECK(!ns_constant_value(chsh_xor()).has_value());
}

TEST_CASE("ns_equivalent certifies the doubling identity")
{
    const auto cert = ns_equivalent(chsh_xor(), cglmp2_zg().scaled(2.0));
    REQUIRE(cert.has_value());
    CHECK(cert->k == -3.0);

    // reflexivity / symmetry / transitivity on a pool
    const BellExpression a = chsh_xor();
    const BellExpression b = cglmp2_zg().scaled(2.0);
    const BellExpression c = b + constant_basis(k2222, 0.75)[2];
    CHECK(ns_equivalent(a, a)->k == 0.0);
    CHECK(ns_equivalent(a, b)->k == doctest::Approx(-(ns_equivalent(b, a)->k)));
    const double kab = ns_equivalent(a, b)->k;
    const double kbc = ns_equivalent(b, c)->k;
    const double kac = ns_equivalent(a, c)->k;
    CHECK(kac == doctest::Approx(kab + kbc).epsilon(1e-12));

    // different boundary points are not equivalent
    CHECK(!ns_equivalent(chsh_xor(), counterexample_game(Counterexample::kC1, 0.0))
               .has_value());
}

TEST_CASE("two-route agreement on random constant tables")
{
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    const auto basis = constant_basis(k2222, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        BellExpression t = BellExpression::zero(k2222);
        double expected = 0;
        for (const BellExpression& g : basis) {
            const double w = u(rng);
            t = t + g.scaled(w);
            expected += w;
        }
        const auto enumerated = ns_constant_value(t);
        const auto algebraic = ns_constant_certificate(t);
        REQUIRE(enumerated.has_value());
        REQUIRE(algebraic.has_value());
        CHECK(*enumerated == doctest::Approx(expected).epsilon(1e-9));
        CHECK(algebraic->k == doctest::Approx(expected).epsilon(1e-9));
    }

    // non-constant perturbations are rejected by both routes
    for (int rep = 0; rep < 50; ++rep) {
        BellExpression t = basis[0].scaled(u(rng)) + basis[5].scaled(u(rng));
        const int slot = rep % 16;
        Eigen::ArrayXd v = t.coefficients();
        v(slot) += 0.37;
        const BellExpression broken(k2222, v);
        CHECK(!ns_constant_value(broken).has_value());
        CHECK(!ns_constant_certificate(broken).has_value());
    }
}

TEST_CASE("lifted delta transformations preserve evaluation on local behaviors")
{
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        const BellExpression t = random_table(rng);
        const DeltaParams p{u(rng), u(rng), u(rng), u(rng)};
        const DifferenceTable shifted = apply_delta(difference_table(t), p);
        const BellExpression lifted = lift_difference_table(shifted, block_sums(t));

        // the lift hits the requested differences and sums
        const DifferenceTable check = difference_table(lifted);
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int slot = 0; slot < 4; ++slot)
                    CHECK(check.at(x, y, slot) ==
                          doctest::Approx(shifted.at(x, y, slot)).epsilon(1e-12));
        const auto sums = block_sums(lifted);
        const auto ref = block_sums(t);
        for (int i = 0; i < 4; ++i)
            CHECK(sums[i] == doctest::Approx(ref[i]).epsilon(1e-12));

        for (int i = 0; i < 5; ++i) {
            const Behavior q = random_local_behavior(rng);
            CHECK(evaluate(lifted, q) == doctest::Approx(evaluate(t, q)).epsilon(1e-9));
        }
    }
}

TEST_CASE("gd identity certifies for d = 2..6")
{
    for (int d = 2; d <= 6; ++d) {
        const auto cert = ns_equivalent(gd_game(d), zohren_gill(d).scaled(double(d)));
        REQUIRE(cert.has_value());
        CHECK(cert->k == -3.0);
    }
}

TEST_CASE("eq-7 pattern example from the difference layout")
{
    // k in the first Bob-ns generator: top of D00 is k, bottom is k, zeros right
    const BellExpression g = constant_basis(k2222, 2.5)[4];
    using D = DifferenceTable;
    const DifferenceTable d = difference_table(g);
    CHECK(d.at(0, 0, D::kTop) == 2.5);
    CHECK(d.at(0, 0, D::kLeft) == 0.0);
    CHECK(d.at(0, 1, D::kTop) == 0.0);
    CHECK(d.at(1, 0, D::kBottom) == -2.5);
}

TEST_CASE("constant basis at k = 0 is all zeros")
{
    for (const BellExpression& g : constant_basis(k2222, 0.0))
        CHECK((g.coefficients() == 0.0).all());
}

TEST_CASE("wrong scenario raises")
{
    CHECK_THROWS_AS(difference_table(zohren_gill(3)), std::invalid_argument);
    CHECK_THROWS_AS(constant_basis(bipartite_scenario(2, 2, 3, 3), 1.0),
                    std::invalid_argument);
}
