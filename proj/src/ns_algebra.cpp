#include "bell/ns_algebra.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bell {

namespace {

void require_2222(const Scenario& s, const char* who)
{
    if (!s.is_2222())
        throw std::invalid_argument(std::string(who) + ": requires the (2,2,2,2) scenario");
}

double entry(const BellExpression& e, int a, int b, int x, int y)
{
    const int outs[2] = {a, b};
    const int ins[2] = {x, y};
    return e.coeff(outs, ins);
}

}  // namespace

bool DifferenceTable::consistent(double tol) const
{
    for (const auto& blk : d)
        if (std::abs((blk[kTop] - blk[kBottom]) - (blk[kLeft] - blk[kRight])) > tol)
            return false;
    return true;
}

double DifferenceTable::max_abs() const
{
    double m = 0;
    for (const auto& blk : d)
        for (double v : blk) m = std::max(m, std::abs(v));
    return m;
}

DifferenceTable difference_table(const BellExpression& e)
{
    require_2222(e.scenario(), "difference_table");
    DifferenceTable t;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            const double v00 = entry(e, 0, 0, x, y);
            const double v01 = entry(e, 0, 1, x, y);
            const double v10 = entry(e, 1, 0, x, y);
            const double v11 = entry(e, 1, 1, x, y);
            t.at(x, y, DifferenceTable::kTop) = v00 - v01;
            t.at(x, y, DifferenceTable::kLeft) = v00 - v10;
            t.at(x, y, DifferenceTable::kRight) = v01 - v11;
            t.at(x, y, DifferenceTable::kBottom) = v10 - v11;
        }
    return t;
}

DifferenceTable apply_delta(DifferenceTable t, const DeltaParams& p)
{
    using D = DifferenceTable;
    t.at(0, 0, D::kTop) += p.alpha;
    t.at(0, 0, D::kBottom) += p.alpha;
    t.at(0, 0, D::kLeft) += p.gamma;
    t.at(0, 0, D::kRight) += p.gamma;

    t.at(0, 1, D::kTop) += p.beta;
    t.at(0, 1, D::kBottom) += p.beta;
    t.at(0, 1, D::kLeft) -= p.gamma;
    t.at(0, 1, D::kRight) -= p.gamma;

    t.at(1, 0, D::kTop) -= p.alpha;
    t.at(1, 0, D::kBottom) -= p.alpha;
    t.at(1, 0, D::kLeft) += p.delta;
    t.at(1, 0, D::kRight) += p.delta;

    t.at(1, 1, D::kTop) -= p.beta;
    t.at(1, 1, D::kBottom) -= p.beta;
    t.at(1, 1, D::kLeft) -= p.delta;
    t.at(1, 1, D::kRight) -= p.delta;
    return t;
}

DifferenceTable delta_stencil(const DeltaParams& p)
{
    return apply_delta(DifferenceTable{}, p);
}

BellExpression lift_difference_table(const DifferenceTable& t,
                                     const std::array<double, 4>& block_sums)
{
    using D = DifferenceTable;
    if (!t.consistent(1e-9))
        throw std::invalid_argument("lift_difference_table: inconsistent differences");
    const Scenario s = bipartite_scenario(2, 2, 2, 2);
    Eigen::ArrayXd v(16);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            const double top = t.at(x, y, D::kTop);
            const double right = t.at(x, y, D::kRight);
            const double bottom = t.at(x, y, D::kBottom);
            const double sum = block_sums[2 * x + y];
            const double v11 = (sum - top - 2 * right - bottom) / 4.0;
            const double v01 = right + v11;
            const double v10 = bottom + v11;
            const double v00 = top + v01;
            const int ins[2] = {x, y};
            auto set = [&](int a, int b, double val) {
                const int outs[2] = {a, b};
                v(static_cast<Eigen::Index>(s.index(outs, ins))) = val;
            };
            set(0, 0, v00);
            set(0, 1, v01);
            set(1, 0, v10);
            set(1, 1, v11);
        }
    return BellExpression(s, std::move(v));
}

std::optional<double> ns_constant_value(const BellExpression& e, double tol)
{
    if (e.exact()) {
        bool first = true;
        long long value = 0;
        bool constant = true;
        for_each_strategy(e.scenario(), [&](const DeterministicStrategy& f) {
            const long long v = evaluate_exact(e, f);
            if (first) {
                value = v;
                first = false;
            } else if (v != value) {
                constant = false;
            }
        });
        if (!constant) return std::nullopt;
        return static_cast<double>(value);
    }

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for_each_strategy(e.scenario(), [&](const DeterministicStrategy& f) {
        const double v = evaluate(e, f);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    });
    if (hi - lo > tol) return std::nullopt;
    return 0.5 * (lo + hi);
}

std::optional<ConstantCertificate> ns_constant_certificate(const BellExpression& e,
                                                           double tol)
{
    if (!e.scenario().is_2222()) {
        const auto value = ns_constant_value(e, tol);
        if (!value) return std::nullopt;
        ConstantCertificate c;
        c.k = *value;
        c.residual_constant = *value;
        c.residual = 0;
        return c;
    }

    using D = DifferenceTable;
    const DifferenceTable d = difference_table(e);

    // Least-squares stencil parameters zeroing the differences.
    DeltaParams p;
    p.alpha = 0.25 * (-d.at(0, 0, D::kTop) - d.at(0, 0, D::kBottom) +
                      d.at(1, 0, D::kTop) + d.at(1, 0, D::kBottom));
    p.beta = 0.25 * (-d.at(0, 1, D::kTop) - d.at(0, 1, D::kBottom) +
                     d.at(1, 1, D::kTop) + d.at(1, 1, D::kBottom));
    p.gamma = 0.25 * (-d.at(0, 0, D::kLeft) - d.at(0, 0, D::kRight) +
                      d.at(0, 1, D::kLeft) + d.at(0, 1, D::kRight));
    p.delta = 0.25 * (-d.at(1, 0, D::kLeft) - d.at(1, 0, D::kRight) +
                      d.at(1, 1, D::kLeft) + d.at(1, 1, D::kRight));

    const DifferenceTable reduced = apply_delta(d, p);
    double residual = reduced.max_abs();
    if (residual > tol) return std::nullopt;

    // Adding the matching generators realizes the stencil on the table; what
    // remains must be constant within each block.
    const auto basis = constant_basis(e.scenario(), 1.0);
    BellExpression flat = e + basis[4].scaled(p.alpha) + basis[8].scaled(p.gamma) +
                          basis[6].scaled(p.beta) + basis[10].scaled(p.delta);

    double block_sum_total = 0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            const double c = 0.25 * (entry(flat, 0, 0, x, y) + entry(flat, 0, 1, x, y) +
                                     entry(flat, 1, 0, x, y) + entry(flat, 1, 1, x, y));
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    residual = std::max(residual,
                                        std::abs(entry(flat, a, b, x, y) - c));
            block_sum_total += c;
        }
    if (residual > tol) return std::nullopt;

    ConstantCertificate cert;
    cert.witness = p;
    cert.residual_constant = block_sum_total;
    cert.k = block_sum_total - (p.alpha + p.beta + p.gamma + p.delta);
    cert.residual = residual;
    return cert;
}

std::optional<ConstantCertificate> ns_equivalent(const BellExpression& a,
                                                 const BellExpression& b, double tol)
{
    if (a.scenario() != b.scenario())
        throw std::invalid_argument("ns_equivalent: scenario mismatch");
    const BellExpression diff = a - b;
    const auto value = ns_constant_value(diff, tol);
    if (!value) return std::nullopt;

    if (diff.scenario().is_2222()) {
        auto cert = ns_constant_certificate(diff, tol);
        if (cert) {
            // Enumeration is the ground truth; the witness is diagnostic.
            cert->residual = std::max(cert->residual, std::abs(cert->k - *value));
            cert->k = *value;
            return cert;
        }
    }
    ConstantCertificate cert;
    cert.k = *value;
    cert.residual_constant = *value;
    return cert;
}

std::vector<BellExpression> constant_basis(const Scenario& s, double k)
{
    require_2222(s, "constant_basis");
    std::vector<BellExpression> out;
    out.reserve(12);

    auto make = [&](auto&& fill, std::string label) {
        Eigen::ArrayXd v = Eigen::ArrayXd::Zero(16);
        auto set = [&](int a, int b, int x, int y) {
            const int outs[2] = {a, b};
            const int ins[2] = {x, y};
            v(static_cast<Eigen::Index>(s.index(outs, ins))) = k;
        };
        fill(set);
        out.emplace_back(s, std::move(v), std::move(label));
    };

    // Normalization: k on every entry of one block.         (indices 0..3)
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            make(
                [&](auto&& set) {
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b) set(a, b, x, y);
                },
                "norm(" + std::to_string(x) + "," + std::to_string(y) + ")");

    // Bob no-signaling: P_B(b|y) read off at x=0 cancels against the
    // complementary outcome at x=1.                          (indices 4..7)
    for (int y = 0; y < 2; ++y)
        for (int b0 = 0; b0 < 2; ++b0)
            make(
                [&](auto&& set) {
                    for (int a = 0; a < 2; ++a) {
                        set(a, b0, 0, y);
                        set(a, 1 - b0, 1, y);
                    }
                },
                "bobns(y=" + std::to_string(y) + ",b=" + std::to_string(b0) + ")");

    // Alice no-signaling.                                    (indices 8..11)
    for (int x = 0; x < 2; ++x)
        for (int a0 = 0; a0 < 2; ++a0)
            make(
                [&](auto&& set) {
                    for (int b = 0; b < 2; ++b) {
                        set(a0, b, x, 0);
                        set(1 - a0, b, x, 1);
                    }
                },
                "alicens(x=" + std::to_string(x) + ",a=" + std::to_string(a0) + ")");

    return out;
}

}  // namespace bell
