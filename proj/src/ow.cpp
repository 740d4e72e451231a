#include "bell/ow.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bell {

OwReport ow_report(const BellExpression& expr, const Realization& r, Steering dir,
                   double tol)
{
    OwReport report;
    report.direction = dir;
    report.tol = tol;

    bool all_saturated = true;
    double max_gap = 0;
    for (const auto& ctx : steering_contexts(expr.scenario(), dir)) {
        OwContext c;
        c.context = ctx;
        const SteeredState st = context_steered_state(r, dir, ctx);
        c.weight = st.weight;
        c.zero_weight = st.zero_weight;
        const EffectiveOperator eff = effective_operator(expr, r, dir, ctx);
        c.lambda_max = eff.lambda_max();
        if (!st.zero_weight) {
            c.expectation = expectation(st.rho, eff.op);
            c.gap = c.lambda_max - c.expectation;
            max_gap = std::max(max_gap, c.gap);
            if (c.gap > tol) all_saturated = false;
        }
        report.contexts.push_back(std::move(c));
    }
    report.verdict = all_saturated;
    report.max_gap = max_gap;
    return report;
}

ProjectorParams projector_params(const Realization& r, int x, int a, double tol)
{
    ProjectorParams out;
    const Scenario s = r.scenario();
    if (!s.is_bipartite() || r.dims[1] != 2 || s.inputs(1) != 2) {
        out.note = "requires a two-input qubit on the steered side";
        return out;
    }

    const SteeredState st = steered_state(r, 0, x, a);
    if (st.zero_weight) {
        out.note = "zero-weight context";
        return out;
    }
    const HermitianEigen eig = hermitian_eig(st.rho);
    if (1.0 - eig.max() > 1e-8) {
        out.note = "steered state is not pure";
        return out;
    }

    const Vector v = eig.vectors.col(eig.values.size() - 1);
    Matrix u(2, 2);
    u(0, 0) = std::conj(v(0));
    u(0, 1) = std::conj(v(1));
    u(1, 0) = -v(1);
    u(1, 1) = v(0);

    const Matrix r0 = u * r.projectors[1][0][0] * u.adjoint();
    const Matrix r1 = u * r.projectors[1][1][0] * u.adjoint();
    const Complex z0 = r0(0, 1);
    const Complex z1 = r1(0, 1);

    double phi = 0;
    if (std::abs(z0) > 1e-12) phi = std::arg(z0);
    else if (std::abs(z1) > 1e-12) phi = std::arg(z1);
    const Complex rot = std::polar(1.0, -phi);

    out.p0 = r0(0, 0).real();
    out.p1 = r1(0, 0).real();
    out.q0 = (z0 * rot).real();
    out.q1 = (z1 * rot).real();
    out.imag_residual = std::max(std::abs((z0 * rot).imag()), std::abs((z1 * rot).imag()));
    out.applicable = out.imag_residual <= tol;
    if (!out.applicable) out.note = "projector off-diagonals not in a common phase";
    return out;
}

double necessary_residual(const BellExpression& expr, const ProjectorParams& p, int x,
                          int a)
{
    auto v = [&](int b, int y) {
        const int outs[2] = {a, b};
        const int ins[2] = {x, y};
        return expr.coeff(outs, ins);
    };
    return p.q0 * (v(0, 0) - v(1, 0)) + p.q1 * (v(0, 1) - v(1, 1));
}

BellExpression ow_form(const std::array<double, 4>& ratios,
                       const std::array<double, 12>& free_vars)
{
    const Scenario s = bipartite_scenario(2, 2, 2, 2);
    Eigen::ArrayXd v(16);
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a) {
            const int row = 2 * x + a;
            const double c0 = free_vars[3 * row];
            const double c1 = free_vars[3 * row + 1];
            const double c2 = free_vars[3 * row + 2];
            const double c3 = ratios[row] * (c0 - c1) + c2;
            const int ins0[2] = {x, 0};
            const int ins1[2] = {x, 1};
            const int outs0[2] = {a, 0};
            const int outs1[2] = {a, 1};
            v(static_cast<Eigen::Index>(s.index(outs0, ins0))) = c0;
            v(static_cast<Eigen::Index>(s.index(outs1, ins0))) = c1;
            v(static_cast<Eigen::Index>(s.index(outs0, ins1))) = c2;
            v(static_cast<Eigen::Index>(s.index(outs1, ins1))) = c3;
        }
    return BellExpression(s, std::move(v));
}

ContextReduction context_reduction(const BellExpression& expr, int x, int a)
{
    const Scenario& s = expr.scenario();
    if (!s.is_bipartite())
        throw std::invalid_argument("context_reduction: bipartite only");

    ContextReduction out;
    std::vector<double> reduced;
    for (int y = 0; y < s.inputs(1); ++y) {
        double lo = std::numeric_limits<double>::infinity();
        for (int b = 0; b < s.outputs(1); ++b) {
            const int outs[2] = {a, b};
            const int ins[2] = {x, y};
            lo = std::min(lo, expr.coeff(outs, ins));
        }
        out.shift += lo;
        for (int b = 0; b < s.outputs(1); ++b) {
            const int outs[2] = {a, b};
            const int ins[2] = {x, y};
            reduced.push_back(expr.coeff(outs, ins) - lo);
        }
    }
    double uniform = 0;
    bool all_equal = true;
    for (double w : reduced) {
        if (w <= 1e-12) continue;
        if (uniform == 0) uniform = w;
        else if (std::abs(w - uniform) > 1e-9 * std::max(1.0, uniform))
            all_equal = false;
    }
    if (all_equal && uniform > 0) out.scale = uniform;
    return out;
}

GammaSolution solve_gamma(const GammaFamily& family, const Realization& r,
                          double agree_tol, double ow_tol)
{
    if (!family.base.scenario().is_2222() ||
        family.base.scenario() != family.direction.scenario())
        throw std::invalid_argument("solve_gamma: (2,2,2,2) family required");
    if (!ns_constant_value(family.direction, 1e-9))
        throw std::invalid_argument("solve_gamma: direction table is not an NS constant");

    GammaSolution sol;
    std::vector<double> candidates;
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a) {
            const ProjectorParams params = projector_params(r, x, a);
            GammaCandidate c;
            c.x = x;
            c.a = a;
            if (!params.applicable) {
                sol.note += "context (" + std::to_string(x) + "," + std::to_string(a) +
                            ") skipped: " + params.note + "; ";
                sol.candidates.push_back(c);
                continue;
            }
            c.base_residual = necessary_residual(family.base, params, x, a);
            c.direction_residual = necessary_residual(family.direction, params, x, a);
            if (std::abs(c.direction_residual) > 1e-6) {
                c.gamma = -c.base_residual / c.direction_residual;
                candidates.push_back(*c.gamma);
            } else if (std::abs(c.base_residual) > 1e-6) {
                sol.note += "context (" + std::to_string(x) + "," + std::to_string(a) +
                            ") inconsistent for every gamma; ";
                sol.candidates.push_back(c);
                sol.spread = std::numeric_limits<double>::infinity();
                return sol;
            }
            sol.candidates.push_back(c);
        }

    if (candidates.empty()) {
        sol.note += "no context constrains gamma";
        return sol;
    }
    const auto [lo, hi] = std::minmax_element(candidates.begin(), candidates.end());
    sol.spread = *hi - *lo;
    if (sol.spread > agree_tol) {
        std::ostringstream os;
        os << "candidates disagree, spread " << sol.spread;
        sol.note += os.str();
        return sol;
    }
    double gamma = 0;
    for (double g : candidates) gamma += g;
    gamma /= static_cast<double>(candidates.size());

    sol.report = ow_report(family.at(gamma), r, Steering::kAliceToBob, ow_tol);
    if (sol.report->verdict) sol.gamma = gamma;
    else sol.note += "saturation fails at the candidate gamma";
    return sol;
}

OwSearchResult ow_game_search(const BellExpression& expr, const Realization& r,
                              double ow_tol)
{
    OwSearchResult res;
    if (!expr.scenario().is_2222()) {
        res.note = "search implemented for the (2,2,2,2) scenario";
        return res;
    }
    if (r.dims.size() != 2 || r.dims[0] != 2 || r.dims[1] != 2) {
        res.note = "search requires a two-qubit realization";
        return res;
    }

    std::array<ProjectorParams, 4> params;
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a) {
            params[2 * x + a] = projector_params(r, x, a);
            if (!params[2 * x + a].applicable) {
                res.note = "context (" + std::to_string(x) + "," + std::to_string(a) +
                           "): " + params[2 * x + a].note;
                return res;
            }
        }

    const Scenario s = expr.scenario();
    auto entry_index = [&](int a, int b, int x, int y) {
        const int outs[2] = {a, b};
        const int ins[2] = {x, y};
        return static_cast<int>(s.index(outs, ins));
    };

    // Unknowns: 16 table entries, then the four stencil parameters.
    constexpr int kEntries = 16;
    constexpr int kUnknowns = 20;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(20, kUnknowns);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(20);

    // Difference equations D(W) - Delta(p) = D(expr), slot by slot.
    const DifferenceTable d_expr = difference_table(expr);
    const std::array<DeltaParams, 4> units = {DeltaParams{1, 0, 0, 0},
                                              DeltaParams{0, 1, 0, 0},
                                              DeltaParams{0, 0, 1, 0},
                                              DeltaParams{0, 0, 0, 1}};
    int eq = 0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int slot = 0; slot < 4; ++slot, ++eq) {
                // top: V00-V01, left: V00-V10, right: V01-V11, bottom: V10-V11
                static constexpr int kPlus[4][2] = {{0, 0}, {0, 0}, {0, 1}, {1, 0}};
                static constexpr int kMinus[4][2] = {{0, 1}, {1, 0}, {1, 1}, {1, 1}};
                m(eq, entry_index(kPlus[slot][0], kPlus[slot][1], x, y)) += 1;
                m(eq, entry_index(kMinus[slot][0], kMinus[slot][1], x, y)) -= 1;
                for (int u = 0; u < 4; ++u)
                    m(eq, kEntries + u) -= delta_stencil(units[u]).at(x, y, slot);
                rhs(eq) = d_expr.at(x, y, slot);
            }

    // Diagonality conditions on the candidate table.
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a, ++eq) {
            const ProjectorParams& p = params[2 * x + a];
            m(eq, entry_index(a, 0, x, 0)) += p.q0;
            m(eq, entry_index(a, 1, x, 0)) -= p.q0;
            m(eq, entry_index(a, 0, x, 1)) += p.q1;
            m(eq, entry_index(a, 1, x, 1)) -= p.q1;
            rhs(eq) = 0;
        }

    Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd u = svd.solve(rhs);
    res.rank = static_cast<int>(svd.rank());
    res.residual = (m * u - rhs).cwiseAbs().maxCoeff();
    if (res.residual > 1e-8 * (1.0 + rhs.cwiseAbs().maxCoeff())) {
        res.note = "no rewriting satisfies the diagonality conditions";
        return res;
    }

    Eigen::ArrayXd w(16);
    for (int i = 0; i < kEntries; ++i) w(i) = u(i);
    BellExpression candidate(s, std::move(w), expr.label().empty()
                                                  ? std::string("ow-candidate")
                                                  : expr.label() + " (ow rewriting)");
    res.report = ow_report(candidate, r, Steering::kAliceToBob, ow_tol);
    if (res.report->verdict) res.game = std::move(candidate);
    else res.note = "candidate rewriting fails the saturation check";
    return res;
}

}  // namespace bell
