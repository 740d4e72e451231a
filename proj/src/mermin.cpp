#include "bell/mermin.hpp"

#include <cmath>
#include <stdexcept>

namespace bell {

BellExpression mermin_expression()
{
    const Scenario s({2, 2, 2}, {2, 2, 2});
    std::vector<long long> v(s.table_size(), 0);
    static constexpr int kTriples[4][3] = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    for (const auto& t : kTriples) {
        const int want = t[0] | t[1] | t[2];
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c) {
                    if ((a ^ b ^ c) != want) continue;
                    const int outs[3] = {a, b, c};
                    v[s.index(outs, t)] = 1;
                }
    }
    return BellExpression::from_integers(s, std::move(v), "mermin");
}

Realization ghz_realization()
{
    Realization r;
    r.dims = {2, 2, 2};
    r.state = Vector::Zero(8);
    r.state(0) = 1.0 / std::sqrt(2.0);
    r.state(7) = 1.0 / std::sqrt(2.0);

    const Matrix x = sigma_x();
    const Matrix y = sigma_y();
    auto eigenprojectors = [](const Matrix& obs) {
        const HermitianEigen eig = hermitian_eig(obs);
        // outcome 0 is the +1 eigenvector
        std::vector<Matrix> out(2);
        out[0] = eig.vectors.col(1) * eig.vectors.col(1).adjoint();
        out[1] = eig.vectors.col(0) * eig.vectors.col(0).adjoint();
        return out;
    };
    const std::vector<std::vector<Matrix>> party = {eigenprojectors(x),
                                                    eigenprojectors(y)};
    r.projectors = {party, party, party};
    return r;
}

OwReport tripartite_ow_report(const BellExpression& expr, const Realization& r,
                              Steering type, double tol)
{
    if (type != Steering::kOneToTwo && type != Steering::kTwoToOne)
        throw std::invalid_argument("tripartite_ow_report: tripartite steering types only");
    if (expr.scenario().parties() != 3)
        throw std::invalid_argument("tripartite_ow_report: tripartite expression required");
    return ow_report(expr, r, type, tol);
}

double mermin_correlator(const Behavior& p)
{
    const Scenario& s = p.scenario();
    if (s.parties() != 3)
        throw std::invalid_argument("mermin_correlator: tripartite behavior required");
    auto corr = [&](int x, int y, int z) {
        double e = 0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c) {
                    const int outs[3] = {a, b, c};
                    const int ins[3] = {x, y, z};
                    e += (((a + b + c) % 2 == 0) ? 1.0 : -1.0) * p(outs, ins);
                }
        return e;
    };
    return corr(0, 0, 0) - corr(0, 1, 1) - corr(1, 0, 1) - corr(1, 1, 0);
}

}  // namespace bell
