#include "bell/realization.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace bell {

Scenario Realization::scenario() const
{
    std::vector<int> ins, outs;
    for (const auto& party : projectors) {
        ins.push_back(static_cast<int>(party.size()));
        outs.push_back(party.empty() ? 0 : static_cast<int>(party[0].size()));
    }
    return Scenario(std::move(ins), std::move(outs));
}

Eigen::Index Realization::total_dim() const
{
    Eigen::Index t = 1;
    for (int d : dims) t *= d;
    return t;
}

void Realization::validate(double state_tol, double proj_tol) const
{
    if (dims.size() != projectors.size())
        throw std::invalid_argument("Realization: dims/projectors mismatch");
    if (state.size() != total_dim())
        throw std::invalid_argument("Realization: state dimension mismatch");
    if (std::abs(state.norm() - 1.0) > state_tol)
        throw std::invalid_argument("Realization: state not normalized");
    for (std::size_t p = 0; p < projectors.size(); ++p) {
        for (const auto& input : projectors[p]) {
            Matrix sum = Matrix::Zero(dims[p], dims[p]);
            for (const auto& proj : input) {
                if (proj.rows() != dims[p] || proj.cols() != dims[p])
                    throw std::invalid_argument("Realization: projector size mismatch");
                if (!is_projector(proj, proj_tol))
                    throw std::invalid_argument("Realization: not a projector");
                sum += proj;
            }
            if (max_abs(sum - identity(dims[p])) > proj_tol)
                throw std::invalid_argument("Realization: projectors do not resolve identity");
            for (std::size_t i = 0; i < input.size(); ++i)
                for (std::size_t j = i + 1; j < input.size(); ++j)
                    if (max_abs(Matrix(input[i] * input[j])) > proj_tol)
                        throw std::invalid_argument("Realization: projectors not orthogonal");
        }
    }
}

namespace {

using nlohmann::json;

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j)
{
    return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

Matrix tensor_op(const Realization& r, std::span<const int> parties,
                 std::span<const int> inputs, std::span<const int> outcomes)
{
    Matrix op = Matrix::Identity(1, 1);
    for (std::size_t p = 0; p < r.dims.size(); ++p) {
        bool measured = false;
        for (std::size_t k = 0; k < parties.size(); ++k) {
            if (parties[k] == static_cast<int>(p)) {
                op = kron(op, r.projectors[p][inputs[k]][outcomes[k]]);
                measured = true;
                break;
            }
        }
        if (!measured) op = kron(op, identity(r.dims[p]));
    }
    return op;
}

}  // namespace

std::string realization_to_json(const Realization& r)
{
    nlohmann::ordered_json j;
    j["dims"] = r.dims;
    auto state = json::array();
    for (Eigen::Index i = 0; i < r.state.size(); ++i)
        state.push_back(complex_to_json(r.state(i)));
    j["state"] = std::move(state);
    auto parties = json::array();
    for (const auto& party : r.projectors) {
        auto inputs = json::array();
        for (const auto& input : party) {
            auto outcomes = json::array();
            for (const auto& proj : input) {
                auto rows = json::array();
                for (Eigen::Index i = 0; i < proj.rows(); ++i) {
                    auto row = json::array();
                    for (Eigen::Index k = 0; k < proj.cols(); ++k)
                        row.push_back(complex_to_json(proj(i, k)));
                    rows.push_back(std::move(row));
                }
                outcomes.push_back(std::move(rows));
            }
            inputs.push_back(std::move(outcomes));
        }
        parties.push_back(std::move(inputs));
    }
    j["measurements"] = std::move(parties);
    return j.dump(2);
}

Realization realization_from_json(const std::string& text)
{
    const json j = json::parse(text);
    Realization r;
    r.dims = j.at("dims").get<std::vector<int>>();
    const auto& state = j.at("state");
    r.state.resize(static_cast<Eigen::Index>(state.size()));
    for (std::size_t i = 0; i < state.size(); ++i)
        r.state(static_cast<Eigen::Index>(i)) = complex_from_json(state[i]);
    for (const auto& party : j.at("measurements")) {
        std::vector<std::vector<Matrix>> party_out;
        for (const auto& input : party) {
            std::vector<Matrix> input_out;
            for (const auto& proj : input) {
                const std::size_t n = proj.size();
                Matrix m(n, n);
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t b = 0; b < n; ++b)
                        m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                            complex_from_json(proj[a][b]);
                input_out.push_back(std::move(m));
            }
            party_out.push_back(std::move(input_out));
        }
        r.projectors.push_back(std::move(party_out));
    }
    r.validate();
    return r;
}

void save_realization(const Realization& r, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << realization_to_json(r) << '\n';
}

Realization load_realization(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return realization_from_json(text);
}

Behavior behavior_of(const Realization& r, double behavior_tol)
{
    const Scenario s = r.scenario();
    const int parties = s.parties();
    Eigen::ArrayXd p(static_cast<Eigen::Index>(s.table_size()));

    std::vector<int> party_ids(parties);
    for (int i = 0; i < parties; ++i) party_ids[i] = i;

    std::vector<int> ins(parties, 0), outs(parties, 0);
    auto advance = [&](std::vector<int>& t, const std::vector<int>& radix) {
        int i = static_cast<int>(t.size()) - 1;
        while (i >= 0 && ++t[i] == radix[i]) t[i--] = 0;
        return i >= 0;
    };

    std::vector<int> in_radix(parties), out_radix(parties);
    for (int i = 0; i < parties; ++i) {
        in_radix[i] = s.inputs(i);
        out_radix[i] = s.outputs(i);
    }

    do {
        std::fill(outs.begin(), outs.end(), 0);
        do {
            const Matrix op = tensor_op(r, party_ids, ins, outs);
            const Complex amp = r.state.adjoint() * op * r.state;
            p(static_cast<Eigen::Index>(s.index(outs, ins))) = amp.real();
        } while (advance(outs, out_radix));
    } while (advance(ins, in_radix));

    return Behavior(s, std::move(p), behavior_tol);
}

SteeredState steered_state(const Realization& r, int party, int input, int outcome)
{
    const int parties[1] = {party};
    const int inputs[1] = {input};
    const int outcomes[1] = {outcome};
    return steered_state(r, parties, inputs, outcomes);
}

SteeredState steered_state(const Realization& r, std::span<const int> parties,
                           std::span<const int> inputs, std::span<const int> outcomes)
{
    const Matrix op = tensor_op(r, parties, inputs, outcomes);
    const Vector projected = op * r.state;
    const double weight = projected.squaredNorm();

    std::vector<bool> keep(r.dims.size(), true);
    for (int p : parties) keep[static_cast<std::size_t>(p)] = false;

    const Matrix joint = projected * projected.adjoint();
    Matrix rho = partial_trace(joint, r.dims, keep);

    SteeredState out;
    out.weight = weight;
    out.zero_weight = weight < 1e-14;
    if (!out.zero_weight) rho /= weight;
    out.rho = std::move(rho);
    return out;
}

const char* steering_name(Steering s)
{
    switch (s) {
        case Steering::kAliceToBob: return "alice_to_bob";
        case Steering::kBobToAlice: return "bob_to_alice";
        case Steering::kOneToTwo: return "one_to_two";
        case Steering::kTwoToOne: return "two_to_one";
    }
    return "?";
}

std::vector<std::vector<int>> steering_contexts(const Scenario& s, Steering dir)
{
    std::vector<std::vector<int>> out;
    switch (dir) {
        case Steering::kAliceToBob:
            for (int x = 0; x < s.inputs(0); ++x)
                for (int a = 0; a < s.outputs(0); ++a) out.push_back({x, a});
            break;
        case Steering::kBobToAlice:
            for (int y = 0; y < s.inputs(1); ++y)
                for (int b = 0; b < s.outputs(1); ++b) out.push_back({y, b});
            break;
        case Steering::kOneToTwo:
            for (int x = 0; x < s.inputs(0); ++x)
                for (int a = 0; a < s.outputs(0); ++a) out.push_back({x, a});
            break;
        case Steering::kTwoToOne:
            for (int x = 0; x < s.inputs(0); ++x)
                for (int y = 0; y < s.inputs(1); ++y)
                    for (int a = 0; a < s.outputs(0); ++a)
                        for (int b = 0; b < s.outputs(1); ++b)
                            out.push_back({x, y, a, b});
            break;
    }
    return out;
}

EffectiveOperator effective_operator(const BellExpression& expr, const Realization& r,
                                     Steering dir, std::span<const int> context)
{
    const Scenario& s = expr.scenario();
    if (s != r.scenario())
        throw std::invalid_argument("effective_operator: scenario mismatch");

    EffectiveOperator eff;
    eff.direction = dir;
    eff.context.assign(context.begin(), context.end());

    switch (dir) {
        case Steering::kAliceToBob: {
            if (!s.is_bipartite() || context.size() != 2)
                throw std::invalid_argument("effective_operator: bad context");
            const int x = context[0], a = context[1];
            if (x < 0 || x >= s.inputs(0) || a < 0 || a >= s.outputs(0))
                throw std::out_of_range("effective_operator: context out of range");
            Matrix op = Matrix::Zero(r.dims[1], r.dims[1]);
            for (int y = 0; y < s.inputs(1); ++y)
                for (int b = 0; b < s.outputs(1); ++b) {
                    const int outs[2] = {a, b};
                    const int ins[2] = {x, y};
                    op += expr.coeff(outs, ins) * r.projectors[1][y][b];
                }
            eff.op = std::move(op);
            break;
        }
        case Steering::kBobToAlice: {
            if (!s.is_bipartite() || context.size() != 2)
                throw std::invalid_argument("effective_operator: bad context");
            const int y = context[0], b = context[1];
            if (y < 0 || y >= s.inputs(1) || b < 0 || b >= s.outputs(1))
                throw std::out_of_range("effective_operator: context out of range");
            Matrix op = Matrix::Zero(r.dims[0], r.dims[0]);
            for (int x = 0; x < s.inputs(0); ++x)
                for (int a = 0; a < s.outputs(0); ++a) {
                    const int outs[2] = {a, b};
                    const int ins[2] = {x, y};
                    op += expr.coeff(outs, ins) * r.projectors[0][x][a];
                }
            eff.op = std::move(op);
            break;
        }
        case Steering::kOneToTwo: {
            if (s.parties() != 3 || context.size() != 2)
                throw std::invalid_argument("effective_operator: bad context");
            const int x = context[0], a = context[1];
            if (x < 0 || x >= s.inputs(0) || a < 0 || a >= s.outputs(0))
                throw std::out_of_range("effective_operator: context out of range");
            const Eigen::Index dim = r.dims[1] * r.dims[2];
            Matrix op = Matrix::Zero(dim, dim);
            for (int y = 0; y < s.inputs(1); ++y)
                for (int z = 0; z < s.inputs(2); ++z)
                    for (int b = 0; b < s.outputs(1); ++b)
                        for (int c = 0; c < s.outputs(2); ++c) {
                            const int outs[3] = {a, b, c};
                            const int ins[3] = {x, y, z};
                            const double v = expr.coeff(outs, ins);
                            if (v != 0.0)
                                op += v * kron(r.projectors[1][y][b],
                                               r.projectors[2][z][c]);
                        }
            eff.op = std::move(op);
            break;
        }
        case Steering::kTwoToOne: {
            if (s.parties() != 3 || context.size() != 4)
                throw std::invalid_argument("effective_operator: bad context");
            const int x = context[0], y = context[1], a = context[2], b = context[3];
            if (x < 0 || x >= s.inputs(0) || y < 0 || y >= s.inputs(1) || a < 0 ||
                a >= s.outputs(0) || b < 0 || b >= s.outputs(1))
                throw std::out_of_range("effective_operator: context out of range");
            Matrix op = Matrix::Zero(r.dims[2], r.dims[2]);
            for (int z = 0; z < s.inputs(2); ++z)
                for (int c = 0; c < s.outputs(2); ++c) {
                    const int outs[3] = {a, b, c};
                    const int ins[3] = {x, y, z};
                    op += expr.coeff(outs, ins) * r.projectors[2][z][c];
                }
            eff.op = std::move(op);
            break;
        }
    }
    eff.spectrum = hermitian_eig(eff.op);
    return eff;
}

SteeredState context_steered_state(const Realization& r, Steering dir,
                                   std::span<const int> context)
{
    switch (dir) {
        case Steering::kAliceToBob:
        case Steering::kOneToTwo:
            return steered_state(r, 0, context[0], context[1]);
        case Steering::kBobToAlice:
            return steered_state(r, 1, context[0], context[1]);
        case Steering::kTwoToOne: {
            const int parties[2] = {0, 1};
            const int inputs[2] = {context[0], context[1]};
            const int outcomes[2] = {context[2], context[3]};
            return steered_state(r, parties, inputs, outcomes);
        }
    }
    throw std::logic_error("context_steered_state: bad direction");
}

double expectation(const Matrix& rho, const Matrix& observable)
{
    return (rho * observable).trace().real();
}

Realization swap_parties(const Realization& r)
{
    if (r.dims.size() != 2)
        throw std::invalid_argument("swap_parties: bipartite realizations only");
    Realization out;
    out.dims = {r.dims[1], r.dims[0]};
    out.state = Vector(r.state.size());
    for (int i = 0; i < r.dims[0]; ++i)
        for (int j = 0; j < r.dims[1]; ++j)
            out.state(j * r.dims[0] + i) = r.state(i * r.dims[1] + j);
    out.projectors = {r.projectors[1], r.projectors[0]};
    return out;
}

}  // namespace bell
