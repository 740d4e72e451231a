#include "bell/scenario.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bell {

Scenario::Scenario(std::vector<int> inputs, std::vector<int> outputs)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs))
{
    if (inputs_.size() != outputs_.size())
        throw std::invalid_argument("Scenario: inputs/outputs size mismatch");
    if (inputs_.size() != 2 && inputs_.size() != 3)
        throw std::invalid_argument("Scenario: party count must be 2 or 3");
    for (int m : inputs_)
        if (m < 1) throw std::invalid_argument("Scenario: input count < 1");
    for (int n : outputs_)
        if (n < 1) throw std::invalid_argument("Scenario: output count < 1");
}

std::size_t Scenario::input_tuples() const
{
    std::size_t t = 1;
    for (int m : inputs_) t *= static_cast<std::size_t>(m);
    return t;
}

std::size_t Scenario::output_tuples() const
{
    std::size_t t = 1;
    for (int n : outputs_) t *= static_cast<std::size_t>(n);
    return t;
}

std::size_t Scenario::strategy_count() const
{
    long double t = 1;
    for (std::size_t i = 0; i < inputs_.size(); ++i)
        t *= std::pow(static_cast<long double>(outputs_[i]), inputs_[i]);
    if (t > static_cast<long double>(std::numeric_limits<std::size_t>::max()))
        return std::numeric_limits<std::size_t>::max();
    return static_cast<std::size_t>(t);
}

std::size_t Scenario::input_block(std::span<const int> ins) const
{
    if (ins.size() != inputs_.size())
        throw std::invalid_argument("Scenario: wrong input tuple arity");
    std::size_t ix = 0;
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
        if (ins[i] < 0 || ins[i] >= inputs_[i])
            throw std::out_of_range("Scenario: input out of range");
        ix = ix * inputs_[i] + static_cast<std::size_t>(ins[i]);
    }
    return ix;
}

std::size_t Scenario::index(std::span<const int> outs, std::span<const int> ins) const
{
    if (outs.size() != outputs_.size())
        throw std::invalid_argument("Scenario: wrong output tuple arity");
    std::size_t ox = 0;
    for (std::size_t i = 0; i < outputs_.size(); ++i) {
        if (outs[i] < 0 || outs[i] >= outputs_[i])
            throw std::out_of_range("Scenario: output out of range");
        ox = ox * outputs_[i] + static_cast<std::size_t>(outs[i]);
    }
    return input_block(ins) * output_tuples() + ox;
}

bool Scenario::is_2222() const
{
    return parties() == 2 && inputs_[0] == 2 && inputs_[1] == 2 &&
           outputs_[0] == 2 && outputs_[1] == 2;
}

Scenario bipartite_scenario(int m_a, int m_b, int n_a, int n_b)
{
    return Scenario({m_a, m_b}, {n_a, n_b});
}

namespace {

// Walk all tuples t with t[i] in [0, radix[i]).
template <typename F>
void for_each_tuple(const std::vector<int>& radix, F&& f)
{
    std::vector<int> t(radix.size(), 0);
    while (true) {
        f(t);
        int i = static_cast<int>(radix.size()) - 1;
        while (i >= 0 && ++t[i] == radix[i]) t[i--] = 0;
        if (i < 0) break;
    }
}

}  // namespace

Behavior::Behavior(Scenario scenario, Eigen::ArrayXd probabilities, double tol)
    : scenario_(std::move(scenario)), p_(std::move(probabilities))
{
    if (static_cast<std::size_t>(p_.size()) != scenario_.table_size())
        throw std::invalid_argument("Behavior: table size mismatch");
    if ((p_ < -tol).any() || (p_ > 1.0 + tol).any())
        throw std::invalid_argument("Behavior: probability out of [0,1]");

    const int parties = scenario_.parties();
    const std::size_t otup = scenario_.output_tuples();

    // Normalization per input block.
    for (std::size_t blk = 0; blk < scenario_.input_tuples(); ++blk) {
        const double sum = p_.segment(static_cast<Eigen::Index>(blk * otup),
                                      static_cast<Eigen::Index>(otup))
                               .sum();
        if (std::abs(sum - 1.0) > tol * 10)
            throw std::invalid_argument("Behavior: block not normalized");
    }

    // No-signaling: the marginal of the other parties must not depend on
    // party p's input.
    for (int p = 0; p < parties; ++p) {
        std::vector<int> other_ins, other_outs;
        for (int q = 0; q < parties; ++q) {
            if (q == p) continue;
            other_ins.push_back(scenario_.inputs(q));
            other_outs.push_back(scenario_.outputs(q));
        }
        for_each_tuple(other_ins, [&](const std::vector<int>& oins) {
            for_each_tuple(other_outs, [&](const std::vector<int>& oouts) {
                double ref = 0;
                bool have_ref = false;
                for (int xp = 0; xp < scenario_.inputs(p); ++xp) {
                    std::vector<int> ins(parties), outs(parties);
                    int j = 0;
                    for (int q = 0; q < parties; ++q) {
                        if (q == p) continue;
                        ins[q] = oins[j];
                        outs[q] = oouts[j];
                        ++j;
                    }
                    ins[p] = xp;
                    double marg = 0;
                    for (int ap = 0; ap < scenario_.outputs(p); ++ap) {
                        outs[p] = ap;
                        marg += p_(static_cast<Eigen::Index>(scenario_.index(outs, ins)));
                    }
                    if (!have_ref) {
                        ref = marg;
                        have_ref = true;
                    } else if (std::abs(marg - ref) > tol * 10) {
                        throw std::invalid_argument("Behavior: no-signaling violated");
                    }
                }
            });
        });
    }
}

Behavior Behavior::deterministic(const Scenario& s, const DeterministicStrategy& f)
{
    Eigen::ArrayXd p = Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(s.table_size()));
    const int parties = s.parties();
    for_each_tuple(s.all_inputs(), [&](const std::vector<int>& ins) {
        std::vector<int> outs(parties);
        for (int q = 0; q < parties; ++q) outs[q] = f.output(q, ins[q]);
        p(static_cast<Eigen::Index>(s.index(outs, ins))) = 1.0;
    });
    return Behavior(s, std::move(p), 0.0);
}

Behavior Behavior::uniform(const Scenario& s)
{
    const double val = 1.0 / static_cast<double>(s.output_tuples());
    return Behavior(s, Eigen::ArrayXd::Constant(
                           static_cast<Eigen::Index>(s.table_size()), val));
}

BellExpression::BellExpression(Scenario scenario, Eigen::ArrayXd coefficients,
                               std::string label)
    : scenario_(std::move(scenario)), v_(std::move(coefficients)),
      label_(std::move(label))
{
    if (static_cast<std::size_t>(v_.size()) != scenario_.table_size())
        throw std::invalid_argument("BellExpression: table size mismatch");
}

BellExpression BellExpression::from_integers(Scenario scenario,
                                             std::vector<long long> coefficients,
                                             std::string label)
{
    Eigen::ArrayXd v(static_cast<Eigen::Index>(coefficients.size()));
    for (std::size_t i = 0; i < coefficients.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = static_cast<double>(coefficients[i]);
    BellExpression e(std::move(scenario), std::move(v), std::move(label));
    e.exact_ = std::move(coefficients);
    return e;
}

BellExpression BellExpression::zero(Scenario scenario, std::string label)
{
    const std::size_t n = scenario.table_size();
    return from_integers(std::move(scenario), std::vector<long long>(n, 0),
                         std::move(label));
}

BellExpression BellExpression::operator+(const BellExpression& o) const
{
    if (scenario_ != o.scenario_)
        throw std::invalid_argument("BellExpression: scenario mismatch");
    BellExpression out(scenario_, v_ + o.v_);
    if (exact_ && o.exact_) {
        std::vector<long long> e(exact_->size());
        for (std::size_t i = 0; i < e.size(); ++i)
            e[i] = (*exact_)[i] + (*o.exact_)[i];
        out.exact_ = std::move(e);
    }
    return out;
}

BellExpression BellExpression::operator-(const BellExpression& o) const
{
    if (scenario_ != o.scenario_)
        throw std::invalid_argument("BellExpression: scenario mismatch");
    BellExpression out(scenario_, v_ - o.v_);
    if (exact_ && o.exact_) {
        std::vector<long long> e(exact_->size());
        for (std::size_t i = 0; i < e.size(); ++i)
            e[i] = (*exact_)[i] - (*o.exact_)[i];
        out.exact_ = std::move(e);
    }
    return out;
}

BellExpression BellExpression::scaled(double factor) const
{
    BellExpression out(scenario_, v_ * factor);
    if (exact_ && std::nearbyint(factor) == factor &&
        std::abs(factor) < 1e15) {
        const long long f = static_cast<long long>(factor);
        std::vector<long long> e(exact_->size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = (*exact_)[i] * f;
        out.exact_ = std::move(e);
    }
    return out;
}

double evaluate(const BellExpression& expr, const Behavior& p)
{
    if (expr.scenario() != p.scenario())
        throw std::invalid_argument("evaluate: scenario mismatch");
    return (expr.coefficients() * p.probabilities()).sum();
}

double evaluate(const BellExpression& expr, const DeterministicStrategy& f)
{
    const Scenario& s = expr.scenario();
    double total = 0;
    const int parties = s.parties();
    std::vector<int> outs(parties);
    for_each_tuple(s.all_inputs(), [&](const std::vector<int>& ins) {
        for (int q = 0; q < parties; ++q) outs[q] = f.output(q, ins[q]);
        total += expr.coeff(outs, ins);
    });
    return total;
}

long long evaluate_exact(const BellExpression& expr, const DeterministicStrategy& f)
{
    if (!expr.exact())
        throw std::invalid_argument("evaluate_exact: no integer mirror");
    const Scenario& s = expr.scenario();
    long long total = 0;
    const int parties = s.parties();
    std::vector<int> outs(parties);
    for_each_tuple(s.all_inputs(), [&](const std::vector<int>& ins) {
        for (int q = 0; q < parties; ++q) outs[q] = f.output(q, ins[q]);
        total += (*expr.exact())[s.index(outs, ins)];
    });
    return total;
}

void for_each_strategy(const Scenario& s,
                       const std::function<void(const DeterministicStrategy&)>& f,
                       std::size_t guard)
{
    if (s.strategy_count() > guard)
        throw std::invalid_argument("for_each_strategy: strategy count exceeds guard");

    DeterministicStrategy strat;
    strat.outputs.resize(s.parties());
    for (int p = 0; p < s.parties(); ++p)
        strat.outputs[p].assign(static_cast<std::size_t>(s.inputs(p)), 0);

    // Mixed-radix counter over every (party, input) slot.
    while (true) {
        f(strat);
        int p = s.parties() - 1;
        int x = s.inputs(p) - 1;
        while (true) {
            if (++strat.outputs[p][x] < s.outputs(p)) break;
            strat.outputs[p][x] = 0;
            if (--x < 0) {
                if (--p < 0) return;
                x = s.inputs(p) - 1;
            }
        }
    }
}

std::vector<Behavior> deterministic_behaviors(const Scenario& s, std::size_t guard)
{
    std::vector<Behavior> out;
    out.reserve(std::min<std::size_t>(s.strategy_count(), guard));
    for_each_strategy(
        s, [&](const DeterministicStrategy& f) {
            out.push_back(Behavior::deterministic(s, f));
        },
        guard);
    return out;
}

LocalBound local_bound(const BellExpression& expr, std::size_t guard)
{
    LocalBound result;
    if (expr.exact()) {
        long long best = std::numeric_limits<long long>::min();
        for_each_strategy(
            expr.scenario(),
            [&](const DeterministicStrategy& f) {
                const long long v = evaluate_exact(expr, f);
                if (v > best) {
                    best = v;
                    result.maximizers.clear();
                }
                if (v == best) result.maximizers.push_back(f);
            },
            guard);
        result.value = static_cast<double>(best);
        result.exact = true;
        return result;
    }

    double best = -std::numeric_limits<double>::infinity();
    double tie_scale = 0;
    for (double c : expr.coefficients()) tie_scale += std::abs(c);
    const double tie_tol = 1e-12 * std::max(1.0, tie_scale);
    for_each_strategy(
        expr.scenario(),
        [&](const DeterministicStrategy& f) {
            const double v = evaluate(expr, f);
            if (v > best + tie_tol) {
                best = v;
                result.maximizers.clear();
                result.maximizers.push_back(f);
            } else if (std::abs(v - best) <= tie_tol) {
                result.maximizers.push_back(f);
                if (v > best) best = v;
            }
        },
        guard);
    result.value = best;
    result.exact = false;
    return result;
}

BellExpression swap_parties(const BellExpression& e)
{
    const Scenario& s = e.scenario();
    if (!s.is_bipartite())
        throw std::invalid_argument("swap_parties: bipartite expressions only");
    const Scenario sw = bipartite_scenario(s.inputs(1), s.inputs(0), s.outputs(1),
                                           s.outputs(0));
    Eigen::ArrayXd v(static_cast<Eigen::Index>(sw.table_size()));
    for (int x = 0; x < s.inputs(0); ++x)
        for (int y = 0; y < s.inputs(1); ++y)
            for (int a = 0; a < s.outputs(0); ++a)
                for (int b = 0; b < s.outputs(1); ++b) {
                    const int outs[2] = {a, b};
                    const int ins[2] = {x, y};
                    const int souts[2] = {b, a};
                    const int sins[2] = {y, x};
                    v(static_cast<Eigen::Index>(sw.index(souts, sins))) =
                        e.coeff(outs, ins);
                }
    BellExpression out(sw, std::move(v), e.label().empty() ? "" : e.label() + "-swapped");
    return out;
}

}  // namespace bell
