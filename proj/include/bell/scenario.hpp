#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bell {

/// Measurement scenario: inputs (settings) and outputs (outcomes) per party.
class Scenario {
public:
    Scenario(std::vector<int> inputs, std::vector<int> outputs);

    int parties() const { return static_cast<int>(inputs_.size()); }
    int inputs(int party) const { return inputs_.at(party); }
    int outputs(int party) const { return outputs_.at(party); }
    const std::vector<int>& all_inputs() const { return inputs_; }
    const std::vector<int>& all_outputs() const { return outputs_; }

    std::size_t input_tuples() const;
    std::size_t output_tuples() const;
    std::size_t table_size() const { return input_tuples() * output_tuples(); }

    /// Number of local deterministic strategies, prod_i n_i^{m_i}.
    /// Saturates at SIZE_MAX on overflow.
    std::size_t strategy_count() const;

    /// Flat index with inputs varying slowest: entries of a fixed input
    /// tuple form one contiguous block.
    std::size_t index(std::span<const int> outs, std::span<const int> ins) const;
    std::size_t input_block(std::span<const int> ins) const;

    bool is_bipartite() const { return parties() == 2; }
    bool is_2222() const;

    bool operator==(const Scenario&) const = default;

private:
    std::vector<int> inputs_;
    std::vector<int> outputs_;
};

Scenario bipartite_scenario(int m_a, int m_b, int n_a, int n_b);

/// One local output assignment per party and input.
struct DeterministicStrategy {
    std::vector<std::vector<int>> outputs;  // [party][input]

    int output(int party, int input) const { return outputs[party][input]; }
};

class BellExpression;

/// Conditional outcome distribution P(outs|ins) with normalization and
/// no-signaling invariants enforced at construction.
class Behavior {
public:
    Behavior(Scenario scenario, Eigen::ArrayXd probabilities, double tol = 1e-12);

    const Scenario& scenario() const { return scenario_; }
    const Eigen::ArrayXd& probabilities() const { return p_; }
    double operator()(std::span<const int> outs, std::span<const int> ins) const
    {
        return p_(static_cast<Eigen::Index>(scenario_.index(outs, ins)));
    }

    static Behavior deterministic(const Scenario&, const DeterministicStrategy&);
    static Behavior uniform(const Scenario&);

private:
    Scenario scenario_;
    Eigen::ArrayXd p_;
};

/// Coefficient table of a Bell functional. Tables constructed from integers
/// keep an exact mirror so bound enumeration is free of float ties.
class BellExpression {
public:
    BellExpression(Scenario scenario, Eigen::ArrayXd coefficients,
                   std::string label = {});

    static BellExpression from_integers(Scenario scenario,
                                        std::vector<long long> coefficients,
                                        std::string label = {});
    static BellExpression zero(Scenario scenario, std::string label = {});

    const Scenario& scenario() const { return scenario_; }
    const Eigen::ArrayXd& coefficients() const { return v_; }
    const std::optional<std::vector<long long>>& exact() const { return exact_; }
    const std::string& label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    double coeff(std::span<const int> outs, std::span<const int> ins) const
    {
        return v_(static_cast<Eigen::Index>(scenario_.index(outs, ins)));
    }
    double& coeff_ref(std::span<const int> outs, std::span<const int> ins)
    {
        exact_.reset();
        return v_(static_cast<Eigen::Index>(scenario_.index(outs, ins)));
    }

    BellExpression operator+(const BellExpression&) const;
    BellExpression operator-(const BellExpression&) const;
    BellExpression scaled(double factor) const;

private:
    Scenario scenario_;
    Eigen::ArrayXd v_;
    std::optional<std::vector<long long>> exact_;
    std::string label_;
};

double evaluate(const BellExpression&, const Behavior&);
double evaluate(const BellExpression&, const DeterministicStrategy&);
long long evaluate_exact(const BellExpression&, const DeterministicStrategy&);

/// Visit every local deterministic strategy in a fixed mixed-radix order.
/// Throws if the strategy count exceeds `guard`.
void for_each_strategy(const Scenario&,
                       const std::function<void(const DeterministicStrategy&)>&,
                       std::size_t guard = 1000000);

std::vector<Behavior> deterministic_behaviors(const Scenario&,
                                              std::size_t guard = 1000000);

struct LocalBound {
    double value = 0;
    std::vector<DeterministicStrategy> maximizers;  // all argmax strategies
    bool exact = false;  // integer-mirror enumeration, tie detection exact
};

/// Maximum over local deterministic strategies; exact by convexity.
LocalBound local_bound(const BellExpression&, std::size_t guard = 1000000);

/// Exchange the two parties of a bipartite expression:
/// V'(b,a,y,x) = V(a,b,x,y).
BellExpression swap_parties(const BellExpression&);

}  // namespace bell
