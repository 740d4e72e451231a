#pragma once

#include "bell/linalg.hpp"
#include "bell/scenario.hpp"

#include <span>
#include <string>
#include <vector>

namespace bell {

/// Shared pure state plus one complete projective measurement per party and
/// input.
struct Realization {
    std::vector<int> dims;  // local dimension per party
    Vector state;           // unit vector on the product space
    std::vector<std::vector<std::vector<Matrix>>> projectors;  // [party][input][outcome]

    Scenario scenario() const;
    Eigen::Index total_dim() const;
    void validate(double state_tol = 1e-12, double proj_tol = 1e-10) const;
};

std::string realization_to_json(const Realization&);
Realization realization_from_json(const std::string& text);
void save_realization(const Realization&, const std::string& path);
Realization load_realization(const std::string& path);

/// Born-rule behavior P(outs|ins) = <psi| (x) Pi^{x_i}_{a_i} |psi>.
Behavior behavior_of(const Realization&, double behavior_tol = 1e-12);

struct SteeredState {
    Matrix rho;        // conditional state on the unmeasured parties
    double weight;     // probability of the measured outcomes
    bool zero_weight;  // weight below 1e-14: excluded from saturation checks
};

/// Conditional state of every party except `party` after that party
/// measures `input` and obtains `outcome`.
SteeredState steered_state(const Realization&, int party, int input, int outcome);

/// Multi-party variant: `parties` measure jointly; the state of the rest.
SteeredState steered_state(const Realization&, std::span<const int> parties,
                           std::span<const int> inputs, std::span<const int> outcomes);

enum class Steering {
    kAliceToBob,  // contexts (x,a), operator on Bob
    kBobToAlice,  // contexts (y,b), operator on Alice
    kOneToTwo,    // tripartite, party A steers BC; contexts (x,a)
    kTwoToOne,    // tripartite, parties A,B steer C; contexts (x,y,a,b)
};

const char* steering_name(Steering);

/// V-weighted sum of the characterised parties' projectors for one steering
/// context. Hermitian; the spectrum is computed at construction.
struct EffectiveOperator {
    Matrix op;
    Steering direction;
    std::vector<int> context;
    HermitianEigen spectrum;
    double lambda_max() const { return spectrum.max(); }
};

EffectiveOperator effective_operator(const BellExpression&, const Realization&,
                                     Steering, std::span<const int> context);

/// All steering contexts of a direction in report order (inputs vary slower
/// than outcomes).
std::vector<std::vector<int>> steering_contexts(const Scenario&, Steering);

/// Steered state matching an effective-operator context.
SteeredState context_steered_state(const Realization&, Steering,
                                   std::span<const int> context);

double expectation(const Matrix& rho, const Matrix& observable);

/// Exchange the two parties of a bipartite realization.
Realization swap_parties(const Realization&);

}  // namespace bell
