#pragma once

#include "bell/ow.hpp"

#include <random>

namespace bell {

/// XOR game: win when a xor b = xy. Integer table, local bound 3 by
/// enumeration, quantum maximum 2 + sqrt(2).
BellExpression chsh_xor();

/// Cumulative two-outcome game (d = 2 member of the d-outcome family);
/// equals (chsh_xor + 3) / 2 on no-signaling behaviors.
BellExpression cglmp2_zg();

/// |Phi+> with A0 = sz, A1 = sx, B0,1 = (sz +- sx)/sqrt(2).
Realization canonical_chsh_realization();

enum class Counterexample { kC1, kC2 };

/// The two games that fail saturation at gamma = 0 and pass at the solved
/// gamma. Base and addition tables as printed; the addition is an NS
/// constant (2*gamma for c1, 0 for c2).
BellExpression counterexample_game(Counterexample, double gamma);
GammaFamily counterexample_family(Counterexample);

/// Correlation boundary point of the unbiased-marginals slice:
/// E_xy = cos(alpha_xy) with arcsin(E00)+arcsin(E01)+arcsin(E10)
/// -arcsin(E11) = pi, all alphas in (0, pi).
struct BoundaryPoint3Param {
    double a00, a01, a10, a11;

    BoundaryPoint3Param(double a00, double a01, double a10, double a11);
    double boundary_residual() const;
    /// |Phi+> with planar measurement angles in the fixed gauge
    /// a0 = 0, b0 = -a00, a1 = -a00-a10, b1 = a01.
    Realization realization() const;
};

/// Weighted XOR game tangent at the point: diagonal blocks weighted
/// 1/sin(alpha_xy), the (1,1) block negated.
BellExpression weighted_xor_game(const BoundaryPoint3Param&);

/// Rejection-sample the three free angles uniformly over {sum < pi}.
BoundaryPoint3Param boundary_sample(std::mt19937_64& rng);

/// Partially entangled pair cos(t)|00> + sin(t)|11> with the matching
/// tilt alpha = 2/sqrt(1+2tan^2(2t)) and measurement angle tan(mu) = sin(2t).
struct TiltedPoint {
    double theta, alpha, mu;

    explicit TiltedPoint(double theta);
    Realization realization() const;
};

/// One-parameter rewritings of the tilted family: gamma = 0 is the table
/// read straight off the inequality, gamma = 1 the saturating rewriting.
BellExpression tilted_chsh(const TiltedPoint&, double gamma);
BellExpression tilted_chsh_prime(const TiltedPoint&, double gamma);
GammaFamily tilted_family(const TiltedPoint&);
GammaFamily tilted_prime_family(const TiltedPoint&);

/// Equal-weight variant of the reverse-steering rewriting, X1 = X2 =
/// alpha/2. This is the member of the family shape whose gamma = 1 table
/// saturates the Bob-to-Alice criterion at the tilted point; the quoted
/// X1/X2 weights do not (see tests for the recorded gaps).
BellExpression tilted_chsh_prime_balanced(const TiltedPoint&, double gamma);
GammaFamily tilted_prime_balanced_family(const TiltedPoint&);

struct TiltedPrimeWeights {
    double lambda_plus, lambda_minus, x1, x2;
};
TiltedPrimeWeights tilted_prime_weights(double theta);

/// Correlator-form table alpha<A0> + E00 + E01 + E10 - E11, local bound
/// 2 + alpha.
BellExpression tilted_correlator(double alpha);

}  // namespace bell
