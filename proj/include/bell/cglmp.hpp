#pragma once

#include "bell/ow.hpp"

namespace bell {

/// Cumulative-probability game
///   P(a0 <= b0) + P(a0 >= b1) + P(a1 >= b0) + P(a1 < b1),
/// local bound 3 for every d >= 2.
BellExpression zohren_gill(int d);

/// Weighted XOR game with circulant integer blocks,
///   sum_{xy} sum_{D} D * P(a - b = (-1)^{x+y}(D+1) - xy  mod d | xy).
/// Equals d * zohren_gill(d) - 3 on no-signaling behaviors; d = 2 is the
/// CHSH XOR game.
BellExpression gd_game(int d);

/// Fourier-type measurement bases: Alice phases phi_0 = 0, phi_1 = pi/d,
/// Bob phases theta_0 = -pi/2d, theta_1 = pi/2d. Rank-one projectors,
/// complete per input.
std::vector<std::vector<Matrix>> cglmp_alice_projectors(int d);  // [x][a]
std::vector<std::vector<Matrix>> cglmp_bob_projectors(int d);    // [y][b]

/// Kernel entries of the effective operators:
///   f0(k,k') = (2/d) sum_D D cos[(pi/2d)(k-k')(4D+3)],
///   f1(k,k') = f0(k,k') exp(-i pi (k-k')/d).
double kernel_f0(int d, int k, int kp);
Complex kernel_f1(int d, int k, int kp);

/// B(x,a) built directly from the kernels; must match the projector-sum
/// route through effective_operator on gd_game(d).
Matrix analytic_effective_operator(int d, int x, int a);

/// U_{a'a} = sum_k exp(-i 2pi (a'-a) k / d) |k><k|, mapping B(x,a) to B(x,a').
Matrix covariance_unitary_u(int d, int a_to, int a_from);
/// V = sum_k exp(-i pi k / d) |k><k|, mapping B(0,a) to B(1,a).
Matrix covariance_unitary_v(int d);

/// Schmidt vector that saturates the game: top eigenvector of B(0,0) with
/// the first nonzero component made real positive.
Eigen::VectorXd optimal_schmidt_vector(int d);

/// State sum_k beta_k |kk> with the Fourier measurements.
Realization cglmp_optimal_realization(int d);

/// The d = 3 cumulative game evaluated at its maximizer: six contexts
/// (x,a) in row order, reproducing the known lambda / expectation profile.
OwReport cglmp3_report(double tol = kDefaultOwTol);

}  // namespace bell
