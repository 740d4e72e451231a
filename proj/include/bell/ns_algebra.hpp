#pragma once

#include "bell/scenario.hpp"

#include <array>
#include <optional>

namespace bell {

/// Per-block coefficient differences of a (2,2,2,2) table. Slots per block
/// (x,y): top = V00-V01, left = V00-V10, right = V01-V11, bottom = V10-V11,
/// with the consistency relation top - bottom == left - right.
struct DifferenceTable {
    enum Slot { kTop = 0, kLeft = 1, kRight = 2, kBottom = 3 };
    std::array<std::array<double, 4>, 4> d{};  // [2*x+y][slot]

    double& at(int x, int y, int slot) { return d[2 * x + y][slot]; }
    double at(int x, int y, int slot) const { return d[2 * x + y][slot]; }
    bool consistent(double tol = 1e-9) const;
    double max_abs() const;
};

struct DeltaParams {
    double alpha = 0, beta = 0, gamma = 0, delta = 0;
    DeltaParams operator-() const { return {-alpha, -beta, -gamma, -delta}; }
};

DifferenceTable difference_table(const BellExpression&);

/// Entrywise addition of the no-signaling stencil:
///   block (0,0): top/bottom +alpha, left/right +gamma
///   block (0,1): top/bottom +beta,  left/right -gamma
///   block (1,0): top/bottom -alpha, left/right +delta
///   block (1,1): top/bottom -beta,  left/right -delta
DifferenceTable apply_delta(DifferenceTable, const DeltaParams&);
DifferenceTable delta_stencil(const DeltaParams&);

/// Rebuild a coefficient table from a difference table, fixing the gauge by
/// the prescribed per-block entry sums.
BellExpression lift_difference_table(const DifferenceTable&,
                                     const std::array<double, 4>& block_sums);

struct ConstantCertificate {
    double k = 0;
    /// Stencil parameters zeroing the difference table ((2,2,2,2) only).
    std::optional<DeltaParams> witness;
    /// Part of k written through per-block normalization after reduction.
    double residual_constant = 0;
    /// Numeric residual of the certification route.
    double residual = 0;
};

/// Value taken by the expression on every deterministic behavior, if that
/// value is unique within tol. Deterministic points affinely span the
/// no-signaling set, so constancy there is constancy on all NS behaviors.
std::optional<double> ns_constant_value(const BellExpression&, double tol = 1e-9);

/// Algebraic route for (2,2,2,2): zero the difference table with the stencil
/// and read the constant off the block-constant remainder. Other scenarios
/// fall back to enumeration (no witness).
std::optional<ConstantCertificate> ns_constant_certificate(const BellExpression&,
                                                           double tol = 1e-9);

/// Certificate that a - b is constant on no-signaling behaviors; k is that
/// constant.
std::optional<ConstantCertificate> ns_equivalent(const BellExpression& a,
                                                 const BellExpression& b,
                                                 double tol = 1e-9);

/// The twelve (2,2,2,2) generator tables representing the constant k:
/// four normalization, four Bob-no-signaling, four Alice-no-signaling.
std::vector<BellExpression> constant_basis(const Scenario&, double k);

}  // namespace bell
