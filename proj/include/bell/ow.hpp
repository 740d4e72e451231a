#pragma once

#include "bell/ns_algebra.hpp"
#include "bell/realization.hpp"

#include <array>
#include <optional>
#include <string>

namespace bell {

inline constexpr double kDefaultOwTol = 1e-7;

struct OwContext {
    std::vector<int> context;  // (x,a), (y,b) or (x,y,a,b)
    double weight = 0;
    double expectation = 0;
    double lambda_max = 0;
    double gap = 0;  // lambda_max - expectation, >= -tol
    bool zero_weight = false;
};

struct OwReport {
    Steering direction = Steering::kAliceToBob;
    double tol = kDefaultOwTol;
    std::vector<OwContext> contexts;
    bool verdict = false;   // all gaps <= tol among nonzero-weight contexts
    double max_gap = 0;     // over nonzero-weight contexts
};

/// Saturation check: for every steering context, does the steered state
/// reach the top eigenvalue of the effective operator? Zero-weight contexts
/// are flagged and excluded from the verdict.
OwReport ow_report(const BellExpression&, const Realization&, Steering,
                   double tol = kDefaultOwTol);

/// Bob's projectors rotated into the basis where the steered state for
/// context (x,a) is |0><0|. The common phase is fixed so q0 is real >= 0.
/// Applicability requires a pure steered qubit and real q1 after fixing.
struct ProjectorParams {
    double p0 = 0, q0 = 0, p1 = 0, q1 = 0;
    bool applicable = false;
    double imag_residual = 0;
    std::string note;
    std::optional<double> ratio() const  // r(x,a) = q0/q1
    {
        if (!applicable || std::abs(q1) < 1e-12) return std::nullopt;
        return q0 / q1;
    }
};

ProjectorParams projector_params(const Realization&, int x, int a,
                                 double tol = 1e-8);

/// Left side of the diagonality condition
///   q0 (V_{a0x0} - V_{a1x0}) + q1 (V_{a0x1} - V_{a1x1}) = 0.
double necessary_residual(const BellExpression&, const ProjectorParams&, int x, int a);

/// Table whose fourth column is determined by the ratios so the
/// diagonality condition holds identically:
///   row (x,a):  [ A  B | C  r(x,a)(A-B)+C ].
/// `free_vars` are row-major: {A,B,C, D,E,F, G,H,I, J,K,L}.
BellExpression ow_form(const std::array<double, 4>& ratios,
                       const std::array<double, 12>& free_vars);

/// Per-context normal form used when quoting bounds: subtract the largest
/// per-input constant shift (multiples of identity), then divide out a
/// uniform positive weight if all remaining coefficients share it.
/// lambda_quoted = (lambda_full - shift) / scale.
struct ContextReduction {
    double shift = 0;
    double scale = 1;
};
ContextReduction context_reduction(const BellExpression&, int x, int a);

/// One-parameter family base + Gamma * direction with an NS-constant
/// direction table.
struct GammaFamily {
    BellExpression base;
    BellExpression direction;
    double gamma_min = 0;
    double gamma_max = 1;

    BellExpression at(double gamma) const { return base + direction.scaled(gamma); }
};

struct GammaCandidate {
    int x = 0, a = 0;
    std::optional<double> gamma;
    double base_residual = 0;
    double direction_residual = 0;
};

struct GammaSolution {
    std::optional<double> gamma;
    std::vector<GammaCandidate> candidates;
    double spread = 0;
    std::optional<OwReport> report;
    std::string note;
};

/// The diagonality condition is affine in Gamma for each context; collect
/// the per-context roots, require agreement, and confirm saturation at the
/// common value.
GammaSolution solve_gamma(const GammaFamily&, const Realization&,
                          double agree_tol = 1e-6, double ow_tol = kDefaultOwTol);

struct OwSearchResult {
    std::optional<BellExpression> game;
    int rank = 0;
    double residual = 0;
    std::optional<OwReport> report;
    std::string note;
};

/// Search for an equivalent rewriting of `expr` (equal up to an NS constant)
/// that passes the saturation check at the given realization. Solves the
/// linear system {difference tables match modulo the stencil} together with
/// the per-context diagonality conditions, then verifies the candidate.
OwSearchResult ow_game_search(const BellExpression&, const Realization&,
                              double ow_tol = kDefaultOwTol);

}  // namespace bell
