#pragma once

#include "bell/ow.hpp"

namespace bell {

/// Parity game over the setting triples {000, 011, 101, 110}: win when
/// a xor b xor c equals the OR of the settings. Local bound 3, quantum
/// maximum 4.
BellExpression mermin_expression();

/// (|000> + |111>)/sqrt(2) with the x-basis for input 0 and the y-basis for
/// input 1 on every party.
Realization ghz_realization();

/// Saturation report for the two tripartite steering types:
/// kOneToTwo — one box steers two characterised devices, contexts (x,a);
/// kTwoToOne — two boxes steer one characterised device, contexts (x,y,a,b).
OwReport tripartite_ow_report(const BellExpression&, const Realization&,
                              Steering type, double tol = kDefaultOwTol);

/// <A0B0C0> - <A0B1C1> - <A1B0C1> - <A1B1C0>; equals 2*I - 4 on the parity
/// game value I.
double mermin_correlator(const Behavior&);

}  // namespace bell
