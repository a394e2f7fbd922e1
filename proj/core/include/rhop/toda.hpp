#pragma once

#include <cstddef>
#include <vector>

#include "rhop/opline.hpp"

namespace rhop {

/// Toda flow by the spectral map: reweight the spectral measure of L0 by
/// e^{2 lambda t}, renormalize and map back.
JacobiMatrix toda_flow_spectral(const JacobiMatrix& L0, double t);

struct TodaOdeOptions {
  double step = 1e-3;
  /// Allowed relative drift of trace(L^2) before the step is rejected.
  double drift_tolerance = 1e-8;
};

/// Classical RK4 on dL/dt = B(L) L - L B(L), B(L) antisymmetric with +b above
/// the diagonal.
JacobiMatrix toda_flow_ode(const JacobiMatrix& L0, double t, const TodaOdeOptions& opts = {});

/// Cross-differentiation check for the reweighted family: the monic
/// polynomials P_j(x; t) of the Toda-evolved measure satisfy
/// dP_{n+1}/dt = -2 b_n(t)^2 P_n.  The left side is obtained by advancing n
/// first (recurrence at fixed t, then a 5-point t-difference), the right by
/// advancing t first (flowed coefficients, then the recurrence).  Returns
/// the max coefficient discrepancy.
double toda_commutation_residual(const JacobiMatrix& L0, std::size_t n, double t, double h = 1e-3);

}  // namespace rhop
