#pragma once

#include <utility>

#include "cqmod/specialfn.hpp"

namespace cqmod {

// Accessory parameters of the reduced two-parameter Schwarzian: beta is the
// preimage angle of the vertices (+-e^{+-i beta} on the unit circle), gamma
// the remaining real accessory parameter.
struct SchwarzParams {
    double beta;
    double gamma;
};

struct OdeTolerance {
    double rel_tol;
    double abs_tol;
    int max_steps;
};

// Defaults used by the solver: the standard stage runs at 1e-12, the
// refinement stage tightens to 1e-14 (about the double-precision floor).
OdeTolerance standard_tolerance();
OdeTolerance refined_tolerance();

struct OdeStats {
    int steps = 0;          // accepted steps
    int rejected = 0;       // rejected trial steps
    int rhs_evals = 0;      // coefficient evaluations
    double error_budget = 0.0;    // sum of accepted scaled local errors (each <= 1)
    double wronskian_drift = 0.0; // max relative drift of u'v - uv' from its x=0 value
};

// Endpoint data of one probe ray.
struct RaySolution {
    double theta = 0.0;
    complex u_end;
    complex v_end;
    complex f_end; // u_end / v_end, stored as computed
    OdeStats ode_stats;
};

// Coefficient F(x) of the ray equations u'' + F u = 0, v'' + F v = 0:
// with w = x^2 e^{2 i theta},
//   F = e^{2 i theta} [ e^{2ib}/(w - e^{2ib})^2 + e^{-2ib}/(w - e^{-2ib})^2
//                       - gamma / ((w - e^{2ib})(w - e^{-2ib})) ],  b = beta.
// Throws a singularity error when w hits one of the poles e^{+-2ib}
// (x = 1 with theta = +-beta mod pi).
complex schwarzian_coeff(double x, double theta, const SchwarzParams& params);

// Integrates u'' + F u = 0 (u(0) = 0, u'(0) = e^{i theta}) and
// v'' + F v = 0 (v(0) = 1, v'(0) = 0) jointly over x in [0, x_end] as a
// first-order system of four complex components, with an embedded
// Dormand-Prince 5(4) pair under PI step-size control, and returns the
// endpoint values together with f_end = u_end / v_end.
//
// Rays within 1e-6 of a singular direction (+-beta mod pi) are rejected up
// front; |v_end| < 1e-12 |u_end| is reported as a pole on the ray.
RaySolution solve_ray(const SchwarzParams& params, double theta, const OdeTolerance& tol,
                      double x_end = 1.0);

// Independent power-series oracle for the same initial-value problems:
// u(z) = z + sum a_{2k+1} z^{2k+1}, v(z) = 1 + sum b_{2k} z^{2k} evaluated at
// z = x e^{i theta}, using the coefficient recurrences
//   (2k+3)(2k+2) a_{2k+3} = - sum_{j=0..k} c_j a_{2(k-j)+1}
//   (2k+2)(2k+1) b_{2k+2} = - sum_{j=0..k} c_j b_{2(k-j)}
// with c_n = 2(n+1) cos(2(n+1) beta) - gamma sin(2(n+1) beta) / sin(2 beta).
// Restricted to |x| <= 0.6, where the tail of a 200-term sum is far below
// 1e-14 (the signed radius is accepted so parity is directly testable).
// Returns (u, v); n_terms counts coefficients kept in each series.
std::pair<complex, complex> series_eval(const SchwarzParams& params, double theta, double x,
                                        int n_terms = 200);

} // namespace cqmod
