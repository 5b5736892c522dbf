#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "cqmod/geometry.hpp"

namespace cqmod {

// Affine seed a + b * beta for the gamma search interval endpoints.
struct AffineSeed {
    double a;
    double b;
    double operator()(double beta) const { return a + b * beta; }
};

struct SolverConfig {
    OdeTolerance ode_tol = standard_tolerance();
    int iters_bracket = 10;
    int iters_gamma = 25;
    int iters_beta = 25;
    AffineSeed gamma_seed_low{0.7, -4.0 / M_PI};      // S-bracket lower seed
    AffineSeed gamma_seed_low_alt{0.75, -4.0 / M_PI}; // T-bracket lower seed
    AffineSeed gamma_seed_high{1.2, -3.0 / M_PI};     // shared upper seed
    double swap_detect_tol = 1e-5; // boundary-convergence residual threshold (x K)
    double refine_eps = 2e-6;      // half-width of the refinement boxes
    int refine_iters = 30;
    int max_swaps = 1;
};

struct IterationCounts {
    int beta_steps = 0;
    int gamma_steps = 0;
    int bracket_steps = 0;
    long rays = 0;
};

struct ModulusResult {
    // beta in the unswapped orientation: the reported modulus always equals
    // modulus_from_beta(beta) as stored, and conjugate_modulus = 1/modulus
    // as stored.
    double beta = 0.0;
    double gamma = 0.0;
    double modulus = 0.0;
    double conjugate_modulus = 0.0;
    bool swapped = false;
    double residual_ratio_st = 0.0; // |S/T - k| at the accepted parameters
    double residual_ratio_r = 0.0;  // |R2/R1 - K| at the accepted parameters
    std::optional<double> reciprocal_error; // eps_R, when a reciprocal check ran
    std::optional<int> error_number;        // eps_N = |ceil(log10 eps_R)|
    IterationCounts iterations;
    double wall_time_ms = 0.0;
};

struct GammaBracket {
    double a_gamma;
    double b_gamma;
};

// Feasible gamma window at fixed beta: B_gamma is the supremum of
// {gamma : S > 0} located by iters_bracket bisection steps on the sign of
// the fitted top-circle center S over [gamma_seed_low, gamma_seed_high];
// A_gamma is the infimum of {gamma : T > 0} located on the sign of the
// fitted right-circle center T over [gamma_seed_low_alt, gamma_seed_high].
// Both seed intervals are verified to straddle their sign change first
// (bracket-failure otherwise); the nested solve uses an unchecked variant
// internally so that a degenerate window at one outer step merely steers
// the beta bisection instead of aborting it.
GammaBracket gamma_bracket(double beta, const SolverConfig& config, const OdeTolerance& tol);

// Bisects the sign of (k T - S) over [A_gamma, B_gamma] (iters_gamma steps)
// and returns the matched gamma: the step keeps the upper end when
// k T < S and the lower end otherwise. The sign change is verified a small
// standoff inside the bracket first — the ends themselves sit on poles of
// T and S, where signs are numerical noise.
double solve_gamma(double beta, double k, const SolverConfig& config, const OdeTolerance& tol);

// Full nested identification of (beta, gamma) for a target spec: bisection
// of beta on the sign of (R2/R1 - K) over [0, pi/4] with solve_gamma at
// every step. Convergence onto the pi/4 boundary with an unresolved
// residual triggers the swap rule (t <-> s, r1 <-> r2, re-solve once,
// report beta_final = pi/2 - beta_swapped). An exactly symmetric spec
// (k = K = 1 within 1e-12) short-circuits to modulus 1 at beta = pi/4.
ModulusResult solve_beta(const QuadrilateralSpec& spec, const SolverConfig& config,
                         const OdeTolerance& tol);

// Re-runs the nested bisection in the boxes beta0 +- refine_eps,
// gamma0 +- refine_eps around a converged standard-mode seed (no bracket
// search), typically at tightened ODE tolerance. A refined solution that
// runs into a box edge means the seed was wrong and raises an
// inconsistency error.
ModulusResult refine(const ModulusResult& seed, const QuadrilateralSpec& spec,
                     const SolverConfig& config, const OdeTolerance& tol_refined);

// Solves the spec and its swapped counterpart independently and returns
// (eps_R, eps_N) with eps_R = |1 - Mod * Mod_swapped| and
// eps_N = |ceil(log10 eps_R)|.
std::pair<double, int> reciprocal_check(const QuadrilateralSpec& spec,
                                        const SolverConfig& config, const OdeTolerance& tol);

double reciprocal_error_from(const ModulusResult& primary, const ModulusResult& swapped);

// eps_N for a given eps_R; an eps_R of exactly zero (possible only on the
// fully symmetric short-circuit path) reports 324, the decimal floor of
// the smallest positive double.
int error_number(double eps_r);

} // namespace cqmod
