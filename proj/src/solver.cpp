#include "cqmod/solver.hpp"

#include <chrono>
#include <sstream>

namespace cqmod {

namespace {

// Shared probe machinery for one (spec-independent) working frame. All
// evaluations run at fixed probe angles derived from the current beta.
struct Evaluator {
    const SolverConfig& config;
    const OdeTolerance& tol;
    IterationCounts counts;

    explicit Evaluator(const SolverConfig& config_, const OdeTolerance& tol_)
        : config(config_), tol(tol_) {}

    // Top-circle center S from the theta3/theta4 probes.
    double eval_S(double beta, double gamma) {
        const SchwarzParams p{beta, gamma};
        const RaySolution r3 = solve_ray(p, 0.25 * M_PI + 0.5 * beta, tol);
        const RaySolution r4 = solve_ray(p, 0.5 * M_PI, tol);
        counts.rays += 2;
        return fit_circle_imag_axis(r3.f_end.real(), r3.f_end.imag(), r4.f_end.imag()).center;
    }

    // Right-circle center T from the theta1/theta2 probes.
    double eval_T(double beta, double gamma) {
        const SchwarzParams p{beta, gamma};
        const RaySolution r1 = solve_ray(p, 0.0, tol);
        const RaySolution r2 = solve_ray(p, 0.5 * beta, tol);
        counts.rays += 2;
        return fit_circle_real_axis(r1.f_end.real(), r2.f_end.real(), r2.f_end.imag()).center;
    }

    QuadGeometry probes(double beta, double gamma) {
        counts.rays += 4;
        return probe_geometry(SchwarzParams{beta, gamma}, tol);
    }

    // When checked, the seed windows must visibly straddle the S and T sign
    // changes and the loops may not collapse onto a window end; the solve
    // path runs unchecked, where a collapsed window still produces a usable
    // residual sign for the outer beta bisection to steer by.
    GammaBracket bracket(double beta, bool checked) {
        const double lo_s = config.gamma_seed_low(beta);
        const double lo_t = config.gamma_seed_low_alt(beta);
        const double hi = config.gamma_seed_high(beta);

        if (checked) {
            const double s_lo = eval_S(beta, lo_s), s_hi = eval_S(beta, hi);
            if (!(s_lo > 0.0) || !(s_hi < 0.0)) {
                std::ostringstream msg;
                msg << "gamma_bracket: no S sign change over seeds [" << lo_s << ", " << hi
                    << "] at beta = " << beta << " (S = " << s_lo << ", " << s_hi << ")";
                throw solver_error(errc::bracket_failure, msg.str());
            }
            const double t_lo = eval_T(beta, lo_t), t_hi = eval_T(beta, hi);
            if (!(t_lo < 0.0) || !(t_hi > 0.0)) {
                std::ostringstream msg;
                msg << "gamma_bracket: no T sign change over seeds [" << lo_t << ", " << hi
                    << "] at beta = " << beta << " (T = " << t_lo << ", " << t_hi << ")";
                throw solver_error(errc::bracket_failure, msg.str());
            }
        }

        double lo = lo_s, up = hi, b_gamma = 0.5 * (lo + up);
        for (int i = 0; i < config.iters_bracket; ++i) {
            b_gamma = 0.5 * (lo + up);
            if (eval_S(beta, b_gamma) < 0.0)
                up = b_gamma;
            else
                lo = b_gamma;
            counts.bracket_steps += 1;
        }

        lo = lo_t;
        up = hi;
        double a_gamma = 0.5 * (lo + up);
        for (int i = 0; i < config.iters_bracket; ++i) {
            a_gamma = 0.5 * (lo + up);
            if (eval_T(beta, a_gamma) > 0.0)
                up = a_gamma;
            else
                lo = a_gamma;
            counts.bracket_steps += 1;
        }

        if (checked && !(a_gamma < b_gamma)) {
            std::ostringstream msg;
            msg << "gamma_bracket: empty feasible window at beta = " << beta
                << " (A_gamma = " << a_gamma << ", B_gamma = " << b_gamma << ")";
            throw solver_error(errc::infeasible, msg.str());
        }
        return {a_gamma, b_gamma};
    }

    // Bisection of (k T - S) over a given gamma interval. Returns the last
    // midpoint and its probe geometry.
    std::pair<double, QuadGeometry> bisect_gamma(double beta, double k, double lo, double up,
                                                 int iters) {
        double gamma = 0.5 * (lo + up);
        QuadGeometry geo{};
        for (int i = 0; i < iters; ++i) {
            gamma = 0.5 * (lo + up);
            geo = probes(beta, gamma);
            if (k * geo.T < geo.S)
                up = gamma;
            else
                lo = gamma;
            counts.gamma_steps += 1;
        }
        return {gamma, geo};
    }

    // A_gamma and B_gamma are pole locations of T and S: just inside the
    // window T -> +inf (so k T - S -> +inf) and S -> +inf (k T - S -> -inf).
    // The + -> - orientation of the bisection is therefore structural, and
    // the endpoints themselves must not be evaluated (their signs are noise
    // from whichever side of the pole the bracket midpoint landed on).
    std::pair<double, QuadGeometry> gamma_in_bracket(double beta, double k) {
        const GammaBracket br = bracket(beta, /*checked=*/false);
        return bisect_gamma(beta, k, br.a_gamma, br.b_gamma, config.iters_gamma);
    }

    // Root-bracketing verification for the standalone gamma solve: sample
    // k T - S a small standoff inside the bracket (never at the pole
    // estimates themselves) and require the structural + -> - orientation.
    void check_root_bracketed(double beta, double k, const GammaBracket& br) {
        const double delta = (br.b_gamma - br.a_gamma) / 64.0;
        const QuadGeometry glo = probes(beta, br.a_gamma + delta);
        const QuadGeometry ghi = probes(beta, br.b_gamma - delta);
        const double f_lo = k * glo.T - glo.S;
        const double f_hi = k * ghi.T - ghi.S;
        if (!(f_lo > 0.0) || !(f_hi < 0.0)) {
            std::ostringstream msg;
            msg << "solve_gamma: k T - S does not change sign inside [" << br.a_gamma << ", "
                << br.b_gamma << "] at beta = " << beta << ", k = " << k << " (values " << f_lo
                << ", " << f_hi << ")";
            throw solver_error(errc::bracket_failure, msg.str());
        }
    }
};

ModulusResult finish(double beta_frame, double gamma, const QuadGeometry& geo, double k,
                     double K, bool swapped, Evaluator& ev,
                     std::chrono::steady_clock::time_point start) {
    ModulusResult res;
    res.swapped = swapped;
    res.beta = swapped ? M_PI / 2.0 - beta_frame : beta_frame;
    res.gamma = gamma;
    res.modulus = modulus_from_beta(res.beta);
    res.conjugate_modulus = 1.0 / res.modulus;
    res.residual_ratio_st = std::abs(geo.S / geo.T - k);
    res.residual_ratio_r = std::abs(geo.R2 / geo.R1 - K);
    res.iterations = ev.counts;
    res.wall_time_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    return res;
}

// One pass of the outer beta bisection in the current working frame.
// Returns the converged result, or nullopt when the iteration ran into the
// pi/4 boundary with an unresolved residual (the swap signal).
std::optional<ModulusResult> solve_frame(const QuadrilateralSpec& spec, bool swapped,
                                         Evaluator& ev,
                                         std::chrono::steady_clock::time_point start) {
    const double k = spec.k();
    const double K = spec.K();

    double ba = 0.0, bb = M_PI / 4.0;
    bool lower_updated = false, upper_updated = false;
    double b = 0.5 * (ba + bb);
    double gamma = 0.0;
    QuadGeometry geo{};
    for (int i = 0; i < ev.config.iters_beta; ++i) {
        b = 0.5 * (ba + bb);
        auto [g, gg] = ev.gamma_in_bracket(b, k);
        gamma = g;
        geo = gg;
        if (geo.R2 / geo.R1 < K) {
            bb = b;
            upper_updated = true;
        } else {
            ba = b;
            lower_updated = true;
        }
        ev.counts.beta_steps += 1;
    }

    const double residual_r = std::abs(geo.R2 / geo.R1 - K);
    if (residual_r <= ev.config.swap_detect_tol * K)
        return finish(b, gamma, geo, k, K, swapped, ev, start);
    if (!upper_updated) return std::nullopt; // ran into pi/4: conjugate orientation
    std::ostringstream msg;
    msg << "solve_beta: bisection " << (lower_updated ? "" : "ran into beta = 0 ")
        << "failed to resolve |R2/R1 - K| (final beta = " << b << ", residual = " << residual_r
        << ", k = " << k << ", K = " << K << ")";
    throw solver_error(errc::non_convergence, msg.str());
}

void validate_config(const SolverConfig& config) {
    if (config.iters_bracket < 1 || config.iters_gamma < 1 || config.iters_beta < 1 ||
        config.refine_iters < 1)
        throw domain_error("SolverConfig: iteration counts must be at least 1");
    if (!(config.refine_eps > 0.0))
        throw domain_error("SolverConfig: refine_eps must be positive");
}

} // namespace

GammaBracket gamma_bracket(double beta, const SolverConfig& config, const OdeTolerance& tol) {
    validate_config(config);
    Evaluator ev(config, tol);
    return ev.bracket(beta, /*checked=*/true);
}

double solve_gamma(double beta, double k, const SolverConfig& config, const OdeTolerance& tol) {
    validate_config(config);
    if (!(k > 0.0) || !std::isfinite(k))
        throw domain_error("solve_gamma: k must be positive and finite");
    Evaluator ev(config, tol);
    const GammaBracket br = ev.bracket(beta, /*checked=*/true);
    ev.check_root_bracketed(beta, k, br);
    return ev.bisect_gamma(beta, k, br.a_gamma, br.b_gamma, config.iters_gamma).first;
}

ModulusResult solve_beta(const QuadrilateralSpec& input, const SolverConfig& config,
                         const OdeTolerance& tol) {
    validate_config(config);
    const auto start = std::chrono::steady_clock::now();
    const QuadrilateralSpec spec =
        QuadrilateralSpec::validated(input.t, input.s, input.r1, input.r2);

    Evaluator ev(config, tol);

    // Fully symmetric target: modulus 1 at beta = pi/4 by symmetry; a single
    // gamma identification still reports gamma and the residuals.
    if (std::abs(spec.k() - 1.0) <= 1e-12 && std::abs(spec.K() - 1.0) <= 1e-12) {
        auto [gamma, geo] = ev.gamma_in_bracket(M_PI / 4.0, 1.0);
        ModulusResult res = finish(M_PI / 4.0, gamma, geo, 1.0, 1.0, false, ev, start);
        res.beta = M_PI / 4.0;
        return res;
    }

    std::optional<ModulusResult> res = solve_frame(spec, false, ev, start);
    int swaps = 0;
    QuadrilateralSpec frame = spec;
    while (!res) {
        if (swaps >= config.max_swaps) {
            std::ostringstream msg;
            msg << "solve_beta: beta ran into pi/4 with an unresolved residual and the swap "
                   "budget ("
                << config.max_swaps << ") is exhausted";
            throw solver_error(errc::non_convergence, msg.str());
        }
        frame = frame.swapped();
        ++swaps;
        res = solve_frame(frame, swaps % 2 == 1, ev, start);
    }
    return *res;
}

ModulusResult refine(const ModulusResult& seed, const QuadrilateralSpec& spec,
                     const SolverConfig& config, const OdeTolerance& tol_refined) {
    validate_config(config);
    const auto start = std::chrono::steady_clock::now();

    const QuadrilateralSpec frame = seed.swapped ? spec.swapped() : spec;
    const double b0 = seed.swapped ? M_PI / 2.0 - seed.beta : seed.beta;
    const double g0 = seed.gamma;
    const double eps = config.refine_eps;
    const double k = frame.k();
    const double K = frame.K();

    Evaluator ev(config, tol_refined);

    // The beta box must straddle the residual's sign change, with gamma
    // identified inside its own box at both ends; otherwise the seed lied.
    double residual_sign[2];
    const double ends[2] = {b0 - eps, b0 + eps};
    for (int i = 0; i < 2; ++i) {
        auto [gamma, geo] =
            ev.bisect_gamma(ends[i], k, g0 - eps, g0 + eps, config.refine_iters);
        (void)gamma;
        residual_sign[i] = geo.R2 / geo.R1 - K;
    }
    if (!(residual_sign[0] * residual_sign[1] < 0.0)) {
        std::ostringstream msg;
        msg << "refine: |R2/R1 - K| does not change sign across [" << ends[0] << ", " << ends[1]
            << "] (values " << residual_sign[0] << ", " << residual_sign[1]
            << "); the seed is inconsistent";
        throw solver_error(errc::inconsistency, msg.str());
    }

    double ba = ends[0], bb = ends[1];
    double b = b0, gamma = g0;
    QuadGeometry geo{};
    for (int i = 0; i < config.refine_iters; ++i) {
        b = 0.5 * (ba + bb);
        auto [g, gg] = ev.bisect_gamma(b, k, g0 - eps, g0 + eps, config.refine_iters);
        gamma = g;
        geo = gg;
        if (geo.R2 / geo.R1 < K)
            bb = b;
        else
            ba = b;
        ev.counts.beta_steps += 1;
    }

    // A solution hugging a box edge means the standard-mode seed was off by
    // nearly refine_eps — treat as an inconsistent seed, not convergence.
    if (std::abs(b - b0) > 0.95 * eps || std::abs(gamma - g0) > 0.95 * eps) {
        std::ostringstream msg;
        msg << "refine: refined parameters (beta = " << b << ", gamma = " << gamma
            << ") ran into the seed box around (" << b0 << ", " << g0 << ")";
        throw solver_error(errc::inconsistency, msg.str());
    }

    return finish(b, gamma, geo, k, K, seed.swapped, ev, start);
}

double reciprocal_error_from(const ModulusResult& primary, const ModulusResult& swapped) {
    return std::abs(1.0 - primary.modulus * swapped.modulus);
}

int error_number(double eps_r) {
    if (eps_r <= 0.0) return 324; // |ceil(log10 x)| of the smallest positive double
    return static_cast<int>(std::abs(std::ceil(std::log10(eps_r))));
}

std::pair<double, int> reciprocal_check(const QuadrilateralSpec& spec,
                                        const SolverConfig& config, const OdeTolerance& tol) {
    const ModulusResult primary = solve_beta(spec, config, tol);
    const ModulusResult conjugate = solve_beta(spec.swapped(), config, tol);
    const double eps_r = reciprocal_error_from(primary, conjugate);
    return {eps_r, error_number(eps_r)};
}

} // namespace cqmod
