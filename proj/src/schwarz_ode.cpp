#include "cqmod/schwarz_ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace cqmod {

OdeTolerance standard_tolerance() { return {1e-12, 1e-12, 100000}; }
OdeTolerance refined_tolerance() { return {1e-14, 1e-14, 400000}; }

namespace {

void validate(const SchwarzParams& params) {
    if (!(params.beta > 0.0) || !(params.beta < M_PI / 2.0))
        throw domain_error("SchwarzParams: beta must lie in (0, pi/2)");
    if (!std::isfinite(params.gamma))
        throw domain_error("SchwarzParams: gamma must be finite");
}

// Distance of theta to the nearest singular ray direction +-beta (mod pi).
double singular_direction_distance(double theta, double beta) {
    double r = std::fmod(theta, M_PI);
    if (r < 0.0) r += M_PI;
    return std::min(std::abs(r - beta), std::abs(r - (M_PI - beta)));
}

// Evaluates F with the pole factors precomputed once per ray.
struct Coefficient {
    complex e2t;   // e^{2 i theta}
    complex p;     // e^{2 i beta}
    complex q;     // e^{-2 i beta}
    double gamma;

    Coefficient(const SchwarzParams& params, double theta)
        : e2t(std::polar(1.0, 2.0 * theta)),
          p(std::polar(1.0, 2.0 * params.beta)),
          q(std::polar(1.0, -2.0 * params.beta)),
          gamma(params.gamma) {}

    complex operator()(double x) const {
        const complex w = (x * x) * e2t;
        const complex d1 = w - p;
        const complex d2 = w - q;
        if (std::norm(d1) < 1e-28 || std::norm(d2) < 1e-28)
            throw singularity_error("schwarzian_coeff: evaluation at a pole (x = 1 on a "
                                    "singular direction)");
        const complex i1 = 1.0 / d1;
        const complex i2 = 1.0 / d2;
        return e2t * (p * (i1 * i1) + q * (i2 * i2) - gamma * (i1 * i2));
    }
};

// State of the first-order system: (u, u', v, v').
using State = std::array<complex, 4>;

State rhs(const Coefficient& coeff, double x, const State& y) {
    const complex F = coeff(x);
    return {y[1], -F * y[0], y[3], -F * y[2]};
}

State axpy(const State& y, double h, const State& k) {
    State r;
    for (int i = 0; i < 4; ++i) r[i] = y[i] + h * k[i];
    return r;
}

double scaled_norm(const State& e, const State& y0, const State& y1, const OdeTolerance& tol) {
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double sc = tol.abs_tol + tol.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double r = std::abs(e[i]) / sc;
        sum += r * r;
    }
    return std::sqrt(sum / 4.0);
}

// Dormand-Prince 5(4) coefficients. The last row of A equals the 5th-order
// weights (FSAL); E holds the difference between the 5th- and 4th-order
// weights, so the embedded error is h * sum E_j k_j.
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200,
                 E6 = 22.0 / 525, E7 = -1.0 / 40;

struct StepResult {
    State y;
    State k_last; // rhs at the step endpoint, reusable as the next k1
    double err;
};

StepResult dopri5_step(const Coefficient& coeff, double x, const State& y, const State& k1,
                       double h, const OdeTolerance& tol) {
    State k2 = rhs(coeff, x + C2 * h, axpy(y, h * A21, k1));
    State t3;
    for (int i = 0; i < 4; ++i) t3[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
    State k3 = rhs(coeff, x + C3 * h, t3);
    State t4;
    for (int i = 0; i < 4; ++i) t4[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
    State k4 = rhs(coeff, x + C4 * h, t4);
    State t5;
    for (int i = 0; i < 4; ++i)
        t5[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
    State k5 = rhs(coeff, x + C5 * h, t5);
    State t6;
    for (int i = 0; i < 4; ++i)
        t6[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
    State k6 = rhs(coeff, x + h, t6);
    State ynew;
    for (int i = 0; i < 4; ++i)
        ynew[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
    State k7 = rhs(coeff, x + h, ynew);
    State errv;
    for (int i = 0; i < 4; ++i)
        errv[i] = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] +
                       E7 * k7[i]);
    return {ynew, k7, scaled_norm(errv, y, ynew, tol)};
}

double initial_step(const Coefficient& coeff, const State& y0, const State& k0, double x_end,
                    const OdeTolerance& tol) {
    auto norm_sc = [&](const State& v, const State& ref) {
        double sum = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double sc = tol.abs_tol + tol.rel_tol * std::abs(ref[i]);
            const double r = std::abs(v[i]) / sc;
            sum += r * r;
        }
        return std::sqrt(sum / 4.0);
    };
    const double d0 = norm_sc(y0, y0);
    const double d1 = norm_sc(k0, y0);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, x_end);
    const State y1 = axpy(y0, h0, k0);
    const State k1 = rhs(coeff, h0, y1);
    State diff;
    for (int i = 0; i < 4; ++i) diff[i] = k1[i] - k0[i];
    const double d2 = norm_sc(diff, y0) / h0;
    const double dm = std::max(d1, d2);
    const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
    return std::min({100.0 * h0, h1, x_end});
}

} // namespace

complex schwarzian_coeff(double x, double theta, const SchwarzParams& params) {
    validate(params);
    return Coefficient(params, theta)(x);
}

RaySolution solve_ray(const SchwarzParams& params, double theta, const OdeTolerance& tol,
                      double x_end) {
    validate(params);
    if (!(tol.rel_tol > 0.0) || !(tol.abs_tol > 0.0) || tol.max_steps <= 0)
        throw domain_error("solve_ray: tolerances must be positive, max_steps > 0");
    if (!(x_end > 0.0) || x_end > 1.0)
        throw domain_error("solve_ray: x_end must lie in (0, 1]");
    if (x_end == 1.0 && singular_direction_distance(theta, params.beta) < 1e-6)
        throw singularity_error("solve_ray: ray direction within 1e-6 of a singular "
                                "direction (+-beta mod pi)");

    const Coefficient coeff(params, theta);
    const complex w0 = std::polar(1.0, theta); // Wronskian u'v - uv' at x = 0

    State y = {complex(0.0), w0, complex(1.0), complex(0.0)};
    State k1 = rhs(coeff, 0.0, y);
    OdeStats stats;
    stats.rhs_evals = 1;

    double x = 0.0;
    double h = initial_step(coeff, y, k1, x_end, tol);
    stats.rhs_evals += 1;

    // PI step-size controller constants (safety 0.9, memory exponent 0.04).
    constexpr double kSafety = 0.9, kBeta = 0.04, kExpo = 0.2 - kBeta * 0.75;
    constexpr double kMaxScale = 5.0, kMinScale = 0.2;
    double facold = 1e-4;
    bool last_rejected = false;

    while (x < x_end) {
        if (stats.steps + stats.rejected >= tol.max_steps)
            throw integration_error(errc::max_steps_exceeded,
                                    "solve_ray: step budget exhausted at theta = " +
                                        std::to_string(theta));
        h = std::min(h, x_end - x);
        const StepResult step = dopri5_step(coeff, x, y, k1, h, tol);
        stats.rhs_evals += 6;

        if (step.err <= 1.0) {
            x = (x_end - x <= h) ? x_end : x + h;
            y = step.y;
            k1 = step.k_last;
            stats.steps += 1;
            stats.error_budget += step.err;

            const complex w = y[1] * y[2] - y[0] * y[3];
            stats.wronskian_drift = std::max(stats.wronskian_drift, std::abs(w - w0));

            const double fac11 = std::pow(std::max(step.err, 1e-16), kExpo);
            double scale = kSafety / (fac11 / std::pow(facold, kBeta));
            scale = std::clamp(scale, kMinScale, kMaxScale);
            if (last_rejected) scale = std::min(scale, 1.0);
            h *= scale;
            facold = std::max(step.err, 1e-4);
            last_rejected = false;
        } else {
            stats.rejected += 1;
            const double fac11 = std::pow(step.err, kExpo);
            h *= std::max(kMinScale, kSafety / fac11);
            last_rejected = true;
        }
    }

    RaySolution sol;
    sol.theta = theta;
    sol.u_end = y[0];
    sol.v_end = y[2];
    sol.ode_stats = stats;
    if (std::abs(sol.v_end) < 1e-12 * std::abs(sol.u_end))
        throw integration_error(errc::pole_on_ray,
                                "solve_ray: |v| vanished at the ray endpoint, theta = " +
                                    std::to_string(theta));
    sol.f_end = sol.u_end / sol.v_end;
    return sol;
}

std::pair<complex, complex> series_eval(const SchwarzParams& params, double theta, double x,
                                        int n_terms) {
    validate(params);
    if (std::abs(x) > 0.6)
        throw domain_error("series_eval: |x| must not exceed 0.6 (validated region)");
    if (n_terms < 1) throw domain_error("series_eval: n_terms must be positive");

    const std::size_t n = static_cast<std::size_t>(n_terms);
    const double s2b = std::sin(2.0 * params.beta);
    std::vector<double> c(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double arg = 2.0 * static_cast<double>(j + 1) * params.beta;
        c[j] = 2.0 * static_cast<double>(j + 1) * std::cos(arg) -
               params.gamma * std::sin(arg) / s2b;
    }

    // a[k] = a_{2k+1} (odd series, a_1 = 1), b[k] = b_{2k} (even, b_0 = 1);
    // both real because the c_n are real.
    std::vector<double> a(n, 0.0), b(n, 0.0);
    a[0] = 1.0;
    b[0] = 1.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        double sa = 0.0, sb = 0.0;
        for (std::size_t j = 0; j <= k; ++j) {
            sa += c[j] * a[k - j];
            sb += c[j] * b[k - j];
        }
        const double kk = static_cast<double>(k);
        a[k + 1] = -sa / ((2.0 * kk + 3.0) * (2.0 * kk + 2.0));
        b[k + 1] = -sb / ((2.0 * kk + 2.0) * (2.0 * kk + 1.0));
    }

    const complex z = x * std::polar(1.0, theta);
    const complex w = z * z;
    complex pu(0.0), pv(0.0);
    for (std::size_t k = n; k-- > 0;) {
        pu = pu * w + a[k];
        pv = pv * w + b[k];
    }
    return {z * pu, pv};
}

} // namespace cqmod
