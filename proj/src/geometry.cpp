#include "cqmod/geometry.hpp"

#include <cmath>

namespace cqmod {

QuadrilateralSpec QuadrilateralSpec::validated(double t, double s, double r1, double r2) {
    if (!(t > 0.0) || !(s > 0.0) || !(r1 > 0.0) || !(r2 > 0.0))
        throw domain_error("QuadrilateralSpec: t, s, r1, r2 must be positive");
    QuadrilateralSpec spec{t, s, r1, r2};
    if (spec.tangency_residual() > 1e-9)
        throw domain_error("QuadrilateralSpec: tangency t^2 + s^2 = (r1 + r2)^2 violated "
                           "(relative residual exceeds 1e-9)");
    if (!(t > r1) || !(s > r2))
        throw domain_error("QuadrilateralSpec: vertices require t > r1 and s > r2");
    return spec;
}

QuadrilateralSpec quad_from_alpha_j(double alpha, int j) {
    if (!(alpha > 0.0) || !(alpha < M_PI / 2.0))
        throw domain_error("quad_from_alpha_j: alpha must lie in (0, pi/2)");
    if (j < 1 || j > 5) throw domain_error("quad_from_alpha_j: j must lie in 1..5");

    const double ca = std::cos(alpha);
    const double t = 1.0 + 0.2 * j * (1.0 / ca - 1.0);
    if (!(t > ca)) throw domain_error("quad_from_alpha_j: degenerate family member (t <= cos alpha)");
    const double s = t * std::sin(alpha) / (t - ca);
    const complex v = std::polar(1.0, alpha);
    const double r1 = std::abs(v - complex(t, 0.0));
    const double r2 = std::abs(v - complex(0.0, s));
    return QuadrilateralSpec::validated(t, s, r1, r2);
}

CircleFit fit_circle_real_axis(double x1, double x2, double y2) {
    if (x1 == x2)
        throw degenerate_input_error("fit_circle_real_axis: x1 = x2 (infinite radius)");
    const double T = 0.5 * (x1 + x2 + y2 * y2 / (x2 - x1));
    return {T, std::abs(T - x1)};
}

CircleFit fit_circle_imag_axis(double x3, double y3, double y4) {
    if (y3 == y4)
        throw degenerate_input_error("fit_circle_imag_axis: y3 = y4 (infinite radius)");
    const double S = 0.5 * (y3 + y4 + x3 * x3 / (y3 - y4));
    return {S, std::abs(y4 - S)};
}

QuadGeometry probe_geometry(const SchwarzParams& params, const OdeTolerance& tol,
                            const std::optional<ProbeAngles>& angles) {
    const double beta = params.beta;
    double theta2 = 0.5 * beta;
    double theta3 = 0.25 * M_PI + 0.5 * beta;
    if (angles) {
        theta2 = angles->theta2;
        theta3 = angles->theta3;
        if (!(theta2 > 0.0) || !(theta2 < beta))
            throw domain_error("probe_geometry: theta2 must lie in (0, beta)");
        if (!(theta3 > beta) || !(theta3 < M_PI / 2.0))
            throw domain_error("probe_geometry: theta3 must lie in (beta, pi/2)");
    }

    QuadGeometry geo;
    geo.probes[0] = solve_ray(params, 0.0, tol);
    geo.probes[1] = solve_ray(params, theta2, tol);
    geo.probes[2] = solve_ray(params, theta3, tol);
    geo.probes[3] = solve_ray(params, 0.5 * M_PI, tol);

    const complex f1 = geo.probes[0].f_end;
    const complex f2 = geo.probes[1].f_end;
    const complex f3 = geo.probes[2].f_end;
    const complex f4 = geo.probes[3].f_end;

    // f maps the axes to the axes; a violation means the integration was not
    // accurate enough for the requested use.
    if (std::abs(f1.imag()) > 1e-8 * std::abs(f1))
        throw integration_error(errc::accuracy_loss,
                                "probe_geometry: Im f(1) symmetry check failed");
    if (std::abs(f4.real()) > 1e-8 * std::abs(f4))
        throw integration_error(errc::accuracy_loss,
                                "probe_geometry: Re f(i) symmetry check failed");

    const CircleFit right = fit_circle_real_axis(f1.real(), f2.real(), f2.imag());
    const CircleFit top = fit_circle_imag_axis(f3.real(), f3.imag(), f4.imag());
    geo.T = right.center;
    geo.R1 = right.radius;
    geo.S = top.center;
    geo.R2 = top.radius;
    return geo;
}

} // namespace cqmod
