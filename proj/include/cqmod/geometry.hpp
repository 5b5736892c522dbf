#pragma once

#include <array>
#include <optional>

#include "cqmod/schwarz_ode.hpp"

namespace cqmod {

// Target quadrilateral: the domain between four mutually tangent circles of
// radii r1 (centered at +-t on the real axis) and r2 (centered at +-i s),
// symmetric about both axes. External tangency forces t^2 + s^2 = (r1+r2)^2.
struct QuadrilateralSpec {
    double t;
    double s;
    double r1;
    double r2;

    double k() const { return s / t; }
    double K() const { return r2 / r1; }

    // Validates positivity, the tangency identity (relative 1e-9) and the
    // vertex-location constraints t > r1, s > r2.
    static QuadrilateralSpec validated(double t, double s, double r1, double r2);

    QuadrilateralSpec swapped() const { return {s, t, r2, r1}; }

    double tangency_residual() const {
        const double rr = (r1 + r2) * (r1 + r2);
        return std::abs(t * t + s * s - rr) / rr;
    }
};

struct CircleFit {
    double center;
    double radius;
};

// Image-quadrilateral circle data recovered from boundary probes: the right
// circle (center T, radius R1) and the top circle (center i S, radius R2),
// together with the four probe rays used.
struct QuadGeometry {
    double T;
    double R1;
    double S;
    double R2;
    std::array<RaySolution, 4> probes;
};

// Probe directions used by probe_geometry; theta1/theta4 must stay on the
// coordinate axes (the fits read only one coordinate there), theta2 may be
// any direction in (0, beta) and theta3 any in (beta, pi/2).
struct ProbeAngles {
    double theta2;
    double theta3;
};

// The (alpha, j) test family: t = 1 + 0.2 j (1/cos(alpha) - 1),
// s = t sin(alpha) / (t - cos(alpha)), with radii reaching the unit-circle
// vertex e^{i alpha}: r1 = |e^{i alpha} - t|, r2 = |e^{i alpha} - i s|.
// The three centers t, e^{i alpha}, i s are collinear by construction, so
// the tangency identity holds to round-off.
QuadrilateralSpec quad_from_alpha_j(double alpha, int j);

// Center/radius of the circle through (x1, 0) and (x2, y2) with center on
// the real axis: T = (x1 + x2 + y2^2/(x2 - x1)) / 2, R1 = |T - x1|.
CircleFit fit_circle_real_axis(double x1, double x2, double y2);

// Center/radius of the circle through (x3, y3) and (0, y4) with center on
// the imaginary axis: S = (y3 + y4 + x3^2/(y3 - y4)) / 2, R2 = |y4 - S|.
CircleFit fit_circle_imag_axis(double x3, double y3, double y4);

// Integrates the four probe rays theta = 0, beta/2, pi/4 + beta/2, pi/2
// (theta2/theta3 overridable), checks the axis-symmetry of the endpoint
// values (|Im f(1)| and |Re f(i)| at most 1e-8 relative), and returns both
// circle fits.
QuadGeometry probe_geometry(const SchwarzParams& params, const OdeTolerance& tol,
                            const std::optional<ProbeAngles>& angles = std::nullopt);

} // namespace cqmod
