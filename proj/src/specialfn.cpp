#include "cqmod/specialfn.hpp"

#include <cmath>
#include <limits>

namespace cqmod {

double elliptic_k(EllipticParameter param) {
    const double m = param.m;
    if (!(m >= 0.0) || m >= 1.0)
        throw domain_error("elliptic_k: parameter m must satisfy 0 <= m < 1");

    // AGM with a0 = 1, b0 = sqrt(1-m); K = pi / (2 * AGM(a0, b0)).
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    constexpr int max_iters = 40; // quadratic convergence; cap guards NaN
    for (int i = 0; i < max_iters; ++i) {
        if (std::abs(a - b) <= 4.0 * std::numeric_limits<double>::epsilon() * a) break;
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return M_PI / (a + b); // pi / (2 * agm), with agm = (a+b)/2 at termination
}

double modulus_from_beta(double beta) {
    if (!(beta > 0.0) || !(beta < M_PI / 2.0))
        throw domain_error("modulus_from_beta: beta must lie in (0, pi/2)");
    const double t = std::tan(0.5 * beta);
    const double m = t * t * t * t;
    return 2.0 * elliptic_k(m) / elliptic_k(1.0 - m);
}

ExtendedComplex cross_ratio(const ExtendedComplex& z1, const ExtendedComplex& z2,
                            const ExtendedComplex& z3, const ExtendedComplex& z4) {
    const ExtendedComplex* z[4] = {&z1, &z2, &z3, &z4};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (*z[i] == *z[j]) // two infinities compare equal and land here too
                throw degenerate_input_error("cross_ratio: points must be pairwise distinct");

    // (z3-z1)(z4-z2) / ((z3-z2)(z4-z1)); an infinite argument cancels the
    // two factors containing it.
    if (z1.is_infinity()) // (z4-z2)/(z3-z2)
        return (z4.value() - z2.value()) / (z3.value() - z2.value());
    if (z2.is_infinity()) // (z3-z1)/(z4-z1)
        return (z3.value() - z1.value()) / (z4.value() - z1.value());
    if (z3.is_infinity()) // (z4-z2)/(z4-z1)
        return (z4.value() - z2.value()) / (z4.value() - z1.value());
    if (z4.is_infinity()) // (z3-z1)/(z3-z2)
        return (z3.value() - z1.value()) / (z3.value() - z2.value());

    const complex num = (z3.value() - z1.value()) * (z4.value() - z2.value());
    const complex den = (z3.value() - z2.value()) * (z4.value() - z1.value());
    return num / den;
}

ExtendedComplex mobius_apply(const MobiusMap& map, const ExtendedComplex& z) {
    if (z.is_infinity()) {
        if (map.c == complex(0.0, 0.0)) return ExtendedComplex::infinity();
        return map.a / map.c;
    }
    const complex den = map.c * z.value() + map.d;
    if (den == complex(0.0, 0.0)) return ExtendedComplex::infinity();
    return (map.a * z.value() + map.b) / den;
}

double lambda_from_cross_ratio(double cr) {
    if (!(cr > 1.0))
        throw domain_error("lambda_from_cross_ratio: cross-ratio must exceed 1");
    // Roots of lambda^2 + (2-4cr) lambda + 1 multiply to 1; the one in (0,1)
    // is t - sqrt(t^2-1) with t = 2cr-1, evaluated in the cancellation-free
    // reciprocal form.
    const double t = 2.0 * cr - 1.0;
    return 1.0 / (t + std::sqrt((t - 1.0) * (t + 1.0)));
}

double half_plane_modulus(const ExtendedComplex& p1, const ExtendedComplex& p2,
                          const ExtendedComplex& p3, const ExtendedComplex& p4) {
    const ExtendedComplex cr = cross_ratio(p1, p2, p3, p4);
    if (cr.is_infinity())
        throw domain_error("half_plane_modulus: cross-ratio is infinite");
    if (std::abs(cr.value().imag()) > 1e-12 * std::max(1.0, std::abs(cr.value().real())))
        throw domain_error("half_plane_modulus: vertices are not concyclic on the real axis");
    const double lambda = lambda_from_cross_ratio(cr.value().real());
    return elliptic_k(1.0 - lambda * lambda) / (2.0 * elliptic_k(lambda * lambda));
}

std::vector<ExtendedComplex> pn_vertex_images(int n) {
    if (n < 4) throw domain_error("pn_vertex_images: n must be at least 4");
    std::vector<ExtendedComplex> images;
    images.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k <= n - 2; ++k)
        images.emplace_back(-std::cos(M_PI * k / (n - 2)));
    images.push_back(ExtendedComplex::infinity());
    return images;
}

} // namespace cqmod
