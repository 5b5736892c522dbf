#pragma once

#include <complex>
#include <vector>

#include "cqmod/errors.hpp"

namespace cqmod {

using complex = std::complex<double>;

// Complete elliptic integrals here use the PARAMETER convention m = k^2,
// k being the modulus. Call sites converting from a modulus must square it.
struct EllipticParameter {
    double m;
    EllipticParameter(double m_) : m(m_) {} // NOLINT: implicit by design
};

// A point of the Riemann sphere: either a finite complex value or the
// distinguished point at infinity. Infinity is represented explicitly so
// that cross-ratios of ideal vertices are exact instead of approximated by
// large finite surrogates.
class ExtendedComplex {
  public:
    ExtendedComplex() : value_(0.0, 0.0), infinite_(false) {}
    ExtendedComplex(complex value) : value_(value), infinite_(false) {}
    ExtendedComplex(double value) : value_(value, 0.0), infinite_(false) {}

    static ExtendedComplex infinity() {
        ExtendedComplex z;
        z.infinite_ = true;
        return z;
    }

    bool is_infinity() const { return infinite_; }

    complex value() const {
        if (infinite_) throw domain_error("ExtendedComplex: value() called on infinity");
        return value_;
    }

    friend bool operator==(const ExtendedComplex& a, const ExtendedComplex& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ && b.infinite_;
        return a.value_ == b.value_;
    }

  private:
    complex value_;
    bool infinite_;
};

// z -> (a z + b) / (c z + d), acting on the Riemann sphere.
struct MobiusMap {
    complex a, b, c, d;

    MobiusMap(complex a_, complex b_, complex c_, complex d_) : a(a_), b(b_), c(c_), d(d_) {
        if (a * d - b * c == complex(0.0, 0.0))
            throw degenerate_input_error("MobiusMap: coefficients satisfy ad - bc = 0");
    }
};

// K(m) = \int_0^1 dt / sqrt((1-t^2)(1-m t^2)), computed by the
// arithmetic-geometric mean iteration. Requires 0 <= m < 1.
double elliptic_k(EllipticParameter param);

// Conformal modulus of the unit-disk quadrilateral with vertices at
// +-e^{+-i beta}: Mod = 2 K(m) / K(1-m) with m = tan^4(beta/2).
// Strictly increasing on (0, pi/2).
double modulus_from_beta(double beta);

// (z1, z2; z3, z4) = (z3 - z1)(z4 - z2) / ((z3 - z2)(z4 - z1)).
// At most one argument may be the point at infinity (the two factors
// containing it cancel in the limit). Repeated points are rejected.
ExtendedComplex cross_ratio(const ExtendedComplex& z1, const ExtendedComplex& z2,
                            const ExtendedComplex& z3, const ExtendedComplex& z4);

ExtendedComplex mobius_apply(const MobiusMap& map, const ExtendedComplex& z);

// Unique lambda in (0,1) with (1+lambda)^2 / (4 lambda) = cr, i.e. the root
// lambda = (2cr-1) - sqrt((2cr-1)^2 - 1) of lambda^2 + (2-4cr) lambda + 1.
// Requires cr > 1; cr = 1 is the degenerate double root lambda = 1.
double lambda_from_cross_ratio(double cr);

// Modulus of the half-plane quadrilateral with the given ordered boundary
// vertices (at most one of them infinite): the points are carried to the
// normal form (-1/lambda, -1, 1, 1/lambda) through their cross-ratio and
// Mod = K(1 - lambda^2) / (2 K(lambda^2)).
double half_plane_modulus(const ExtendedComplex& p1, const ExtendedComplex& p2,
                          const ExtendedComplex& p3, const ExtendedComplex& p4);

// Half-plane images of the vertices of the circular n-gon P_n:
// -cos(pi k / (n-2)) for k = 0..n-2, followed by infinity. Requires n >= 4.
std::vector<ExtendedComplex> pn_vertex_images(int n);

} // namespace cqmod
