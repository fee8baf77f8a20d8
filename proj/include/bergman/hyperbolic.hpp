#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace bergman {

// Point z = x + iy of the upper half-plane; y > 0 is enforced at
// construction.
struct UhpPoint {
    double x;
    double y;

    UhpPoint(double x_, double y_);
    std::complex<double> cplx() const { return {x, y}; }
};

// Point of H^r, r >= 1.
struct PolyPoint {
    std::vector<UhpPoint> coords;

    explicit PolyPoint(std::vector<UhpPoint> cs);
    std::size_t dim() const { return coords.size(); }
};

// Real 2x2 matrix [a b; c d] with ad - bc > 0 acting on H by
// z -> (az+b)/(cz+d). Group elements are used projectively: gamma and
// -gamma act identically and compare equal under projectively_equal.
struct MoebiusMap {
    double a, b, c, d;

    MoebiusMap(double a_, double b_, double c_, double d_);
    static MoebiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static MoebiusMap translation(double t) { return {1.0, t, 0.0, 1.0}; }
    static MoebiusMap inversion() { return {0.0, -1.0, 1.0, 0.0}; }

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    MoebiusMap inverse() const;

    // Sign convention for projective dedup: first nonzero entry in
    // (a, b, c, d) order is made positive.
    MoebiusMap sign_normalized() const;
    bool projectively_equal(const MoebiusMap& o, double tol = 0.0) const;
};

MoebiusMap operator*(const MoebiusMap& g, const MoebiusMap& h);

// d_H(z,w) from cosh^2(d/2) = |z-w|^2 / (4 Im z Im w) + 1, with the
// acosh argument clamped at 1 to kill negative round-off.
double geodesic_distance(const UhpPoint& z, const UhpPoint& w);

UhpPoint apply_moebius(const MoebiusMap& g, const UhpPoint& z);

// rho_{gamma,z} = d_H(z, gamma z).
double displacement(const MoebiusMap& g, const UhpPoint& z);

// Density of the hyperbolic volume form against Lebesgue measure on
// coordinates: prod_j 1/y_j^2.
double volume_element(const PolyPoint& z);

// Moves z into the standard PSL2(Z) fundamental domain |Re| <= 1/2,
// |z| >= 1 by the classical translate-then-invert loop. Returns the
// reduced point z' and gamma with gamma z = z'. The iteration cap only
// guards degenerate floating-point inputs. The reduced point is always
// accurate; re-applying the returned gamma to z loses ~(1/y)^2 ulps for
// points very deep in the cusp (entries grow like 1/y).
std::pair<UhpPoint, MoebiusMap> reduce_psl2z(const UhpPoint& z);

// 5-point central finite-difference Euclidean Laplacian of log y at z;
// within O(h^2) of the analytic value -1/y^2. Requires y > 2h.
double laplacian_log_y_fd(const UhpPoint& z, double h);

}
