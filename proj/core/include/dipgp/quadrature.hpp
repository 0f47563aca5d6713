#pragma once
#include <functional>
#include <vector>

#include "dipgp/vec3.hpp"

namespace dipgp {

/// Gauss-Legendre rule on [-1, 1]. Nodes/weights computed by Newton iteration
/// on the Legendre recurrence and cached per order.
struct GaussLegendre {
    std::vector<double> x;
    std::vector<double> w;
    static const GaussLegendre& get(int order);
};

/// Integrate f over [a, b] with a single Gauss-Legendre rule.
double gl_integrate(const std::function<double(double)>& f, double a, double b, int order);

/// Product quadrature on the unit sphere: Gauss-Legendre in cos(theta) times a
/// uniform midpoint rule in phi. Exact for spherical polynomials of degree
/// <= min(2*ntheta - 1, nphi - 1); the default (12, 24) is exact to degree 23.
struct SphereRule {
    std::vector<Vec3> nodes;
    std::vector<double> weights; // sum to 4*pi

    SphereRule(int ntheta = 12, int nphi = 24);

    int ntheta{};
    int nphi{};

    /// Same rule with the polar axis rotated onto the given unit vector.
    SphereRule aligned_to(const Vec3& axis) const;
};

} // namespace dipgp
