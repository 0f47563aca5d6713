#include "dipgp/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace dipgp {

static GaussLegendre compute_gl(int n) {
    GaussLegendre rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const double pi = std::acos(-1.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n.
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.x[i] = -x;
        rule.x[n - 1 - i] = x;
        const double wi = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.w[i] = wi;
        rule.w[n - 1 - i] = wi;
    }
    return rule;
}

const GaussLegendre& GaussLegendre::get(int order) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_gl(order)).first;
    return it->second;
}

double gl_integrate(const std::function<double(double)>& f, double a, double b, int order) {
    const auto& rule = GaussLegendre::get(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < order; ++i) sum += rule.w[i] * f(mid + half * rule.x[i]);
    return half * sum;
}

SphereRule::SphereRule(int ntheta_, int nphi_) : ntheta(ntheta_), nphi(nphi_) {
    const double pi = std::acos(-1.0);
    const auto& gl = GaussLegendre::get(ntheta);
    nodes.reserve(static_cast<size_t>(ntheta) * nphi);
    weights.reserve(static_cast<size_t>(ntheta) * nphi);
    for (int i = 0; i < ntheta; ++i) {
        const double mu = gl.x[i];
        const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
        for (int j = 0; j < nphi; ++j) {
            const double phi = 2.0 * pi * (j + 0.5) / nphi;
            nodes.push_back({st * std::cos(phi), st * std::sin(phi), mu});
            weights.push_back(gl.w[i] * 2.0 * pi / nphi);
        }
    }
}

SphereRule SphereRule::aligned_to(const Vec3& axis) const {
    const Vec3 e3 = normalized(axis);
    const Vec3 e1 = any_orthogonal(e3);
    const Vec3 e2 = cross(e3, e1);
    SphereRule out = *this;
    for (auto& w : out.nodes) {
        const Vec3 local = w;
        w = {local[0] * e1[0] + local[1] * e2[0] + local[2] * e3[0],
             local[0] * e1[1] + local[1] * e2[1] + local[2] * e3[1],
             local[0] * e1[2] + local[1] * e2[2] + local[2] * e3[2]};
    }
    return out;
}

} // namespace dipgp
