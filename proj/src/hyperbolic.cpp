#include "bergman/hyperbolic.hpp"

#include <cmath>
#include <string>

namespace bergman {

UhpPoint::UhpPoint(double x_, double y_) : x(x_), y(y_) {
    if (!(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
        throw std::invalid_argument("UhpPoint: need finite x and y > 0, got y = " +
                                    std::to_string(y_));
}

PolyPoint::PolyPoint(std::vector<UhpPoint> cs) : coords(std::move(cs)) {
    if (coords.empty()) throw std::invalid_argument("PolyPoint: need r >= 1 coordinates");
}

MoebiusMap::MoebiusMap(double a_, double b_, double c_, double d_)
    : a(a_), b(b_), c(c_), d(d_) {
    if (!(det() > 0.0))
        throw std::invalid_argument("MoebiusMap: determinant must be positive");
}

MoebiusMap MoebiusMap::inverse() const {
    const double s = det();
    return {d / s, -b / s, -c / s, a / s};
}

MoebiusMap MoebiusMap::sign_normalized() const {
    double lead = a;
    if (lead == 0.0) lead = b;
    if (lead == 0.0) lead = c;
    if (lead == 0.0) lead = d;
    if (lead < 0.0) return {-a, -b, -c, -d};
    return *this;
}

bool MoebiusMap::projectively_equal(const MoebiusMap& o, double tol) const {
    const MoebiusMap p = sign_normalized();
    const MoebiusMap q = o.sign_normalized();
    // Compare scale-invariantly: normalize both to unit determinant.
    const double sp = std::sqrt(p.det()), sq = std::sqrt(q.det());
    return std::abs(p.a / sp - q.a / sq) <= tol && std::abs(p.b / sp - q.b / sq) <= tol &&
           std::abs(p.c / sp - q.c / sq) <= tol && std::abs(p.d / sp - q.d / sq) <= tol;
}

MoebiusMap operator*(const MoebiusMap& g, const MoebiusMap& h) {
    return {g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d, g.c * h.a + g.d * h.c,
            g.c * h.b + g.d * h.d};
}

double geodesic_distance(const UhpPoint& z, const UhpPoint& w) {
    const double dx = z.x - w.x;
    const double dy = z.y - w.y;
    const double arg = (dx * dx + dy * dy) / (4.0 * z.y * w.y) + 1.0;
    return 2.0 * std::acosh(std::sqrt(std::max(arg, 1.0)));
}

UhpPoint apply_moebius(const MoebiusMap& g, const UhpPoint& z) {
    const std::complex<double> den(g.c * z.x + g.d, g.c * z.y);
    const std::complex<double> num(g.a * z.x + g.b, g.a * z.y);
    const std::complex<double> w = num / den;
    // Im(gz) = det * y / |cz+d|^2 > 0; reconstruct it that way to stay
    // positive under round-off.
    return {w.real(), g.det() * z.y / std::norm(den)};
}

double displacement(const MoebiusMap& g, const UhpPoint& z) {
    return geodesic_distance(z, apply_moebius(g, z));
}

double volume_element(const PolyPoint& z) {
    double v = 1.0;
    for (const auto& p : z.coords) v /= p.y * p.y;
    return v;
}

std::pair<UhpPoint, MoebiusMap> reduce_psl2z(const UhpPoint& z) {
    double x = z.x, y = z.y;
    MoebiusMap gamma = MoebiusMap::identity();
    for (int iter = 0; iter < 10000; ++iter) {
        const double t = std::round(x);
        if (t != 0.0) {
            x -= t;
            gamma = MoebiusMap::translation(-t) * gamma;
        }
        const double n = x * x + y * y;
        if (n >= 1.0) {
            if (std::abs(x) <= 0.5) return {UhpPoint(x, y), gamma};
            continue;
        }
        // z -> -1/z
        const double nx = -x / n, ny = y / n;
        x = nx;
        y = ny;
        gamma = MoebiusMap::inversion() * gamma;
    }
    throw IterationLimitError("reduce_psl2z: no convergence (degenerate input?)");
}

double laplacian_log_y_fd(const UhpPoint& z, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("laplacian_log_y_fd: need h > 0");
    if (h >= z.y / 2.0)
        throw std::invalid_argument("laplacian_log_y_fd: step too large, need h < y/2");
    auto f = [](double, double y) { return std::log(y); };
    const double fc = f(z.x, z.y);
    const double sum = f(z.x + h, z.y) + f(z.x - h, z.y) + f(z.x, z.y + h) +
                       f(z.x, z.y - h) - 4.0 * fc;
    return sum / (h * h);
}

}  // namespace bergman
