#include "bergman/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bergman/parallel.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

namespace {

constexpr double kPi = std::numbers::pi;

bool contained_in_domain(double x_lo, double x_hi, double y_lo) {
    if (x_lo < -0.5 - 1e-12 || x_hi > 0.5 + 1e-12) return false;
    double min_abs_x;
    if (x_lo <= 0.0 && x_hi >= 0.0)
        min_abs_x = 0.0;
    else
        min_abs_x = std::min(std::abs(x_lo), std::abs(x_hi));
    const double need = (min_abs_x < 1.0) ? std::sqrt(1.0 - min_abs_x * min_abs_x) : 0.0;
    return y_lo >= need - 1e-12;
}

// Nested adaptive integral of f(x,y)/y^2 over x in [x0,x1],
// y in [max(y0, ylow(x)), y1]; arc = true clips below by the unit circle.
double box_integral(const std::function<double(double, double)>& f, double x0, double x1,
                    double y0, double y1, bool arc, double rel_tol) {
    auto inner = [&](double x) {
        double lo = y0;
        if (arc) {
            const double circ = (std::abs(x) < 1.0) ? std::sqrt(1.0 - x * x) : 0.0;
            lo = std::max(lo, circ);
        }
        if (lo >= y1) return 0.0;
        auto q = integrate([&](double y) { return f(x, y) / (y * y); }, lo, y1, 1e-280,
                           rel_tol * 0.1, 8000);
        return q.value;
    };
    auto outer = integrate(inner, x0, x1, 1e-280, rel_tol, 8000);
    return outer.value;
}

}  // namespace

AsymptoticTarget::AsymptoticTarget(int r_, int cover, int rank)
    : r(r_), cover_degree(cover), bundle_rank(rank) {
    if (r < 1 || cover < 1 || rank < 1)
        throw std::invalid_argument("AsymptoticTarget: all fields must be >= 1");
}

double limit_target(const AsymptoticTarget& t) {
    return t.cover_degree * t.bundle_rank / std::pow(4.0 * kPi, t.r);
}

MassBox::MassBox(double x0, double x1, double y0, double y1, bool inside)
    : x_lo(x0), x_hi(x1), y_lo(y0), y_hi(y1), inside_fundamental_domain(inside) {
    if (!(x_lo < x_hi) || !(y_lo < y_hi) || !(y_lo > 0))
        throw std::invalid_argument("MassBox: malformed box");
    if (inside && !contained_in_domain(x_lo, x_hi, y_lo))
        throw std::invalid_argument(
            "MassBox: flagged inside the fundamental domain but escapes it");
}

double MassBox::hyperbolic_area() const {
    return (x_hi - x_lo) * (1.0 / y_lo - 1.0 / y_hi);
}

double modular_volume_quadrature() {
    const double ycut = 40.0;
    const double inner =
        box_integral([](double, double) { return 1.0; }, -0.5, 0.5, 0.0, ycut, true,
                     1e-10);
    return inner + 1.0 / ycut;  // exact tail of int_ycut^inf dy/y^2
}

std::vector<RatioRow> ratio_series(const UhpPoint& z, const std::vector<int>& weights,
                                   int workers) {
    std::vector<RatioRow> rows(weights.size());
    parallel_for_indexed(weights.size(), workers, [&](std::size_t i) {
        const int k = weights[i];
        const BergmanKernel kernel(k);
        const double b = kernel(z);
        rows[i] = RatioRow{k, b, b / k};
    });
    return rows;
}

double que_mass(const MassBox& box, const BergmanKernel& kernel, double rel_tol) {
    if (!box.inside_fundamental_domain &&
        !contained_in_domain(box.x_lo, box.x_hi, box.y_lo))
        throw std::invalid_argument("que_mass: box escapes the fundamental domain");
    const int dim = kernel.dim();
    if (dim == 0)
        throw std::invalid_argument("que_mass: weight has no cusp forms (dim 0)");
    const double integral = box_integral(
        [&](double x, double y) { return kernel.raw(UhpPoint(x, y)); }, box.x_lo,
        box.x_hi, box.y_lo, box.y_hi, false, rel_tol);
    return integral / dim;
}

double que_mass(const MassBox& box, int k, double rel_tol) {
    return que_mass(box, BergmanKernel(k), rel_tol);
}

double que_target(const MassBox& box) {
    return box.hyperbolic_area() / modular_volume_quadrature();
}

DimensionCheck dimension_consistency(const BergmanKernel& kernel, double rel_tol) {
    const int k = kernel.weight();
    const int dim = kernel.dim();
    if (dim == 0) return DimensionCheck{0.0, 0, 0.0};
    auto B = [&](double x, double y) { return kernel.raw(UhpPoint(x, y)); };
    // Main region up to the cutoff, then doubling panels until the cusp
    // contribution dies.
    double ycut = std::max(12.0, (k - 2) / (4.0 * kPi) + 12.0);
    double total = box_integral(B, -0.5, 0.5, 0.0, ycut, true, rel_tol);
    for (int i = 0; i < 40; ++i) {
        const double next = ycut * 2.0;
        const double part = box_integral(B, -0.5, 0.5, ycut, next, false, rel_tol);
        total += part;
        ycut = next;
        if (std::abs(part) < 1e-9 * std::max(1.0, std::abs(total))) break;
    }
    DimensionCheck c{total, dim, std::abs(total - dim) / dim};
    return c;
}

DimensionCheck dimension_consistency(int k, double rel_tol) {
    return dimension_consistency(BergmanKernel(k), rel_tol);
}

SupScan supnorm_scan(const BergmanKernel& kernel, const GridSpec& grid) {
    const int k = kernel.weight();
    if (kernel.dim() == 0) return SupScan{0.0, UhpPoint(0.0, 1.0), 0.0};
    if (grid.nx < 2 || grid.ny < 2)
        throw std::invalid_argument("supnorm_scan: grid must be at least 2x2");
    const double y0 = std::sqrt(3.0) / 2.0;
    const double y1 = std::max(grid.y_max, k / (2.0 * kPi) + 2.0);

    double best = -1.0;
    double bx = 0.0, by = y0;
    auto consider = [&](double x, double y) {
        const double v = kernel.raw(UhpPoint(x, y));
        if (v > best) {
            best = v;
            bx = x;
            by = y;
        }
    };
    const double lr = std::log(y1 / y0);
    for (int i = 0; i < grid.nx; ++i) {
        const double x = -0.5 + i / (grid.nx - 1.0);
        for (int j = 0; j < grid.ny; ++j) consider(x, y0 * std::exp(lr * j / (grid.ny - 1.0)));
    }
    // Local refinement rounds around the running maximizer.
    double dx = 1.0 / (grid.nx - 1.0);
    double dy = by * (std::exp(lr / (grid.ny - 1.0)) - 1.0);
    for (int round = 0; round < grid.refine_rounds; ++round) {
        const double cx = bx, cy = by;
        for (int i = -4; i <= 4; ++i)
            for (int j = -4; j <= 4; ++j) {
                const double x = cx + i * dx / 4.0;
                const double y = cy + j * dy / 4.0;
                if (y >= y0 * 0.999) consider(std::clamp(x, -0.5, 0.5), y);
            }
        dx /= 4.0;
        dy /= 4.0;
    }
    return SupScan{best, UhpPoint(bx, by), best / std::pow(static_cast<double>(k), 1.5)};
}

SupScan supnorm_scan(int k, const GridSpec& grid) {
    return supnorm_scan(BergmanKernel(k), grid);
}

}  // namespace bergman
