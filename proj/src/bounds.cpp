#include "bergman/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bergman/quadrature.hpp"

namespace bergman {

namespace {

constexpr double kPi = std::numbers::pi;

double lgamma_ratio(int k) {
    // Gamma(k - 1/2) / Gamma(k) without overflow.
    return std::exp(std::lgamma(k - 0.5) - std::lgamma(static_cast<double>(k)));
}

}  // namespace

WeightVector::WeightVector(std::vector<int> ks) : k(std::move(ks)) {
    if (k.empty()) throw std::invalid_argument("WeightVector: need r >= 1 weights");
    for (int kj : k)
        if (kj <= 0 || kj % 2 != 0)
            throw std::invalid_argument("WeightVector: weights must be even positive, got " +
                                        std::to_string(kj));
}

double WeightVector::product() const {
    double p = 1.0;
    for (int kj : k) p *= kj;
    return p;
}

double WeightVector::product_pow(double e) const {
    double p = 1.0;
    for (int kj : k) p *= std::pow(static_cast<double>(kj), e);
    return p;
}

double heat_integral(double rho) {
    if (!(rho >= 0)) throw std::invalid_argument("heat_integral: need rho >= 0");
    // r = rho + u^2 removes the endpoint singularity:
    // cosh(r) - cosh(rho) = 2 sinh(u^2/2) sinh(rho + u^2/2) exactly,
    // which is stable near u = 0.
    auto integrand = [rho](double u) {
        const double t = u * u;
        const double r = rho + t;
        const double den = 2.0 * std::sinh(0.5 * t) * std::sinh(rho + 0.5 * t);
        if (den <= 0.0) {
            // u = 0 limit: 2 rho e^{-rho/2} / sqrt(sinh rho) for rho > 0, else 0.
            if (rho > 0.0) return 2.0 * rho * std::exp(-0.5 * rho) / std::sqrt(std::sinh(rho));
            return 0.0;
        }
        return 2.0 * u * r * std::exp(-0.5 * r) / std::sqrt(den);
    };
    // Integrand beyond r = rho + U^2 = 60 is below e^{-30}; the dropped
    // tail is far under the 1e-10 target.
    const double U = std::sqrt(std::max(60.0 - rho, 1.0));
    auto q = integrate(integrand, 0.0, U, 1e-11, 1e-12, 20000);
    return q.value;
}

double heat_bound_cosh(int k, double rho) {
    if (k <= 0) throw std::invalid_argument("heat_bound_cosh: need k > 0");
    const double pref = k * k / (std::sqrt(2.0) * kPi * (k + 0.5));
    const double c = std::cosh(rho / 2.0);
    // cosh^{-2k}(rho/2) in log space; plain pow underflows for large k*rho.
    const double coshpow = std::exp(-2.0 * k * std::log(c));
    return pref * coshpow * heat_integral(rho);
}

double heat_bound_exp(int k, double rho) {
    if (k <= 0) throw std::invalid_argument("heat_bound_exp: need k > 0");
    return 8.0 * k * k * std::exp(-2.0 * rho) / (kPi * (k + 0.5));
}

double cocompact_bound(const WeightVector& k, double r_inj) {
    if (!(r_inj > 0)) throw std::invalid_argument("cocompact_bound: need r_inj > 0");
    const double s = std::sinh(r_inj / 4.0);
    return std::pow(36.0 + 1.0 / (s * s), static_cast<double>(k.dim())) * k.product();
}

OrbitSumTerms orbit_sum_terms(double r_inj) {
    if (!(r_inj > 0)) throw std::invalid_argument("orbit_sum_terms: need r_inj > 0");
    const double r = r_inj;
    const double s4 = std::sinh(r / 4.0);
    OrbitSumTerms t;
    t.t1 = 1.0;
    t.t2 = std::exp(-1.5 * r) * std::sinh(r / 2.0) * std::sinh(0.75 * r) / (s4 * s4);
    t.t3 = std::exp(-0.25 * r) / (4.0 * s4 * s4);
    return t;
}

double gamma_ratio_integral(int k) {
    if (k < 1) throw std::invalid_argument("gamma_ratio_integral: need k >= 1");
    return 0.5 * std::sqrt(kPi) * lgamma_ratio(k);
}

namespace {

// One coordinate factor of the stabilizer lattice sum:
//   g(t) = A^k / ((c - e t)^2 + h^2)^k
// with A = 4 e^2 y^2, c = (1 - e^2) x, h = (1 + e^2) y. Unimodal with
// peak at t* = c / e.
struct LatticeFactor {
    double A, c, e, h;
    int k;

    double operator()(double t) const {
        const double u = c - e * t;
        return std::exp(k * (std::log(A) - std::log(u * u + h * h)));
    }
    double peak_arg() const { return c / e; }
    double peak_value() const { return std::exp(k * (std::log(A) - 2.0 * std::log(std::abs(h)))); }

    // int_R g = A^k / (|e| h^{2k-1}) * sqrt(pi) Gamma(k-1/2)/Gamma(k).
    double full_integral() const {
        return std::exp(k * std::log(A) - (2 * k - 1) * std::log(std::abs(h))) /
               std::abs(e) * std::sqrt(kPi) * lgamma_ratio(k);
    }

    // int over |t - t*| >= s of g, s >= 0: quadrature plus a power tail.
    double outer_integral(double s) const {
        const double scale = std::abs(e);
        // substitute v = |e|(t - t*): g = A^k/(v^2+h^2)^k, dt = dv/|e|
        const double vcut = std::max(s * scale, 0.0);
        const double vfar = std::max(10.0 * std::abs(h), vcut * 2.0) + 10.0;
        auto g = [this](double v) {
            return std::exp(k * (std::log(A) - std::log(v * v + h * h)));
        };
        auto q = integrate(g, vcut, vfar, 1e-300, 1e-10, 20000);
        // tail: g(v) <= A^k v^{-2k} for v >= vfar
        const double tail = std::exp(k * std::log(A) - (2 * k - 1) * std::log(vfar)) /
                            (2.0 * k - 1.0);
        return 2.0 * (q.value + tail) / scale;
    }
};

}  // namespace

BoundReport stabilizer_lattice_sum(const QuadraticField& F, const PolyPoint& z,
                                   const FieldElement& eps, const WeightVector& k,
                                   double lattice_radius) {
    if (z.dim() != 2 || k.dim() != 2)
        throw std::invalid_argument("stabilizer_lattice_sum: degree-2 data expected");
    for (int kj : k.k)
        if (kj < 2)
            throw std::invalid_argument("stabilizer_lattice_sum: need k_j >= 2");
    if (!eps.is_unit())
        throw std::invalid_argument("stabilizer_lattice_sum: eps must be a unit");
    const double L = lattice_radius;
    if (!(L > 0)) throw std::invalid_argument("stabilizer_lattice_sum: need radius > 0");

    const auto [e1, e2] = eps.embeddings();
    const double ev[2] = {e1, e2};
    LatticeFactor f[2];
    for (int j = 0; j < 2; ++j) {
        const double yj = z.coords[j].y, xj = z.coords[j].x, ej = ev[j];
        f[j] = LatticeFactor{4.0 * ej * ej * yj * yj, (1.0 - ej * ej) * xj, ej,
                             (1.0 + ej * ej) * yj, k.k[j]};
    }

    // Cell widths of the embedded ring lattice spanned by (1,1) and
    // (w1,w2); the sup over a cell shifts arguments by at most w_j.
    const double w[2] = {1.0 + std::abs(F.omega1()), 1.0 + std::abs(F.omega2())};
    for (int j = 0; j < 2; ++j) {
        if (!(L > std::abs(f[j].peak_arg()) + w[j] + 1.0))
            throw std::invalid_argument(
                "stabilizer_lattice_sum: radius too small for the peak location; "
                "increase lattice_radius");
    }

    BoundReport report;
    const auto lattice = enumerate_lattice(F, EmbeddingBox{-L, L, -L, L});
    for (const auto& alpha : lattice) {
        const auto [s1, s2] = alpha.embeddings();
        report.truncated_value += f[0](s1) * f[1](s2);
    }

    // Tail: sum over lattice points outside the box. Each point owns a
    // cell of area V = sqrt(disc); the value at the point is at most the
    // cell average of the sup-shifted factor, so the sum over points
    // outside [-L,L]^2 is bounded by (1/V) times the integral of
    // prod ghat_j over the complement of the box shrunk by the cell
    // widths, which sits inside two coordinate strips.
    const double V = F.covolume();
    const double full0 = f[0].full_integral() + 2.0 * w[0] * f[0].peak_value();
    const double full1 = f[1].full_integral() + 2.0 * w[1] * f[1].peak_value();
    auto strip = [&](int j) {
        const double A = L - w[j];
        // ghat_j(u) = f_j at distance reduced by w_j from the peak; over
        // |u| > A this is at most the outer integral from A - w_j
        // around the peak, recentred conservatively.
        const double s = std::max(A - std::abs(f[j].peak_arg()) - w[j], 0.0);
        return f[j].outer_integral(s);
    };
    report.tail_bound = (strip(0) * full1 + full0 * strip(1)) / V;
    report.ceiling = stabilizer_lattice_ceiling(z, eps, k);
    return report;
}

double stabilizer_lattice_ceiling(const PolyPoint& z, const FieldElement& eps,
                                  const WeightVector& k) {
    if (z.dim() != 2 || k.dim() != 2)
        throw std::invalid_argument("stabilizer_lattice_ceiling: degree-2 data expected");
    const auto [e1, e2] = eps.embeddings();
    const double ev[2] = {e1, e2};
    double prod = 1.0;
    for (int j = 0; j < 2; ++j) {
        const int kj = k.k[j];
        const double ej = std::abs(ev[j]);  // |e_j|: sign dropped as in the
                                            // absolute-value step of the estimate
        const double yj = z.coords[j].y;
        prod *= lgamma_ratio(kj) * std::exp((2.0 * kj - 1.0) * std::log(ej)) * yj /
                std::exp((2.0 * kj - 1.0) * std::log((1.0 + ej * ej) / 2.0));
    }
    return prod;
}

BoundReport unit_sum(const QuadraticField& F, const std::pair<double, double>& y,
                     int n_max) {
    if (!(y.first > 0) || !(y.second > 0))
        throw std::invalid_argument("unit_sum: need positive heights");
    if (n_max < 0) throw std::invalid_argument("unit_sum: need n_max >= 0");
    BoundReport report;
    const auto units = enumerate_units(F, n_max);
    for (const auto& u : units) {
        const auto [s1, s2] = u.embeddings();
        report.truncated_value +=
            (2.0 * y.first / (1.0 + s1 * s1)) * (2.0 * y.second / (1.0 + s2 * s2));
    }
    // For |n| > n_max the large embedding grows like q^{-n} with
    // q = sigma_1(eps0)^{-2} < 1, so each of the four sign/direction
    // branches is dominated by 4 y1 y2 q^n.
    const double eps1 = fundamental_unit(F).embeddings().first;
    const double q = 1.0 / (eps1 * eps1);
    report.tail_bound =
        4.0 * (4.0 * y.first * y.second) * std::pow(q, n_max + 1) / (1.0 - q);
    report.ceiling = (2.0 * kPi * y.first) * (2.0 * kPi * y.second);
    return report;
}

double cusp_stabilizer_bound(const std::vector<double>& y, const WeightVector& k) {
    if (y.size() != k.dim())
        throw std::invalid_argument("cusp_stabilizer_bound: dimension mismatch");
    double prod = 1.0;
    for (std::size_t j = 0; j < k.dim(); ++j) {
        const int kj = k.k[j];
        if (!(y[j] > 0))
            throw std::invalid_argument("cusp_stabilizer_bound: need positive heights");
        prod *= 4.0 * y[j] * lgamma_ratio(kj) * kj * kj / (kj + 0.5);
    }
    return prod;
}

double cusp_stabilizer_bound_sup(const WeightVector& k, double c) {
    std::vector<double> y;
    y.reserve(k.dim());
    for (int kj : k.k) y.push_back(c * kj);
    return cusp_stabilizer_bound(y, k);
}

SupBoundParts cusped_sup_bound(const WeightVector& k, double r_inj, bool sup_mode,
                               const std::vector<double>& y, double c) {
    SupBoundParts parts;
    parts.nonstabilizer = cocompact_bound(k, r_inj);
    parts.stabilizer =
        sup_mode ? cusp_stabilizer_bound_sup(k, c) : cusp_stabilizer_bound(y, k);
    return parts;
}

}  // namespace bergman
