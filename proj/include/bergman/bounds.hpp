#pragma once

#include <utility>
#include <vector>

#include "errors.hpp"
#include "hyperbolic.hpp"
#include "quadfield.hpp"

namespace bergman {

// Tuple of even positive weights, one per factor of H^r.
struct WeightVector {
    std::vector<int> k;

    explicit WeightVector(std::vector<int> ks);
    std::size_t dim() const { return k.size(); }
    double product() const;
    double product_pow(double e) const;  // prod k_j^e
};

// A truncated positive sum with a rigorous tail, checked against a
// closed-form ceiling.
struct BoundReport {
    double truncated_value = 0.0;
    double tail_bound = 0.0;
    double ceiling = 0.0;
    bool satisfied() const { return truncated_value + tail_bound <= ceiling; }
};

// int_rho^inf r e^{-r/2} dr / sqrt(cosh r - cosh rho), the radial factor
// of the heat-kernel bound. The inverse-square-root endpoint is removed
// by r = rho + u^2; absolute error <= 1e-10.
double heat_integral(double rho);

// k^2/(sqrt(2) pi (k+1/2)) * cosh^{-2k}(rho/2) * heat_integral(rho).
double heat_bound_cosh(int k, double rho);

// 8 k^2 e^{-2 rho} / (pi (k+1/2)), the fully explicit form.
double heat_bound_exp(int k, double rho);

// (36 + 1/sinh^2(r/4))^r * prod k_j: sup bound for the cocompact case.
double cocompact_bound(const WeightVector& k, double r_inj);

struct OrbitSumTerms {
    double t1;  // identity contribution: exactly 1
    double t2;  // e^{-3r/2} sinh(r/2) sinh(3r/4) / sinh^2(r/4), <= 8
    double t3;  // e^{-r/4} / (4 sinh^2(r/4)), <= 1/(4 sinh^2(r/4))
};

OrbitSumTerms orbit_sum_terms(double r_inj);

// int_0^inf (1+b^2)^{-k} db = sqrt(pi) Gamma(k-1/2) / (2 Gamma(k)).
double gamma_ratio_integral(int k);

// Truncated sum over the ring lattice of
//   prod_j (4 e_j^2 y_j^2)^{k_j} / (((1-e_j^2) x_j - e_j a_j)^2 + (1+e_j^2)^2 y_j^2)^{k_j}
// within the embedding box [-L, L]^2, plus a rigorous tail from the
// cell-sup integral comparison over the box complement. The ceiling is
// stabilizer_lattice_ceiling.
BoundReport stabilizer_lattice_sum(const QuadraticField& F, const PolyPoint& z,
                                   const FieldElement& eps, const WeightVector& k,
                                   double lattice_radius);

// prod_j Gamma(k_j-1/2)/Gamma(k_j) * |e_j|^{2k_j-1} y_j / ((1+e_j^2)/2)^{2k_j-1}.
// Negative embeddings enter through their absolute value.
double stabilizer_lattice_ceiling(const PolyPoint& z, const FieldElement& eps,
                                  const WeightVector& k);

// Truncated sum over units ±eps0^n, |n| <= n_max, of prod_j 2 y_j/(1+e_j^2),
// geometric tail from the growth of |sigma_1(eps0)|, ceiling prod 2 pi y_j.
BoundReport unit_sum(const QuadraticField& F, const std::pair<double, double>& y,
                     int n_max);

// prod_j 4 y_j Gamma(k_j-1/2)/Gamma(k_j) k_j^2/(k_j+1/2): the
// cusp-stabilizer part of the sup bound. fixed-y mode.
double cusp_stabilizer_bound(const std::vector<double>& y, const WeightVector& k);

// sup mode: y_j = c k_j.
double cusp_stabilizer_bound_sup(const WeightVector& k, double c = 1.0);

struct SupBoundParts {
    double nonstabilizer;  // cocompact-style addend
    double stabilizer;     // cusp-stabilizer addend
    double total() const { return nonstabilizer + stabilizer; }
};

// Sup bound for the cusped case: cocompact addend + stabilizer addend;
// sup_mode uses y_j = c k_j, otherwise the supplied heights.
SupBoundParts cusped_sup_bound(const WeightVector& k, double r_inj, bool sup_mode,
                               const std::vector<double>& y = {}, double c = 1.0);

}
