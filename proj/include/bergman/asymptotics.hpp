#pragma once

#include <utility>
#include <vector>

#include "errors.hpp"
#include "forms.hpp"
#include "hyperbolic.hpp"

namespace bergman {

// Parameters of the large-weight limit: dimension r of H^r, covering
// degree and bundle rank.
struct AsymptoticTarget {
    int r = 1;
    int cover_degree = 1;
    int bundle_rank = 1;

    AsymptoticTarget(int r_, int cover, int rank);
};

// cover_degree * bundle_rank / (4 pi)^r.
double limit_target(const AsymptoticTarget& t);

// Axis-aligned box in the upper half-plane.
struct MassBox {
    double x_lo, x_hi;
    double y_lo, y_hi;
    bool inside_fundamental_domain = false;

    MassBox(double x0, double x1, double y0, double y1, bool inside);

    // Exact hyperbolic area (x_hi - x_lo)(1/y_lo - 1/y_hi).
    double hyperbolic_area() const;
};

// Hyperbolic volume of the modular surface by quadrature over the
// standard fundamental domain (analytic value pi/3).
double modular_volume_quadrature();

struct RatioRow {
    int k;
    double bergman;  // B_k(z)
    double ratio;    // B_k(z)/k
};

std::vector<RatioRow> ratio_series(const UhpPoint& z, const std::vector<int>& weights,
                                   int workers = 1);

// (1/dim S_k) int_A B_k d mu_hyp. Throws std::invalid_argument when the
// box is flagged inside the fundamental domain but is not, or when the
// unflagged box escapes the domain.
double que_mass(const MassBox& box, const BergmanKernel& kernel, double rel_tol = 1e-5);
double que_mass(const MassBox& box, int k, double rel_tol = 1e-5);

// Normalized target mass of the box: mu_hyp(A) / vol(X).
double que_target(const MassBox& box);

struct DimensionCheck {
    double integral;  // int_X B_k d mu_hyp
    int dimension;    // dim S_k
    double rel_error;
};

DimensionCheck dimension_consistency(const BergmanKernel& kernel, double rel_tol = 1e-5);
DimensionCheck dimension_consistency(int k, double rel_tol = 1e-5);

struct GridSpec {
    int nx = 200;
    int ny = 200;
    double y_max = 10.0;  // scan height; raised automatically for large k
    int refine_rounds = 3;
};

struct SupScan {
    double sup;
    UhpPoint argmax;
    double normalized;  // sup / k^{3/2}
};

// Maximum of B_k over a fundamental-domain grid, refined locally around
// the maximizer.
SupScan supnorm_scan(const BergmanKernel& kernel, const GridSpec& grid);
SupScan supnorm_scan(int k, const GridSpec& grid);

}
