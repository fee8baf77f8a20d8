#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "errors.hpp"
#include "hyperbolic.hpp"

namespace bergman {

// PSL2(Z) or a principal congruence subgroup Gamma(N), N >= 3 (so the
// group is torsion-free). The flag controls whether cusp-stabilizer
// elements (integer trace +-2, parabolic or identity) are dropped from
// enumerations.
struct GroupSpec {
    enum class Kind { full_psl2z, principal_congruence };

    Kind kind = Kind::full_psl2z;
    int level = 1;
    bool exclude_cusp_stabilizers = true;

    static GroupSpec psl2z(bool exclude_stabilizers);
    static GroupSpec gamma(int N, bool exclude_stabilizers);

    bool contains(const std::array<long long, 4>& m) const;
    std::string name() const;
};

// A group element together with its displacement at the base point.
struct OrbitRecord {
    std::array<long long, 4> m;  // integer entries a,b,c,d, sign-normalized
    double rho;

    MoebiusMap map() const;
};

// All projective group elements gamma with d(z, gamma z) <= R,
// deduplicated and sorted by (rho, entries). Identity appears (rho = 0)
// only when stabilizers are not excluded. The completeness argument is
// in the implementation; radius_cap guards the exponential growth in R.
std::vector<OrbitRecord> enumerate_orbit(const GroupSpec& spec, const UhpPoint& z,
                                         double R, double radius_cap = 12.0,
                                         int workers = 1);

// Base point, sorted displacement list (identity excluded), group.
struct CountingData {
    UhpPoint base;
    std::vector<double> rhos;  // nondecreasing
    GroupSpec spec;

    static CountingData collect(const GroupSpec& spec, const UhpPoint& z, double R,
                                double radius_cap = 12.0, int workers = 1);
};

// N(z; rho): number of collected elements with displacement <= rho.
long counting_function(const CountingData& data, double rho);

// Minimum displacement over the sample points and all enumerated
// non-excluded elements. An upper bound for the true infimum: only
// finitely many base points are inspected.
double injectivity_radius(const GroupSpec& spec, const std::vector<UhpPoint>& sample,
                          double R, double radius_cap = 12.0, int workers = 1);

struct CountingBound {
    double stieltjes_term;  // f(0) for the identity + sum of f over data below delta
    double boundary_term;   // f(delta) sinh(r/2) sinh(delta) / sinh^2(r/4)
    double integral_term;   // (1/(2 sinh^2(r/4))) * int_delta^inf f sinh(rho + r/2)
    double total() const { return stieltjes_term + boundary_term + integral_term; }
};

// Right-hand side of the counting inequality for a positive decreasing
// f, valid for delta > r/2 where r lower-bounds the injectivity radius.
// The improper integral runs by adaptive quadrature with a cutoff once
// the integrand falls below 1e-14; non-integrable f raises NumericError.
CountingBound counting_sum_bound(const std::function<double(double)>& f, double delta,
                                 double r_inj, const CountingData& data);

struct ExpSumResult {
    double truncated;  // sum of e^{-2 rho} over records within R (identity excluded)
    double tail;       // rigorous bound on the rest, from the counting inequality
};

// Sum of e^{-2 rho_gamma} over the orbit at z: truncated enumeration up
// to R plus the counting-inequality tail beyond R (which needs the
// injectivity-radius lower bound r_inj).
ExpSumResult orbit_exp_sum(const GroupSpec& spec, const UhpPoint& z, double R,
                           double r_inj, double radius_cap = 12.0, int workers = 1);

// CSV dump: header a,b,c,d,rho; rows sorted by (rho, entries).
void write_orbit_csv(std::ostream& os, const std::vector<OrbitRecord>& records);

}
