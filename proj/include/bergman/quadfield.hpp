#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace bergman {

// Real quadratic field F = Q(sqrt(D)), D squarefree >= 2, with ring of
// integers Z[omega]; omega = sqrt(D) for D = 2,3 mod 4 and
// omega = (1+sqrt(D))/2 for D = 1 mod 4. omega satisfies
// omega^2 = t*omega + m with (t, m) = (0, D) or (1, (D-1)/4).
class QuadraticField {
  public:
    explicit QuadraticField(long D);

    long D() const { return d_; }
    bool half_basis() const { return half_; }
    long omega_trace() const { return half_ ? 1 : 0; }
    long omega_norm_offset() const { return half_ ? (d_ - 1) / 4 : d_; }
    double omega1() const;  // sigma_1(omega) > sigma_2(omega)
    double omega2() const;
    long discriminant() const { return half_ ? d_ : 4 * d_; }
    // Covolume sqrt(disc) of the ring embedded in R^2 by (sigma_1, sigma_2).
    double covolume() const;

    bool operator==(const QuadraticField& o) const { return d_ == o.d_; }

  private:
    long d_;
    bool half_;
};

// Element a + b*omega in exact integer coordinates.
struct FieldElement {
    mpz_class a, b;
    QuadraticField field;

    FieldElement(mpz_class a_, mpz_class b_, QuadraticField f);

    FieldElement conj() const;  // a + b*conj(omega)
    mpz_class norm() const;     // a^2 + t ab - m b^2
    mpz_class trace() const;    // 2a + t b
    bool is_unit() const;       // |norm| == 1
    bool is_zero() const { return a == 0 && b == 0; }

    // (sigma_1(xi), sigma_2(xi)) with sigma_1(omega) > sigma_2(omega).
    std::pair<double, double> embeddings() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator-() const;
    bool operator==(const FieldElement& o) const;
};

struct UnitGroup {
    FieldElement fundamental_unit;  // sigma_1 > 1 minimal among units > 1
};

// Fundamental unit by the continued-fraction expansion of omega.
UnitGroup unit_group(const QuadraticField& F);

FieldElement fundamental_unit(const QuadraticField& F);

// Inverse of a unit: conj(eps) when norm is +1, -conj(eps) when -1.
FieldElement unit_inverse(const FieldElement& eps);

// {±eps0^n : |n| <= n_max}, 2(2n_max+1) elements, in order
// n = -n_max..n_max with +eps0^n before -eps0^n.
std::vector<FieldElement> enumerate_units(const QuadraticField& F, int n_max);

// Closed box in embedding coordinates.
struct EmbeddingBox {
    double s1_lo, s1_hi;
    double s2_lo, s2_hi;
};

// All xi in O_F with sigma_1(xi) in [s1_lo, s1_hi] and sigma_2(xi) in
// [s2_lo, s2_hi]; complete and duplicate-free, ordered by coordinates.
// Throws std::invalid_argument when the candidate count exceeds cap.
std::vector<FieldElement> enumerate_lattice(const QuadraticField& F,
                                            const EmbeddingBox& box,
                                            std::size_t cap = 10000000);

}
