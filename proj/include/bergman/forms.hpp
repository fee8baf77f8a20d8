#pragma once

#include <gmpxx.h>

#include <complex>
#include <vector>

#include "errors.hpp"
#include "hyperbolic.hpp"

namespace bergman {

// Certified truncation is impossible at the requested height.
struct TailError : NumericError {
    using NumericError::NumericError;
};

// Gram matrix failed to be numerically positive definite (quadrature
// failure or dependent monomials).
struct GramError : NumericError {
    using NumericError::NumericError;
};

// Truncated Fourier expansion sum_{n<=M} a_n q^n of a weight-k level-1
// modular form with exact rational coefficients.
struct QExpansion {
    int weight = 0;
    std::vector<mpq_class> coeffs;  // a_0 .. a_M

    int truncation() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_cuspidal() const { return !coeffs.empty() && coeffs[0] == 0; }

    // Smallest C with |a_n| <= C n^weight over the computed range; the
    // crude deterministic coefficient bound behind all tail estimates.
    double tail_bound_constant() const;
};

// Normalized Eisenstein series E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n,
// k in {4, 6}.
QExpansion eisenstein(int k, int M);

// Discriminant form q prod (1-q^n)^24.
QExpansion delta_form(int M);

QExpansion mul(const QExpansion& f, const QExpansion& g);
QExpansion pow(const QExpansion& f, int e);

// dim S_k(SL2(Z)) by the classical formula, cross-checkable against the
// monomial count.
int dim_cusp_forms(int k);

// Spanning set {E4^a E6^b Delta^c : 4a+6b+12c = k, c >= 1, b in {0,1}}
// of S_k; echelon in the order of vanishing at the cusp.
std::vector<QExpansion> monomial_basis(int k, int M);

// Truncation order making the certified tail negligible for evaluations
// at heights >= y_min.
int choose_truncation(int k, double y_min);

struct EvalResult {
    std::complex<double> value;
    double tail_bound;  // certified absolute bound on the dropped tail
};

// Value of f at z together with a certified truncation tail. Throws
// TailError when the tail cannot be certified below rel_tol relative to
// the largest term at z.
EvalResult evaluate(const QExpansion& f, const UhpPoint& z, double rel_tol = 1e-12);

struct InnerResult {
    std::complex<double> value;
    double error;  // quadrature estimate plus certified cusp tail
};

// Petersson inner product by 2-D adaptive quadrature over the standard
// fundamental domain, y-first with lower limit sqrt(1-x^2) and a cusp
// cutoff carrying a certified exponential tail bound.
InnerResult petersson_inner(const QExpansion& f, const QExpansion& g,
                            double rel_tol = 1e-9);

// Same, with the absolute error budget anchored at rel_tol*anchor
// (used off-diagonal where sqrt(Gii*Gjj) bounds the value).
InnerResult petersson_inner_anchored(const QExpansion& f, const QExpansion& g,
                                     double rel_tol, double anchor);

struct OrthonormalBasis {
    int weight = 0;
    std::vector<QExpansion> monomials;
    std::vector<std::vector<double>> gram;   // Gram matrix of the monomials
    std::vector<std::vector<double>> chol;   // Cholesky factor used (scaled)
    std::vector<std::vector<double>> combo;  // f_i = sum_j combo[i][j] m_j
    int dim() const { return static_cast<int>(combo.size()); }
};

// Gram -> Cholesky -> orthonormal combinations. The Gram matrix is
// rescaled to unit diagonal before factoring so monomials of very
// different leading orders do not wreck the conditioning.
OrthonormalBasis orthonormal_basis(int k);

// Weight-k Bergman kernel B(z) = sum_i y^k |f_i(z)|^2 over an
// orthonormal basis of S_k. Construction does all quadrature work once;
// evaluation is cheap.
class BergmanKernel {
  public:
    explicit BergmanKernel(int k);

    int weight() const { return k_; }
    int dim() const { return basis_.dim(); }
    const OrthonormalBasis& basis() const { return basis_; }

    // Evaluates at the PSL2(Z)-reduction of z.
    double operator()(const UhpPoint& z) const;
    // Evaluates the series at z as given (needs y comfortably above the
    // truncation height).
    double raw(const UhpPoint& z) const;

  private:
    int k_;
    OrthonormalBasis basis_;
    // cached double-precision series of the monomials
    std::vector<std::vector<double>> series_;
};

double bergman_kernel(int k, const UhpPoint& z);

}
