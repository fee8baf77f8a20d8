#include "bergman/forms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bergman/quadrature.hpp"

namespace bergman {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

using ZSeries = std::vector<mpz_class>;  // integer coefficients 0..M

double log_abs_mpq(const mpq_class& q) {
    if (q == 0) return kNegInf;
    signed long en = 0, ed = 0;
    const double mn = mpz_get_d_2exp(&en, q.get_num().get_mpz_t());
    const double md = mpz_get_d_2exp(&ed, q.get_den().get_mpz_t());
    return std::log(std::abs(mn)) + std::numbers::ln2 * static_cast<double>(en) -
           (std::log(std::abs(md)) + std::numbers::ln2 * static_cast<double>(ed));
}

ZSeries zmul(const ZSeries& f, const ZSeries& g, int M) {
    ZSeries h(M + 1, 0);
    for (int i = 0; i <= M && i < static_cast<int>(f.size()); ++i) {
        if (f[i] == 0) continue;
        const int jmax = std::min(M - i, static_cast<int>(g.size()) - 1);
        for (int j = 0; j <= jmax; ++j) {
            if (g[j] == 0) continue;
            h[i + j] += f[i] * g[j];
        }
    }
    return h;
}

mpz_class sigma(int j, int n) {
    mpz_class s = 0;
    for (int d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        mpz_class dj, qj;
        mpz_ui_pow_ui(dj.get_mpz_t(), d, j);
        s += dj;
        const int q = n / d;
        if (q != d) {
            mpz_ui_pow_ui(qj.get_mpz_t(), q, j);
            s += qj;
        }
    }
    return s;
}

ZSeries eisenstein_z(int k, int M) {
    ZSeries e(M + 1, 0);
    e[0] = 1;
    const long factor = (k == 4) ? 240 : -504;  // -2k/B_k
    for (int n = 1; n <= M; ++n) e[n] = factor * sigma(k - 1, n);
    return e;
}

// Euler product prod (1-q^n) via the pentagonal number theorem.
ZSeries euler_product_z(int M) {
    ZSeries e(M + 1, 0);
    e[0] = 1;
    for (long k = 1;; ++k) {
        const long g1 = k * (3 * k - 1) / 2;
        const long g2 = k * (3 * k + 1) / 2;
        if (g1 > M && g2 > M) break;
        const long s = (k % 2 == 0) ? 1 : -1;
        if (g1 <= M) e[g1] += s;
        if (g2 <= M) e[g2] += s;
    }
    return e;
}

ZSeries delta_z(int M) {
    const ZSeries e = euler_product_z(M);
    ZSeries p2 = zmul(e, e, M);
    ZSeries p4 = zmul(p2, p2, M);
    ZSeries p8 = zmul(p4, p4, M);
    ZSeries p16 = zmul(p8, p8, M);
    ZSeries p24 = zmul(p16, p8, M);
    ZSeries d(M + 1, 0);
    for (int n = 0; n + 1 <= M; ++n) d[n + 1] = p24[n];
    return d;
}

QExpansion wrap(int weight, const ZSeries& z) {
    QExpansion f;
    f.weight = weight;
    f.coeffs.reserve(z.size());
    for (const auto& c : z) f.coeffs.emplace_back(c);
    return f;
}

// Double-precision view of a q-expansion with the log data the tail
// certificates need.
struct EvalSeries {
    int weight = 0;
    int n_min = -1;
    std::vector<double> c;
    std::vector<double> lg;
    double logC = kNegInf;  // sup_n>=1 (log|a_n| - k log n)

    static EvalSeries from(const QExpansion& f) {
        EvalSeries s;
        s.weight = f.weight;
        s.c.resize(f.coeffs.size());
        s.lg.resize(f.coeffs.size());
        for (std::size_t n = 0; n < f.coeffs.size(); ++n) {
            s.c[n] = f.coeffs[n].get_d();
            s.lg[n] = log_abs_mpq(f.coeffs[n]);
            if (s.n_min < 0 && f.coeffs[n] != 0) s.n_min = static_cast<int>(n);
            if (n >= 1 && s.lg[n] > kNegInf)
                s.logC = std::max(s.logC, s.lg[n] - s.weight * std::log(static_cast<double>(n)));
        }
        if (s.n_min < 0) s.n_min = 0;
        return s;
    }

    int truncation() const { return static_cast<int>(c.size()) - 1; }

    std::complex<double> eval(double x, double y) const {
        const std::complex<double> q = std::polar(std::exp(-2.0 * kPi * y), 2.0 * kPi * x);
        std::complex<double> acc{0.0, 0.0};
        for (int n = truncation(); n >= 0; --n) acc = acc * q + c[n];
        return acc;
    }

    // log of the certified bound on sum_{n>M} |a_n| e^{-2 pi n y},
    // using |a_n| <= C n^k.  -inf when the geometric comparison fails.
    double log_tail(double y) const {
        if (logC == kNegInf) return kNegInf;
        const int M1 = truncation() + 1;
        const double lq = -2.0 * kPi * y;
        const double logr = weight * std::log1p(1.0 / M1) + lq;
        if (logr >= -0.01) return std::numeric_limits<double>::infinity();
        const double r = std::exp(logr);
        return logC + weight * std::log(static_cast<double>(M1)) + M1 * lq -
               std::log1p(-r);
    }

    // log of the largest single term |a_n| e^{-2 pi n y}.
    double log_max_term(double y) const {
        double m = kNegInf;
        const double lq = -2.0 * kPi * y;
        for (std::size_t n = 0; n < lg.size(); ++n)
            if (lg[n] > kNegInf) m = std::max(m, lg[n] + static_cast<double>(n) * lq);
        return m;
    }

    // log of sum_n |a_n| e^{-2 pi n y} + tail: a rigorous sup over x.
    double log_sup(double y) const {
        const double lq = -2.0 * kPi * y;
        double m = log_tail(y);
        if (m == std::numeric_limits<double>::infinity()) return m;
        for (std::size_t n = 0; n < lg.size(); ++n)
            if (lg[n] > kNegInf) m = std::max(m, lg[n] + static_cast<double>(n) * lq);
        if (m == kNegInf) return kNegInf;
        double acc = 0.0;
        for (std::size_t n = 0; n < lg.size(); ++n)
            if (lg[n] > kNegInf) acc += std::exp(lg[n] + static_cast<double>(n) * lq - m);
        const double lt = log_tail(y);
        if (lt > kNegInf) acc += std::exp(lt - m);
        return m + std::log(acc);
    }
};

int check_even_weight(int k, const char* who) {
    if (k % 2 != 0)
        throw std::invalid_argument(std::string(who) + ": weight must be even, got " +
                                    std::to_string(k));
    if (k < 0) throw std::invalid_argument(std::string(who) + ": weight must be >= 0");
    return k;
}

}  // namespace

double QExpansion::tail_bound_constant() const {
    double logC = kNegInf;
    for (std::size_t n = 1; n < coeffs.size(); ++n) {
        const double l = log_abs_mpq(coeffs[n]);
        if (l > kNegInf)
            logC = std::max(logC, l - weight * std::log(static_cast<double>(n)));
    }
    return logC == kNegInf ? 0.0 : std::exp(logC);
}

QExpansion eisenstein(int k, int M) {
    if (k != 4 && k != 6)
        throw std::invalid_argument("eisenstein: only k = 4 and k = 6 are generators");
    if (M < 0) throw std::invalid_argument("eisenstein: need M >= 0");
    return wrap(k, eisenstein_z(k, M));
}

QExpansion delta_form(int M) {
    if (M < 1) throw std::invalid_argument("delta_form: need M >= 1");
    return wrap(12, delta_z(M));
}

QExpansion mul(const QExpansion& f, const QExpansion& g) {
    const int M = std::min(f.truncation(), g.truncation());
    QExpansion h;
    h.weight = f.weight + g.weight;
    h.coeffs.assign(M + 1, mpq_class(0));
    for (int i = 0; i <= M; ++i) {
        if (f.coeffs[i] == 0) continue;
        for (int j = 0; i + j <= M; ++j) {
            if (g.coeffs[j] == 0) continue;
            h.coeffs[i + j] += f.coeffs[i] * g.coeffs[j];
        }
    }
    return h;
}

QExpansion pow(const QExpansion& f, int e) {
    if (e < 0) throw std::invalid_argument("pow: need e >= 0");
    QExpansion acc;
    acc.weight = 0;
    acc.coeffs.assign(f.coeffs.size(), mpq_class(0));
    acc.coeffs[0] = 1;
    QExpansion base = f;
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

int dim_cusp_forms(int k) {
    check_even_weight(k, "dim_cusp_forms");
    if (k < 12) return 0;
    const int q = k / 12;
    const int r = k % 12;
    const int dim_mk = (r == 2) ? q : q + 1;
    return dim_mk - 1;
}

std::vector<QExpansion> monomial_basis(int k, int M) {
    check_even_weight(k, "monomial_basis");
    std::vector<QExpansion> out;
    if (k < 12) return out;
    const ZSeries e4 = eisenstein_z(4, M);
    const ZSeries e6 = eisenstein_z(6, M);
    const ZSeries dl = delta_z(M);

    // Powers of E4 and Delta on demand.
    std::vector<ZSeries> e4_pow{ZSeries(M + 1, 0)};
    e4_pow[0][0] = 1;
    std::vector<ZSeries> dl_pow{ZSeries(M + 1, 0)};
    dl_pow[0][0] = 1;
    auto e4p = [&](int n) -> const ZSeries& {
        while (static_cast<int>(e4_pow.size()) <= n)
            e4_pow.push_back(zmul(e4_pow.back(), e4, M));
        return e4_pow[n];
    };
    auto dlp = [&](int n) -> const ZSeries& {
        while (static_cast<int>(dl_pow.size()) <= n)
            dl_pow.push_back(zmul(dl_pow.back(), dl, M));
        return dl_pow[n];
    };

    for (int c = 1; 12 * c <= k; ++c) {
        const int m = k - 12 * c;
        if (m == 2) continue;
        const int b = (m % 4 == 2) ? 1 : 0;
        const int a = (m - 6 * b) / 4;
        ZSeries z = zmul(e4p(a), dlp(c), M);
        if (b) z = zmul(z, e6, M);
        out.push_back(wrap(k, z));
    }
    if (static_cast<int>(out.size()) != dim_cusp_forms(k))
        throw NumericError("monomial_basis: count disagrees with the dimension formula");
    return out;
}

int choose_truncation(int k, double y_min) {
    if (!(y_min > 0)) throw std::invalid_argument("choose_truncation: need y_min > 0");
    int M = 40;
    // Certified tail log C + k log(M+1) - 2 pi (M+1) y_min <= -32 with
    // log C <= 0 for the monomial normalization.
    while (k * std::log(static_cast<double>(M + 1)) - 2.0 * kPi * (M + 1) * y_min > -32.0)
        ++M;
    return M;
}

EvalResult evaluate(const QExpansion& f, const UhpPoint& z, double rel_tol) {
    const EvalSeries s = EvalSeries::from(f);
    const double lt = s.log_tail(z.y);
    const double lmax = s.log_max_term(z.y);
    if (lt > kNegInf && lmax > kNegInf && lt > std::log(rel_tol) + lmax)
        throw TailError("evaluate: certified tail " + std::to_string(std::exp(lt)) +
                        " too large at y = " + std::to_string(z.y) +
                        "; increase the truncation order");
    EvalResult r;
    r.value = s.eval(z.x, z.y);
    r.tail_bound = (lt == kNegInf) ? 0.0 : std::exp(lt);
    return r;
}

namespace {

struct PeterssonCore {
    const EvalSeries sf, sg;
    int k;
    double ymax;
    double cusp_tail;

    PeterssonCore(const QExpansion& f, const QExpansion& g)
        : sf(EvalSeries::from(f)), sg(EvalSeries::from(g)), k(f.weight) {
        if (f.weight != g.weight)
            throw std::invalid_argument("petersson_inner: weights differ");
        if (!f.is_cuspidal() || !g.is_cuspidal())
            throw std::invalid_argument("petersson_inner: needs cusp forms");
        ymax = std::max(3.0, (k - 2) / (4.0 * kPi) + 10.0);
        // |f(x+iy)| <= F(ymax) e^{-2 pi (y-ymax)} above the cutoff, so the
        // dropped integral is bounded in closed form.
        const double lf = sf.log_sup(ymax), lg = sg.log_sup(ymax);
        const double denom = 4.0 * kPi - (k - 2) / ymax;
        if (lf == kNegInf || lg == kNegInf)
            cusp_tail = 0.0;
        else
            cusp_tail = std::exp(lf + lg + (k - 2) * std::log(ymax) - std::log(denom));
    }

    std::complex<double> integrand(double x, double y) const {
        return std::pow(y, k - 2) * sf.eval(x, y) * std::conj(sg.eval(x, y));
    }

    QuadResultC inner(double x, double abs_tol, double rel_tol) const {
        const double ylow = std::sqrt(1.0 - x * x);
        return integrate_complex([&](double y) { return integrand(x, y); }, ylow, ymax,
                                 abs_tol, rel_tol, 4000);
    }
};

InnerResult petersson_run(const QExpansion& f, const QExpansion& g, double rel_tol,
                          double anchor) {
    const PeterssonCore core(f, g);
    double scale = anchor;
    if (scale <= 0.0) {
        // Rough pass to find the magnitude.
        auto rough = integrate_complex(
            [&](double x) { return core.inner(x, 0.0, 1e-6).value; }, -0.5, 0.5, 0.0,
            1e-5, 2000);
        scale = std::abs(rough.value);
        if (scale == 0.0) scale = core.cusp_tail + 1e-300;
    }
    const double budget = rel_tol * scale;
    const double inner_tol = budget / 16.0;
    auto outer = integrate_complex(
        [&](double x) { return core.inner(x, inner_tol, 1e-11).value; }, -0.5, 0.5,
        budget / 2.0, 0.0, 4000);
    InnerResult r;
    r.value = outer.value;
    r.error = outer.error + inner_tol + core.cusp_tail;
    return r;
}

}  // namespace

InnerResult petersson_inner(const QExpansion& f, const QExpansion& g, double rel_tol) {
    return petersson_run(f, g, rel_tol, 0.0);
}

InnerResult petersson_inner_anchored(const QExpansion& f, const QExpansion& g,
                                     double rel_tol, double anchor) {
    return petersson_run(f, g, rel_tol, anchor);
}

namespace {

// Lower-triangular Cholesky of a near-unit-diagonal matrix.
std::vector<std::vector<double>> cholesky(const std::vector<std::vector<double>>& g) {
    const int n = static_cast<int>(g.size());
    std::vector<std::vector<double>> L(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = g[i][j];
            for (int m = 0; m < j; ++m) s -= L[i][m] * L[j][m];
            if (i == j) {
                if (!(s > 0.0))
                    throw GramError("orthonormal_basis: Gram matrix not positive "
                                    "definite (pivot " +
                                    std::to_string(s) + ")");
                L[i][i] = std::sqrt(s);
            } else {
                L[i][j] = s / L[j][j];
            }
        }
    }
    return L;
}

std::vector<std::vector<double>> lower_inverse(const std::vector<std::vector<double>>& L) {
    const int n = static_cast<int>(L.size());
    std::vector<std::vector<double>> C(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        C[i][i] = 1.0 / L[i][i];
        for (int j = i - 1; j >= 0; --j) {
            double s = 0.0;
            for (int m = j; m < i; ++m) s += L[i][m] * C[m][j];
            C[i][j] = -s / L[i][i];
        }
    }
    return C;
}

}  // namespace

OrthonormalBasis orthonormal_basis(int k) {
    check_even_weight(k, "orthonormal_basis");
    OrthonormalBasis basis;
    basis.weight = k;
    const int dim = dim_cusp_forms(k);
    if (dim == 0) return basis;

    const int M = choose_truncation(k, 0.5);
    basis.monomials = monomial_basis(k, M);

    std::vector<double> diag(dim);
    basis.gram.assign(dim, std::vector<double>(dim, 0.0));
    for (int i = 0; i < dim; ++i) {
        diag[i] = petersson_inner(basis.monomials[i], basis.monomials[i], 1e-10)
                      .value.real();
        if (!(diag[i] > 0.0))
            throw GramError("orthonormal_basis: nonpositive diagonal inner product");
        basis.gram[i][i] = diag[i];
    }
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < i; ++j) {
            const double anchor = std::sqrt(diag[i] * diag[j]);
            const double v =
                petersson_inner_anchored(basis.monomials[i], basis.monomials[j], 1e-10,
                                         anchor)
                    .value.real();
            basis.gram[i][j] = basis.gram[j][i] = v;
        }

    // Unit-diagonal rescale before factoring.
    std::vector<std::vector<double>> scaled(dim, std::vector<double>(dim));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            scaled[i][j] = basis.gram[i][j] / std::sqrt(diag[i] * diag[j]);
    basis.chol = cholesky(scaled);
    const auto inv = lower_inverse(basis.chol);
    basis.combo.assign(dim, std::vector<double>(dim, 0.0));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j <= i; ++j) basis.combo[i][j] = inv[i][j] / std::sqrt(diag[j]);
    return basis;
}

BergmanKernel::BergmanKernel(int k) : k_(k), basis_(orthonormal_basis(k)) {
    for (const auto& m : basis_.monomials) {
        std::vector<double> c(m.coeffs.size());
        for (std::size_t n = 0; n < m.coeffs.size(); ++n) c[n] = m.coeffs[n].get_d();
        series_.push_back(std::move(c));
    }
}

double BergmanKernel::raw(const UhpPoint& z) const {
    const int dim = basis_.dim();
    if (dim == 0) return 0.0;
    const std::complex<double> q =
        std::polar(std::exp(-2.0 * kPi * z.y), 2.0 * kPi * z.x);
    std::vector<std::complex<double>> mval(dim);
    for (int j = 0; j < dim; ++j) {
        std::complex<double> acc{0.0, 0.0};
        const auto& c = series_[j];
        for (int n = static_cast<int>(c.size()) - 1; n >= 0; --n) acc = acc * q + c[n];
        mval[j] = acc;
    }
    const double yk2 = std::pow(z.y, k_ / 2.0);
    double B = 0.0;
    for (int i = 0; i < dim; ++i) {
        std::complex<double> v{0.0, 0.0};
        for (int j = 0; j <= i; ++j) v += basis_.combo[i][j] * mval[j];
        B += std::norm(yk2 * v);
    }
    return B;
}

double BergmanKernel::operator()(const UhpPoint& z) const {
    return raw(reduce_psl2z(z).first);
}

double bergman_kernel(int k, const UhpPoint& z) { return BergmanKernel(k)(z); }

}  // namespace bergman
