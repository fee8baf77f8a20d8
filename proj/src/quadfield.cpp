#include "bergman/quadfield.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace bergman {

namespace {

bool is_squarefree(long n) {
    for (long p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

long isqrt_floor(long n) {
    long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// floor((P + sqrt(d)) / Q), exact in integer arithmetic. The continued
// fraction of omega keeps Q in (0, 2 sqrt(d)) and P+sqrt(d) positive, so
// plain integer division suffices.
long cf_floor(long P, long Q, long sqrt_d) {
    const long t = P + sqrt_d;  // floor(P + sqrt(d)) for irrational sqrt(d)
    long q = t / Q;
    if (t % Q != 0 && (t < 0) != (Q < 0)) --q;
    return q;
}

}  // namespace

QuadraticField::QuadraticField(long D) : d_(D) {
    if (D < 2) throw std::invalid_argument("QuadraticField: need D >= 2");
    if (D > 1000000) throw std::invalid_argument("QuadraticField: D out of range");
    if (!is_squarefree(D))
        throw std::invalid_argument("QuadraticField: D = " + std::to_string(D) +
                                    " is not squarefree");
    half_ = (D % 4 == 1);
}

double QuadraticField::omega1() const {
    const double s = std::sqrt(static_cast<double>(d_));
    return half_ ? (1.0 + s) / 2.0 : s;
}

double QuadraticField::omega2() const {
    const double s = std::sqrt(static_cast<double>(d_));
    return half_ ? (1.0 - s) / 2.0 : -s;
}

double QuadraticField::covolume() const {
    return std::sqrt(static_cast<double>(discriminant()));
}

FieldElement::FieldElement(mpz_class a_, mpz_class b_, QuadraticField f)
    : a(std::move(a_)), b(std::move(b_)), field(f) {}

FieldElement FieldElement::conj() const {
    // conj(omega) = t - omega.
    return {a + field.omega_trace() * b, -b, field};
}

mpz_class FieldElement::norm() const {
    return a * a + field.omega_trace() * a * b - field.omega_norm_offset() * b * b;
}

mpz_class FieldElement::trace() const { return 2 * a + field.omega_trace() * b; }

bool FieldElement::is_unit() const {
    const mpz_class n = norm();
    return n == 1 || n == -1;
}

std::pair<double, double> FieldElement::embeddings() const {
    const double ad = a.get_d();
    const double bd = b.get_d();
    double s1 = ad + bd * field.omega1();
    double s2 = ad + bd * field.omega2();
    // a + b*omega_j cancels catastrophically for the small embedding of
    // a large element; recover it from the exact norm sigma_1*sigma_2.
    const double n = norm().get_d();
    const double scale1 = std::abs(ad) + std::abs(bd * field.omega1());
    const double scale2 = std::abs(ad) + std::abs(bd * field.omega2());
    if (s1 != 0.0 && std::abs(s2) < 1e-3 * scale2) s2 = n / s1;
    else if (s2 != 0.0 && std::abs(s1) < 1e-3 * scale1) s1 = n / s2;
    return {s1, s2};
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    return {a + o.a, b + o.b, field};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    return {a - o.a, b - o.b, field};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    // (a1 + b1 w)(a2 + b2 w) with w^2 = t w + m.
    const long t = field.omega_trace();
    const long m = field.omega_norm_offset();
    const mpz_class bb = b * o.b;
    return {a * o.a + m * bb, a * o.b + b * o.a + t * bb, field};
}

FieldElement FieldElement::operator-() const { return {-a, -b, field}; }

bool FieldElement::operator==(const FieldElement& o) const {
    return a == o.a && b == o.b && field == o.field;
}

UnitGroup unit_group(const QuadraticField& F) {
    // Continued-fraction expansion of omega written as (P + sqrt(d))/Q.
    // Once a (P,Q) state repeats, the matrix product over the cycle
    // stabilizes the corresponding quadratic irrational and its
    // eigenvalue q*alpha + q' is the fundamental unit of Z[omega].
    const long d = F.D();
    const long s = isqrt_floor(d);
    long P = F.half_basis() ? 1 : 0;
    long Q = F.half_basis() ? 2 : 1;

    std::map<std::pair<long, long>, int> seen;
    std::vector<long> partial;
    std::vector<std::pair<long, long>> states;
    int cycle_start = -1;
    for (int i = 0; i < 200000; ++i) {
        auto key = std::make_pair(P, Q);
        auto it = seen.find(key);
        if (it != seen.end()) {
            cycle_start = it->second;
            break;
        }
        seen.emplace(key, i);
        states.push_back(key);
        const long ai = cf_floor(P, Q, s);
        partial.push_back(ai);
        const long Pn = ai * Q - P;
        const long Qn = (d - Pn * Pn) / Q;
        if (Qn == 0) throw IterationLimitError("unit_group: degenerate CF state");
        P = Pn;
        Q = Qn;
    }
    if (cycle_start < 0)
        throw IterationLimitError("unit_group: continued fraction did not cycle");

    // Convergent matrix over one full period starting at the cycle.
    mpz_class p = 1, pp = 0, q = 0, qq = 1;
    for (std::size_t i = cycle_start; i < partial.size(); ++i) {
        const mpz_class np = partial[i] * p + pp;
        const mpz_class nq = partial[i] * q + qq;
        pp = p;
        qq = q;
        p = np;
        q = nq;
    }
    const long Pj = states[cycle_start].first;
    const long Qj = states[cycle_start].second;
    // eps = q*(P_j + sqrt(d))/Q_j + q' with sqrt(d) = omega (D=2,3 mod 4)
    // or 2*omega - 1 (D=1 mod 4).
    mpz_class A, B;
    if (F.half_basis()) {
        A = q * Pj + qq * Qj - q;
        B = 2 * q;
    } else {
        A = q * Pj + qq * Qj;
        B = q;
    }
    if (A % Qj != 0 || B % Qj != 0)
        throw IterationLimitError("unit_group: unit not integral (internal error)");
    FieldElement eps(A / Qj, B / Qj, F);
    if (!eps.is_unit()) throw IterationLimitError("unit_group: CF produced a non-unit");

    // Normalize to sigma_1 > 1 among {±eps, ±eps^{-1}}.
    auto s1 = [](const FieldElement& e) { return e.embeddings().first; };
    FieldElement cand = eps;
    if (s1(cand) < 0) cand = -cand;
    if (s1(cand) < 1.0) cand = unit_inverse(cand);
    if (s1(cand) < 0) cand = -cand;
    if (!(s1(cand) > 1.0))
        throw IterationLimitError("unit_group: normalization failed");
    return UnitGroup{cand};
}

FieldElement fundamental_unit(const QuadraticField& F) {
    return unit_group(F).fundamental_unit;
}

FieldElement unit_inverse(const FieldElement& eps) {
    const mpz_class n = eps.norm();
    if (n == 1) return eps.conj();
    if (n == -1) return -eps.conj();
    throw std::invalid_argument("unit_inverse: element is not a unit");
}

std::vector<FieldElement> enumerate_units(const QuadraticField& F, int n_max) {
    if (n_max < 0) throw std::invalid_argument("enumerate_units: need n_max >= 0");
    const FieldElement eps0 = fundamental_unit(F);
    const FieldElement inv0 = unit_inverse(eps0);
    std::vector<FieldElement> out;
    out.reserve(2 * (2 * n_max + 1));
    // n = -n_max..n_max, each power followed by its negative.
    FieldElement p = inv0;
    std::vector<FieldElement> neg_powers;
    for (int n = 1; n <= n_max; ++n) {
        neg_powers.push_back(p);
        p = p * inv0;
    }
    for (int n = n_max; n >= 1; --n) {
        out.push_back(neg_powers[n - 1]);
        out.push_back(-neg_powers[n - 1]);
    }
    FieldElement one(1, 0, F);
    out.push_back(one);
    out.push_back(-one);
    FieldElement q = eps0;
    for (int n = 1; n <= n_max; ++n) {
        out.push_back(q);
        out.push_back(-q);
        q = q * eps0;
    }
    return out;
}

std::vector<FieldElement> enumerate_lattice(const QuadraticField& F,
                                            const EmbeddingBox& box, std::size_t cap) {
    if (!(box.s1_lo <= box.s1_hi) || !(box.s2_lo <= box.s2_hi))
        throw std::invalid_argument("enumerate_lattice: malformed box");
    const double w1 = F.omega1(), w2 = F.omega2();
    // b = (sigma_1 - sigma_2)/(w1 - w2); bound it from the box corners,
    // widened by one unit against round-off, then filter exactly.
    const double span = w1 - w2;
    const long b_lo = static_cast<long>(std::floor((box.s1_lo - box.s2_hi) / span)) - 1;
    const long b_hi = static_cast<long>(std::ceil((box.s1_hi - box.s2_lo) / span)) + 1;

    // Candidate-count guard before materializing anything.
    double est = 0.0;
    for (long b = b_lo; b <= b_hi; ++b) {
        const double a_lo = std::max(box.s1_lo - b * w1, box.s2_lo - b * w2);
        const double a_hi = std::min(box.s1_hi - b * w1, box.s2_hi - b * w2);
        if (a_hi >= a_lo) est += a_hi - a_lo + 3.0;
        if (est > static_cast<double>(cap))
            throw std::invalid_argument("enumerate_lattice: box exceeds element cap");
    }

    std::vector<FieldElement> out;
    for (long b = b_lo; b <= b_hi; ++b) {
        const double a_lo = std::max(box.s1_lo - b * w1, box.s2_lo - b * w2);
        const double a_hi = std::min(box.s1_hi - b * w1, box.s2_hi - b * w2);
        if (a_hi < a_lo) continue;
        const long lo = static_cast<long>(std::floor(a_lo)) - 1;
        const long hi = static_cast<long>(std::ceil(a_hi)) + 1;
        for (long a = lo; a <= hi; ++a) {
            const double s1 = a + b * w1;
            const double s2 = a + b * w2;
            if (s1 >= box.s1_lo && s1 <= box.s1_hi && s2 >= box.s2_lo && s2 <= box.s2_hi)
                out.emplace_back(a, b, F);
        }
    }
    return out;
}

}  // namespace bergman
