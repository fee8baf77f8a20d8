#include "bergman/orbits.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <thread>

#include "bergman/io.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

namespace {

std::array<long long, 4> sign_normalize(std::array<long long, 4> m) {
    long long lead = m[0];
    if (lead == 0) lead = m[1];
    if (lead == 0) lead = m[2];
    if (lead == 0) lead = m[3];
    if (lead < 0)
        for (auto& e : m) e = -e;
    return m;
}

bool is_cusp_stabilizer(const std::array<long long, 4>& m) {
    // Integer parabolic-or-identity test: |trace| = 2. Every parabolic
    // element of a finite-index subgroup of PSL2(Z) fixes a rational
    // cusp, so this is exactly membership in the union of cusp
    // stabilizers (with the identity counted in).
    return std::llabs(m[0] + m[3]) == 2;
}

}  // namespace

GroupSpec GroupSpec::psl2z(bool exclude_stabilizers) {
    GroupSpec s;
    s.kind = Kind::full_psl2z;
    s.level = 1;
    s.exclude_cusp_stabilizers = exclude_stabilizers;
    return s;
}

GroupSpec GroupSpec::gamma(int N, bool exclude_stabilizers) {
    if (N < 3)
        throw std::invalid_argument(
            "GroupSpec: principal congruence level must be >= 3 (torsion-free)");
    GroupSpec s;
    s.kind = Kind::principal_congruence;
    s.level = N;
    s.exclude_cusp_stabilizers = exclude_stabilizers;
    return s;
}

bool GroupSpec::contains(const std::array<long long, 4>& m) const {
    if (kind == Kind::full_psl2z) return true;
    const long long N = level;
    auto mod = [N](long long v) {
        long long r = v % N;
        return r < 0 ? r + N : r;
    };
    const bool plus = mod(m[0]) == 1 && mod(m[3]) == 1 && mod(m[1]) == 0 && mod(m[2]) == 0;
    const bool minus =
        mod(m[0]) == N - 1 && mod(m[3]) == N - 1 && mod(m[1]) == 0 && mod(m[2]) == 0;
    return plus || minus;
}

std::string GroupSpec::name() const {
    if (kind == Kind::full_psl2z) return "psl2z";
    return "gamma" + std::to_string(level);
}

MoebiusMap OrbitRecord::map() const {
    return MoebiusMap(static_cast<double>(m[0]), static_cast<double>(m[1]),
                      static_cast<double>(m[2]), static_cast<double>(m[3]));
}

// Enumeration of {gamma : d(z, gamma z) <= R} by exact entry bounds.
//
// For gamma = [a b; c d] in SL2(Z) one has
//   4 sinh^2(rho/2) = |c z^2 + (d - a) z - b|^2 / y^2,
// so rho <= R forces, with S = 2 sinh(R/2),
//   |2cx + d - a| <= S            (imaginary part), and
//   |cz + d|^2 <= e^R             (height distortion |log Im(gz)/Im z| <= rho).
// Scanning c in [0, e^{R/2}/y], d with (cx+d)^2 <= e^R - c^2 y^2, and a
// in the length-2S window with ad = 1 mod c covers every candidate; b is
// then determined by the determinant. Each projective element has a
// unique representative with c > 0, or c = 0 and a = d = 1.
std::vector<OrbitRecord> enumerate_orbit(const GroupSpec& spec, const UhpPoint& z,
                                         double R, double radius_cap, int workers) {
    if (!(R >= 0)) throw std::invalid_argument("enumerate_orbit: need R >= 0");
    if (R > radius_cap)
        throw std::invalid_argument("enumerate_orbit: radius " + std::to_string(R) +
                                    " exceeds cap " + std::to_string(radius_cap));
    const double x = z.x, y = z.y;
    const double S = 2.0 * std::sinh(R / 2.0);
    const double expR = std::exp(R);
    const double tol = 1e-12;

    auto emit = [&](long long a, long long b, long long c, long long d,
                    std::vector<OrbitRecord>& out) {
        std::array<long long, 4> m = sign_normalize({a, b, c, d});
        if (!spec.contains(m)) return;
        if (spec.exclude_cusp_stabilizers && is_cusp_stabilizer(m)) return;
        const double rho = displacement(OrbitRecord{m, 0.0}.map(), z);
        if (rho <= R + tol) out.push_back(OrbitRecord{m, rho});
    };

    const long long c_max = static_cast<long long>(std::floor(std::exp(R / 2.0) / y));

    auto scan_c = [&](long long c, std::vector<OrbitRecord>& out) {
        if (c == 0) {
            // Translations a = d = 1, |b| <= y S.
            const long long bmax = static_cast<long long>(std::floor(y * S + 1.0));
            for (long long b = -bmax; b <= bmax; ++b) emit(1, b, 0, 1, out);
            return;
        }
        const double disc = expR - static_cast<double>(c) * c * y * y;
        if (disc < 0) return;
        const double root = std::sqrt(disc);
        const long long d_lo = static_cast<long long>(std::floor(-c * x - root)) - 1;
        const long long d_hi = static_cast<long long>(std::ceil(-c * x + root)) + 1;
        for (long long d = d_lo; d <= d_hi; ++d) {
            // a must solve a*d = 1 (mod c) for b = (ad-1)/c to be
            // integral; extended Euclid, skipping gcd(d, c) != 1.
            long long r0 = c, r1 = ((d % c) + c) % c;
            long long t0 = 0, t1 = 1;
            while (r1 != 0) {
                const long long q = r0 / r1;
                const long long r2 = r0 - q * r1;
                const long long t2 = t0 - q * t1;
                r0 = r1;
                r1 = r2;
                t0 = t1;
                t1 = t2;
            }
            if (r0 != 1) continue;
            const long long a0 = ((t0 % c) + c) % c;
            const double center = 2.0 * c * x + d;
            const long long a_lo = static_cast<long long>(std::floor(center - S)) - 1;
            const long long a_hi = static_cast<long long>(std::ceil(center + S)) + 1;
            // Smallest a >= a_lo with a = a0 (mod c).
            long long k = (a_lo - a0) / c;
            long long a = a0 + k * c;
            while (a < a_lo) a += c;
            while (a - c >= a_lo) a -= c;
            for (; a <= a_hi; a += c) {
                const long long num = a * d - 1;
                if (num % c != 0) continue;
                emit(a, num / c, c, d, out);
            }
        }
    };

    std::vector<OrbitRecord> all;
    const int nw = std::max(1, workers);
    if (nw == 1 || c_max < 2) {
        for (long long c = 0; c <= c_max; ++c) scan_c(c, all);
    } else {
        // Partition the c-range; merge in c order so the result set is
        // scheduling-independent.
        std::vector<std::vector<OrbitRecord>> parts(c_max + 1);
        std::atomic<long long> next{0};
        auto worker = [&]() {
            for (;;) {
                const long long c = next.fetch_add(1);
                if (c > c_max) return;
                scan_c(c, parts[c]);
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < nw; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    }

    std::sort(all.begin(), all.end(), [](const OrbitRecord& p, const OrbitRecord& q) {
        if (p.rho != q.rho) return p.rho < q.rho;
        return p.m < q.m;
    });
    all.erase(std::unique(all.begin(), all.end(),
                          [](const OrbitRecord& p, const OrbitRecord& q) {
                              return p.m == q.m;
                          }),
              all.end());
    return all;
}

CountingData CountingData::collect(const GroupSpec& spec, const UhpPoint& z, double R,
                                   double radius_cap, int workers) {
    auto records = enumerate_orbit(spec, z, R, radius_cap, workers);
    CountingData data{z, {}, spec};
    data.rhos.reserve(records.size());
    for (const auto& r : records)
        if (!(r.m[0] == 1 && r.m[1] == 0 && r.m[2] == 0 && r.m[3] == 1))
            data.rhos.push_back(r.rho);
    std::sort(data.rhos.begin(), data.rhos.end());
    return data;
}

long counting_function(const CountingData& data, double rho) {
    return static_cast<long>(
        std::upper_bound(data.rhos.begin(), data.rhos.end(), rho) - data.rhos.begin());
}

double injectivity_radius(const GroupSpec& spec, const std::vector<UhpPoint>& sample,
                          double R, double radius_cap, int workers) {
    if (sample.empty())
        throw std::invalid_argument("injectivity_radius: empty sample");
    double best = std::numeric_limits<double>::infinity();
    bool found = false;
    for (const auto& z : sample) {
        auto records = enumerate_orbit(spec, z, R, radius_cap, workers);
        for (const auto& r : records) {
            if (r.m[0] == 1 && r.m[1] == 0 && r.m[2] == 0 && r.m[3] == 1) continue;
            best = std::min(best, r.rho);
            found = true;
        }
    }
    if (!found)
        throw NumericError(
            "injectivity_radius: no group element within radius; increase R");
    return best;
}

CountingBound counting_sum_bound(const std::function<double(double)>& f, double delta,
                                 double r_inj, const CountingData& data) {
    if (!(r_inj > 0)) throw std::invalid_argument("counting_sum_bound: need r_inj > 0");
    if (!(delta > r_inj / 2.0))
        throw std::invalid_argument("counting_sum_bound: hypothesis delta > r/2 violated");
    CountingBound b{};
    b.stieltjes_term = f(0.0);  // identity mass
    for (double rho : data.rhos) {
        if (rho > delta) break;
        b.stieltjes_term += f(rho);
    }
    const double sh4 = std::sinh(r_inj / 4.0);
    b.boundary_term = f(delta) * std::sinh(r_inj / 2.0) * std::sinh(delta) / (sh4 * sh4);

    // Improper integral, panel by panel until the contribution dies.
    const double width = 2.0;
    double acc = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    double a = delta;
    for (int panel = 0;; ++panel) {
        if (panel > 2000)
            throw NumericError("counting_sum_bound: integrand does not decay (f must "
                               "fall faster than e^{-rho})");
        auto part = integrate(
            [&](double rho) { return f(rho) * std::sinh(rho + r_inj / 2.0); }, a,
            a + width, 1e-15, 1e-12, 4000);
        acc += part.value;
        if (part.value > prev)
            throw NumericError("counting_sum_bound: integrand does not decay (f must "
                               "fall faster than e^{-rho})");
        if (std::abs(part.value) < 1e-14 * std::max(1.0, std::abs(acc)) &&
            std::abs(part.value) < 1e-14)
            break;
        prev = part.value;
        a += width;
    }
    b.integral_term = acc / (2.0 * sh4 * sh4);
    return b;
}

ExpSumResult orbit_exp_sum(const GroupSpec& spec, const UhpPoint& z, double R,
                           double r_inj, double radius_cap, int workers) {
    auto data = CountingData::collect(spec, z, R, radius_cap, workers);
    double sum = 0.0;
    for (double rho : data.rhos) sum += std::exp(-2.0 * rho);
    // Tail beyond R: boundary + integral terms of the counting
    // inequality at delta = R (the Stieltjes part is the truncation).
    auto bound = counting_sum_bound([](double rho) { return std::exp(-2.0 * rho); }, R,
                                    r_inj, data);
    return ExpSumResult{sum, bound.boundary_term + bound.integral_term};
}

void write_orbit_csv(std::ostream& os, const std::vector<OrbitRecord>& records) {
    os << "a,b,c,d,rho\n";
    for (const auto& r : records)
        os << r.m[0] << ',' << r.m[1] << ',' << r.m[2] << ',' << r.m[3] << ','
           << fmt17(r.rho) << '\n';
}

}  // namespace bergman
