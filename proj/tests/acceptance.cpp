// Acceptance suite: runs every acceptance criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion. Exit code is
// the number of failed criteria.
//
// Criteria 2(b), 5 and 9(a) check closed-form ceilings/comparisons that
// are analytically false as printed; they are implemented faithfully and
// fail with pinned counterexamples (see the per-criterion detail and the
// matching unit tests).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bergman/asymptotics.hpp"
#include "bergman/bounds.hpp"
#include "bergman/forms.hpp"
#include "bergman/orbits.hpp"
#include "bergman/quadrature.hpp"

using namespace bergman;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

std::vector<Outcome> outcomes;

void record(int id, const std::string& name, bool pass, const std::string& detail) {
    outcomes.push_back({id, name, pass, detail});
    std::printf("%s  %2d  %-28s %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double v, int prec = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    return buf;
}

// ---- criterion 1: dimension consistency ----------------------------------

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    int worst_k = 0;
    bool ok = true;
    for (int k : {12, 16, 18, 20, 22, 24, 26, 28, 30, 36, 40}) {
        const auto c = dimension_consistency(k);
        if (c.rel_error > worst) {
            worst = c.rel_error;
            worst_k = k;
        }
        if (c.rel_error > 1e-3 || c.dimension != dim_cusp_forms(k)) ok = false;
    }
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    ok = ok && secs < 300;
    record(1, "dimension-consistency", ok,
           "max rel err " + fmt(worst) + " at k=" + std::to_string(worst_k) + ", " +
               std::to_string(secs) + "s (< 5min)");
}

// ---- criterion 2: heat integral closed case and printed ceiling ----------

void criterion_2() {
    const double v0 = heat_integral(0.0);
    const double exact = std::sqrt(2.0) * kPi * kPi / 6.0;
    const bool closed_ok = std::abs(v0 - exact) <= 1e-6;

    int violations = 0;
    double first_rho = -1.0, first_val = 0.0, first_ceil = 0.0;
    for (double rho = 0.0; rho <= 8.0001; rho += 0.25) {
        const double v = heat_integral(rho);
        const double ceil = 2.0 * std::sqrt(2.0) * std::exp(-rho);
        if (v > ceil) {
            if (violations == 0) {
                first_rho = rho;
                first_val = v;
                first_ceil = ceil;
            }
            ++violations;
        }
    }
    const bool ok = closed_ok && violations == 0;
    std::string detail = "I(0)=" + fmt(v0, 9) + " vs " + fmt(exact, 9);
    if (violations > 0)
        detail += "; ceiling false at " + std::to_string(violations) +
                  "/33 grid points, first rho=" + fmt(first_rho) + ": I=" +
                  fmt(first_val) + " > " + fmt(first_ceil) +
                  " (true decay carries a linear factor; see README and the pinned test)";
    record(2, "heat-integral", ok, detail);
}

// ---- criterion 3: bound chain domination ----------------------------------

void criterion_3() {
    int violations = 0;
    double min_margin = 1e300;
    for (int k = 2; k <= 40; k += 2)
        for (double rho = 0.0; rho <= 6.0001; rho += 0.1) {
            const double a = heat_bound_cosh(k, rho);
            const double b = heat_bound_exp(k, rho);
            if (a > b) ++violations;
            min_margin = std::min(min_margin, b - a);
        }
    record(3, "bound-chain-domination", violations == 0,
           std::to_string(violations) + " violations on the 20x61 grid, min margin " +
               fmt(min_margin, 3));
}

// ---- criterion 4: Gamma identity ------------------------------------------

void criterion_4() {
    double worst = 0.0;
    for (int k = 1; k <= 20; ++k) {
        auto q = integrate(
            [k](double th) { return std::pow(std::cos(th), 2 * k - 2); }, 0.0,
            kPi / 2.0, 1e-13, 1e-13, 20000);
        worst = std::max(worst, std::abs(gamma_ratio_integral(k) - q.value));
    }
    const bool anchors = std::abs(gamma_ratio_integral(1) - kPi / 2.0) < 1e-12 &&
                         std::abs(gamma_ratio_integral(2) - kPi / 4.0) < 1e-12;
    record(4, "gamma-identity", worst <= 1e-10 && anchors,
           "max |closed - quadrature| = " + fmt(worst, 3) + ", anchors pi/2, pi/4 ok");
}

// ---- criterion 5: lattice-sum inequality -----------------------------------

void criterion_5() {
    const auto t0 = std::chrono::steady_clock::now();
    int violations = 0, total = 0;
    double worst_ratio = 0.0;
    std::string example;
    std::mt19937_64 rng(50505);
    std::uniform_real_distribution<double> uy(0.5, 4.0);
    std::uniform_real_distribution<double> ux(-0.5, 0.5);
    std::uniform_int_distribution<int> un(-3, 3);
    std::uniform_int_distribution<int> uk(1, 3);
    std::uniform_int_distribution<int> us(0, 1);
    for (long Dv : {2L, 5L}) {
        const QuadraticField F(Dv);
        const auto eps0 = fundamental_unit(F);
        for (int t = 0; t < 20; ++t) {
            const PolyPoint z({{ux(rng), uy(rng)}, {ux(rng), uy(rng)}});
            const WeightVector w({2 * uk(rng), 2 * uk(rng)});
            const int n = un(rng);
            FieldElement eps(1, 0, F);
            const FieldElement step = n >= 0 ? eps0 : unit_inverse(eps0);
            for (int m = 0; m < std::abs(n); ++m) eps = eps * step;
            if (us(rng)) eps = -eps;
            const auto rep = stabilizer_lattice_sum(F, z, eps, w, 30.0);
            ++total;
            const double lhs = rep.truncated_value + rep.tail_bound;
            if (!rep.satisfied()) {
                ++violations;
                if (lhs / rep.ceiling > worst_ratio) {
                    worst_ratio = lhs / rep.ceiling;
                    example = "D=" + std::to_string(Dv) + " eps^" + std::to_string(n) +
                              ": " + fmt(lhs) + " > " + fmt(rep.ceiling);
                }
            }
        }
    }
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    const bool ok = violations == 0 && secs < 60;
    std::string detail = std::to_string(violations) + "/" + std::to_string(total) +
                         " violations, " + std::to_string(secs) + "s";
    if (violations > 0)
        detail += "; worst " + example +
                  " (printed ceiling is analytically false; alpha=0 term alone can "
                  "exceed it; see README and the pinned test)";
    record(5, "lattice-sum-inequality", ok, detail);
}

// ---- criterion 6: unit-sum bound -------------------------------------------

void criterion_6() {
    int violations = 0, total = 0;
    double worst = 0.0;
    std::mt19937_64 rng(60606);
    std::uniform_real_distribution<double> uy(0.2, 5.0);
    for (long Dv : {2L, 5L}) {
        const QuadraticField F(Dv);
        for (int t = 0; t < 20; ++t) {
            const auto rep = unit_sum(F, {uy(rng), uy(rng)}, 12);
            ++total;
            worst = std::max(worst,
                             (rep.truncated_value + rep.tail_bound) / rep.ceiling);
            if (!rep.satisfied()) ++violations;
        }
    }
    record(6, "unit-sum-bound", violations == 0,
           std::to_string(violations) + "/" + std::to_string(total) +
               " violations, worst value/ceiling = " + fmt(worst));
}

// ---- criterion 7: orbit counting inequality ---------------------------------

void criterion_7() {
    const auto spec = GroupSpec::gamma(3, true);
    std::vector<UhpPoint> grid;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            grid.emplace_back(-0.48 + 0.96 * i / 4.0, 0.9 + 1.2 * j / 4.0);
    const double measured = injectivity_radius(spec, grid, 6.0);
    const double r_low = 0.9 * measured;
    const double ceiling = 9.0 + 1.0 / (4.0 * std::pow(std::sinh(r_low / 4.0), 2));
    auto f = [](double rho) { return std::exp(-2.0 * rho); };

    int jl_viol = 0, ceil_viol = 0, total = 0;
    double worst_lhs = 0.0;
    for (const auto& z : grid) {
        const auto data = CountingData::collect(spec, z, 8.0);
        const auto bound = counting_sum_bound(f, 0.75 * r_low, r_low, data);
        const auto sum = orbit_exp_sum(spec, z, 8.0, r_low);
        const double lhs = 1.0 + sum.truncated + sum.tail;  // identity included
        ++total;
        worst_lhs = std::max(worst_lhs, lhs);
        if (lhs > bound.total()) ++jl_viol;
        if (lhs > ceiling) ++ceil_viol;
    }
    record(7, "orbit-counting-inequality", jl_viol == 0 && ceil_viol == 0,
           std::to_string(total) + " base points, measured r=" + fmt(measured) +
               " (safety 0.9), worst sum " + fmt(worst_lhs) + " vs ceiling " +
               fmt(ceiling) + "; violations " + std::to_string(jl_viol) + "+" +
               std::to_string(ceil_viol));
}

// ---- criterion 8: curvature finite-difference check --------------------------

void criterion_8() {
    const double pts[5][2] = {
        {0.0, 1.0}, {0.3, 1.5}, {-0.2, 2.0}, {0.1, 0.8}, {0.0, 3.0}};
    bool ok = true;
    double worst_lo = 10.0, worst_hi = 0.0;
    for (const auto& p : pts) {
        const UhpPoint z{p[0], p[1]};
        const double exact = -1.0 / (z.y * z.y);
        const double e1 = std::abs(laplacian_log_y_fd(z, 1e-2) - exact);
        const double e2 = std::abs(laplacian_log_y_fd(z, 5e-3) - exact);
        const double e3 = std::abs(laplacian_log_y_fd(z, 2.5e-3) - exact);
        for (double ratio : {e1 / e2, e2 / e3}) {
            worst_lo = std::min(worst_lo, ratio);
            worst_hi = std::max(worst_hi, ratio);
            if (ratio < 3.5 || ratio > 4.5) ok = false;
        }
    }
    record(8, "curvature-fd-check", ok,
           "halving ratios in [" + fmt(worst_lo, 4) + ", " + fmt(worst_hi, 4) +
               "], target [3.5, 4.5]");
}

// ---- criterion 9: mass equidistribution --------------------------------------

void criterion_9() {
    const MassBox A(-0.5, 0.5, 1.2, 2.0, true);
    const double target = 1.0 / kPi;
    std::string table;
    double err12 = 0.0, err60 = 0.0;
    bool full_ok = true;
    double worst_full = 0.0;
    for (int k : {12, 24, 36, 48, 60}) {
        const BergmanKernel kernel(k);
        const double m = que_mass(A, kernel);
        const double err = std::abs(m - target);
        if (k == 12) err12 = err;
        if (k == 60) err60 = err;
        table += " k" + std::to_string(k) + ":" + fmt(err, 3);
        const auto c = dimension_consistency(kernel);
        const double full = c.integral / c.dimension;
        worst_full = std::max(worst_full, std::abs(full - 1.0));
        if (std::abs(full - 1.0) > 1e-3) full_ok = false;
    }
    const bool direction_ok = err60 < err12;
    std::string detail = "|mass-1/pi|:" + table +
                         "; full-domain worst |mass-1| = " + fmt(worst_full, 3);
    if (!direction_ok)
        detail += "; err(60) !< err(12) - k=12 lands near the limit by accident, "
                  "convergence is oscillatory (see README)";
    record(9, "mass-equidistribution", direction_ok && full_ok, detail);
}

// ---- criterion 10: sup-norm scaling law ---------------------------------------

void criterion_10() {
    double lo = 1e300, hi = 0.0;
    std::string series;
    for (int k = 12; k <= 120; k += 12) {
        const auto scan = supnorm_scan(k, GridSpec{200, 200, 10.0, 3});
        lo = std::min(lo, scan.normalized);
        hi = std::max(hi, scan.normalized);
        series += " " + fmt(scan.normalized, 3);
    }
    record(10, "supnorm-scaling", hi / lo < 10.0,
           "sup/k^1.5 over k=12..120:" + series + "; max/min = " + fmt(hi / lo, 4) +
               " (< 10)");
}

// ---- criterion 11: orbit-sum term ceilings ------------------------------------

void criterion_11() {
    int violations = 0;
    for (int i = 0; i < 200; ++i) {
        const double r = 0.05 + i * (10.0 - 0.05) / 199.0;
        const auto t = orbit_sum_terms(r);
        const double s = std::sinh(r / 4.0);
        if (t.t2 > 8.0) ++violations;
        if (t.t3 > 1.0 / (4.0 * s * s)) ++violations;
    }
    record(11, "orbit-term-ceilings", violations == 0,
           std::to_string(violations) + " violations on the 200-point grid");
}

// ---- criterion 12: CLI determinism ---------------------------------------------

std::string run_cli_capture(const std::string& args, int& exit_code) {
    static int counter = 0;
    const fs::path dir = "acceptance_tmp";
    fs::create_directories(dir);
    const fs::path out = dir / ("out" + std::to_string(counter++));
    const std::string cmd =
        std::string(CLI_EXECUTABLE) + " " + args + " >" + out.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream is(out, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void criterion_12() {
    const std::string cmds[] = {
        "--k 12 --point 0.3+1.5i --format json",
        "--series 12:36:12 --point i --format csv",
        "--scan --k 12 --grid 60x60 --ymax 6 --format json",
        "bounds heat-integral --rho 0",
        "bounds hk-chain --k 4 --rho 1.5",
        "bounds type1 --k 2 --rinj 2",
        "bounds type2 --k 2,2 --rinj 1 --sup-mode",
        "bounds t-terms --rinj 1",
        "bounds gamma --k 10",
        "bounds auxlemma --D 5 --k 2,2 --trials 5",
        "bounds unit-sum --D 5 --y 1,1 --nmax 10",
        "orbits enum --group gamma3 --point i --radius 6",
        "orbits inj --group gamma3",
        "orbits expsum --group gamma3 --point i --radius 8",
        "que --box -0.5,0.5,1.2,2 --k 12 --format csv",
        "que --full-domain --k 12,16 --format csv",
        "--k 12 --export-basis",
        "--scan --k 12 --grid 40x40 --ymax 6 --dump-grid",
    };
    int bad = 0;
    std::string first_bad;
    for (const auto& c : cmds) {
        int e1, e2, e3, e4;
        const auto a = run_cli_capture(c, e1);
        const auto b = run_cli_capture(c, e2);
        const auto w1 = run_cli_capture(c + " --workers 1", e3);
        const auto w4 = run_cli_capture(c + " --workers 4", e4);
        if (e1 != 0 || e2 != 0 || e3 != 0 || e4 != 0 || a != b || w1 != w4 || a.empty()) {
            ++bad;
            if (first_bad.empty()) first_bad = c;
        }
    }
    record(12, "cli-determinism", bad == 0,
           std::to_string(std::size(cmds)) + " commands x {rerun, workers 1 vs 4}" +
               (bad ? "; first mismatch: " + first_bad : "; all byte-identical"));
}

}  // namespace

int main() {
    std::printf("acceptance suite\n----------------\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();

    int failed = 0;
    for (const auto& o : outcomes)
        if (!o.pass) ++failed;
    std::printf("----------------\n%d/%zu criteria passed\n",
                static_cast<int>(outcomes.size()) - failed, outcomes.size());
    if (failed > 0)
        std::printf("failing criteria check closed-form ceilings/comparisons that are "
                    "analytically false as stated; the library sums and tails remain "
                    "rigorous (pinned counterexamples live in the unit tests).\n");
    return failed;
}
