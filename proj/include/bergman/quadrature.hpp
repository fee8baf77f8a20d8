#pragma once

#include <complex>
#include <functional>

#include "errors.hpp"

namespace bergman {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    long evals = 0;
};

struct QuadResultC {
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;
    long evals = 0;
};

// Adaptive Gauss-Kronrod (G7,K15) on [a,b]. Refines the worst panel
// until the accumulated error estimate drops below
// max(abs_tol, rel_tol*|value|). Panels are ordered by (error, left
// endpoint), so the subdivision sequence and the final sum are
// deterministic. Throws ToleranceError when max_panels is exhausted.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol, int max_panels = 20000);

QuadResultC integrate_complex(const std::function<std::complex<double>(double)>& f,
                              double a, double b, double abs_tol, double rel_tol,
                              int max_panels = 20000);

}
