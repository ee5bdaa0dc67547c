#pragma once

#include <functional>

namespace spinecho {

// Globally adaptive Gauss-Kronrod 15(7) integration of f over [a, b] to the
// given absolute tolerance. Always splits the worst interval first, so a
// single interior step or endpoint layer refines geometrically. Throws
// NumericalError when the budget is exhausted before the tolerance is met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol);

}  // namespace spinecho
