#pragma once

// Small statistics helpers used by validation suites: regularized incomplete
// gamma functions and chi-square tail probabilities.

#include <vector>

namespace qmimo {

// Regularized lower/upper incomplete gamma P(a, x), Q(a, x)
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// P{Chi2_k > x}
double chi2_sf(double x, double dof);

// Pearson chi-square test of equal cell probabilities; returns the p-value.
double chi2_equal_cells_pvalue(const std::vector<double>& counts);

// Pearson chi-square against given expected counts.
double chi2_pvalue(const std::vector<double>& counts,
                   const std::vector<double>& expected, int dof_reduction = 1);

}  // namespace qmimo
