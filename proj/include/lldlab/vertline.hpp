#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace lldlab {

// A function evaluable on vertical lines Re s = c > valid_half_plane.
// oscillation_scale is the typical t-scale of integrand structure (0 = smooth);
// it seeds the composite panel width.
struct LineFunction {
    std::function<std::complex<double>(std::complex<double>)> eval;
    double valid_half_plane = 0.0;
    double oscillation_scale = 0.0;
};

struct LineIntegralResult {
    double c = 0.0;
    int m = 0;
    std::optional<double> value;  // absent when the integral diverges
    double tail_exponent = 0.0;   // fitted dyadic-window decay slope
    int windows_used = 0;
    double abs_error_est = 0.0;
    bool convergent = false;
};

// integral over t of |F(c+it)| / |c+it|^m, decided by a log-log fit of mean
// window levels over dyadic windows [2^j, 2^{j+1}]; convergent iff the fitted
// slope is below -1.1 on both sides, with the tail extrapolated from the fit.
LineIntegralResult line_l1_norm(const LineFunction& F, double c, int m,
                                double T_max = 65536, double tol = 1e-8);

// Same machinery for every weight m = 0..m_max from one shared set of |F|
// node evaluations.
std::vector<LineIntegralResult> line_l1_scan(const LineFunction& F, double c,
                                             int m_max, double T_max,
                                             double tol);

struct VerticalOrderResult {
    std::optional<int> m0;       // absent = undetermined
    bool lemma_violation = false;  // convergence verdicts disagreed across c
    std::vector<LineIntegralResult> details;
};

// Smallest m <= m_max with a convergent norm on every supplied line.
VerticalOrderResult vertical_order_estimate(const LineFunction& F,
                                            const std::vector<double>& cs,
                                            int m_max = 6,
                                            double T_max = 65536,
                                            double tol = 1e-8);

struct MonotonicityCheck {
    double lhs = 0.0;  // norm at the larger abscissa
    double rhs = 0.0;  // norm at the smaller
    bool holds = false;
};

// The weighted norm is non-increasing in the abscissa: checks
// norm(c_prime) <= norm(c) (1 + tol) for c < c_prime.
MonotonicityCheck c_monotonicity_check(const LineFunction& F, int m0, double c,
                                       double c_prime, double T_max = 65536,
                                       double tol = 1e-8);

// (t, |F(c+it)| / |c+it|^m) rows on a log-spaced grid, for plot output.
std::vector<std::pair<double, double>> line_integrand_samples(
    const LineFunction& F, double c, int m, double t_lo, double t_hi, int n);

}  // namespace lldlab
