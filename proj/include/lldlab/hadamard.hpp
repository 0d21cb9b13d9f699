#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "lldlab/divisor.hpp"

namespace lldlab {

struct TruncationSpec {
    std::size_t max_points = 100000;
    double abs_tol = 1e-10;
    enum class TailBound { FromTailModel, None } tail_bound_mode =
        TailBound::FromTailModel;
};

// Evaluation landed on a divisor point; carries what was hit.
struct EvalAtDivisorPoint : std::runtime_error {
    std::complex<double> rho;
    long long mult;
    EvalAtDivisorPoint(std::complex<double> r, long long m)
        : std::runtime_error("evaluation at a divisor point of multiplicity " +
                             std::to_string(m)),
          rho(r),
          mult(m) {}
};

// E_n(z) = (1 - z) exp(sum_{j=1}^{n} z^j / j)
std::complex<double> elementary_factor(int n, std::complex<double> z);

struct TruncatedValue {
    std::complex<double> value;
    double tail_bound = 0.0;        // bound on the truncation error where derivable
    bool tail_heuristic = false;    // set when no honest bound was available
    std::size_t points_used = 0;
    double final_log_increment = 0.0;
};

// Product of elementary factors E_{max(d-1,0)}(s/rho)^{n_rho} over the
// enumerated divisor. tail_bound bounds |log| of the omitted factor.
TruncatedValue hadamard_part(const Divisor& div, int d, std::complex<double> s,
                             const TruncationSpec& trunc = {});

// sum n_rho (s-sigma1)^e / ((rho-sigma1)^e (s-rho)), e = max(d-1,0),
// accumulated compensated in enumeration order. Requires Re s > sigma1.
TruncatedValue log_derivative_sum(const Divisor& div, int d, double sigma1,
                                  std::complex<double> s,
                                  const TruncationSpec& trunc = {});

struct GrowthProbe {
    double C0 = 0.0;
    std::complex<double> max_ratio_point;
    bool stabilized = false;
    std::vector<double> ratios;
};

// max over samples of |log_derivative_sum(s)| / |s|^d on Re s > sigma2.
GrowthProbe growth_bound_probe(const Divisor& div, int d, double sigma1,
                               double sigma2,
                               const std::vector<std::complex<double>>& samples,
                               const TruncationSpec& trunc = {});

struct SharpnessRatio {
    double ratio_log = 0.0;      // log|g(s_k)| - (1-eps) log|s_k|
    bool lower_bound_check = false;
    double g_log_abs = 0.0;
    double central_log = 0.0;    // log(2^k / c)
    double c0_est = 0.0;         // sum over n < k of |term_n|
    double c1_est = 0.0;         // sum over n > k plus the beyond-cap cover
};

// Log-derivative of the sharpness divisor's function at s_k = c + i k^2 2^k,
// evaluated in log-magnitude + phase arithmetic.
SharpnessRatio sharpness_ratio(int k, double c, double eps);

}  // namespace lldlab
