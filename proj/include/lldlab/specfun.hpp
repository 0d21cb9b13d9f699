#pragma once

#include <complex>
#include <vector>

namespace lldlab {

// psi(s) = log s - 1/(2s) + phi'(s), with the remainder
// phi'(s) = -2 integral_0^inf t / ((s^2+t^2)(e^{2 pi t}-1)) dt.
// bound = 1/(24 |Re s|) dominates |phi'| whenever |Im s| >= 1; near the real
// axis the remainder exceeds it and bound_ok reports that honestly.
struct BinetResult {
    std::complex<double> psi;
    std::complex<double> phi_prime;
    double bound = 0.0;
    bool bound_ok = false;
};

BinetResult digamma(std::complex<double> s);

struct LineBound {
    double C0 = 0.0;
    bool holds = false;
};

// max over samples of |psi(c+iu)| - log|u|, with a stability check that the
// maximum is not still growing at the top of the sampled range.
LineBound digamma_line_bound(double c, const std::vector<double>& u_samples);

// integral_0^inf t/(e^{2 pi t} - 1) dt, computed by quadrature. Equals 1/24.
double bernoulli_integral();

// (d/ds) log sinh(s) = coth(s), in overflow-safe mirrored form.
std::complex<double> coth_logderiv(std::complex<double> s);

// (d/ds) log zeta(s) for Re s > 1.1: minus the von Mangoldt sum over n <= N
// plus the integral tail correction N^{1-s}/(s-1), with N driven by abs_tol.
std::complex<double> zeta_logderiv(std::complex<double> s,
                                   double abs_tol = 1e-8);

}  // namespace lldlab
