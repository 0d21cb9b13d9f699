#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lldlab/dirichlet.hpp"
#include "lldlab/divisor.hpp"
#include "lldlab/hadamard.hpp"
#include "lldlab/test_function.hpp"
#include "lldlab/vertline.hpp"

namespace lldlab {

struct PairingDidNotConverge : std::runtime_error {
    PairingDidNotConverge() : std::runtime_error("pairing did not converge") {}
};

struct LdValue {
    std::complex<double> value;
    double tail_bound = 0.0;
    bool heuristic = false;  // some divisor points have positive real part
};

// L_d(t) = sum n_rho rho^{-d} (e^{rho t} - 1) for t > 0, else 0. The origin
// multiplicity is handled by callers, never as a divisor point.
LdValue L_d_eval(const Divisor& div, int d, double t,
                 const TruncationSpec& trunc = {});

struct PairingResult {
    std::complex<double> value;
    double abs_error_est = 0.0;
    std::size_t truncation_used = 0;
};

// <D^d L_d, phi> = (-1)^d integral L_d(t) phi^{(d)}(t) dt over supp phi cut
// to t >= 0.
PairingResult pair_W(const Divisor& div, int d, const TestFunction& phi,
                     const TruncationSpec& trunc = {}, double quad_tol = 1e-7);

// sum of mass * phi(freq) over the measure's atoms.
std::complex<double> pair_atoms(const AtomicMeasure& mu, const TestFunction& phi);

// (1/2 pi) integral F(c+iu) Phi(c+iu) du, the contour form of the same
// pairing; weight order n divides by s^n against phi^{(n)}, escalating n when
// the band sums fail to settle, up to n = 8.
PairingResult pair_inverse_laplace_line(const LineFunction& F, double c,
                                        const TestFunction& phi, int n,
                                        double tol);

// Input bundle for the two-sided checks. The divisor never contains the
// origin; origin_mult carries it. The right-hand side is atoms and/or a line
// evaluator, plus the polynomial part [p_0, p_1, ...] of the logarithmic
// derivative at infinity (delta-mass coefficients at 0).
struct PNInput {
    Divisor divisor;
    int d = 0;
    long long origin_mult = 0;
    std::vector<std::complex<double>> poly_at_infinity;
    std::optional<std::vector<std::complex<double>>> known_discrepancy;
    std::optional<AtomicMeasure> rhs_atoms;
    std::optional<LineFunction> rhs_line;
    double rhs_line_c = 1.0;
    int rhs_line_n = 0;
    std::optional<double> tau_override;
};

struct PNReport {
    std::complex<double> lhs;
    std::complex<double> rhs;
    double residual = 0.0;
    std::size_t truncation = 0;
    double tau = 0.0;
    std::vector<std::pair<std::size_t, double>> residual_history;
};

// Distributional identity check: the divisor side paired against phi versus
// the atom/line side. A nonzero origin multiplicity forces a translation
// tau, with phi then required to live in (0, infinity).
PNReport verify_poisson_newton(const PNInput& input, const TestFunction& phi,
                               const TruncationSpec& trunc = {},
                               double tol = 1e-8);

struct Discrepancy {
    std::vector<std::complex<double>> coeffs;  // raw window values
    int gW = 0;                                // length after noise trimming
    double residual = 0.0;
};

// Recovers the delta-coefficients at the origin by pairing against
// t^j * plateau(radius) windows; requires every atom to sit beyond radius.
Discrepancy extract_discrepancy(const PNInput& input, int gW_bound,
                                double radius, const TruncationSpec& trunc = {},
                                double tol = 1e-7);

// Type decision: Hadamard type when the vertical order is at most d or the
// function came from a Dirichlet series; Weierstrass type needs a trusted
// positive-degree discrepancy. Dirichlet inputs with d < 2 are contradictory.
FunctionClass classify(int d, std::optional<int> m0_estimate,
                       std::optional<int> gW_estimate, bool is_dirichlet,
                       double extraction_residual = 0.0,
                       double residual_threshold = 1e-3);

}  // namespace lldlab
