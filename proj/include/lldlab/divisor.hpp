#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lldlab {

// A multiplicity-weighted point set in the plane. Negative multiplicities are
// poles. The origin never appears as a point; callers track it separately.
struct DivisorPoint {
    std::complex<double> rho;
    long long mult = 1;
};

// Declared decay model for the counting function of an infinite divisor:
// N(r) <= constant * r^alpha, with boundary_converges recording whether the
// series sum |n_rho| |rho|^{-alpha} itself converges.
struct TailModel {
    double alpha = 0.0;
    double constant = 1.0;
    bool boundary_converges = false;
};

enum class DivisorKind { Explicit, VerticalLattice, NegativeIntegers, Sharpness };

struct Divisor {
    DivisorKind kind = DivisorKind::Explicit;

    // Explicit
    std::vector<DivisorPoint> points;

    // VerticalLattice: points at +- i k step, k = 1, 2, ...
    double step = 0.0;
    long long lattice_mult = 1;

    // NegativeIntegers: points at -start, -(start+1), ...
    long long neg_mult = 1;
    long long start = 1;

    std::optional<TailModel> tail;
    std::optional<double> sigma1_declared;

    bool finite() const { return kind == DivisorKind::Explicit && !tail; }

    static Divisor from_points(std::vector<DivisorPoint> pts);
    static Divisor vertical_lattice(double step, long long mult,
                                    bool exclude_zero = true);
    static Divisor negative_integers(long long mult, long long start);
    // Zeros at n^2 2^n i with multiplicity 2^n; convergence exponent 1 with a
    // divergent boundary series. Enumeration stops at n = 62 (multiplicity
    // range); counting and tails use closed forms.
    static Divisor sharpness();
};

struct Sigma1Result {
    double value = 0.0;
    bool exact = false;  // false: lower bound from an enumerated prefix
};

// Supremum of Re rho. Exact for the built-in infinite kinds and for finite
// divisors; a declared sigma1 is trusted as exact.
Sigma1Result sigma1(const Divisor& div, std::size_t n_points = 10000);

// Least integer d >= 0 with sum |n_rho| |rho|^{-d} finite. Requires a tail
// model (declared or intrinsic) for infinite divisors.
int convergence_exponent(const Divisor& div);

struct ExponentFit {
    double alpha_fit = 0.0;
    int d_suggested = 0;
    bool saturated = false;
};

// Log-log fit of the counting function over dyadic radii up to r_max.
ExponentFit empirical_exponent(const Divisor& div, double r_max);

// Sum of |n_rho| over |rho| <= r. Closed forms for the structured kinds.
long long counting_function(const Divisor& div, double r);

// Points in nondecreasing |rho|; ties broken by increasing arg in (-pi, pi].
std::vector<DivisorPoint> enumerate_points(const Divisor& div,
                                           std::size_t max_points);

// Upper bound for sum_{|rho| > radius} |n_rho| |rho|^{-d}. Zero for finite
// divisors; throws if the tail diverges at this d.
double tail_sum_estimate(const Divisor& div, double radius, int d);

struct DyadicDiagnostic {
    bool converges = false;
    int blocks = 0;
    std::vector<double> block_sums;  // sum |n| |rho|^{-d} over |rho| in [2^j, 2^{j+1})
};

// Empirical convergence check: successive dyadic block sums must decay by a
// ratio below 0.9 over at least 5 blocks.
DyadicDiagnostic dyadic_tail_diagnostic(const Divisor& div, int d,
                                        int max_blocks = 12,
                                        std::size_t max_points = 2000000);

enum class FunctionClass { HadamardType, WeierstrassType, Inconclusive };

std::string to_string(FunctionClass c);

}  // namespace lldlab
