#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace lldlab {

// f(s) = 1 + sum_n coeffs[n] e^{-lambdas[n] s}. Frequencies are strictly
// increasing and positive; abscissa is the declared half-plane of absolute
// convergence.
struct DirichletSeries {
    std::vector<double> lambdas;
    std::vector<std::complex<double>> coeffs;
    double abscissa = 0.0;
};

void validate(const DirichletSeries& f);

std::complex<double> evaluate(const DirichletSeries& f, std::complex<double> s);

struct FrequencyVector {
    std::vector<int> k;
    int norm = 0;      // sum of entries
    double freq = 0.0; // <lambda, k>
};

// All nonzero lattice vectors with <lambda, k> <= T, ordered by (freq, lex k).
// Distinct vectors with equal frequency are kept separate.
std::vector<FrequencyVector> lattice_enumerate(const std::vector<double>& lambdas,
                                               double T,
                                               std::size_t cap = 2000000);

// ((-1)^{|k|} / |k|) multinomial(|k|; k) prod_j a_j^{k_j}; exact binomial
// products up to |k| = 20, log-gamma with separate phase beyond.
std::complex<double> bk_multinomial(const FrequencyVector& kvec,
                                    const std::vector<std::complex<double>>& coeffs);

struct Atom {
    double freq = 0.0;
    std::complex<double> mass;
};

// Atoms strictly increasing in freq (after tolerance merging), all in (0, cutoff].
struct AtomicMeasure {
    std::vector<Atom> atoms;
    double cutoff = 0.0;
};

// Coefficient measure of -log f: atoms b_k at frequencies <lambda, k> <= T.
AtomicMeasure log_atoms(const DirichletSeries& f, double T,
                        double merge_tol = 1e-9);

// Atoms of the inverse Laplace transform of f'/f: mass nu * b at each (nu, b).
AtomicMeasure inverse_laplace_atoms(const DirichletSeries& f, double T,
                                    double merge_tol = 1e-9);

// Independent route to the same measure: formal Neumann series
// -log(1+g) = sum_{j>=1} (-1)^j g^j / j convolved as exponential polynomials.
AtomicMeasure series_log_oracle(const DirichletSeries& f, double T,
                                double merge_tol = 1e-9);

// max over samples of |exp(-sum b e^{-nu s}) - f(s)|.
double roundtrip_check(const DirichletSeries& f, double T,
                       const std::vector<std::complex<double>>& samples);

}  // namespace lldlab
