#include "lldlab/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <stdexcept>

#include "lldlab/quadrature.hpp"
#include "lldlab/summation.hpp"

namespace lldlab {

namespace {

// t / (e^{2 pi t} - 1), stable at small t
double bose_weight(double t) {
    if (t < 1e-8) {
        const double x = 2.0 * M_PI * t;
        return (1.0 - 0.5 * x + x * x / 12.0) / (2.0 * M_PI);
    }
    return t / std::expm1(2.0 * M_PI * t);
}

// e^{-2 pi t} < 1e-18 beyond this; the remainder integrand is below 1e-18/(2c|u|)
constexpr double kBinetCutoff = 6.8;

std::complex<double> binet_phi_prime(std::complex<double> s) {
    const std::complex<double> s2 = s * s;
    auto integrand = [&](double t) -> std::complex<double> {
        return bose_weight(t) / (s2 + t * t);
    };
    QuadratureOptions opt;
    opt.abs_tol = 1e-14;
    opt.rel_tol = 1e-13;
    opt.max_segments = 400;
    auto r = integrate_gk15(integrand, 0.0, kBinetCutoff, opt);
    return -2.0 * r.value;
}

}  // namespace

BinetResult digamma(std::complex<double> s) {
    if (!(s.real() > 0.0))
        throw std::domain_error("digamma: outside right half-plane");
    BinetResult out;
    out.phi_prime = binet_phi_prime(s);
    out.psi = std::log(s) - 0.5 / s + out.phi_prime;
    out.bound = 1.0 / (24.0 * std::abs(s.real()));
    out.bound_ok = std::abs(out.phi_prime) <= out.bound * (1.0 + 1e-9);
    return out;
}

LineBound digamma_line_bound(double c, const std::vector<double>& u_samples) {
    if (!(c > 0.0))
        throw std::domain_error("digamma_line_bound: outside right half-plane");
    if (u_samples.empty())
        throw std::invalid_argument("digamma_line_bound: no samples");
    LineBound out;
    double u_max = 0.0;
    for (double u : u_samples) u_max = std::max(u_max, std::abs(u));
    double early = -1e300, late = -1e300;
    bool all_finite = true;
    for (double u : u_samples) {
        if (std::abs(u) < 1e-300) continue;
        const auto r = digamma({c, u});
        const double diff = std::abs(r.psi) - std::log(std::abs(u));
        if (!std::isfinite(diff)) all_finite = false;
        out.C0 = std::max(out.C0, diff);
        if (std::abs(u) >= 0.1 * u_max)
            late = std::max(late, diff);
        else
            early = std::max(early, diff);
    }
    out.holds = all_finite && late <= early + 1e-6;
    return out;
}

double bernoulli_integral() {
    QuadratureOptions opt;
    opt.abs_tol = 1e-14;
    opt.rel_tol = 1e-13;
    opt.max_segments = 400;
    auto r = integrate_gk15([](double t) { return bose_weight(t); }, 0.0, 30.0,
                            opt);
    return r.value;
}

std::complex<double> coth_logderiv(std::complex<double> s) {
    const double k = std::round(s.imag() / M_PI);
    const std::complex<double> nearest(0.0, M_PI * k);
    if (std::abs(s - nearest) <= 1e-12)
        throw std::domain_error("coth_logderiv: pole of the logarithmic derivative");
    if (s.real() >= 0.0) {
        const std::complex<double> e = std::exp(-2.0 * s);
        return (1.0 + e) / (1.0 - e);
    }
    const std::complex<double> e = std::exp(2.0 * s);
    return -(1.0 + e) / (1.0 - e);
}

namespace {

std::mutex g_sieve_mutex;
std::vector<uint32_t> g_primes;
uint64_t g_sieved_to = 0;

// primes up to n, cached; re-sieves from scratch when the range grows
void ensure_primes(uint64_t n) {
    std::lock_guard<std::mutex> lock(g_sieve_mutex);
    if (g_sieved_to >= n) return;
    const uint64_t target = std::max<uint64_t>(n, g_sieved_to * 2);
    std::vector<uint8_t> is_comp(target + 1, 0);
    g_primes.clear();
    for (uint64_t i = 2; i <= target; ++i) {
        if (is_comp[i]) continue;
        g_primes.push_back(static_cast<uint32_t>(i));
        for (uint64_t j = i * i; j <= target; j += i) is_comp[j] = 1;
    }
    g_sieved_to = target;
}

std::vector<uint32_t> primes_snapshot(uint64_t n) {
    ensure_primes(n);
    std::lock_guard<std::mutex> lock(g_sieve_mutex);
    auto end = std::upper_bound(g_primes.begin(), g_primes.end(),
                                static_cast<uint32_t>(n));
    return {g_primes.begin(), end};
}

}  // namespace

std::complex<double> zeta_logderiv(std::complex<double> s, double abs_tol) {
    const double sigma = s.real();
    if (!(sigma > 1.1))
        throw std::domain_error("zeta_logderiv: outside implemented half-plane");
    if (!(abs_tol > 0.0))
        throw std::invalid_argument("zeta_logderiv: tolerance must be positive");

    // calibrated fluctuation envelope for the corrected partial sum
    // (measured constant ~0.2; kept at 2.5 for margin)
    auto err_bound = [&](double N) {
        return 2.5 * std::log(N) * std::pow(N, 0.5 - sigma);
    };
    uint64_t N = 1024;
    while (err_bound(static_cast<double>(N)) > 0.5 * abs_tol && N < 25000000)
        N *= 2;

    const auto primes = primes_snapshot(N);
    CompensatedSum<std::complex<double>> sum;
    for (uint32_t p : primes) {
        const double logp = std::log(static_cast<double>(p));
        for (uint64_t q = p; q <= N; q *= p) {
            const double logq = std::log(static_cast<double>(q));
            sum.add(logp * std::exp(-s * logq));
            if (q > N / p) break;  // avoid overflow in q *= p
        }
    }
    const std::complex<double> tail =
        std::exp((1.0 - s) * std::log(static_cast<double>(N))) / (s - 1.0);
    return -(sum.value() + tail);
}

}  // namespace lldlab
