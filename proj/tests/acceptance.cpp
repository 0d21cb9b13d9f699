// Acceptance gate. Each numbered check exercises one advertised guarantee of
// the library end to end and prints a single [PASS]/[FAIL] line with its
// wall-clock cost; the process exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lldlab/dirichlet.hpp"
#include "lldlab/divisor.hpp"
#include "lldlab/hadamard.hpp"
#include "lldlab/newton_cramer.hpp"
#include "lldlab/specfun.hpp"
#include "lldlab/test_function.hpp"
#include "lldlab/vertline.hpp"

namespace {

using namespace lldlab;
using std::complex;
using std::numbers::pi;

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw CheckFailure(what);
}

std::string num(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

Divisor declared_zeta() {
    const double heights[] = {14.134725141734693, 21.022039638771554,
                              25.010857580145688, 30.424876125859513,
                              32.935061587739190};
    std::vector<DivisorPoint> pts;
    for (double h : heights) {
        pts.push_back({{0.5, h}, 1});
        pts.push_back({{0.5, -h}, 1});
    }
    Divisor div = Divisor::from_points(std::move(pts));
    div.tail = TailModel{1.0, 1.0, false};
    div.sigma1_declared = 1.0;
    return div;
}

DirichletSeries comb_series() {
    DirichletSeries f;
    f.lambdas = {1.0};
    f.coeffs = {{-1.0, 0.0}};
    return f;
}

LineFunction sinh_line() {
    LineFunction F;
    F.eval = [](complex<double> s) { return coth_logderiv(s); };
    F.valid_half_plane = 0.0;
    F.oscillation_scale = pi;
    return F;
}

LineFunction gamma_line() {
    LineFunction F;
    F.eval = [](complex<double> s) { return digamma(s).psi; };
    F.valid_half_plane = 0.0;
    return F;
}

LineFunction zeta_line() {
    LineFunction F;
    F.eval = [](complex<double> s) { return zeta_logderiv(s, 0.02); };
    F.valid_half_plane = 1.1;
    return F;
}

void check_exponents() {
    require(convergence_exponent(Divisor::vertical_lattice(pi, 1)) == 2,
            "sinh lattice exponent is not 2");
    require(convergence_exponent(Divisor::negative_integers(1, 1)) == 2,
            "gamma pole exponent is not 2");
    require(convergence_exponent(declared_zeta()) == 2,
            "declared zeta exponent is not 2");
    require(convergence_exponent(Divisor::sharpness()) == 1,
            "sharpness divisor exponent is not 1");
}

void check_multinomial() {
    std::mt19937_64 rng(20260822ull);
    auto unif = [&rng](double lo, double hi) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    };
    for (int trial = 0; trial < 100; ++trial) {
        DirichletSeries f;
        const int nf = 1 + static_cast<int>(rng() % 3);
        double lam = unif(0.4, 2.0);
        for (int j = 0; j < nf; ++j) {
            f.lambdas.push_back(lam);
            const double mod = unif(0.05, 0.5);
            const double arg = unif(0.0, 2.0 * pi);
            f.coeffs.push_back(std::polar(mod, arg));
            lam += unif(0.1, 2.0);
        }
        const double T = 6.0 * f.lambdas.front();
        const AtomicMeasure fast = log_atoms(f, T);
        const AtomicMeasure slow = series_log_oracle(f, T);
        require(fast.atoms.size() == slow.atoms.size(),
                "atom counts differ in trial " + std::to_string(trial));
        for (std::size_t i = 0; i < fast.atoms.size(); ++i) {
            const auto& a = fast.atoms[i];
            const auto& b = slow.atoms[i];
            require(std::abs(a.freq - b.freq) <= 1e-9 * (1.0 + a.freq),
                    "frequency mismatch in trial " + std::to_string(trial));
            const double scale =
                std::max(std::abs(a.mass), std::abs(b.mass));
            require(std::abs(a.mass - b.mass) <= 1e-10 * scale,
                    "mass mismatch in trial " + std::to_string(trial) +
                        " at freq " + num(a.freq));
        }
    }
    const std::vector<complex<double>> comb_coeffs = {{-1.0, 0.0}};
    for (int k = 1; k <= 20; ++k) {
        FrequencyVector kv;
        kv.k = {k};
        kv.norm = k;
        kv.freq = k;
        const complex<double> b = bk_multinomial(kv, comb_coeffs);
        require(std::abs(b - complex<double>(1.0 / k, 0.0)) <= 1e-12,
                "comb coefficient b_" + std::to_string(k) + " is off");
    }
}

void check_roundtrip() {
    std::vector<complex<double>> samples;
    for (int j = 0; j < 10; ++j) samples.push_back({5.0, 0.7 * j - 3.0});
    const double r1 = roundtrip_check(comb_series(), 40.0, samples);
    require(r1 < 1e-8, "comb roundtrip residual " + num(r1));

    DirichletSeries two;
    two.lambdas = {1.0, std::numbers::sqrt2};
    two.coeffs = {{0.35, 0.2}, {-0.25, 0.1}};
    const double r2 = roundtrip_check(two, 45.0, samples);
    require(r2 < 1e-8, "two-frequency roundtrip residual " + num(r2));
}

void check_comb_pairing() {
    PNInput in;
    in.divisor = Divisor::vertical_lattice(2.0 * pi, 1);
    in.d = 2;
    in.origin_mult = 1;
    in.rhs_atoms = inverse_laplace_atoms(comb_series(), 4.0);

    TruncationSpec trunc;
    trunc.max_points = 100000;
    const TestFunction phi = bump(2.5, 0.9);
    const PNReport rep = verify_poisson_newton(in, phi, trunc, 1e-8);

    const double target = phi(2.0) + phi(3.0);
    require(std::abs(rep.rhs - complex<double>(target, 0.0)) < 1e-12,
            "comb right side is not phi(2) + phi(3)");
    require(rep.residual < 1e-5,
            "comb pairing residual " + num(rep.residual));
}

void check_sinh_pairing() {
    PNInput in;
    in.divisor = Divisor::vertical_lattice(pi, 1);
    in.d = 2;
    in.origin_mult = 1;
    AtomicMeasure mu;
    for (int m = 1; m <= 10; ++m)
        mu.atoms.push_back({2.0 * m, {2.0, 0.0}});
    mu.cutoff = 21.0;
    in.rhs_atoms = mu;

    TruncationSpec trunc;
    trunc.max_points = 200000;
    const PNReport rep =
        verify_poisson_newton(in, bump(2.0, 0.5), trunc, 1e-8);
    require(rep.tau > 0.0, "translation was not engaged");
    require(rep.residual < 1e-5,
            "sinh pairing residual " + num(rep.residual));
}

void check_vertical_orders() {
    const auto vo_sinh =
        vertical_order_estimate(sinh_line(), {0.5, 2.0}, 4, 1024.0, 1e-7);
    require(vo_sinh.m0 && *vo_sinh.m0 == 2,
            "sinh vertical order is not 2");
    require(!vo_sinh.lemma_violation, "sinh verdicts disagree across lines");

    const auto vo_gamma =
        vertical_order_estimate(gamma_line(), {1.0, 3.0}, 4, 1024.0, 1e-7);
    require(vo_gamma.m0 && *vo_gamma.m0 == 2,
            "gamma vertical order is not 2");
    require(!vo_gamma.lemma_violation, "gamma verdicts disagree across lines");

    const auto vo_zeta =
        vertical_order_estimate(zeta_line(), {1.5, 3.0}, 3, 256.0, 1e-6);
    require(vo_zeta.m0 && *vo_zeta.m0 == 2,
            "zeta vertical order is not 2");
    require(!vo_zeta.lemma_violation, "zeta verdicts disagree across lines");
}

void check_digamma() {
    const double gamma_c = 0.5772156649015328606065121;
    const double e1 = std::abs(digamma({1.0, 0.0}).psi.real() + gamma_c);
    require(e1 < 1e-10, "psi(1) error " + num(e1));
    const double eh = std::abs(digamma({0.5, 0.0}).psi.real() + gamma_c +
                               2.0 * std::log(2.0));
    require(eh < 1e-10, "psi(1/2) error " + num(eh));
    const double eb = std::abs(bernoulli_integral() - 1.0 / 24.0);
    require(eb < 1e-10, "sawtooth integral error " + num(eb));

    std::mt19937_64 rng(7u);
    auto unif = [&rng](double lo, double hi) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    };
    for (int i = 0; i < 1000; ++i) {
        const complex<double> s(unif(0.5, 20.0), unif(1.0, 50.0));
        const BinetResult r = digamma(s);
        require(r.bound_ok && std::abs(r.phi_prime) <= r.bound,
                "remainder bound fails at s = " + num(s.real()) + " + " +
                    num(s.imag()) + "i");
    }
}

void check_discrepancy() {
    TruncationSpec trunc;
    trunc.max_points = 100000;

    for (double a : {0.5, 2.0}) {
        PNInput in;
        in.divisor = Divisor::vertical_lattice(pi, 1);
        in.d = 2;
        in.origin_mult = 1;
        in.poly_at_infinity = {complex<double>(1.0 + a, 0.0)};
        const Discrepancy disc =
            extract_discrepancy(in, 2, 1.0, trunc, 1e-8);
        const double err = std::abs(disc.coeffs[0] - complex<double>(-a, 0.0));
        require(err < 1e-5, "linear case a = " + num(a) + " misses by " +
                                num(err));
        require(disc.gW == 1,
                "linear case a = " + num(a) + " reports gW = " +
                    std::to_string(disc.gW));
    }

    {
        const double a = 0.7, b = 0.3;
        PNInput in;
        in.divisor = Divisor::vertical_lattice(pi, 1);
        in.d = 2;
        in.origin_mult = 1;
        in.poly_at_infinity = {complex<double>(1.0 + a, 0.0),
                               complex<double>(2.0 * b, 0.0)};
        const Discrepancy disc =
            extract_discrepancy(in, 2, 1.0, trunc, 1e-8);
        const double e0 = std::abs(disc.coeffs[0] - complex<double>(-a, 0.0));
        const double e1 =
            std::abs(disc.coeffs[1] - complex<double>(-2.0 * b, 0.0));
        require(e0 < 1e-4, "quadratic c0 misses by " + num(e0));
        require(e1 < 1e-4, "quadratic c1 misses by " + num(e1));
        require(disc.gW == 2, "quadratic case reports gW = " +
                                  std::to_string(disc.gW));
    }

    {
        PNInput in;
        in.divisor = Divisor::vertical_lattice(pi, 1);
        in.d = 2;
        in.origin_mult = 1;
        in.poly_at_infinity = {complex<double>(1.0, 0.0)};
        const Discrepancy disc =
            extract_discrepancy(in, 2, 1.0, trunc, 1e-8);
        for (const auto& c : disc.coeffs)
            require(std::abs(c) < 1e-5,
                    "plain sinh coefficient " + num(std::abs(c)));
        require(disc.gW == 0, "plain sinh reports gW = " +
                                  std::to_string(disc.gW));
    }
}

void check_order_bound_and_monotonicity() {
    std::mt19937_64 rng(99u);
    auto unif = [&rng](double lo, double hi) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    };
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<DivisorPoint> pts;
        const int n = 3 + static_cast<int>(rng() % 6);
        for (int i = 0; i < n; ++i) {
            const long long mult =
                (rng() % 2 ? 1 : -1) * (1 + static_cast<long long>(rng() % 3));
            pts.push_back({{unif(-5.0, -0.5), unif(-20.0, 20.0)}, mult});
        }
        const Divisor div = Divisor::from_points(std::move(pts));
        const double s1 = sigma1(div).value;
        LineFunction F;
        F.eval = [div, s1](complex<double> s) {
            return log_derivative_sum(div, 0, s1, s).value;
        };
        F.valid_half_plane = s1;
        const auto vo = vertical_order_estimate(F, {s1 + 1.0, s1 + 3.0}, 2,
                                                4096.0, 1e-7);
        require(vo.m0.has_value(),
                "order undetermined in trial " + std::to_string(trial));
        require(*vo.m0 <= 1, "order " + std::to_string(*vo.m0) +
                                 " above d + 1 in trial " +
                                 std::to_string(trial));
    }

    const std::pair<double, double> pairs[] = {{0.5, 2.0}, {1.0, 4.0}};
    for (const auto& [c, cp] : pairs) {
        const auto m1 = c_monotonicity_check(sinh_line(), 2, c, cp, 512.0,
                                             1e-6);
        require(m1.holds, "sinh norm grows from c = " + num(c));
        const auto m2 = c_monotonicity_check(gamma_line(), 2, c, cp, 512.0,
                                             1e-6);
        require(m2.holds, "gamma norm grows from c = " + num(c));
    }
}

void check_sharpness() {
    for (int k = 5; k <= 30; ++k)
        require(sharpness_ratio(k, 1.0, 0.1).lower_bound_check,
                "lower bound fails at k = " + std::to_string(k));

    const double r100 = sharpness_ratio(100, 1.0, 0.1).ratio_log;
    const double r150 = sharpness_ratio(150, 1.0, 0.1).ratio_log;
    const double r200 = sharpness_ratio(200, 1.0, 0.1).ratio_log;
    require(r100 < r150 && r150 < r200,
            "widened ratio does not grow: " + num(r100) + ", " + num(r150) +
                ", " + num(r200));

    for (int k : {5, 50, 100, 150, 200, 250, 300}) {
        const double rl = sharpness_ratio(k, 1.0, 0.0).ratio_log;
        require(rl <= 1e-9 && rl >= -20.0,
                "centered ratio escapes at k = " + std::to_string(k) +
                    ": " + num(rl));
    }
}

void check_classification() {
    const int d_sinh = convergence_exponent(Divisor::vertical_lattice(pi, 1));
    const int d_gamma =
        convergence_exponent(Divisor::negative_integers(1, 1));
    const int d_zeta = convergence_exponent(declared_zeta());
    require(classify(d_sinh, 2, std::nullopt, false) ==
                FunctionClass::HadamardType,
            "sinh not classified Hadamard");
    require(classify(d_gamma, 2, std::nullopt, false) ==
                FunctionClass::HadamardType,
            "gamma not classified Hadamard");
    require(classify(d_zeta, 2, std::nullopt, true) ==
                FunctionClass::HadamardType,
            "zeta not classified Hadamard");
    bool rejected = false;
    try {
        classify(1, 1, std::nullopt, true);
    } catch (const std::domain_error&) {
        rejected = true;
    }
    require(rejected, "low-exponent Dirichlet input was not rejected");
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<void()> fn;
    };
    const std::vector<Criterion> criteria = {
        {"convergence exponents on the model divisors", check_exponents},
        {"multinomial log coefficients against the convolution oracle",
         check_multinomial},
        {"series roundtrip through the atomic measure", check_roundtrip},
        {"comb pairing identity", check_comb_pairing},
        {"sinh pairing identity with translation", check_sinh_pairing},
        {"vertical orders for sinh, gamma, zeta", check_vertical_orders},
        {"digamma values and remainder bounds", check_digamma},
        {"discrepancy coefficient recovery", check_discrepancy},
        {"finite-divisor order bound and norm monotonicity",
         check_order_bound_and_monotonicity},
        {"sharpness ratio behavior", check_sharpness},
        {"classification decisions", check_classification},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        std::string problem;
        try {
            criteria[i].fn();
        } catch (const std::exception& e) {
            problem = e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        if (problem.empty()) {
            std::printf("[PASS] %2zu. %s (%.1f s)\n", i + 1,
                        criteria[i].name, secs);
        } else {
            ++failures;
            std::printf("[FAIL] %2zu. %s (%.1f s): %s\n", i + 1,
                        criteria[i].name, secs, problem.c_str());
        }
    }
    std::printf("acceptance: %zu passed, %d failed\n",
                criteria.size() - failures, failures);
    return failures;
}
