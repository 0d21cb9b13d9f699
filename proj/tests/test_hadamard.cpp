#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "lldlab/divisor.hpp"
#include "lldlab/hadamard.hpp"
#include "lldlab/specfun.hpp"

using namespace lldlab;
using std::complex;

namespace {
const double kPi = 3.14159265358979323846;

complex<double> term_at(int d, complex<double> s, complex<double> rho,
                        double sigma1) {
    auto div = Divisor::from_points({{rho, 1}});
    return log_derivative_sum(div, d, sigma1, s).value;
}
}  // namespace

TEST_SUITE("hadamard") {
    TEST_CASE("elementary factors") {
        CHECK(elementary_factor(0, {0.3, 0.4}) == complex<double>(0.7, -0.4));
        CHECK(std::abs(elementary_factor(1, {0.5, 0.0}) -
                       complex<double>(0.8243606353500640734243254, 0.0)) <
              1e-15);
        CHECK_THROWS_AS(elementary_factor(-1, {0.0, 0.0}),
                        std::invalid_argument);

        // log E_n(z) = -sum_{j>n} z^j / j inside the unit disc
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> mag(0.0, 0.6), ang(0.0,
                                                                  2.0 * kPi);
        for (int trial = 0; trial < 40; ++trial) {
            const int n = trial % 5;
            const complex<double> z = std::polar(mag(rng), ang(rng));
            complex<double> tail = 0.0, zj = std::pow(z, n);
            for (int j = n + 1; j <= 300; ++j) {
                zj *= z;
                tail += zj / static_cast<double>(j);
            }
            CHECK(std::abs(elementary_factor(n, z) - std::exp(-tail)) < 1e-12);
        }
    }

    TEST_CASE("lattice product rebuilds sinh") {
        const auto lat = Divisor::vertical_lattice(kPi, 1);
        for (complex<double> s :
             {complex<double>(1.0, 0.0), complex<double>(1.0, 2.0),
              complex<double>(-0.7, 0.4)}) {
            auto v = hadamard_part(lat, 2, s);
            CHECK_FALSE(v.tail_heuristic);
            CHECK(v.tail_bound > 0.0);
            CHECK(std::abs(v.value * s - std::sinh(s)) < 1e-4);
        }
    }

    TEST_CASE("negative-integer product rebuilds the gamma function") {
        const auto neg = Divisor::negative_integers(-1, 1);
        const double egamma = 1.781072417990197985236504;
        auto v1 = hadamard_part(neg, 2, {1.0, 0.0});
        CHECK(std::abs(v1.value - egamma) / egamma < 2e-4);
        auto v2 = hadamard_part(neg, 2, {2.5, 0.0});
        CHECK(std::abs(v2.value - 14.06954826843954845561935) /
                  14.06954826843954845561935 <
              2e-4);
        CHECK_FALSE(v1.tail_heuristic);
    }

    TEST_CASE("high multiplicity uses the power branch") {
        auto d10 = Divisor::from_points({{{-2.0, 0.0}, 10}});
        auto v = hadamard_part(d10, 0, {1.0, 0.0});
        CHECK(v.value.real() == doctest::Approx(std::pow(1.5, 10)).epsilon(1e-12));
        auto dm3 = Divisor::from_points({{{-2.0, 0.0}, -3}});
        auto w = hadamard_part(dm3, 0, {1.0, 0.0});
        CHECK(w.value.real() ==
              doctest::Approx(std::pow(1.5, -3)).epsilon(1e-12));
    }

    TEST_CASE("evaluation on a divisor point is reported with its data") {
        const auto lat = Divisor::vertical_lattice(kPi, 3);
        try {
            hadamard_part(lat, 2, {0.0, kPi});
            FAIL("expected EvalAtDivisorPoint");
        } catch (const EvalAtDivisorPoint& e) {
            CHECK(std::abs(e.rho - complex<double>(0.0, kPi)) < 1e-12);
            CHECK(e.mult == 3);
        }
        CHECK_THROWS_AS(hadamard_part(lat, -1, {1.0, 0.0}),
                        std::invalid_argument);
    }

    TEST_CASE("log derivative kernel at exponent zero is the plain sum") {
        // F = 1 - s/rho with rho = -1 gives F'/F(0) = +1
        CHECK(std::abs(term_at(0, {0.0, 0.0}, {-1.0, 0.0}, -2.0) - 1.0) <
              1e-14);
        CHECK_THROWS_AS(term_at(0, {-3.0, 0.0}, {-1.0, 0.0}, -2.0),
                        std::domain_error);
        CHECK_THROWS_AS(term_at(2, {0.0, 0.0}, {-1.0, 0.0}, -1.0),
                        std::invalid_argument);
    }

    TEST_CASE("kernel telescopes between consecutive exponents") {
        std::mt19937 rng(23);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        for (int trial = 0; trial < 50; ++trial) {
            const double sigma1 = unif(rng);
            const complex<double> s(sigma1 + 0.3 + 2.0 * std::abs(unif(rng)),
                                    3.0 * unif(rng));
            const complex<double> rho(sigma1 - 0.5 - 2.0 * std::abs(unif(rng)),
                                      3.0 * unif(rng));
            for (int d = 2; d <= 5; ++d) {
                const int e = d - 1;
                const complex<double> expected =
                    std::pow(s - sigma1, e - 1) / std::pow(rho - sigma1, e);
                const complex<double> got =
                    term_at(d, s, rho, sigma1) - term_at(d - 1, s, rho, sigma1);
                CHECK(std::abs(got - expected) <=
                      1e-12 * std::max(1.0, std::abs(expected)));
            }
        }
    }

    TEST_CASE("conjugate pairs obey the distance bound") {
        std::mt19937 rng(37);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const double sigma1 = -1.0;
        int checked = 0;
        while (checked < 60) {
            const double sigma2 = 0.5 + 1.5 * unif(rng);
            const complex<double> s(sigma2, 6.0 * unif(rng) - 3.0);
            const complex<double> rho(-1.0 - 9.0 * unif(rng),
                                      1.0 + 9.0 * unif(rng));
            if (std::abs(rho - sigma1) < std::abs(s - sigma1)) continue;
            auto pair = Divisor::from_points({{rho, 1}, {std::conj(rho), 1}});
            const int d = 1 + (checked % 4);
            const auto v = log_derivative_sum(pair, d, sigma1, s);
            CHECK(std::abs(v.value) <=
                  2.0 / (sigma2 - sigma1) * (1.0 + 1e-12));
            ++checked;
        }
    }

    TEST_CASE("lattice log derivative matches coth") {
        const auto lat = Divisor::vertical_lattice(kPi, 1);
        const complex<double> s(1.0, 0.0);
        const auto v = log_derivative_sum(lat, 2, 0.0, s);
        CHECK_FALSE(v.tail_heuristic);
        CHECK(std::abs(v.value + 1.0 / s - coth_logderiv(s)) < 1e-4);
    }

    TEST_CASE("growth probe on a finite divisor") {
        auto div = Divisor::from_points(
            {{{-1.0, 2.0}, 1}, {{-1.0, -2.0}, 1}, {{-3.0, 0.0}, 2}});
        std::vector<complex<double>> samples;
        for (double x : {1.5, 2.0, 4.0, 8.0, 16.0, 32.0})
            samples.push_back({x, 0.7 * x});
        for (int d : {0, 1}) {
            auto pr = growth_bound_probe(div, d, -0.5, 1.0, samples);
            CHECK(pr.C0 > 0.0);
            CHECK(pr.ratios.size() == samples.size());
            for (double r : pr.ratios) CHECK(r <= pr.C0);
            CHECK(pr.stabilized);
        }
        CHECK_THROWS_AS(growth_bound_probe(div, 1, -0.5, -1.0, samples),
                        std::invalid_argument);
        std::vector<complex<double>> bad = {{0.5, 0.0}};
        CHECK_THROWS_AS(growth_bound_probe(div, 1, -0.5, 1.0, bad),
                        std::invalid_argument);
    }

    TEST_CASE("sharpness ratio basics") {
        auto r = sharpness_ratio(10, 1.0, 0.1);
        CHECK(r.lower_bound_check);
        CHECK(r.central_log == doctest::Approx(10.0 * std::log(2.0)));
        CHECK(r.c0_est > 0.0);
        CHECK(r.c1_est > 0.0);
        CHECK(r.g_log_abs > 0.0);
        CHECK_THROWS_AS(sharpness_ratio(0, 1.0, 0.1), std::invalid_argument);
        CHECK_THROWS_AS(sharpness_ratio(451, 1.0, 0.1), std::invalid_argument);
        CHECK_THROWS_AS(sharpness_ratio(10, 0.0, 0.1), std::invalid_argument);
        CHECK_THROWS_AS(sharpness_ratio(10, 1.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(sharpness_ratio(10, 1.0, -0.2), std::invalid_argument);
    }
}
