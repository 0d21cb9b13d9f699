#include "lldlab/hadamard.hpp"

#include <algorithm>
#include <cmath>

#include "lldlab/summation.hpp"

namespace lldlab {

std::complex<double> elementary_factor(int n, std::complex<double> z) {
    if (n < 0)
        throw std::invalid_argument("elementary_factor: negative genus");
    std::complex<double> expo = 0.0;
    std::complex<double> zj = 1.0;
    for (int j = 1; j <= n; ++j) {
        zj *= z;
        expo += zj / static_cast<double>(j);
    }
    return (1.0 - z) * std::exp(expo);
}

namespace {

void check_not_on_divisor(const DivisorPoint& p, std::complex<double> s) {
    if (std::abs(s - p.rho) <= 1e-12 * std::max(1.0, std::abs(p.rho)))
        throw EvalAtDivisorPoint(p.rho, p.mult);
}

}  // namespace

TruncatedValue hadamard_part(const Divisor& div, int d, std::complex<double> s,
                             const TruncationSpec& trunc) {
    if (d < 0)
        throw std::invalid_argument("hadamard_part: negative exponent");
    const int genus = std::max(d - 1, 0);
    auto pts = enumerate_points(div, trunc.max_points);

    TruncatedValue out;
    out.value = 1.0;
    double prev_log = 0.0;
    for (const auto& p : pts) {
        check_not_on_divisor(p, s);
        const std::complex<double> e = elementary_factor(genus, s / p.rho);
        std::complex<double> f;
        if (std::llabs(p.mult) <= 8) {
            f = 1.0;
            const std::complex<double> base =
                p.mult > 0 ? e : 1.0 / e;
            for (long long i = 0; i < std::llabs(p.mult); ++i) f *= base;
        } else {
            f = std::pow(e, static_cast<double>(p.mult));
        }
        out.value *= f;
        const double cur_log = std::log(std::abs(out.value));
        out.final_log_increment = std::abs(cur_log - prev_log);
        prev_log = cur_log;
    }
    out.points_used = pts.size();

    if (div.finite() || trunc.tail_bound_mode == TruncationSpec::TailBound::None) {
        out.tail_heuristic = !div.finite();
        return out;
    }
    // |log E_g(z)| <= 2 |z|^{g+1} for |z| <= 1/2, so the omitted log-mass is
    // bounded once enumeration reaches 2|s|.
    const double R = pts.empty() ? 0.0 : std::abs(pts.back().rho);
    if (R < 2.0 * std::abs(s) || pts.empty()) {
        out.tail_heuristic = true;
        return out;
    }
    try {
        out.tail_bound = 2.0 * std::pow(std::abs(s), genus + 1) *
                         tail_sum_estimate(div, R, genus + 1);
    } catch (const std::invalid_argument&) {
        out.tail_heuristic = true;
    }
    return out;
}

TruncatedValue log_derivative_sum(const Divisor& div, int d, double sigma1,
                                  std::complex<double> s,
                                  const TruncationSpec& trunc) {
    if (d < 0)
        throw std::invalid_argument("log_derivative_sum: negative exponent");
    if (!(s.real() > sigma1))
        throw std::domain_error("log_derivative_sum: outside right half-plane");
    const int e = std::max(d - 1, 0);
    auto pts = enumerate_points(div, trunc.max_points);

    CompensatedSum<std::complex<double>> sum;
    bool heuristic = false;
    for (const auto& p : pts) {
        check_not_on_divisor(p, s);
        const std::complex<double> shift = p.rho - sigma1;
        if (std::abs(shift) <= 1e-12 * std::max(1.0, std::abs(p.rho)))
            throw std::invalid_argument(
                "log_derivative_sum: a divisor point coincides with sigma1; "
                "use a different normalization point");
        std::complex<double> g = 1.0 / (s - p.rho);
        const std::complex<double> ratio = (s - sigma1) / shift;
        for (int j = 0; j < e; ++j) g *= ratio;
        sum.add(static_cast<double>(p.mult) * g);
        if (p.rho.real() > sigma1) heuristic = true;
    }

    TruncatedValue out;
    out.value = sum.value();
    out.points_used = pts.size();
    out.tail_heuristic = heuristic;

    if (div.finite()) return out;
    if (trunc.tail_bound_mode == TruncationSpec::TailBound::None) {
        out.tail_heuristic = true;
        return out;
    }
    const double R = pts.empty() ? 0.0 : std::abs(pts.back().rho);
    const double reach = 2.0 * std::max(std::abs(s), std::abs(sigma1)) + 1.0;
    if (R < reach) {
        out.tail_heuristic = true;
        return out;
    }
    // |s - rho| >= |rho| - |s| and |rho - sigma1| >= |rho| - |sigma1| on the
    // tail, absorbed into a shift fudge against tail_sum_estimate at e+1.
    const double fudge =
        std::pow(R / (R - std::abs(sigma1)), e) * (R / (R - std::abs(s)));
    try {
        out.tail_bound = 2.0 * std::pow(std::abs(s - sigma1), e) * fudge *
                         tail_sum_estimate(div, R, e + 1);
    } catch (const std::invalid_argument&) {
        out.tail_heuristic = true;
    }
    return out;
}

GrowthProbe growth_bound_probe(const Divisor& div, int d, double sigma1,
                               double sigma2,
                               const std::vector<std::complex<double>>& samples,
                               const TruncationSpec& trunc) {
    if (!(sigma2 > std::max(0.0, sigma1)))
        throw std::invalid_argument(
            "growth_bound_probe: sigma2 must exceed max(0, sigma1)");
    for (std::size_t i = 0; i < samples.size(); ++i)
        if (!(samples[i].real() > sigma2))
            throw std::invalid_argument("growth_bound_probe: sample " +
                                        std::to_string(i) +
                                        " violates Re s > sigma2");
    GrowthProbe out;
    for (const auto& s : samples) {
        const auto v = log_derivative_sum(div, d, sigma1, s, trunc);
        const double ratio = std::abs(v.value) / std::pow(std::abs(s), d);
        out.ratios.push_back(ratio);
        if (ratio > out.C0) {
            out.C0 = ratio;
            out.max_ratio_point = s;
        }
    }
    if (out.ratios.size() >= 3) {
        const std::size_t head = std::max<std::size_t>(
            1, (out.ratios.size() * 3) / 5);
        double head_max = 0.0;
        for (std::size_t i = 0; i < head; ++i)
            head_max = std::max(head_max, out.ratios[i]);
        out.stabilized = head_max >= 0.9 * out.C0;
    }
    return out;
}

namespace {

// z = e^{log_mag} * phase, |phase| = 1. Keeps the sharpness arithmetic
// well-scaled regardless of k.
struct LogComplex {
    double log_mag;
    std::complex<double> phase;
};

LogComplex log_div(double num_log, std::complex<double> den) {
    const double d = std::abs(den);
    return {num_log - std::log(d), std::conj(den) / d};  // 1/den phase
}

LogComplex log_sum(const std::vector<LogComplex>& terms) {
    double m = -1e308;
    for (const auto& t : terms) m = std::max(m, t.log_mag);
    std::complex<double> acc = 0.0;
    for (const auto& t : terms) acc += std::exp(t.log_mag - m) * t.phase;
    const double a = std::abs(acc);
    if (a == 0.0) return {-1e308, {1.0, 0.0}};
    return {m + std::log(a), acc / a};
}

double log_abs_sum(const std::vector<double>& logs) {
    if (logs.empty()) return -1e308;
    double m = *std::max_element(logs.begin(), logs.end());
    double acc = 0.0;
    for (double l : logs) acc += std::exp(l - m);
    return m + std::log(acc);
}

}  // namespace

SharpnessRatio sharpness_ratio(int k, double c, double eps) {
    if (k < 1 || k > 450)
        throw std::invalid_argument("sharpness_ratio: k out of range [1, 450]");
    if (!(c > 0.0))
        throw std::invalid_argument("sharpness_ratio: c must be positive");
    if (!(eps >= 0.0 && eps < 1.0))
        throw std::invalid_argument("sharpness_ratio: eps must lie in [0, 1)");

    const int N = std::max(2 * k, 600);
    const double ln2 = std::log(2.0);
    auto modulus = [](int n) {
        return static_cast<double>(n) * n * std::ldexp(1.0, n);
    };
    const double height = modulus(k);

    std::vector<LogComplex> terms;
    std::vector<double> below_logs, above_logs;
    terms.reserve(N);
    for (int n = 1; n <= N; ++n) {
        const std::complex<double> den(c, height - modulus(n));
        const LogComplex t = log_div(n * ln2, den);
        terms.push_back(t);
        if (n < k) below_logs.push_back(t.log_mag);
        if (n > k) above_logs.push_back(t.log_mag);
    }

    SharpnessRatio out;
    const LogComplex g = log_sum(terms);
    out.g_log_abs = g.log_mag;
    out.central_log = k * ln2 - std::log(c);
    out.c0_est = std::exp(log_abs_sum(below_logs));
    // cover for n > N: sum 2^n / (n^2 2^n - k^2 2^k) <= 2 sum n^{-2} <= 2/N
    out.c1_est = std::exp(log_abs_sum(above_logs)) + 2.0 / N;

    const double s_log = 0.5 * std::log(c * c + height * height);
    out.ratio_log = out.g_log_abs - (1.0 - eps) * s_log;

    const double central = out.central_log;
    const double defect = (out.c0_est + out.c1_est) * std::exp(-central);
    if (defect >= 1.0) {
        out.lower_bound_check = true;  // bound vacuous, nothing to violate
    } else {
        const double rhs_log = central + std::log1p(-defect);
        out.lower_bound_check = out.g_log_abs >= rhs_log - 1e-9;
    }
    return out;
}

}  // namespace lldlab
