#include "lldlab/divisor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lldlab/summation.hpp"

namespace lldlab {

namespace {

constexpr int kSharpnessMaxN = 62;  // 2^62 still fits in long long

double sharpness_modulus(int n) {
    return static_cast<double>(n) * static_cast<double>(n) * std::ldexp(1.0, n);
}

// tie-break angle: arg in (-pi, pi], increasing
double tie_arg(const std::complex<double>& z) {
    double a = std::arg(z);
    if (a == -M_PI) a = M_PI;
    return a;
}

bool point_less(const DivisorPoint& x, const DivisorPoint& y) {
    const double mx = std::abs(x.rho);
    const double my = std::abs(y.rho);
    if (mx != my) return mx < my;
    return tie_arg(x.rho) < tie_arg(y.rho);
}

}  // namespace

Divisor Divisor::from_points(std::vector<DivisorPoint> pts) {
    for (const auto& p : pts) {
        if (p.rho == std::complex<double>(0.0, 0.0))
            throw std::invalid_argument(
                "divisor: the origin cannot be a divisor point; track its "
                "multiplicity separately");
        if (p.mult == 0)
            throw std::invalid_argument("divisor: zero multiplicity");
    }
    Divisor d;
    d.kind = DivisorKind::Explicit;
    d.points = std::move(pts);
    std::sort(d.points.begin(), d.points.end(), point_less);
    return d;
}

Divisor Divisor::vertical_lattice(double step, long long mult,
                                  bool exclude_zero) {
    if (!(step > 0.0))
        throw std::invalid_argument("divisor: lattice step must be positive");
    if (mult == 0) throw std::invalid_argument("divisor: zero multiplicity");
    if (!exclude_zero)
        throw std::invalid_argument(
            "divisor: a lattice through the origin is not representable; "
            "exclude zero and track it separately");
    Divisor d;
    d.kind = DivisorKind::VerticalLattice;
    d.step = step;
    d.lattice_mult = mult;
    d.tail = TailModel{1.0, 2.0 / step, false};
    return d;
}

Divisor Divisor::negative_integers(long long mult, long long start) {
    if (mult == 0) throw std::invalid_argument("divisor: zero multiplicity");
    if (start < 1)
        throw std::invalid_argument("divisor: start must be at least 1");
    Divisor d;
    d.kind = DivisorKind::NegativeIntegers;
    d.neg_mult = mult;
    d.start = start;
    d.tail = TailModel{1.0, 1.0, false};
    return d;
}

Divisor Divisor::sharpness() {
    Divisor d;
    d.kind = DivisorKind::Sharpness;
    d.tail = TailModel{1.0, 1.0, true};
    return d;
}

Sigma1Result sigma1(const Divisor& div, std::size_t n_points) {
    if (div.sigma1_declared) return {*div.sigma1_declared, true};
    switch (div.kind) {
        case DivisorKind::VerticalLattice:
            return {0.0, true};
        case DivisorKind::Sharpness:
            return {0.0, true};
        case DivisorKind::NegativeIntegers:
            return {-static_cast<double>(div.start), true};
        case DivisorKind::Explicit: {
            if (div.points.empty())
                throw std::invalid_argument("sigma1: empty divisor");
            double m = -std::numeric_limits<double>::infinity();
            std::size_t limit = std::min(n_points, div.points.size());
            if (!div.tail) limit = div.points.size();
            for (std::size_t i = 0; i < limit; ++i)
                m = std::max(m, div.points[i].rho.real());
            return {m, !div.tail};
        }
    }
    throw std::logic_error("sigma1: unknown divisor kind");
}

int convergence_exponent(const Divisor& div) {
    if (div.finite()) return 0;
    if (!div.tail)
        throw std::invalid_argument(
            "convergence_exponent: undecidable, supply tail model");
    const TailModel& t = *div.tail;
    if (t.alpha < 0.0)
        throw std::invalid_argument(
            "convergence_exponent: tail model alpha must be nonnegative");
    if (t.alpha == 0.0 && t.boundary_converges)
        throw std::invalid_argument(
            "convergence_exponent: an infinite divisor cannot have a "
            "convergent boundary series at alpha = 0");
    // least integer k >= 0 with k > alpha, or k = alpha with convergent boundary
    for (int k = 0; k <= static_cast<int>(std::ceil(t.alpha)) + 1; ++k) {
        if (k > t.alpha) return k;
        if (static_cast<double>(k) == t.alpha && t.boundary_converges) return k;
    }
    throw std::logic_error("convergence_exponent: scan exhausted");
}

long long counting_function(const Divisor& div, double r) {
    if (r < 0.0) return 0;
    switch (div.kind) {
        case DivisorKind::Explicit: {
            long long n = 0;
            for (const auto& p : div.points)
                if (std::abs(p.rho) <= r) n += std::llabs(p.mult);
            return n;
        }
        case DivisorKind::VerticalLattice: {
            const long long k = static_cast<long long>(std::floor(r / div.step));
            return 2 * k * std::llabs(div.lattice_mult);
        }
        case DivisorKind::NegativeIntegers: {
            const long long top = static_cast<long long>(std::floor(r));
            if (top < div.start) return 0;
            return (top - div.start + 1) * std::llabs(div.neg_mult);
        }
        case DivisorKind::Sharpness: {
            long long n = 0;
            for (int j = 1; j <= kSharpnessMaxN; ++j) {
                if (sharpness_modulus(j) > r) break;
                n += (1LL << j);
            }
            return n;
        }
    }
    throw std::logic_error("counting_function: unknown divisor kind");
}

std::vector<DivisorPoint> enumerate_points(const Divisor& div,
                                           std::size_t max_points) {
    std::vector<DivisorPoint> out;
    out.reserve(std::min<std::size_t>(max_points, 1 << 20));
    switch (div.kind) {
        case DivisorKind::Explicit: {
            const std::size_t n = std::min(max_points, div.points.size());
            out.assign(div.points.begin(), div.points.begin() + n);
            return out;
        }
        case DivisorKind::VerticalLattice: {
            for (long long k = 1; out.size() < max_points; ++k) {
                // -ik before +ik: arg -pi/2 < pi/2
                out.push_back({{0.0, -div.step * k}, div.lattice_mult});
                if (out.size() >= max_points) break;
                out.push_back({{0.0, div.step * k}, div.lattice_mult});
            }
            return out;
        }
        case DivisorKind::NegativeIntegers: {
            for (long long j = 0; out.size() < max_points; ++j)
                out.push_back(
                    {{-static_cast<double>(div.start + j), 0.0}, div.neg_mult});
            return out;
        }
        case DivisorKind::Sharpness: {
            for (int n = 1; n <= kSharpnessMaxN && out.size() < max_points; ++n)
                out.push_back({{0.0, sharpness_modulus(n)}, 1LL << n});
            return out;
        }
    }
    throw std::logic_error("enumerate_points: unknown divisor kind");
}

ExponentFit empirical_exponent(const Divisor& div, double r_max) {
    if (!(r_max > 0.0))
        throw std::invalid_argument("empirical_exponent: r_max must be positive");
    // distinct points (not multiplicity mass) inside r_max
    long long inside = 0;
    switch (div.kind) {
        case DivisorKind::Explicit:
            for (const auto& p : div.points)
                if (std::abs(p.rho) <= r_max) ++inside;
            break;
        case DivisorKind::VerticalLattice:
            inside = 2 * static_cast<long long>(std::floor(r_max / div.step));
            break;
        case DivisorKind::NegativeIntegers: {
            const long long top = static_cast<long long>(std::floor(r_max));
            inside = std::max<long long>(0, top - div.start + 1);
            break;
        }
        case DivisorKind::Sharpness:
            for (int n = 1; n <= kSharpnessMaxN; ++n) {
                if (sharpness_modulus(n) > r_max) break;
                ++inside;
            }
            break;
    }
    if (inside < 20)
        throw std::runtime_error("empirical_exponent: insufficient data");

    std::vector<double> lx, ly;
    double r = r_max;
    for (int i = 0; i < 40 && r > 1e-12; ++i, r *= 0.5) {
        const long long n = counting_function(div, r);
        if (n < 1) break;
        lx.push_back(std::log(r));
        ly.push_back(std::log(static_cast<double>(n)));
    }
    if (lx.size() < 2)
        throw std::runtime_error("empirical_exponent: insufficient data");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(lx.size());
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    ExponentFit fit;
    fit.alpha_fit = (n * sxy - sx * sy) / (n * sxx - sx * sx);

    const long long n0 = counting_function(div, r_max);
    fit.saturated = n0 == counting_function(div, r_max * 0.5) &&
                    n0 == counting_function(div, r_max * 0.25);
    fit.d_suggested =
        fit.saturated ? 0 : static_cast<int>(std::floor(fit.alpha_fit)) + 1;
    return fit;
}

double tail_sum_estimate(const Divisor& div, double radius, int d) {
    if (radius <= 0.0)
        throw std::invalid_argument("tail_sum_estimate: radius must be positive");
    switch (div.kind) {
        case DivisorKind::Explicit: {
            if (!div.tail) return 0.0;
            const TailModel& t = *div.tail;
            if (d <= t.alpha)
                throw std::invalid_argument(
                    "tail_sum_estimate: tail diverges at this exponent");
            // sum over |rho| > R of N'(r) r^{-d} <= d C integral_R r^{alpha-d-1}
            return d * t.constant * std::pow(radius, t.alpha - d) /
                   (d - t.alpha);
        }
        case DivisorKind::VerticalLattice: {
            if (d < 2)
                throw std::invalid_argument(
                    "tail_sum_estimate: tail diverges at this exponent");
            const double K = std::floor(radius / div.step);
            const double kstart = std::max(1.0, K + 1.0);
            // 2 |m| step^{-d} sum_{k >= kstart} k^{-d} <= 2|m| step^{-d} (kstart-1)^{1-d}/(d-1)
            const double base = std::max(1.0, kstart - 1.0);
            return 2.0 * std::llabs(div.lattice_mult) *
                   std::pow(div.step, -d) * std::pow(base, 1.0 - d) / (d - 1.0);
        }
        case DivisorKind::NegativeIntegers: {
            if (d < 2)
                throw std::invalid_argument(
                    "tail_sum_estimate: tail diverges at this exponent");
            const double m = static_cast<double>(std::llabs(div.neg_mult));
            const double fl = std::floor(radius);
            if (fl >= static_cast<double>(div.start))
                return m * std::pow(fl, 1.0 - d) / (d - 1.0);
            if (div.start >= 2)
                return m * std::pow(div.start - 1.0, 1.0 - d) / (d - 1.0);
            return m * d / (d - 1.0);  // start = 1: zeta(d) <= d/(d-1)
        }
        case DivisorKind::Sharpness: {
            if (d < 1)
                throw std::invalid_argument(
                    "tail_sum_estimate: tail diverges at this exponent");
            // sum_{n > n0} 2^n (n^2 2^n)^{-d} <= sum n^{-2} <= 1/(n0 - 1) at d = 1
            int n0 = kSharpnessMaxN + 1;
            for (int n = 1; n <= kSharpnessMaxN; ++n)
                if (sharpness_modulus(n) > radius) {
                    n0 = n;
                    break;
                }
            double s = 0.0;
            if (d == 1) {
                s = 1.0 / std::max(1, n0 - 1);
            } else {
                for (int n = n0; n <= kSharpnessMaxN; ++n)
                    s += std::ldexp(1.0, n) * std::pow(sharpness_modulus(n), -d);
                s += std::pow(2.0, -d + 1);  // crude cover for n beyond the cap
            }
            return s;
        }
    }
    throw std::logic_error("tail_sum_estimate: unknown divisor kind");
}

DyadicDiagnostic dyadic_tail_diagnostic(const Divisor& div, int d,
                                        int max_blocks,
                                        std::size_t max_points) {
    DyadicDiagnostic diag;
    auto pts = enumerate_points(div, max_points);
    if (pts.empty()) return diag;
    double lo = 1.0;
    std::size_t idx = 0;
    while (idx < pts.size() && std::abs(pts[idx].rho) < lo) ++idx;
    for (int b = 0; b < max_blocks && idx < pts.size(); ++b) {
        const double hi = 2.0 * lo;
        CompensatedSum<double> s;
        while (idx < pts.size() && std::abs(pts[idx].rho) < hi) {
            s.add(std::llabs(pts[idx].mult) * std::pow(std::abs(pts[idx].rho), -d));
            ++idx;
        }
        diag.block_sums.push_back(s.value());
        lo = hi;
    }
    diag.blocks = static_cast<int>(diag.block_sums.size());
    if (diag.blocks >= 5) {
        bool ok = true;
        for (int b = diag.blocks - 4; b < diag.blocks; ++b) {
            const double prev = diag.block_sums[b - 1];
            const double cur = diag.block_sums[b];
            if (prev > 0.0 && cur > 0.9 * prev) ok = false;
        }
        diag.converges = ok;
    }
    return diag;
}

std::string to_string(FunctionClass c) {
    switch (c) {
        case FunctionClass::HadamardType: return "HadamardType";
        case FunctionClass::WeierstrassType: return "WeierstrassType";
        case FunctionClass::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

}  // namespace lldlab
