#include "lldlab/newton_cramer.hpp"

#include <algorithm>
#include <cmath>

#include "lldlab/quadrature.hpp"
#include "lldlab/summation.hpp"

namespace lldlab {

namespace {

// Flat per-point data so a quadrature pass over many t stays cache-friendly.
struct LdKernel {
    std::vector<double> re, im, wre, wim;  // rho and n_rho rho^{-d}
    double sigma1_pos = 0.0;               // max(0, sup Re rho) over the prefix
    bool heuristic = false;
    std::size_t points = 0;

    LdKernel(const Divisor& div, int d, const TruncationSpec& trunc) {
        auto pts = enumerate_points(div, trunc.max_points);
        points = pts.size();
        re.reserve(points);
        im.reserve(points);
        wre.reserve(points);
        wim.reserve(points);
        double smax = 0.0;
        for (const auto& p : pts) {
            std::complex<double> w = static_cast<double>(p.mult);
            for (int j = 0; j < d; ++j) w /= p.rho;
            re.push_back(p.rho.real());
            im.push_back(p.rho.imag());
            wre.push_back(w.real());
            wim.push_back(w.imag());
            smax = std::max(smax, p.rho.real());
            if (p.rho.real() > 1e-12) heuristic = true;
        }
        sigma1_pos = std::max(0.0, smax);
    }

    std::complex<double> eval(double t) const {
        if (t <= 0.0) return 0.0;
        CompensatedSum<double> sre, sim;
        for (std::size_t i = 0; i < re.size(); ++i) {
            const double g = std::exp(re[i] * t);
            const double cr = g * std::cos(im[i] * t) - 1.0;
            const double ci = g * std::sin(im[i] * t);
            sre.add(wre[i] * cr - wim[i] * ci);
            sim.add(wre[i] * ci + wim[i] * cr);
        }
        return {sre.value(), sim.value()};
    }
};

double tail_bound_for(const Divisor& div, int d, const TruncationSpec& trunc,
                      std::size_t points_used, double t_max, double sigma1_pos,
                      bool* heuristic) {
    if (div.finite()) return 0.0;
    if (trunc.tail_bound_mode == TruncationSpec::TailBound::None) {
        *heuristic = true;
        return 0.0;
    }
    auto pts = enumerate_points(div, points_used);
    if (pts.empty()) return 0.0;
    const double R = std::abs(pts.back().rho);
    try {
        return 2.0 * tail_sum_estimate(div, R, d) *
               std::exp(sigma1_pos * std::max(0.0, t_max));
    } catch (const std::invalid_argument&) {
        *heuristic = true;
        return 0.0;
    }
}

}  // namespace

LdValue L_d_eval(const Divisor& div, int d, double t,
                 const TruncationSpec& trunc) {
    if (d < 0) throw std::invalid_argument("L_d_eval: negative exponent");
    LdValue out;
    if (t <= 0.0) return out;
    LdKernel kern(div, d, trunc);
    out.value = kern.eval(t);
    out.heuristic = kern.heuristic;
    bool h = out.heuristic;
    out.tail_bound =
        tail_bound_for(div, d, trunc, kern.points, t, kern.sigma1_pos, &h);
    out.heuristic = h;
    return out;
}

PairingResult pair_W(const Divisor& div, int d, const TestFunction& phi,
                     const TruncationSpec& trunc, double quad_tol) {
    if (d < 0) throw std::invalid_argument("pair_W: negative exponent");
    if (phi.max_order < d)
        throw std::invalid_argument(
            "pair_W: test function smoothness below the pairing order");
    PairingResult out;
    const double lo = std::max(0.0, phi.a);
    const double hi = phi.b;
    if (hi <= lo) return out;

    LdKernel kern(div, d, trunc);
    out.truncation_used = kern.points;
    if (kern.points == 0) return out;

    const double sign = (d % 2 == 0) ? 1.0 : -1.0;
    QuadratureOptions opt;
    opt.abs_tol = quad_tol;
    opt.rel_tol = 1e-12;
    opt.max_segments = 1500;
    auto integrand = [&](double t) -> std::complex<double> {
        return kern.eval(t) * phi.deriv(t, d);
    };
    auto integral = integrate_gk15(integrand, lo, hi, opt);
    out.value = sign * integral.value;

    // |phi^{(d)}| mass for the truncation part of the error
    QuadratureOptions copt;
    copt.abs_tol = 1e-9;
    copt.max_segments = 400;
    const double dmass =
        integrate_gk15([&](double t) { return std::abs(phi.deriv(t, d)); }, lo,
                       hi, copt)
            .value;
    bool h = kern.heuristic;
    const double tb =
        tail_bound_for(div, d, trunc, kern.points, hi, kern.sigma1_pos, &h);
    out.abs_error_est = integral.abs_error + tb * dmass;
    return out;
}

std::complex<double> pair_atoms(const AtomicMeasure& mu,
                                const TestFunction& phi) {
    CompensatedSum<std::complex<double>> sum;
    for (const auto& a : mu.atoms)
        if (a.freq > phi.a && a.freq < phi.b) sum.add(a.mass * phi(a.freq));
    return sum.value();
}

namespace {

// Phi_n(s) = integral phi^{(n)}(t) e^{s t} dt over supp phi
std::complex<double> laplace_window(const TestFunction& phi, int n,
                                    std::complex<double> s) {
    QuadratureOptions opt;
    opt.abs_tol = 1e-12;
    opt.rel_tol = 1e-10;
    opt.max_segments = 600;
    auto r = integrate_gk15(
        [&](double t) { return phi.deriv(t, n) * std::exp(s * t); }, phi.a,
        phi.b, opt);
    return r.value;
}

}  // namespace

PairingResult pair_inverse_laplace_line(const LineFunction& F, double c,
                                        const TestFunction& phi, int n,
                                        double tol) {
    if (!(c > F.valid_half_plane))
        throw std::domain_error(
            "pair_inverse_laplace_line: line outside the evaluator's half-plane");
    if (n < 0)
        throw std::invalid_argument("pair_inverse_laplace_line: negative weight");
    if (n > 8 || n > phi.max_order) throw PairingDidNotConverge();

    const double mid = 0.5 * (phi.a + phi.b);
    const double band = M_PI / std::max(0.5, std::abs(mid));

    auto integrand = [&](double u) -> std::complex<double> {
        const std::complex<double> s(c, u);
        std::complex<double> v = F.eval(s) * laplace_window(phi, n, s);
        for (int j = 0; j < n; ++j) v /= s;
        return v;
    };

    QuadratureOptions opt;
    opt.abs_tol = tol / 40.0;
    opt.rel_tol = 1e-12;
    opt.max_segments = 300;

    CompensatedSum<std::complex<double>> acc;
    CompensatedSum<double> errs;
    int small_streak = 0;
    double recent_max = 0.0;
    int growth_streak = 0;
    const int max_bands = 400;
    bool settled = false;
    for (int k = 0; k < max_bands; ++k) {
        const double u0 = k * band;
        const double u1 = (k + 1) * band;
        auto pos = integrate_gk15(integrand, u0, u1, opt);
        auto neg = integrate_gk15(integrand, -u1, -u0, opt);
        acc.add(pos.value);
        acc.add(neg.value);
        errs.add(pos.abs_error + neg.abs_error);
        const double mag = std::abs(pos.value) + std::abs(neg.value);
        if (mag < tol / 10.0)
            ++small_streak;
        else
            small_streak = 0;
        if (mag > recent_max && u0 > 30.0)
            ++growth_streak;
        else
            growth_streak = 0;
        recent_max = std::max(recent_max * 0.98, mag);
        if (small_streak >= 3 && u1 > 10.0) {
            settled = true;
            break;
        }
        if (growth_streak >= 8)
            return pair_inverse_laplace_line(F, c, phi, n + 1, tol);
    }
    if (!settled)
        return pair_inverse_laplace_line(F, c, phi, n + 1, tol);

    PairingResult out;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    out.value = sign / (2.0 * M_PI) * acc.value();
    out.abs_error_est = (errs.value() + tol / 10.0) / (2.0 * M_PI);
    return out;
}

namespace {

double tie_arg(const std::complex<double>& z) {
    double a = std::arg(z);
    if (a == -M_PI) a = M_PI;
    return a;
}

// Shift every point by tau, inject the origin multiplicity at tau, restore
// the (|rho|, arg) enumeration order.
Divisor translated_divisor(const Divisor& base, double tau,
                           long long origin_mult, std::size_t max_points) {
    auto pts = enumerate_points(base, max_points);
    for (auto& p : pts) p.rho += tau;
    if (origin_mult != 0) pts.push_back({{tau, 0.0}, origin_mult});
    std::sort(pts.begin(), pts.end(),
              [](const DivisorPoint& x, const DivisorPoint& y) {
                  const double mx = std::abs(x.rho), my = std::abs(y.rho);
                  if (mx != my) return mx < my;
                  return tie_arg(x.rho) < tie_arg(y.rho);
              });
    Divisor d;
    d.kind = DivisorKind::Explicit;
    d.points = std::move(pts);
    if (base.tail) d.tail = base.tail;  // same counting tail after a shift
    return d;
}

std::complex<double> delta_terms(const std::vector<std::complex<double>>& coeffs,
                                 const TestFunction& phi) {
    std::complex<double> sum = 0.0;
    double sign = 1.0;
    for (std::size_t l = 0; l < coeffs.size(); ++l) {
        sum += coeffs[l] * sign * phi.deriv(0.0, static_cast<int>(l));
        sign = -sign;
    }
    return sum;
}

}  // namespace

PNReport verify_poisson_newton(const PNInput& input, const TestFunction& phi,
                               const TruncationSpec& trunc, double tol) {
    if (!input.rhs_atoms && !input.rhs_line)
        throw std::invalid_argument(
            "verify_poisson_newton: no right-hand side supplied");

    double tau = 0.0;
    if (input.origin_mult != 0) {
        tau = input.tau_override.value_or(0.3);
        // keep the translated origin away from translated divisor points
        auto probe = enumerate_points(input.divisor, 1000);
        bool moved = true;
        while (moved) {
            moved = false;
            for (const auto& p : probe)
                if (std::abs(p.rho + tau) < 1e-6) {
                    tau += 0.11;
                    moved = true;
                }
        }
    }
    if (tau != 0.0 && phi.a <= 0.0)
        throw std::invalid_argument(
            "verify_poisson_newton: the test function must be supported in "
            "(0, infinity) when translation is in play");

    PNReport rep;
    rep.tau = tau;

    // right side: atoms or line, with the delta terms at zero when phi sees 0
    std::complex<double> rhs = 0.0;
    if (input.rhs_atoms) {
        rhs += pair_atoms(*input.rhs_atoms, phi);
    } else {
        rhs += pair_inverse_laplace_line(*input.rhs_line, input.rhs_line_c,
                                         phi, input.rhs_line_n, tol)
                   .value;
    }
    if (phi.a < 0.0 && phi.b > 0.0) {
        rhs += delta_terms(input.poly_at_infinity, phi);
        if (input.known_discrepancy)
            rhs += delta_terms(*input.known_discrepancy, phi);
    }
    rep.rhs = rhs;

    // left side at several truncations
    const TestFunction weighted = tau == 0.0 ? phi : exp_scale(-tau, phi);
    std::vector<std::size_t> levels;
    for (std::size_t k = std::max<std::size_t>(16, trunc.max_points / 16);
         k < trunc.max_points; k *= 4)
        levels.push_back(k);
    levels.push_back(trunc.max_points);

    for (std::size_t k : levels) {
        TruncationSpec t2 = trunc;
        t2.max_points = k;
        const Divisor shifted =
            translated_divisor(input.divisor, tau, input.origin_mult, k);
        auto lhs = pair_W(shifted, input.d, weighted, t2, tol / 10.0);
        rep.lhs = lhs.value;
        rep.truncation = lhs.truncation_used;
        rep.residual = std::abs(rep.lhs - rep.rhs);
        rep.residual_history.push_back({lhs.truncation_used, rep.residual});
    }
    return rep;
}

Discrepancy extract_discrepancy(const PNInput& input, int gW_bound,
                                double radius, const TruncationSpec& trunc,
                                double tol) {
    if (gW_bound < 1 || gW_bound > 6)
        throw std::invalid_argument(
            "extract_discrepancy: coefficient count must lie in [1, 6]");
    if (!(radius > 0.0))
        throw std::invalid_argument("extract_discrepancy: radius must be positive");
    if (input.rhs_atoms)
        for (const auto& a : input.rhs_atoms->atoms)
            if (a.freq <= radius)
                throw std::invalid_argument(
                    "extract_discrepancy: an atom inside the window radius; "
                    "discrepancy extraction invalid here");

    Discrepancy out;
    double worst_err = 0.0;
    const TestFunction window = plateau(radius, 8);
    for (int j = 0; j < gW_bound; ++j) {
        const TestFunction phi_j = monomial_times(j, window);
        auto lhs = pair_W(input.divisor, input.d, phi_j, trunc, tol / 10.0);

        std::complex<double> lhs_total = lhs.value;
        double err = lhs.abs_error_est;
        if (input.origin_mult != 0) {
            QuadratureOptions opt;
            opt.abs_tol = 1e-12;
            opt.max_segments = 300;
            const double mass =
                integrate_gk15([&](double t) { return phi_j(t); }, 0.0, radius,
                               opt)
                    .value;
            lhs_total += static_cast<double>(input.origin_mult) * mass;
        }

        double fact = 1.0;
        for (int i = 2; i <= j; ++i) fact *= i;

        // atoms all sit beyond the window; only the polynomial part remains
        std::complex<double> rhs = 0.0;
        if (j < static_cast<int>(input.poly_at_infinity.size()))
            rhs = input.poly_at_infinity[j] * (j % 2 == 0 ? 1.0 : -1.0) * fact;

        const std::complex<double> cj =
            (j % 2 == 0 ? 1.0 : -1.0) * (lhs_total - rhs) / fact;
        out.coeffs.push_back(cj);
        worst_err = std::max(worst_err, err / fact);
    }
    out.residual = worst_err;

    int g = gW_bound;
    while (g > 0 &&
           std::abs(out.coeffs[g - 1]) < std::max(10.0 * worst_err, 1e-12))
        --g;
    out.gW = g;
    return out;
}

FunctionClass classify(int d, std::optional<int> m0_estimate,
                       std::optional<int> gW_estimate, bool is_dirichlet,
                       double extraction_residual, double residual_threshold) {
    if (d < 0) throw std::invalid_argument("classify: negative exponent");
    if (is_dirichlet && d < 2)
        throw std::domain_error(
            "classify: a Dirichlet-series function must have convergence "
            "exponent at least 2; check the divisor model");
    if (m0_estimate && *m0_estimate <= d) return FunctionClass::HadamardType;
    if (is_dirichlet) return FunctionClass::HadamardType;
    if (gW_estimate && *gW_estimate > d - 1 &&
        extraction_residual < residual_threshold)
        return FunctionClass::WeierstrassType;
    return FunctionClass::Inconclusive;
}

}  // namespace lldlab
