#include "lldlab/vertline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lldlab/quadrature.hpp"
#include "lldlab/summation.hpp"

namespace lldlab {

namespace {

constexpr double kFloorLevel = 1e-280;
constexpr double kZeroSlope = -999.0;

struct WindowSums {
    std::vector<double> integral;  // per m
    std::vector<double> quad_err;  // per m
    double round_diff = 0.0;       // worst relative change in the last doubling
};

// Composite GK15 over [lo, hi] on side*t, all weights at once, panel-doubling
// until every m stabilizes to 0.5% or the absolute floor.
WindowSums window_integrate(const LineFunction& F, double c, int m_max,
                            double side, double lo, double hi, double abs_floor,
                            int max_rounds) {
    const double width = hi - lo;
    double osc = F.oscillation_scale > 0.0 ? F.oscillation_scale : width / 8.0;
    long long panels = std::clamp<long long>(
        static_cast<long long>(std::ceil(width / osc)), 4, 1 << 16);

    auto abs_eval = [&](double t) {
        try {
            return std::abs(F.eval({c, side * t}));
        } catch (const std::exception& e) {
            throw std::runtime_error("line scan: evaluator failed at t = " +
                                     std::to_string(side * t) + ": " + e.what());
        }
    };

    WindowSums prev, cur;
    for (int round = 0; round < max_rounds; ++round) {
        cur.integral.assign(m_max + 1, 0.0);
        cur.quad_err.assign(m_max + 1, 0.0);
        std::vector<CompensatedSum<double>> acc(m_max + 1), errk(m_max + 1);
        const double h = width / panels;
        for (long long p = 0; p < panels; ++p) {
            const double a = lo + p * h;
            const double mid = a + 0.5 * h;
            const double half = 0.5 * h;
            std::vector<double> resk(m_max + 1, 0.0), resg(m_max + 1, 0.0);
            for (int i = 0; i < 8; ++i) {
                const double x = gk15::nodes[i];
                double pts[2];
                int npts;
                if (i == 7) {
                    pts[0] = mid;
                    npts = 1;
                } else {
                    pts[0] = mid - half * x;
                    pts[1] = mid + half * x;
                    npts = 2;
                }
                for (int q = 0; q < npts; ++q) {
                    const double t = pts[q];
                    const double v = abs_eval(t);
                    const double rinv = 1.0 / std::hypot(c, t);
                    double vm = v;
                    for (int m = 0; m <= m_max; ++m) {
                        resk[m] += gk15::wk[i] * vm * half;
                        if (i % 2 == 1)
                            resg[m] += gk15::wg[i / 2] * vm * half;
                        else if (i == 7)
                            resg[m] += gk15::wg[3] * vm * half;
                        vm *= rinv;
                    }
                }
            }
            for (int m = 0; m <= m_max; ++m) {
                acc[m].add(resk[m]);
                errk[m].add(std::abs(resk[m] - resg[m]));
            }
        }
        for (int m = 0; m <= m_max; ++m) {
            cur.integral[m] = acc[m].value();
            cur.quad_err[m] = errk[m].value();
        }
        if (round > 0) {
            double worst = 0.0;
            for (int m = 0; m <= m_max; ++m) {
                const double diff = std::abs(cur.integral[m] - prev.integral[m]);
                const double gate =
                    std::max(abs_floor, 0.005 * std::abs(cur.integral[m]));
                worst = std::max(worst, diff / gate);
            }
            cur.round_diff = worst;
            if (worst <= 1.0) return cur;
        }
        prev = cur;
        panels *= 2;
    }
    return cur;
}

struct Fit {
    double slope = 0.0;
    double intercept = 0.0;
    bool degenerate = false;  // all levels at the floor
};

Fit fit_tail(const std::vector<double>& lx, const std::vector<double>& ly) {
    Fit f;
    const std::size_t n = lx.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double den = n * sxx - sx * sx;
    f.slope = (n * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

}  // namespace

std::vector<LineIntegralResult> line_l1_scan(const LineFunction& F, double c,
                                             int m_max, double T_max,
                                             double tol) {
    if (!(c > F.valid_half_plane))
        throw std::domain_error(
            "line_l1_norm: line outside the evaluator's half-plane");
    if (c == 0.0)
        throw std::invalid_argument("line_l1_norm: c must be nonzero");
    if (!(T_max >= 64.0))
        throw std::invalid_argument("line_l1_norm: T_max must be at least 64");
    if (m_max < 0)
        throw std::invalid_argument("line_l1_norm: negative weight");

    const int J = static_cast<int>(std::floor(std::log2(T_max)));
    const double abs_floor = std::max(tol, 1e-14);

    // central strip [-1, 1]
    WindowSums central_pos =
        window_integrate(F, c, m_max, +1.0, 0.0, 1.0, abs_floor, 5);
    WindowSums central_neg =
        window_integrate(F, c, m_max, -1.0, 0.0, 1.0, abs_floor, 5);

    // dyadic windows per side
    std::vector<WindowSums> side_pos, side_neg;
    for (int j = 0; j < J; ++j) {
        const double lo = std::ldexp(1.0, j);
        const double hi = std::ldexp(1.0, j + 1);
        side_pos.push_back(
            window_integrate(F, c, m_max, +1.0, lo, hi, abs_floor, 4));
        side_neg.push_back(
            window_integrate(F, c, m_max, -1.0, lo, hi, abs_floor, 4));
    }

    std::vector<LineIntegralResult> out;
    const double T_eff = std::ldexp(1.0, J);
    const int fit_count = std::min(6, J);
    for (int m = 0; m <= m_max; ++m) {
        LineIntegralResult r;
        r.c = c;
        r.m = m;
        r.windows_used = J;

        double beta[2];
        double tail[2] = {0.0, 0.0};
        bool side_zero[2];
        const std::vector<WindowSums>* sides[2] = {&side_pos, &side_neg};
        for (int s = 0; s < 2; ++s) {
            const auto& ws = *sides[s];
            std::vector<double> lx, ly;
            bool all_floor = true;
            for (int j = J - fit_count; j < J; ++j) {
                const double width = std::ldexp(1.0, j);
                const double mean = ws[j].integral[m] / width;
                if (mean > kFloorLevel) all_floor = false;
                lx.push_back(std::log(1.5 * width));  // window midpoint
                ly.push_back(std::log(std::max(mean, kFloorLevel)));
            }
            side_zero[s] = all_floor;
            if (all_floor) {
                beta[s] = kZeroSlope;
                continue;
            }
            const Fit f = fit_tail(lx, ly);
            beta[s] = f.slope;
            if (f.slope < -1.0) {
                const double level_T =
                    std::exp(f.intercept + f.slope * std::log(T_eff));
                tail[s] = level_T * T_eff / (-1.0 - f.slope);
            }
        }
        r.tail_exponent = std::max(beta[0], beta[1]);
        r.convergent = beta[0] < -1.1 && beta[1] < -1.1;

        if (r.convergent) {
            CompensatedSum<double> v;
            v.add(central_pos.integral[m]);
            v.add(central_neg.integral[m]);
            double qerr = central_pos.quad_err[m] + central_neg.quad_err[m];
            for (int s = 0; s < 2; ++s) {
                const auto& ws = *sides[s];
                for (int j = 0; j < J; ++j) {
                    v.add(ws[j].integral[m]);
                    qerr += ws[j].quad_err[m];
                }
                if (!side_zero[s]) v.add(tail[s]);
            }
            r.value = v.value();
            r.abs_error_est = qerr + 0.5 * (tail[0] + tail[1]);
        }
        out.push_back(std::move(r));
    }
    return out;
}

LineIntegralResult line_l1_norm(const LineFunction& F, double c, int m,
                                double T_max, double tol) {
    return line_l1_scan(F, c, m, T_max, tol).back();
}

VerticalOrderResult vertical_order_estimate(const LineFunction& F,
                                            const std::vector<double>& cs,
                                            int m_max, double T_max,
                                            double tol) {
    std::vector<double> distinct = cs;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    if (distinct.size() < 2)
        throw std::invalid_argument(
            "vertical_order_estimate: need at least two distinct c values");

    VerticalOrderResult out;
    std::vector<std::vector<LineIntegralResult>> scans;
    for (double c : distinct)
        scans.push_back(line_l1_scan(F, c, m_max, T_max, tol));
    for (const auto& sc : scans)
        out.details.insert(out.details.end(), sc.begin(), sc.end());

    for (int m = 0; m <= m_max; ++m) {
        bool all_conv = true, any_conv = false;
        for (const auto& sc : scans) {
            if (sc[m].convergent)
                any_conv = true;
            else
                all_conv = false;
        }
        if (all_conv) {
            out.m0 = m;
            return out;
        }
        if (any_conv) {
            out.lemma_violation = true;  // convergent on some lines only
            return out;
        }
    }
    return out;
}

MonotonicityCheck c_monotonicity_check(const LineFunction& F, int m0, double c,
                                       double c_prime, double T_max,
                                       double tol) {
    if (!(c > F.valid_half_plane))
        throw std::domain_error(
            "c_monotonicity_check: line outside the evaluator's half-plane");
    if (!(c_prime >= c))
        throw std::invalid_argument(
            "c_monotonicity_check: c_prime must not be below c");
    const LineIntegralResult at_c = line_l1_norm(F, c, m0, T_max, tol);
    const LineIntegralResult at_cp =
        c_prime == c ? at_c : line_l1_norm(F, c_prime, m0, T_max, tol);
    if (!at_c.value || !at_cp.value)
        throw std::runtime_error(
            "c_monotonicity_check: the weighted norm is not finite at the "
            "requested weight");
    MonotonicityCheck chk;
    chk.lhs = *at_cp.value;
    chk.rhs = *at_c.value;
    chk.holds = chk.lhs <= chk.rhs * (1.0 + tol) + at_c.abs_error_est +
                          at_cp.abs_error_est;
    return chk;
}

std::vector<std::pair<double, double>> line_integrand_samples(
    const LineFunction& F, double c, int m, double t_lo, double t_hi, int n) {
    if (!(t_hi > t_lo) || !(t_lo > 0.0) || n < 2)
        throw std::invalid_argument("line_integrand_samples: bad grid");
    std::vector<std::pair<double, double>> rows;
    const double lr = std::log(t_hi / t_lo);
    for (int i = 0; i < n; ++i) {
        const double t = t_lo * std::exp(lr * i / (n - 1));
        const double v =
            std::abs(F.eval({c, t})) / std::pow(std::hypot(c, t), m);
        rows.push_back({t, v});
    }
    return rows;
}

}  // namespace lldlab
