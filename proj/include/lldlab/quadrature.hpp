#pragma once

#include <cmath>
#include <complex>
#include <queue>
#include <type_traits>
#include <utility>

#include "lldlab/summation.hpp"

namespace lldlab {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK table).
// Nodes are symmetric about 0; odd-index entries and the center are the Gauss points.
namespace gk15 {
inline constexpr double nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr double wk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};
}  // namespace gk15

template <class T>
struct IntegralEstimate {
    T value{};
    double abs_error = 0.0;
    int segments = 0;
    bool converged = false;
};

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-12;
    int max_segments = 2000;
};

// Adaptive bisection driven by a max-error priority queue. T may be double or
// std::complex<double>; the per-segment error metric is |K15 - G7|.
template <class F>
auto integrate_gk15(F&& f, double a, double b, QuadratureOptions opt = {})
    -> IntegralEstimate<std::decay_t<decltype(f(0.0))>> {
    using T = std::decay_t<decltype(f(0.0))>;
    IntegralEstimate<T> out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }

    struct Segment {
        double a, b, err;
        T value;
        bool operator<(const Segment& o) const { return err < o.err; }
    };

    auto eval = [&](double lo, double hi) {
        Segment s;
        s.a = lo;
        s.b = hi;
        const double mid = 0.5 * (lo + hi);
        const double h = 0.5 * (hi - lo);
        T resk{};
        T resg{};
        for (int i = 0; i < 8; ++i) {
            const double x = gk15::nodes[i];
            T fv;
            if (i == 7)
                fv = f(mid);
            else
                fv = f(mid - h * x) + f(mid + h * x);
            resk += gk15::wk[i] * fv;
            if (i % 2 == 1)
                resg += gk15::wg[i / 2] * fv;
            else if (i == 7)
                resg += gk15::wg[3] * fv;
        }
        s.value = h * resk;
        s.err = std::abs(h * (resk - resg));
        return s;
    };

    std::priority_queue<Segment> heap;
    Segment first = eval(a, b);
    heap.push(first);
    int nseg = 1;
    T val_acc = first.value;
    double err_acc = first.err;

    while (err_acc > std::max(opt.abs_tol, opt.rel_tol * std::abs(val_acc)) &&
           nseg < opt.max_segments) {
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Segment left = eval(worst.a, mid);
        Segment right = eval(mid, worst.b);
        val_acc = val_acc - worst.value + left.value + right.value;
        err_acc = err_acc - worst.err + left.err + right.err;
        heap.push(left);
        heap.push(right);
        ++nseg;
    }

    CompensatedSum<T> vsum;
    CompensatedSum<double> esum;
    while (!heap.empty()) {
        vsum.add(heap.top().value);
        esum.add(heap.top().err);
        heap.pop();
    }
    out.value = sign * vsum.value();
    out.abs_error = esum.value();
    out.segments = nseg;
    out.converged = out.abs_error <=
                    std::max(opt.abs_tol, opt.rel_tol * std::abs(out.value));
    return out;
}

}  // namespace lldlab
