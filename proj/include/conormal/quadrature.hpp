#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>

#include "conormal/errors.hpp"

namespace conormal {

using cplx = std::complex<double>;

struct QuadratureOptions {
    double rel_tol = 1e-10;
    // Frequency scale of the integrand; the finite window is [-R, R] with
    // R = max(8 * scale, 32).
    double scale = 0.0;
    int max_panels = 4000;

    double window_radius() const { return std::max(8.0 * scale, 32.0); }
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1] (positive half; the
// rule is symmetric).  Nodes with a nonzero Gauss weight form the G7 rule.
inline constexpr double gk_node[8] = {
    0.000000000000000, 0.405845151377397, 0.741531185599394, 0.949107912342759,
    0.207784955007898, 0.586087235467691, 0.864864423359769, 0.991455371120813};
inline constexpr double gk_wg[8] = {
    0.417959183673469, 0.381830050505119, 0.279705391489277, 0.129484966168870,
    0.0, 0.0, 0.0, 0.0};
inline constexpr double gk_wk[8] = {
    0.209482141084728, 0.190350578064785, 0.140653259715525, 0.063092092629979,
    0.204432940075298, 0.169004726639267, 0.104790010322250, 0.022935322010529};

struct Panel {
    double a, b;
    cplx integral;
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

template <class F>
Panel gk15(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    cplx y0 = f(mid);
    cplx g7 = gk_wg[0] * y0;
    cplx k15 = gk_wk[0] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = hw * gk_node[i];
        const cplx yi = f(mid + dx) + f(mid - dx);
        g7 += gk_wg[i] * yi;
        k15 += gk_wk[i] * yi;
    }
    g7 *= hw;
    k15 *= hw;
    return Panel{a, b, k15, std::abs(k15 - g7)};
}

// Globally adaptive bisection: split the worst panel until the summed
// error estimate meets max(rel_tol * |integral|, abs_tol).
template <class F>
cplx adaptive(F&& f, double a, double b, double rel_tol, double abs_tol, int max_panels) {
    if (a == b) return cplx(0.0);
    std::priority_queue<Panel> queue;
    Panel first = gk15(f, a, b);
    cplx total = first.integral;
    double err = first.err;
    queue.push(first);
    int panels = 1;
    while (err > std::max(rel_tol * std::abs(total), abs_tol)) {
        if (panels >= max_panels) {
            throw NonConvergentError("adaptive quadrature exceeded the panel budget");
        }
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        total += left.integral + right.integral - worst.integral;
        err += left.err + right.err - worst.err;
        queue.push(left);
        queue.push(right);
        ++panels;
    }
    return total;
}

}  // namespace detail

// Integral of f over the whole real line for integrands with algebraic
// decay |f(eta)| <= C |eta|^d, d < -1.
//
// The window [-R, R] is folded to [0, R] so that odd integrands cancel
// exactly per evaluation point.  The two tails are handled by the leading
// homogeneous term c |eta|^d with c estimated from f(+-R), plus the
// remainder integral under the substitution u = 1/eta, which the adaptive
// rule resolves to the requested tolerance.
template <class F>
cplx quadrature_with_tail(F&& f, double decay_degree, const QuadratureOptions& opts = {}) {
    if (decay_degree >= -1.0) {
        throw DegreeTooHighError("quadrature_with_tail requires decay degree < -1");
    }
    const double d = decay_degree;
    const double R = opts.window_radius();
    const double rel = 0.25 * opts.rel_tol;

    auto folded = [&](double t) { return f(t) + f(-t); };
    const cplx core = detail::adaptive(folded, 0.0, R, rel, 0.0, opts.max_panels);

    // Leading tail term: both one-sided tails of c |eta|^d integrate to
    // c R^{d+1} / (-1 - d).
    const cplx c_sum = (f(R) + f(-R)) * std::pow(R, -d);
    const cplx tail_leading = c_sum * std::pow(R, d + 1.0) / (-1.0 - d);

    // Remainder after removing the leading term, mapped to u = 1/eta on
    // (0, 1/R].  The integrand is O(u^{-d-1}) there, hence bounded.
    auto tail_rest = [&](double u) -> cplx {
        return (f(1.0 / u) + f(-1.0 / u) - c_sum * std::pow(u, -d)) / (u * u);
    };
    const double abs_floor = rel * (std::abs(core) + std::abs(tail_leading));
    const cplx remainder =
        detail::adaptive(tail_rest, 0.0, 1.0 / R, rel, abs_floor, opts.max_panels);

    return core + tail_leading + remainder;
}

// One-sided tail integral int_M^inf f(t) dt for f with algebraic decay
// t^d, d < -1, via the same u = 1/t substitution.  Used for computed
// truncation bounds of mode sums.
template <class F>
cplx tail_integral(F&& f, double cutoff, double decay_degree, const QuadratureOptions& opts = {}) {
    if (decay_degree >= -1.0) {
        throw DegreeTooHighError("tail_integral requires decay degree < -1");
    }
    if (cutoff <= 0.0) {
        throw std::invalid_argument("tail_integral requires a positive cutoff");
    }
    auto mapped = [&](double u) -> cplx { return f(1.0 / u) / (u * u); };
    return detail::adaptive(mapped, 0.0, 1.0 / cutoff, 0.25 * opts.rel_tol, 0.0,
                            opts.max_panels);
}

}  // namespace conormal
