#pragma once

#include "htrmt/errors.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <vector>

namespace htrmt {

struct GaussRule {
    std::array<double, 15> nodes;   // on [-1, 1]
    std::array<double, 15> weights;
};

const GaussRule& gauss_legendre15();

template <class T> struct QuadResult {
    T value{};
    double error = 0.0;
    long evals = 0;
};

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-12;
    int initial_panels = 8;
    int max_panels = 20000;
};

namespace detail {

template <class T, class F> T gl15(F& f, double a, double b)
{
    const GaussRule& g = gauss_legendre15();
    const double h = 0.5 * (b - a), m = 0.5 * (a + b);
    T s{};
    for (size_t i = 0; i < g.nodes.size(); ++i)
        s += g.weights[i] * f(m + h * g.nodes[i]);
    return s * h;
}

template <class T> double qmag(const T& v) { return std::abs(v); }

} // namespace detail

// Adaptive composite 15-point Gauss-Legendre. Each panel is scored by the
// difference between its single-rule value and the sum over its two halves;
// the worst panel is bisected until the total estimate meets the tolerance.
template <class T = double, class F>
QuadResult<T> integrate(F&& f, double a, double b, const QuadOptions& opt = {})
{
    struct Panel {
        double a, b;
        T left, right;   // single-rule values on the two halves
        double err;
        T split() const { return left + right; }
        bool operator<(const Panel& o) const { return err < o.err; }
    };
    QuadResult<T> out;
    if (a == b)
        return out;
    auto eval = [&](double x) {
        T v = f(x);
        if (!std::isfinite(detail::qmag(v)))
            throw DomainError("integrand is not finite at x = " + std::to_string(x));
        return v;
    };
    auto make = [&](double lo, double hi, const T& whole) {
        const double mid = 0.5 * (lo + hi);
        T l = detail::gl15<T>(eval, lo, mid);
        T r = detail::gl15<T>(eval, mid, hi);
        out.evals += 30;
        return Panel{lo, hi, l, r, detail::qmag(T(whole - (l + r)))};
    };

    std::priority_queue<Panel> heap;
    T total{};
    double err = 0.0;
    const int n0 = std::max(1, opt.initial_panels);
    for (int i = 0; i < n0; ++i) {
        double lo = a + (b - a) * i / n0, hi = i + 1 == n0 ? b : a + (b - a) * (i + 1) / n0;
        T whole = detail::gl15<T>(eval, lo, hi);
        out.evals += 15;
        Panel p = make(lo, hi, whole);
        total += p.split();
        err += p.err;
        heap.push(p);
    }
    int panels = n0;
    while (err > std::max(opt.abs_tol, opt.rel_tol * detail::qmag(total))) {
        if (panels >= opt.max_panels)
            throw ConvergenceError("quadrature panel budget exhausted");
        Panel p = heap.top();
        heap.pop();
        const double mid = 0.5 * (p.a + p.b);
        Panel l = make(p.a, mid, p.left);
        Panel r = make(mid, p.b, p.right);
        total += l.split() + r.split() - p.split();
        err += l.err + r.err - p.err;
        heap.push(l);
        heap.push(r);
        ++panels;
        // refresh the running sums now and then to shed accumulated rounding
        if (panels % 256 == 0) {
            auto copy = heap;
            total = T{};
            err = 0.0;
            while (!copy.empty()) {
                total += copy.top().split();
                err += copy.top().err;
                copy.pop();
            }
        }
    }
    out.value = total;
    out.error = err;
    return out;
}

// Integral over [a, b] of an integrand behaving like (x - a)^s near a, s > -1.
// The substitution x = a + (b - a) v^{1/(1+s)} removes the leading singularity.
template <class F>
QuadResult<double> integrate_left_power(F&& f, double a, double b, double s, const QuadOptions& opt = {})
{
    const double m = 1.0 / (1.0 + s);
    const double w = b - a;
    auto g = [&](double v) {
        if (v <= 0.0)
            return 0.0;
        const double x = a + w * std::pow(v, m);
        // dx = w m v^{m-1} dv; the (x - a)^s factor of f cancels the v^{m-1}
        return f(x) * w * m * std::pow(v, m - 1.0);
    };
    return integrate<double>(g, 0.0, 1.0, opt);
}

// Right-endpoint analogue. `f` receives the distance d = b - x rather than x,
// so that points closer to b than its rounding granularity stay distinct.
template <class F>
QuadResult<double> integrate_right_power(F&& f, double a, double b, double s, const QuadOptions& opt = {})
{
    return integrate_left_power(std::forward<F>(f), 0.0, b - a, s, opt);
}

} // namespace htrmt
