#pragma once

#include "htrmt/errors.hpp"
#include "numeric.hpp"

#include <algorithm>
#include <vector>

namespace htrmt::detail {

inline double shift(double x, double n) { return x + n; }
inline BigFloat shift(const BigFloat& x, double n) { return x + n; }
inline std::complex<double> shift(const std::complex<double>& x, double n) { return x + n; }
inline BigComplex shift(const BigComplex& x, double n) { return {x.re + n, x.im}; }

template <class N> struct SeriesSum {
    N value;
    // largest log2 magnitude of any term or partial sum; the gap to
    // log2|value| is the number of bits lost to cancellation
    double peak = kNegInf;
    long terms = 0;

    double lost_bits() const
    {
        double v = log2mag(value);
        if (v == kNegInf)
            return peak == kNegInf ? 0.0 : 1e9;
        return std::max(0.0, peak - v);
    }
};

// Generalized hypergeometric series sum_n prod (a_i)_n / prod (b_j)_n z^n / n!
// with term-ratio stopping at the given working precision.
template <class N>
SeriesSum<N> hyp_series(const std::vector<N>& a, const std::vector<N>& b, const N& z, int bits,
                        long max_terms = 2000000)
{
    N term = z * 0.0;
    term = shift(term, 1.0);
    SeriesSum<N> out{term, 0.0, 1};
    // the ratio is only monotone once n exceeds every parameter magnitude
    double pmax = 0.0;
    for (const auto& p : a)
        pmax = std::max(pmax, std::exp2(log2mag(p)));
    for (const auto& p : b)
        pmax = std::max(pmax, std::exp2(log2mag(p)));
    double prev = 0.0;
    for (long n = 0; n < max_terms; ++n) {
        const double dn = static_cast<double>(n);
        N num = shift(a[0], dn);
        for (size_t i = 1; i < a.size(); ++i)
            num = num * shift(a[i], dn);
        if (is_zero(num))
            return out;
        N den = shift(b[0], dn);
        for (size_t j = 1; j < b.size(); ++j)
            den = den * shift(b[j], dn);
        if (is_zero(den))
            throw DomainError("hypergeometric series: denominator parameter hits a pole at n = " +
                              std::to_string(n));
        term = term * num / den * z / (dn + 1.0);
        out.value = out.value + term;
        ++out.terms;
        const double lt = log2mag(term);
        const double ls = log2mag(out.value);
        out.peak = std::max({out.peak, lt, ls});
        if (lt == kNegInf)
            return out;
        // stop once the geometric tail bound is below the working precision
        const double ratio = std::exp2(lt - prev);
        prev = lt;
        if (n > 0 && ratio < 1.0 && dn + 1.0 > pmax) {
            const double tail = lt - std::log2(1.0 - ratio);
            if (tail < ls - bits - 3)
                return out;
        }
    }
    throw ConvergenceError("hypergeometric series did not converge");
}

} // namespace htrmt::detail
