#include "htrmt/errors.hpp"
#include "htrmt/specfun.hpp"
#include "numeric.hpp"

#include <cmath>

namespace htrmt {

namespace {

bool nonpositive_integer(double x)
{
    return x <= 0.0 && x == std::floor(x);
}

} // namespace

double digamma(double x)
{
    if (!std::isfinite(x) || nonpositive_integer(x))
        throw DomainError("digamma: pole at " + std::to_string(x));
    if (x < 0.0) {
        // reflection: psi(1-x) - psi(x) = pi cot(pi x)
        return digamma(1.0 - x) - M_PI * detail::cos_pi(x) / detail::sin_pi(x);
    }
    double acc = 0.0;
    while (x < 20.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double r = 1.0 / (x * x);
    const double tail =
        r * (1.0 / 12 - r * (1.0 / 120 - r * (1.0 / 252 - r * (1.0 / 240 - r * (1.0 / 132 - r * 691.0 / 32760)))));
    return acc + std::log(x) - 0.5 / x - tail;
}

double trigamma(double x)
{
    if (!std::isfinite(x) || nonpositive_integer(x))
        throw DomainError("trigamma: pole at " + std::to_string(x));
    if (x < 0.0) {
        const double s = detail::sin_pi(x);
        return -trigamma(1.0 - x) + M_PI * M_PI / (s * s);
    }
    double acc = 0.0;
    while (x < 20.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    // Euler-Maclaurin tail of sum 1/(x+n)^2
    const double r = 1.0 / (x * x);
    const double tail =
        1.0 / x + 0.5 * r + (r / x) * (1.0 / 6 - r * (1.0 / 30 - r * (1.0 / 42 - r * (1.0 / 30 - r * 5.0 / 66))));
    return acc + tail;
}

} // namespace htrmt
