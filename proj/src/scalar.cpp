#include "htrmt/scalar.hpp"

#include "htrmt/errors.hpp"

#include <charconv>

namespace htrmt {

const char* ring_name(Ring r)
{
    switch (r) {
    case Ring::rational: return "rational";
    case Ring::poly: return "poly";
    case Ring::float64: return "float64";
    }
    return "?";
}

Ring ring_of(const Scalar& s)
{
    return static_cast<Ring>(s.index());
}

namespace {

void require_same(const Scalar& a, const Scalar& b)
{
    if (a.index() != b.index())
        throw UsageError(std::string("ring mismatch: ") + ring_name(ring_of(a)) + " vs " +
                         ring_name(ring_of(b)));
}

} // namespace

Scalar ring_add(const Scalar& a, const Scalar& b)
{
    require_same(a, b);
    return std::visit([&](const auto& x) -> Scalar {
        using T = std::decay_t<decltype(x)>;
        return x + std::get<T>(b);
    }, a);
}

Scalar ring_mul(const Scalar& a, const Scalar& b)
{
    require_same(a, b);
    return std::visit([&](const auto& x) -> Scalar {
        using T = std::decay_t<decltype(x)>;
        return x * std::get<T>(b);
    }, a);
}

Scalar ring_neg(const Scalar& a)
{
    return std::visit([](const auto& x) -> Scalar { return -x; }, a);
}

std::string format_double(double x)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string to_string(const Scalar& s)
{
    switch (ring_of(s)) {
    case Ring::rational: return std::get<Rational>(s).str();
    case Ring::poly: return std::get<MultiPoly>(s).str();
    case Ring::float64: return format_double(std::get<double>(s));
    }
    return {};
}

} // namespace htrmt
