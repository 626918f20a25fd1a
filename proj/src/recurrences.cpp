#include "htrmt/recurrences.hpp"

#include "htrmt/errors.hpp"

#include <cmath>
#include <type_traits>

namespace htrmt {

const char* family_name(Family f)
{
    switch (f) {
    case Family::gaussian: return "gaussian";
    case Family::laguerre: return "laguerre";
    case Family::jacobi: return "jacobi";
    case Family::jacobi_symmetric: return "jacobi-symmetric";
    case Family::antisym_squared: return "antisym-squared";
    }
    return "?";
}

Family parse_family(const std::string& name)
{
    for (Family f : {Family::gaussian, Family::laguerre, Family::jacobi, Family::jacobi_symmetric,
                     Family::antisym_squared})
        if (name == family_name(f))
            return f;
    throw UsageError("unknown family '" + name + "'");
}

BasicParams<MultiPoly> symbolic_params(Family f)
{
    BasicParams<MultiPoly> p;
    p.family = f;
    p.alpha = MultiPoly::var(Param::alpha);
    switch (f) {
    case Family::gaussian: break;
    case Family::laguerre: p.alpha1 = MultiPoly::var(Param::alpha1); break;
    case Family::jacobi:
        throw UsageError("jacobi moments are rational functions; use rational or float64 parameters");
    case Family::jacobi_symmetric:
        throw UsageError("symmetric jacobi moments are rational functions; use rational or float64 parameters");
    case Family::antisym_squared: p.alpha1 = MultiPoly(-1); break;
    }
    return p;
}

namespace {

template <class T>
constexpr bool is_field = std::is_same_v<T, Rational> || std::is_same_v<T, double>;

template <class T>
T scale(const T& x, const Rational& c)
{
    if constexpr (std::is_same_v<T, double>)
        return x * c.to_double();
    else
        return x * c;
}

template <class T>
double as_double(const T& x)
{
    if constexpr (std::is_same_v<T, double>)
        return x;
    else
        return x.to_double();
}

template <class T>
bool greater_than_minus_one(const T& x)
{
    if constexpr (std::is_same_v<T, double>)
        return std::isfinite(x) && x > -1.0;
    else
        return x > Rational(-1);
}

template <class T>
T divide(const T& num, const T& den, long p, const char* what, double magnitude)
{
    static_assert(is_field<T>, "division needs a field");
    bool zero;
    if constexpr (std::is_same_v<T, double>)
        zero = std::abs(den) <= 1e-12 * magnitude;
    else
        zero = den.is_zero();
    if (zero)
        throw SingularParameterError(std::string(what) + " denominator vanishes at p = " +
                                         std::to_string(p),
                                     p);
    return num / den;
}

// Resolved parameter values for one run.
template <class T>
struct Resolved {
    Family family;
    T a, a1, a2;
};

template <class T>
Resolved<T> resolve(const BasicParams<T>& p)
{
    Resolved<T> r{p.family, p.alpha, T(0), T(0)};
    const bool numeric = !std::is_same_v<T, MultiPoly>;
    auto need = [&](const std::optional<T>& v, const char* name) -> T {
        if (!v)
            throw UsageError(std::string(family_name(p.family)) + " requires " + name);
        return *v;
    };
    if constexpr (!std::is_same_v<T, MultiPoly>) {
        if (!greater_than_minus_one(p.alpha))
            throw UsageError("alpha must exceed -1");
    }
    switch (p.family) {
    case Family::gaussian:
        if (p.alpha1 || p.alpha2)
            throw UsageError("gaussian takes no alpha1/alpha2");
        break;
    case Family::laguerre:
        if (p.alpha2)
            throw UsageError("laguerre takes no alpha2");
        r.a1 = need(p.alpha1, "alpha1");
        if constexpr (!std::is_same_v<T, MultiPoly>) {
            // alpha1 = -1 is the admissible antisymmetric limit
            if (!greater_than_minus_one(r.a1) && !(r.a1 == T(-1)))
                throw UsageError("alpha1 must exceed -1");
        }
        break;
    case Family::antisym_squared:
        if (p.alpha2 || (p.alpha1 && !(*p.alpha1 == T(-1))))
            throw UsageError("antisym-squared fixes alpha1 = -1 and takes no alpha2");
        r.a1 = T(-1);
        break;
    case Family::jacobi:
        if constexpr (!is_field<T>)
            throw UsageError("jacobi moments are rational functions; use rational or float64 parameters");
        r.a1 = need(p.alpha1, "alpha1");
        r.a2 = need(p.alpha2, "alpha2");
        if constexpr (!std::is_same_v<T, MultiPoly>) {
            if (!greater_than_minus_one(r.a1) || !greater_than_minus_one(r.a2))
                throw UsageError("alpha1 and alpha2 must exceed -1");
        }
        break;
    case Family::jacobi_symmetric:
        if constexpr (!is_field<T>)
            throw UsageError("symmetric jacobi moments are rational functions; use rational or float64 parameters");
        r.a1 = need(p.alpha1, "alpha1");
        if (p.alpha2 && !(*p.alpha2 == r.a1))
            throw UsageError("symmetric jacobi needs alpha2 = alpha1");
        r.a2 = r.a1;
        if constexpr (!std::is_same_v<T, MultiPoly>) {
            if (!greater_than_minus_one(r.a1))
                throw UsageError("alpha1 must exceed -1");
        }
        break;
    }
    (void)numeric;
    return r;
}

template <class T>
double magnitude(const Resolved<T>& r, long p)
{
    if constexpr (std::is_same_v<T, MultiPoly>)
        return 1.0;
    else
        return std::abs(double(p)) + 1.0 + std::abs(as_double(r.a1)) + std::abs(as_double(r.a2)) +
               2.0 * std::abs(as_double(r.a));
}

void require_order(int order, const char* what)
{
    if (order < 0)
        throw UsageError(std::string(what) + " must be non-negative");
}

template <class T>
std::vector<T> gaussian_m0(const T& a, int order)
{
    std::vector<T> m(order + 1, T(0));
    m[0] = T(1);
    for (int p = 0; p + 2 <= order; p += 2) {
        T sum(0);
        for (int s = 0; 2 * s <= p; ++s)
            sum += m[p - 2 * s] * m[2 * s];
        m[p + 2] = T(p + 1) * m[p] + a * sum;
    }
    return m;
}

template <class T>
std::vector<T> laguerre_m0(const T& a, const T& a1, int order)
{
    std::vector<T> m(order + 1, T(0));
    m[0] = T(1);
    for (int p = 0; p + 1 <= order; ++p) {
        T sum(0);
        for (int s = 0; s <= p - 1; ++s)
            sum += m[s] * m[p - s];
        m[p + 1] = (T(p + 1) + a1 + a) * m[p] + a * sum;
    }
    return m;
}

template <class T>
std::vector<T> jacobi_m0(const Resolved<T>& r, int order)
{
    std::vector<T> m(order + 1, T(0));
    m[0] = T(1);
    for (int p = 1; p <= order; ++p) {
        T lin(0), quad(0);
        for (int s = 1; s <= p - 1; ++s) {
            lin += m[s];
            quad += m[s] * m[p - s];
        }
        T num = (T(1) + r.a1 + r.a) - r.a2 * lin - r.a * quad;
        T den = T(p + 1) + r.a1 + r.a2 + T(2) * r.a;
        m[p] = divide(num, den, p, "jacobi moment", magnitude(r, p));
    }
    return m;
}

// Even moments on (-1, 1); odd moments vanish.
template <class T>
std::vector<T> jacobi_symmetric_m0(const Resolved<T>& r, int order)
{
    std::vector<T> m(order + 1, T(0));
    m[0] = T(1);
    const T& a = r.a1;
    for (int p = 1; 2 * p <= order; ++p) {
        T lin(0), quad(0);
        for (int s = 1; s <= p - 1; ++s) {
            lin += m[2 * s];
            quad += m[2 * s] * m[2 * (p - s)];
        }
        T num = (T(1) + r.a) - T(2) * a * lin - r.a * quad;
        T den = T(2 * p + 1) + T(2) * r.a + T(2) * a;
        m[2 * p] = divide(num, den, 2 * p, "symmetric jacobi moment", magnitude(r, 2 * p));
    }
    return m;
}

template <class T>
void require_size(const std::vector<T>& v, size_t n, const char* what)
{
    if (v.size() < n)
        throw UsageError(std::string(what) + " computed to insufficient order");
}

} // namespace

template <class T>
BasicMomentSet<T> moments0(const BasicParams<T>& params, int order)
{
    require_order(order, "order");
    Resolved<T> r = resolve(params);
    BasicMomentSet<T> out;
    out.params = params;
    out.order = order;
    switch (r.family) {
    case Family::gaussian: out.m0 = gaussian_m0(r.a, order); break;
    case Family::laguerre:
    case Family::antisym_squared: out.m0 = laguerre_m0(r.a, r.a1, order); break;
    case Family::jacobi:
        if constexpr (is_field<T>)
            out.m0 = jacobi_m0(r, order);
        break;
    case Family::jacobi_symmetric:
        if constexpr (is_field<T>)
            out.m0 = jacobi_symmetric_m0(r, order);
        break;
    }
    return out;
}

template <class T>
std::vector<T> covariance_diagonal(const BasicParams<T>& params, int pmax, const BasicMomentSet<T>& m0)
{
    require_order(pmax, "pmax");
    Resolved<T> r = resolve(params);
    const auto& m = m0.m0;
    require_size(m, pmax + 1, "m0");
    std::vector<T> d(pmax + 1, T(0));
    switch (r.family) {
    case Family::gaussian:
        for (int p = 0; 2 * p + 2 <= pmax; ++p) {
            T sum(0);
            for (int l = 1; l <= p; ++l)
                sum += d[2 * l] * m[2 * (p - l)];
            d[2 * p + 2] = T(p + 1) * d[2 * p] + T((2 * p + 1) * (p + 1)) * m[2 * p] + T(2) * r.a * sum;
        }
        break;
    case Family::laguerre:
    case Family::antisym_squared:
        for (int p = 0; p + 1 <= pmax; ++p) {
            T sum(0);
            for (int s = 1; s <= p - 1; ++s)
                sum += d[s] * m[p - s];
            T lead = scale(T(p + 2) + T(2) * r.a1 + T(4) * r.a, Rational(1, 2));
            d[p + 1] = lead * d[p] + T(static_cast<long>(p) * (p + 1) / 2) * m[p] + T(2) * r.a * sum;
        }
        break;
    case Family::jacobi:
        if constexpr (is_field<T>) {
            for (int p = 1; p <= pmax; ++p) {
                T s1(0), s2(0), s3(0);
                for (int s = 1; s <= p - 1; ++s) {
                    s1 += T(s) * m[s];
                    s2 += d[s];
                    s3 += d[s] * m[p - s];
                }
                T num = s1 - T(static_cast<long>(p - 1) * p / 2) * m[p] - r.a2 * s2 - T(2) * r.a * s3;
                T den = r.a1 + r.a2 + T(2) * r.a + T(1) + scale(T(p), Rational(1, 2));
                d[p] = divide(num, den, p, "jacobi covariance diagonal", magnitude(r, p));
            }
        }
        break;
    case Family::jacobi_symmetric:
        throw UsageError("no covariance recurrence for the symmetric jacobi family");
    }
    return d;
}

template <class T>
BasicCovTable<T> covariances(const BasicParams<T>& params, int pmax, int qmax, const BasicMomentSet<T>& m0)
{
    require_order(pmax, "pmax");
    require_order(qmax, "qmax");
    Resolved<T> r = resolve(params);
    const auto& m = m0.m0;
    require_size(m, pmax + qmax + 1, "m0");
    BasicCovTable<T> out;
    out.params = params;
    out.pmax = pmax;
    out.qmax = qmax;
    auto& mu = out.mu;
    mu.assign(pmax + 1, std::vector<T>(qmax + 1, T(0)));
    switch (r.family) {
    case Family::gaussian:
        for (int q = 1; q <= qmax; ++q)
            for (int p = 1; p <= pmax; ++p) {
                T sum(0);
                for (int s = 0; 2 * s <= p - 2; ++s)
                    sum += m[2 * s] * mu[p - 2 - 2 * s][q];
                T prev = p >= 2 ? T(p - 1) * mu[p - 2][q] : T(0);
                mu[p][q] = prev + T(q) * m[p + q - 2] + T(2) * r.a * sum;
            }
        break;
    case Family::laguerre:
    case Family::antisym_squared:
        for (int q = 1; q <= qmax; ++q)
            for (int p = 0; p + 1 <= pmax; ++p) {
                T sum(0);
                for (int s = 0; s <= p - 1; ++s)
                    sum += m[s] * mu[p - s][q];
                mu[p + 1][q] = (T(p + 1) + r.a1) * mu[p][q] + T(q) * m[p + q] + T(2) * r.a * sum;
            }
        break;
    case Family::jacobi:
        if constexpr (is_field<T>) {
            for (int q = 1; q <= qmax; ++q)
                for (int p = 1; p <= pmax; ++p) {
                    T s1(0), s2(0);
                    for (int s = 1; s <= p - 1; ++s) {
                        s1 += mu[s][q];
                        s2 += m[s] * mu[p - s][q];
                    }
                    T num = T(q) * (m[q] - m[p + q]) - r.a2 * s1 - T(2) * r.a * s2;
                    T den = T(p + 1) + r.a1 + r.a2 + T(2) * r.a;
                    mu[p][q] = divide(num, den, p, "jacobi covariance", magnitude(r, p));
                }
        }
        break;
    case Family::jacobi_symmetric:
        throw UsageError("no covariance recurrence for the symmetric jacobi family");
    }
    out.mu_diag = covariance_diagonal(params, pmax + qmax, m0);
    return out;
}

template <class T>
BasicMomentSet<T> moments1(const BasicParams<T>& params, int order, const BasicMomentSet<T>& m0,
                           const std::vector<T>& mu_diag)
{
    require_order(order, "order");
    Resolved<T> r = resolve(params);
    const auto& m = m0.m0;
    require_size(m, order + 1, "m0");
    require_size(mu_diag, order + 1, "covariance diagonal");
    std::vector<T> c(order + 1, T(0));
    switch (r.family) {
    case Family::gaussian:
        for (int p = 0; 2 * p + 2 <= order; ++p) {
            T sum(0);
            for (int s = 0; s <= p - 1; ++s)
                sum += m[2 * s] * c[2 * (p - s)];
            c[2 * p + 2] = -(T(2 * p + 1) * r.a * m[2 * p]) + T(2 * p + 1) * c[2 * p] + r.a * mu_diag[2 * p] +
                           T(2) * r.a * sum;
        }
        break;
    case Family::laguerre:
    case Family::antisym_squared:
        for (int p = 0; p + 1 <= order; ++p) {
            T sum(0);
            for (int l = 1; l <= p - 1; ++l)
                sum += c[l] * m[p - l];
            c[p + 1] = -(T(p + 1) * r.a * m[p]) + (T(p + 1) + r.a1 + T(2) * r.a) * c[p] + r.a * mu_diag[p] +
                       T(2) * r.a * sum;
        }
        break;
    case Family::jacobi:
        if constexpr (is_field<T>) {
            for (int p = 1; p <= order; ++p) {
                T s1(0), s2(0);
                for (int s = 1; s <= p - 1; ++s) {
                    s1 += c[s] * m[p - s];
                    s2 += c[s];
                }
                T num = r.a * T(p + 1) * m[p] - r.a * (mu_diag[p] + T(1)) - T(2) * r.a * s1 - r.a2 * s2;
                T den = T(p + 1) + r.a1 + r.a2 + T(2) * r.a;
                c[p] = divide(num, den, p, "jacobi correction", magnitude(r, p));
            }
        }
        break;
    case Family::jacobi_symmetric:
        throw UsageError("no 1/N correction recurrence for the symmetric jacobi family");
    }
    BasicMomentSet<T> out = m0;
    out.order = order;
    out.m0.resize(order + 1);
    out.m1 = std::move(c);
    return out;
}

template <class T>
std::vector<T> jacobi_moments_alt(int order, const BasicParams<T>& params)
{
    require_order(order, "order");
    Resolved<T> r = resolve(params);
    std::vector<T> m(order + 1, T(0));
    m[0] = T(1);
    if constexpr (is_field<T>) {
        if (r.family == Family::jacobi) {
            for (int p = 0; p + 1 <= order; ++p) {
                T s1(0), s2(0);
                for (int s = 1; s <= p; ++s)
                    s1 += m[s] * m[p + 1 - s];
                for (int s = 0; s <= p; ++s)
                    s2 += m[s] * m[p - s];
                T num = (T(p + 1) + r.a1) * m[p] - r.a * s1 + r.a * s2;
                T den = T(p + 2) + r.a1 + r.a2 + T(2) * r.a;
                m[p + 1] = divide(num, den, p + 1, "jacobi moment", magnitude(r, p + 1));
            }
            return m;
        }
        if (r.family == Family::jacobi_symmetric) {
            const T& a = r.a1;
            for (int p = 0; 2 * p + 2 <= order; ++p) {
                T s1(0), s2(0);
                for (int s = 1; s <= p; ++s)
                    s1 += m[2 * s] * m[2 * (p + 1 - s)];
                for (int s = 0; s <= p; ++s)
                    s2 += m[2 * s] * m[2 * (p - s)];
                T num = T(2 * p + 1) * m[2 * p] - r.a * s1 + r.a * s2;
                T den = T(2 * p + 3) + T(2) * r.a + T(2) * a;
                m[2 * p + 2] = divide(num, den, 2 * p + 2, "symmetric jacobi moment", magnitude(r, 2 * p + 2));
            }
            return m;
        }
    }
    throw UsageError("jacobi_moments_alt needs the jacobi or jacobi-symmetric family");
}

template <class T>
std::vector<T> gaussian_reduced_moments(int n, const T& alpha)
{
    require_order(n, "n");
    std::vector<T> t(n + 1, T(0));
    if (n >= 1)
        t[1] = T(1);
    const T c = alpha * (T(1) + alpha);
    for (int k = 1; k + 1 <= n; ++k) {
        T sum(0);
        for (int s = 1; s <= k - 1; ++s)
            sum += t[k - s] * t[s];
        t[k + 1] = (T(2 * k + 1) + T(2) * alpha) * t[k] + c * sum;
    }
    return t;
}

template <class T>
std::vector<T> gaussian_moments_alt(int order, const T& alpha)
{
    require_order(order, "order");
    std::vector<T> t = gaussian_reduced_moments(order / 2, alpha);
    std::vector<T> m(order + 1, T(0));
    m[0] = T(1);
    for (int n = 1; 2 * n <= order; ++n)
        m[2 * n] = (T(1) + alpha) * t[n];
    return m;
}

std::vector<MultiPoly> gaussian_moments_alt(int order)
{
    return gaussian_moments_alt(order, MultiPoly::var(Param::alpha));
}

std::vector<MultiPoly> dos_moments(int order)
{
    require_order(order, "order");
    auto params = symbolic_params(Family::antisym_squared);
    auto m = moments0(params, order).m0;
    const MultiPoly a = MultiPoly::var(Param::alpha);
    std::vector<MultiPoly> w;
    w.reserve(m.size());
    for (const auto& v : m)
        w.push_back((a * v).derivative(Param::alpha));
    return w;
}

// ---- Scalar front ends ----

Ring ring_of(const EnsembleParams& params)
{
    Ring r = ring_of(params.alpha);
    for (const auto* o : {&params.alpha1, &params.alpha2})
        if (*o && ring_of(**o) != r)
            throw UsageError("parameters mix rings");
    return r;
}

template <class T>
BasicParams<T> typed(const EnsembleParams& p)
{
    auto get = [](const Scalar& s) -> T {
        if (!std::holds_alternative<T>(s))
            throw UsageError("parameters mix rings");
        return std::get<T>(s);
    };
    BasicParams<T> out;
    out.family = p.family;
    out.alpha = get(p.alpha);
    if (p.alpha1)
        out.alpha1 = get(*p.alpha1);
    if (p.alpha2)
        out.alpha2 = get(*p.alpha2);
    return out;
}

template <class T>
EnsembleParams erase(const BasicParams<T>& p)
{
    EnsembleParams out;
    out.family = p.family;
    out.alpha = p.alpha;
    if (p.alpha1)
        out.alpha1 = Scalar(*p.alpha1);
    if (p.alpha2)
        out.alpha2 = Scalar(*p.alpha2);
    return out;
}

namespace {

template <class T>
std::vector<Scalar> erase_vec(const std::vector<T>& v)
{
    return std::vector<Scalar>(v.begin(), v.end());
}

template <class T>
std::vector<T> typed_vec(const std::vector<Scalar>& v)
{
    std::vector<T> out;
    out.reserve(v.size());
    for (const auto& s : v) {
        if (!std::holds_alternative<T>(s))
            throw UsageError("ring mismatch in moment table");
        out.push_back(std::get<T>(s));
    }
    return out;
}

template <class F>
decltype(auto) dispatch(Ring r, F&& f)
{
    switch (r) {
    case Ring::rational: return f(Rational{});
    case Ring::poly: return f(MultiPoly{});
    case Ring::float64: return f(0.0);
    }
    throw UsageError("unknown ring");
}

} // namespace

template <class T>
MomentSet erase(const BasicMomentSet<T>& m)
{
    MomentSet out;
    out.params = erase(m.params);
    out.order = m.order;
    out.m0 = erase_vec(m.m0);
    if (m.m1)
        out.m1 = erase_vec(*m.m1);
    return out;
}

template <class T>
BasicMomentSet<T> typed(const MomentSet& m)
{
    BasicMomentSet<T> out;
    out.params = typed<T>(m.params);
    out.order = m.order;
    out.m0 = typed_vec<T>(m.m0);
    if (m.m1)
        out.m1 = typed_vec<T>(*m.m1);
    return out;
}

MomentSet moments0(const EnsembleParams& params, int order)
{
    return dispatch(ring_of(params), [&](auto tag) {
        using T = decltype(tag);
        return erase(moments0(typed<T>(params), order));
    });
}

CovTable covariances(const EnsembleParams& params, int pmax, int qmax, const MomentSet& m0)
{
    return dispatch(ring_of(params), [&](auto tag) {
        using T = decltype(tag);
        auto t = covariances(typed<T>(params), pmax, qmax, typed<T>(m0));
        CovTable out;
        out.params = params;
        out.pmax = pmax;
        out.qmax = qmax;
        for (const auto& row : t.mu)
            out.mu.push_back(erase_vec(row));
        out.mu_diag = erase_vec(t.mu_diag);
        return out;
    });
}

std::vector<Scalar> covariance_diagonal(const EnsembleParams& params, int pmax, const MomentSet& m0)
{
    return dispatch(ring_of(params), [&](auto tag) {
        using T = decltype(tag);
        return erase_vec(covariance_diagonal(typed<T>(params), pmax, typed<T>(m0)));
    });
}

MomentSet moments1(const EnsembleParams& params, int order, const MomentSet& m0,
                   const std::vector<Scalar>& mu_diag)
{
    return dispatch(ring_of(params), [&](auto tag) {
        using T = decltype(tag);
        return erase(moments1(typed<T>(params), order, typed<T>(m0), typed_vec<T>(mu_diag)));
    });
}

std::vector<Scalar> jacobi_moments_alt(int order, const EnsembleParams& params)
{
    return dispatch(ring_of(params), [&](auto tag) {
        using T = decltype(tag);
        return erase_vec(jacobi_moments_alt(order, typed<T>(params)));
    });
}

#define HTRMT_INSTANTIATE(T)                                                                          \
    template BasicMomentSet<T> moments0(const BasicParams<T>&, int);                                  \
    template BasicCovTable<T> covariances(const BasicParams<T>&, int, int, const BasicMomentSet<T>&); \
    template std::vector<T> covariance_diagonal(const BasicParams<T>&, int, const BasicMomentSet<T>&); \
    template BasicMomentSet<T> moments1(const BasicParams<T>&, int, const BasicMomentSet<T>&,         \
                                        const std::vector<T>&);                                       \
    template std::vector<T> jacobi_moments_alt(int, const BasicParams<T>&);                           \
    template std::vector<T> gaussian_moments_alt(int, const T&);                                      \
    template std::vector<T> gaussian_reduced_moments(int, const T&);                                  \
    template BasicParams<T> typed(const EnsembleParams&);                                             \
    template EnsembleParams erase(const BasicParams<T>&);                                             \
    template MomentSet erase(const BasicMomentSet<T>&);                                               \
    template BasicMomentSet<T> typed(const MomentSet&);

HTRMT_INSTANTIATE(Rational)
HTRMT_INSTANTIATE(MultiPoly)
HTRMT_INSTANTIATE(double)

} // namespace htrmt
