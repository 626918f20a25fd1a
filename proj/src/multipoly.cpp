#include "htrmt/multipoly.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace htrmt {

const char* param_name(Param p)
{
    switch (p) {
    case Param::alpha: return "alpha";
    case Param::alpha1: return "alpha1";
    case Param::alpha2: return "alpha2";
    }
    return "?";
}

MultiPoly::MultiPoly(const Rational& c)
{
    if (!c.is_zero())
        terms_.emplace(Exponents{0, 0, 0}, c);
}

MultiPoly MultiPoly::var(Param p)
{
    Exponents e{0, 0, 0};
    e[static_cast<int>(p)] = 1;
    return monomial(e, Rational(1));
}

MultiPoly MultiPoly::monomial(const Exponents& e, const Rational& c)
{
    MultiPoly m;
    if (!c.is_zero())
        m.terms_.emplace(e, c);
    return m;
}

bool MultiPoly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{0, 0, 0});
}

unsigned MultiPoly::total_degree() const
{
    unsigned d = 0;
    for (const auto& [e, c] : terms_)
        d = std::max(d, e[0] + e[1] + e[2]);
    return d;
}

unsigned MultiPoly::degree_in(Param p) const
{
    unsigned d = 0;
    for (const auto& [e, c] : terms_)
        d = std::max(d, e[static_cast<int>(p)]);
    return d;
}

Rational MultiPoly::coeff(const Exponents& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c)
{
    if (c.is_zero())
        return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

Rational MultiPoly::eval(const Point& at) const
{
    // Group by the exponents of alpha1/alpha2, then Horner over alpha.
    std::map<std::pair<unsigned, unsigned>, std::vector<std::pair<unsigned, const Rational*>>> groups;
    for (const auto& [e, c] : terms_)
        groups[{e[1], e[2]}].push_back({e[0], &c});
    Rational total(0);
    for (auto& [k, list] : groups) {
        std::sort(list.begin(), list.end(), [](auto& x, auto& y) { return x.first > y.first; });
        Rational h(0);
        unsigned deg = list.front().first;
        size_t idx = 0;
        for (long d = deg; d >= 0; --d) {
            h *= at.alpha;
            if (idx < list.size() && list[idx].first == static_cast<unsigned>(d))
                h += *list[idx++].second;
        }
        total += h * at.alpha1.pow(k.first) * at.alpha2.pow(k.second);
    }
    return total;
}

double MultiPoly::eval(double a, double a1, double a2) const
{
    double total = 0.0;
    for (const auto& [e, c] : terms_)
        total += c.to_double() * std::pow(a, e[0]) * std::pow(a1, e[1]) * std::pow(a2, e[2]);
    return total;
}

MultiPoly MultiPoly::derivative(Param p) const
{
    const int i = static_cast<int>(p);
    MultiPoly out;
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0)
            continue;
        Exponents f = e;
        f[i] -= 1;
        out.add_term(f, c * Rational(static_cast<long>(e[i])));
    }
    return out;
}

MultiPoly MultiPoly::substitute(Param p, const Rational& value) const
{
    const int i = static_cast<int>(p);
    MultiPoly out;
    for (const auto& [e, c] : terms_) {
        Exponents f = e;
        f[i] = 0;
        out.add_term(f, c * value.pow(e[i]));
    }
    return out;
}

std::string MultiPoly::str() const
{
    if (terms_.empty())
        return "0";
    std::vector<std::pair<Exponents, Rational>> list(terms_.begin(), terms_.end());
    std::stable_sort(list.begin(), list.end(), [](auto& x, auto& y) {
        unsigned dx = x.first[0] + x.first[1] + x.first[2];
        unsigned dy = y.first[0] + y.first[1] + y.first[2];
        if (dx != dy)
            return dx < dy;
        return x.first > y.first;
    });
    std::string s;
    bool first = true;
    for (const auto& [e, c] : list) {
        Rational mag = c.sign() < 0 ? -c : c;
        if (first)
            s += c.sign() < 0 ? "-" : "";
        else
            s += c.sign() < 0 ? " - " : " + ";
        first = false;
        bool constant = e == Exponents{0, 0, 0};
        std::string factors;
        for (int i = 0; i < 3; ++i) {
            if (e[i] == 0)
                continue;
            if (!factors.empty())
                factors += "*";
            factors += param_name(static_cast<Param>(i));
            if (e[i] > 1)
                factors += "^" + std::to_string(e[i]);
        }
        if (constant)
            s += mag.pretty();
        else if (mag == Rational(1))
            s += factors;
        else
            s += mag.pretty() + "*" + factors;
    }
    return s;
}

MultiPoly MultiPoly::operator-() const
{
    MultiPoly out = *this;
    for (auto& [e, c] : out.terms_)
        c = -c;
    return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o)
{
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o)
{
    for (const auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b)
{
    MultiPoly out;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o)
{
    *this = *this * o;
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_)
        v *= c;
    return *this;
}

Rational poly_eval(const MultiPoly& p, const Point& at)
{
    return p.eval(at);
}

MultiPoly poly_derivative(const MultiPoly& p, Param var)
{
    return p.derivative(var);
}

} // namespace htrmt
