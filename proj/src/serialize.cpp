#include "htrmt/serialize.hpp"

#include "htrmt/errors.hpp"

namespace htrmt {

json to_json(const Rational& r)
{
    return r.str();
}

json to_json(const MultiPoly& p)
{
    json terms = json::array();
    for (const auto& [e, c] : p.terms())
        terms.push_back({{"exponents", {e[0], e[1], e[2]}}, {"coeff", c.str()}});
    return terms;
}

json to_json(const Scalar& s)
{
    switch (ring_of(s)) {
    case Ring::rational: return to_json(std::get<Rational>(s));
    case Ring::poly: return to_json(std::get<MultiPoly>(s));
    case Ring::float64: return std::get<double>(s);
    }
    return nullptr;
}

Rational rational_from_json(const json& j)
{
    if (!j.is_string())
        throw UsageError("rational must be a \"num/den\" string");
    return Rational::parse(j.get<std::string>());
}

MultiPoly multipoly_from_json(const json& j)
{
    if (!j.is_array())
        throw UsageError("polynomial must be an array of terms");
    MultiPoly p;
    for (const auto& t : j) {
        const auto& e = t.at("exponents");
        if (!e.is_array() || e.size() != 3)
            throw UsageError("term exponents must have three entries");
        p += MultiPoly::monomial({e[0].get<unsigned>(), e[1].get<unsigned>(), e[2].get<unsigned>()},
                                 rational_from_json(t.at("coeff")));
    }
    return p;
}

Scalar scalar_from_json(const json& j)
{
    if (j.is_string())
        return rational_from_json(j);
    if (j.is_array())
        return multipoly_from_json(j);
    if (j.is_number())
        return j.get<double>();
    throw UsageError("unrecognised scalar encoding");
}

json to_json(const EnsembleParams& p)
{
    json j = {{"family", family_name(p.family)}, {"ring", ring_name(ring_of(p.alpha))}, {"alpha", to_json(p.alpha)}};
    if (p.alpha1)
        j["alpha1"] = to_json(*p.alpha1);
    if (p.alpha2)
        j["alpha2"] = to_json(*p.alpha2);
    return j;
}

EnsembleParams params_from_json(const json& j)
{
    EnsembleParams p;
    p.family = parse_family(j.at("family").get<std::string>());
    p.alpha = scalar_from_json(j.at("alpha"));
    if (j.contains("alpha1"))
        p.alpha1 = scalar_from_json(j.at("alpha1"));
    if (j.contains("alpha2"))
        p.alpha2 = scalar_from_json(j.at("alpha2"));
    return p;
}

json to_json(const MomentSet& m)
{
    json j = {{"params", to_json(m.params)}, {"order", m.order}};
    json m0 = json::array();
    for (const auto& v : m.m0)
        m0.push_back(to_json(v));
    j["m0"] = m0;
    if (m.m1) {
        json m1 = json::array();
        for (const auto& v : *m.m1)
            m1.push_back(to_json(v));
        j["m1"] = m1;
    }
    return j;
}

json to_json(const CovTable& c)
{
    json j = {{"params", to_json(c.params)}, {"pmax", c.pmax}, {"qmax", c.qmax}};
    json mu = json::array();
    for (const auto& row : c.mu) {
        json r = json::array();
        for (const auto& v : row)
            r.push_back(to_json(v));
        mu.push_back(r);
    }
    j["mu"] = mu;
    json d = json::array();
    for (const auto& v : c.mu_diag)
        d.push_back(to_json(v));
    j["mu_diag"] = d;
    return j;
}

} // namespace htrmt
