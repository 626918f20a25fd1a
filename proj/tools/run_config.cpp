#include "run_config.hpp"

#include "htrmt/errors.hpp"
#include "htrmt/rational.hpp"

#include <cerrno>
#include <cstdlib>

namespace htrmt::cli {

namespace {

void put_opt(nlohmann::json& j, const char* key, const std::optional<std::string>& v)
{
    if (v)
        j[key] = *v;
}

std::optional<std::string> get_opt(const nlohmann::json& j, const char* key)
{
    if (j.contains(key))
        return j.at(key).get<std::string>();
    return std::nullopt;
}

} // namespace

nlohmann::json to_json(const RunConfig& c)
{
    nlohmann::json j = {{"subcommand", c.subcommand},
                        {"family", c.family},
                        {"model", c.model},
                        {"mode", c.mode},
                        {"format", c.format},
                        {"correction", c.correction},
                        {"diagonal", c.diagonal},
                        {"check_reflection", c.check_reflection},
                        {"order", c.order},
                        {"pmax", c.pmax},
                        {"qmax", c.qmax},
                        {"lo", c.lo},
                        {"hi", c.hi},
                        {"points", c.points},
                        {"log_grid", c.log_grid},
                        {"bins", c.bins},
                        {"size", c.size},
                        {"trials", c.trials},
                        {"seed", c.seed},
                        {"side", c.side},
                        {"quick", c.quick},
                        {"criteria", c.criteria}};
    put_opt(j, "alpha", c.alpha);
    put_opt(j, "alpha1", c.alpha1);
    put_opt(j, "alpha2", c.alpha2);
    put_opt(j, "kappa", c.kappa);
    return j;
}

RunConfig run_config_from_json(const nlohmann::json& j)
{
    RunConfig c;
    try {
        c.subcommand = j.at("subcommand").get<std::string>();
        c.family = j.at("family").get<std::string>();
        c.model = j.at("model").get<std::string>();
        c.alpha = get_opt(j, "alpha");
        c.alpha1 = get_opt(j, "alpha1");
        c.alpha2 = get_opt(j, "alpha2");
        c.kappa = get_opt(j, "kappa");
        c.mode = j.at("mode").get<std::string>();
        c.format = j.at("format").get<std::string>();
        c.correction = j.at("correction").get<bool>();
        c.diagonal = j.at("diagonal").get<bool>();
        c.check_reflection = j.at("check_reflection").get<bool>();
        c.order = j.at("order").get<int>();
        c.pmax = j.at("pmax").get<int>();
        c.qmax = j.at("qmax").get<int>();
        c.lo = j.at("lo").get<double>();
        c.hi = j.at("hi").get<double>();
        c.points = j.at("points").get<int>();
        c.log_grid = j.at("log_grid").get<bool>();
        c.bins = j.at("bins").get<int>();
        c.size = j.at("size").get<long>();
        c.trials = j.at("trials").get<long>();
        c.seed = j.at("seed").get<std::uint64_t>();
        c.side = j.at("side").get<std::string>();
        c.quick = j.at("quick").get<bool>();
        c.criteria = j.at("criteria").get<std::vector<int>>();
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed run configuration: ") + e.what());
    }
    return c;
}

RunConfig run_config_from_header(const std::string& first_line)
{
    if (first_line.rfind("# ", 0) != 0)
        throw UsageError("artifact does not start with a '# ' header line");
    nlohmann::json head;
    try {
        head = nlohmann::json::parse(first_line.substr(2));
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("header is not JSON: ") + e.what());
    }
    if (!head.contains("config"))
        throw UsageError("header carries no run configuration");
    return run_config_from_json(head.at("config"));
}

int default_threads()
{
    if (const char* env = std::getenv("HTRMT_THREADS")) {
        char* end = nullptr;
        errno = 0;
        const long v = std::strtol(env, &end, 10);
        if (errno == 0 && end != env && *end == '\0' && v > 0 && v <= 4096)
            return int(v);
    }
    return 1;
}

double parse_real(const std::string& text)
{
    if (text.find('/') != std::string::npos)
        return Rational::parse(text).to_double();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || errno == ERANGE)
        throw UsageError("not a number: '" + text + "'");
    return v;
}

} // namespace htrmt::cli
