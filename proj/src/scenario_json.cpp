#include "eqalloc/scenario_json.hpp"

#include "eqalloc/errors.hpp"

#include <string>

namespace eqalloc {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw ValidationError(where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object() || !obj.contains(key))
        fail(where, std::string("missing field '") + key + "'");
    return obj.at(key);
}

Rational rational_of(const json& v, const std::string& where)
{
    if (v.is_string())
        return parse_rational(v.get<std::string>());
    if (v.is_number_integer())
        return Rational(v.dump());
    if (v.is_number_float())
        return parse_rational(v.dump());
    fail(where, "expected a rational number");
}

double real_of(const json& v, const std::string& where)
{
    if (v.is_number())
        return v.get<double>();
    if (v.is_string())
        return parse_rational(v.get<std::string>()).get_d();
    fail(where, "expected a number");
}

UtilityFunction utility_of(const json& u, const std::string& where)
{
    const std::string kind = field(u, "kind", where).is_string() ? u.at("kind").get<std::string>() : "";
    if (kind == "table" || kind == "tabulated") {
        const json& values = field(u, "values", where);
        if (!values.is_array())
            fail(where + ".values", "expected an array");
        std::vector<Rational> table;
        for (std::size_t x = 0; x < values.size(); ++x)
            table.push_back(rational_of(values[x], where + ".values[" + std::to_string(x) + "]"));
        return UtilityFunction::tabulated(table);
    }
    if (kind == "linear")
        return UtilityFunction::linear(rational_of(field(u, "rate", where), where + ".rate"));
    if (kind == "power")
        return UtilityFunction::power(real_of(field(u, "c", where), where + ".c"),
                                      real_of(field(u, "a", where), where + ".a"));
    if (kind == "log")
        return UtilityFunction::log();
    fail(where + ".kind", "unknown utility kind '" + kind + "'");
}

json rational_json(const Rational& r)
{
    return format_rational(r);
}

json utility_json(const UtilityFunction& f)
{
    using Kind = UtilityFunction::Kind;
    switch (f.kind()) {
    case Kind::tabulated: {
        json values = json::array();
        for (const Rational& v : f.table())
            values.push_back(rational_json(v));
        return {{"kind", "table"}, {"values", values}};
    }
    case Kind::linear:
        return {{"kind", "linear"}, {"rate", rational_json(f.rate())}};
    case Kind::power:
        return {{"kind", "power"}, {"c", f.coefficient()}, {"a", f.exponent()}};
    case Kind::log:
        return {{"kind", "log"}};
    }
    return {};
}

} // namespace

Scenario scenario_from_json(const json& doc)
{
    if (!doc.is_object())
        fail("scenario", "expected a JSON object");
    Scenario s;

    const json& types = field(doc, "types", "scenario");
    if (!types.is_array() || types.empty())
        fail("types", "expected a non-empty array");
    for (std::size_t j = 0; j < types.size(); ++j) {
        const std::string where = "types[" + std::to_string(j) + "]";
        const json& count = field(types[j], "count", where);
        if (!count.is_number_integer() || count.get<long long>() < 0)
            fail(where + ".count", "expected a non-negative integer");
        s.counts.push_back(count.get<std::size_t>());
        s.type_names.push_back(types[j].contains("name") ? types[j].at("name").get<std::string>()
                               : types.size() == 1   ? std::string("item")
                                                     : "T" + std::to_string(j + 1));
    }
    const std::size_t k = s.counts.size();

    const json& agents = field(doc, "agents", "scenario");
    if (!agents.is_array() || agents.empty())
        fail("agents", "expected a non-empty array");
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const std::string where = "agents[" + std::to_string(i) + "]";
        const json& a = agents[i];
        const std::string name = a.is_object() && a.contains("name") && a.at("name").is_string()
                                     ? a.at("name").get<std::string>()
                                     : "A" + std::to_string(i + 1);
        s.agent_names.push_back(name);

        const json& w = field(a, "weight", where);
        const json& u = field(a, "utility", where);
        std::vector<Rational> weights;
        std::vector<UtilityFunction> utilities;
        try {
            if (w.is_array()) {
                if (w.size() != k)
                    fail(where + ".weight", "expected " + std::to_string(k) + " entries");
                for (std::size_t j = 0; j < k; ++j)
                    weights.push_back(rational_of(w[j], where + ".weight"));
            } else {
                weights.assign(k, rational_of(w, where + ".weight"));
            }
            if (u.is_array()) {
                if (u.size() != k)
                    fail(where + ".utility", "expected " + std::to_string(k) + " entries");
                for (std::size_t j = 0; j < k; ++j)
                    utilities.push_back(utility_of(u[j], where + ".utility[" + std::to_string(j) + "]"));
            } else if (k == 1) {
                utilities.push_back(utility_of(u, where + ".utility"));
            } else {
                fail(where + ".utility", "expected " + std::to_string(k) + " entries");
            }
        } catch (const ValidationError& e) {
            const std::string msg = e.what();
            if (msg.find(where) != std::string::npos)
                throw;
            throw ValidationError(msg + " for agent " + name);
        }
        s.weights.push_back(std::move(weights));
        s.utilities.push_back(std::move(utilities));
    }

    if (doc.contains("epsilon")) {
        const double eps = real_of(doc.at("epsilon"), "epsilon");
        if (!(eps > 0.0))
            fail("epsilon", "must be positive");
        s.epsilon = eps;
    }
    s.validate();
    return s;
}

Scenario parse_scenario(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
    try {
        return scenario_from_json(doc);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed scenario: ") + e.what());
    }
}

json scenario_to_json(const Scenario& s)
{
    json types = json::array();
    for (std::size_t j = 0; j < s.types(); ++j)
        types.push_back({{"name", s.type_names[j]}, {"count", s.counts[j]}});
    json agents = json::array();
    for (std::size_t i = 0; i < s.agents(); ++i) {
        json a = {{"name", s.agent_names[i]}};
        if (s.types() == 1) {
            a["weight"] = rational_json(s.weight(i));
            a["utility"] = utility_json(s.utility(i));
        } else {
            json w = json::array();
            json u = json::array();
            for (std::size_t j = 0; j < s.types(); ++j) {
                w.push_back(rational_json(s.weight(i, j)));
                u.push_back(utility_json(s.utility(i, j)));
            }
            a["weight"] = w;
            a["utility"] = u;
        }
        agents.push_back(a);
    }
    json doc = {{"types", types}, {"agents", agents}};
    if (s.epsilon != kDefaultEpsilon)
        doc["epsilon"] = s.epsilon;
    return doc;
}

} // namespace eqalloc
