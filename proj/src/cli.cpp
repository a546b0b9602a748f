#include "eqalloc/cli.hpp"

#include "eqalloc/errors.hpp"
#include "eqalloc/oracle.hpp"
#include "eqalloc/scenario_json.hpp"
#include "eqalloc/welfare_solvers.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

namespace eqalloc::cli {

using nlohmann::json;

namespace {

json value_json(const Value& v)
{
    if (v.is_exact())
        return format_rational(v.exact());
    const double d = v.approx();
    if (!std::isfinite(d))
        return nullptr;
    return d;
}

json integer_json(const Integer& z)
{
    if (z.fits_slong_p())
        return z.get_si();
    return z.get_str();
}

json values_json(const std::vector<Value>& vs)
{
    json a = json::array();
    for (const auto& v : vs)
        a.push_back(value_json(v));
    return a;
}

json allocation_json(const Allocation& x)
{
    json a = json::array();
    for (std::size_t i = 0; i < x.agents(); ++i) {
        if (x.types() == 1) {
            a.push_back(x(i));
            continue;
        }
        json row = json::array();
        for (std::size_t j = 0; j < x.types(); ++j)
            row.push_back(x(i, j));
        a.push_back(row);
    }
    return a;
}

json pair_json(const Scenario& s, std::size_t i, std::size_t j)
{
    return {{"agents", {s.agent_names[i], s.agent_names[j]}}, {"indices", {i + 1, j + 1}}};
}

std::vector<std::size_t> parse_counts(const std::string& text)
{
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto start = item.find_first_not_of(" \t[");
        const auto stop = item.find_last_not_of(" \t]");
        if (start == std::string::npos)
            throw ValidationError("allocation entry is empty");
        const std::string token = item.substr(start, stop - start + 1);
        if (token.empty() || !std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw ValidationError("allocation entry '" + token + "' is not a non-negative integer");
        out.push_back(std::stoull(token));
    }
    return out;
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(item);
    return out;
}

std::size_t resolve_agent(const Scenario& s, const std::string& ref)
{
    for (std::size_t i = 0; i < s.agents(); ++i)
        if (s.agent_names[i] == ref)
            return i;
    if (!ref.empty() && std::all_of(ref.begin(), ref.end(), [](unsigned char c) { return std::isdigit(c); })) {
        const std::size_t idx = std::stoull(ref);
        if (idx >= 1 && idx <= s.agents())
            return idx - 1;
    }
    throw ValidationError("unknown agent '" + ref + "'");
}

struct Common {
    std::string input;
    std::string output = "json";
    std::optional<double> epsilon;
};

void add_common(CLI::App* cmd, Common& c)
{
    cmd->add_option("scenario", c.input, "Scenario JSON file (default: standard input)");
    cmd->add_option("--output", c.output, "Output format")->check(CLI::IsMember({"json", "table"}));
    cmd->add_option("--epsilon", c.epsilon, "Comparison tolerance for power and log utilities");
}

Scenario load(const Common& c, std::istream& in)
{
    std::string text;
    if (c.input.empty() || c.input == "-") {
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    } else {
        std::ifstream file(c.input);
        if (!file)
            throw ValidationError("cannot open scenario file '" + c.input + "'");
        text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
    }
    return parse_scenario(text);
}

void apply_epsilon(Scenario& s, const Common& c)
{
    if (!c.epsilon)
        return;
    if (s.is_exact())
        throw ValidationError("--epsilon applies only to power or log utilities; this scenario is exact");
    if (!(*c.epsilon > 0.0))
        throw ValidationError("--epsilon must be positive");
    s.epsilon = *c.epsilon;
}

json envelope(const std::string& command)
{
    return {{"schema", kSchema}, {"command", command}};
}

void merge(json& into, const json& from)
{
    for (const auto& [key, value] : from.items())
        into[key] = value;
}

std::string cell(const json& v)
{
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_null())
        return "-";
    if (v.is_array()) {
        std::string s;
        for (const auto& e : v)
            s += (s.empty() ? "" : " ") + cell(e);
        return s;
    }
    if (v.is_object())
        return v.dump();
    return v.dump();
}

} // namespace

json report_json(const Scenario&, const WelfareReport& r)
{
    json doc = {{"allocation", allocation_json(r.allocation)},
                {"utilities", values_json(r.utilities)},
                {"utilitarian", value_json(r.utilitarian)}};
    if (!r.ratios.empty())
        doc["ratios"] = values_json(r.ratios);
    if (r.rawlsian)
        doc["rawlsian"] = value_json(*r.rawlsian);
    if (r.twd)
        doc["twd"] = value_json(*r.twd);
    if (r.allocation.partial)
        doc["partial"] = true;
    return doc;
}

json report_json(const Scenario& s, const DeficitResult& r)
{
    return {{"psi", value_json(r.twd)},
            {"pivot", s.agent_names[r.pivot]},
            {"pivot_index", r.pivot + 1},
            {"pivot_items", r.pivot_items},
            {"allocation", allocation_json(r.allocation)},
            {"utilities", values_json(r.utilities)}};
}

json report_json(const Scenario& s, const CoinPlan& r)
{
    json transfers = json::array();
    for (const auto& y : r.transfers)
        transfers.push_back(integer_json(y));
    json ratios = json::array();
    for (const auto& q : r.final_ratios)
        ratios.push_back(format_rational(q));
    return {{"pivot", s.agent_names[r.pivot]},
            {"pivot_index", r.pivot + 1},
            {"denomination", format_rational(r.denomination)},
            {"scale", integer_json(r.scale)},
            {"coins", integer_json(r.total_coins)},
            {"transfers", transfers},
            {"final_ratios", ratios},
            {"allocation", allocation_json(r.allocation)},
            {"utilities", values_json(r.utilities)}};
}

json report_json(const Scenario&, const ShareVector& r)
{
    return {{"mu", values_json(r.mu)}};
}

std::string emit_report(const Scenario& s, const json& doc, Format format)
{
    if (format == Format::json)
        return doc.dump(2) + "\n";

    const std::size_t n = s.agents();
    std::vector<std::string> columns;
    std::vector<std::string> scalars;
    for (const auto& [key, value] : doc.items())
        if (value.is_array() && value.size() == n && key != "indices")
            columns.push_back(key);
    for (const auto& [key, value] : doc.items())
        if (std::find(columns.begin(), columns.end(), key) == columns.end())
            scalars.push_back(key);

    std::ostringstream out;
    for (const auto& key : scalars)
        out << key << ": " << cell(doc.at(key)) << "\n";
    if (columns.empty())
        return out.str();

    std::vector<std::string> header{"agent", "weight"};
    header.insert(header.end(), columns.begin(), columns.end());
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < n; ++i) {
        std::string weight;
        for (std::size_t j = 0; j < s.types(); ++j)
            weight += (j ? " " : "") + format_rational(s.weight(i, j));
        std::vector<std::string> row{s.agent_names[i], weight};
        for (const auto& key : columns)
            row.push_back(cell(doc.at(key)[i]));
        rows.push_back(std::move(row));
    }
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = header[c].size();
        for (const auto& row : rows)
            width[c] = std::max(width[c], row[c].size());
    }
    const auto line = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "  " : "") << row[c];
            if (c + 1 < row.size())
                out << std::string(width[c] - row[c].size(), ' ');
        }
        out << "\n";
    };
    line(header);
    for (const auto& row : rows)
        line(row);
    return out.str();
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Fair division of identical indivisible goods with weighted entitlements", "eqalloc"};
    app.require_subcommand(1);

    Common solve_c, check_c, psi_c, coins_c, shares_c, oracle_c, validate_c;

    std::string objective;
    std::optional<std::size_t> items;
    std::string bounds;
    CLI::App* solve = app.add_subcommand("solve", "Construct an optimal or fair allocation");
    add_common(solve, solve_c);
    solve->add_option("--objective", objective, "utilitarian, nash, rawlsian, maximin, leximin, wefx, "
                                                "balanced-efx or restricted")
        ->required();
    solve->add_option("--items", items, "Number of items to allocate (maximin and restricted)");
    solve->add_option("--bounds", bounds, "Comma-separated utility caps (restricted)");

    std::string property;
    std::string allocation;
    CLI::App* check = app.add_subcommand("check", "Check a fairness property of an allocation");
    add_common(check, check_c);
    check->add_option("--property", property, "WEF, WEF1, WEFX, WEQ, WEQX or WMMS")->required();
    check->add_option("--allocation", allocation, "Comma-separated item counts, one per agent")->required();

    std::string pivot;
    bool per_type = false;
    CLI::App* psi_cmd = app.add_subcommand("psi", "Minimum total weighted deficit");
    add_common(psi_cmd, psi_c);
    psi_cmd->add_option("--pivot", pivot, "Restrict to one pivot agent (name or 1-based index)");
    psi_cmd->add_flag("--per-type", per_type, "Solve each item type independently");

    bool no_scale = false;
    CLI::App* coins = app.add_subcommand("coins", "Fewest coins that make an allocation equitable");
    add_common(coins, coins_c);
    coins->add_flag("--no-scale", no_scale, "Reject non-integer utilities instead of scaling them");

    CLI::App* shares = app.add_subcommand("shares", "Weighted maximin shares and WMMS existence");
    add_common(shares, shares_c);

    std::string oracle_objective;
    std::optional<std::uint64_t> seed;
    CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive search on small instances");
    add_common(oracle, oracle_c);
    oracle->add_option("--objective", oracle_objective, "utilitarian, rawlsian, leximin, nash, min_twd, wmms or coins")
        ->required();
    oracle->add_option("--seed", seed, "Generate a random scenario from this seed when no file is given");

    CLI::App* validate = app.add_subcommand("validate", "Validate a scenario");
    add_common(validate, validate_c);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ExitCode::ok : ExitCode::validation_error;
    }

    try {
        const auto format_of = [](const Common& c) { return c.output == "table" ? Format::table : Format::json; };

        if (*solve) {
            Scenario s = load(solve_c, in);
            apply_epsilon(s, solve_c);
            json doc = envelope("solve");
            std::string name = objective;
            std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
            doc["objective"] = name;
            const bool takes_items = name == "rawlsian" || name == "maximin" || name == "restricted";
            if (items && !takes_items)
                throw ValidationError("--items applies only to rawlsian, maximin and restricted");
            if (!bounds.empty() && name != "restricted")
                throw ValidationError("--bounds applies only to restricted");
            if (name == "utilitarian") {
                const WelfareReport r = solve_utilitarian(s);
                merge(doc, report_json(s, r));
                doc["value"] = value_json(r.utilitarian);
            } else if (name == "nash") {
                const WelfareReport r = solve_nash(s);
                merge(doc, report_json(s, r));
                doc["log_nash"] = value_json(Value(*r.log_nash));
                doc["insufficient_items"] = r.insufficient_items;
            } else if (name == "rawlsian" || name == "maximin" || name == "leximin") {
                if (s.types() != 1)
                    throw ValidationError(name + " requires a single item type");
                const std::size_t t = items.value_or(s.counts[0]);
                if (t > s.counts[0])
                    throw ValidationError("--items exceeds the number of items");
                const WelfareReport r = name == "leximin" ? solve_leximin(s) : solve_maximin(s, t);
                merge(doc, report_json(s, r));
                doc["value"] = value_json(*r.rawlsian);
                doc["items"] = t;
                doc["exact_counter_hit"] = *r.counter_items == t;
            } else if (name == "wefx" || name == "balanced-efx") {
                const Allocation x = name == "wefx" ? construct_wefx(s) : construct_balanced_efx(s);
                merge(doc, report_json(s, welfare_report(s, x)));
            } else if (name == "restricted") {
                if (bounds.empty())
                    throw ValidationError("restricted requires --bounds");
                if (s.types() != 1)
                    throw ValidationError("restricted requires a single item type");
                RestrictionVector caps;
                for (const auto& b : split_list(bounds))
                    caps.emplace_back(parse_rational(b));
                if (caps.size() != s.agents())
                    throw ValidationError("--bounds needs one value per agent");
                const std::size_t t = items.value_or(s.counts[0]);
                if (t > s.counts[0])
                    throw ValidationError("--items exceeds the number of items");
                const RestrictedResult r = solve_restricted_utilitarian(s, caps, t);
                doc["items"] = t;
                doc["feasible"] = r.feasible;
                if (r.feasible) {
                    merge(doc, report_json(s, welfare_report(s, r.allocation, true)));
                    doc["value"] = value_json(r.welfare);
                } else {
                    doc["value"] = nullptr;
                }
            } else {
                throw ValidationError("unknown objective '" + objective + "'");
            }
            out << emit_report(s, doc, format_of(solve_c));
            return ExitCode::ok;
        }

        if (*check) {
            Scenario s = load(check_c, in);
            apply_epsilon(s, check_c);
            const Property p = parse_property(property);
            if (s.types() != 1)
                throw ValidationError("check requires a single item type");
            const std::vector<std::size_t> counts = parse_counts(allocation);
            if (counts.size() != s.agents())
                throw ValidationError("--allocation needs one count per agent");
            const Allocation x = Allocation::from_counts(counts);
            if (!x.is_complete_for(s))
                throw ValidationError("--allocation must assign exactly " + std::to_string(s.counts[0]) + " items");
            std::vector<Value> mu;
            if (p == Property::wmms)
                mu = compute_wmms_shares(s).mu;
            const FairnessResult r = check_fairness(s, x, p, mu);
            json doc = envelope("check");
            doc["property"] = std::string(property_name(p));
            doc["allocation"] = allocation_json(x);
            doc["holds"] = r.holds;
            doc["witness"] = r.witness ? pair_json(s, r.witness->first, r.witness->second) : json(nullptr);
            if (!mu.empty())
                doc["mu"] = values_json(mu);
            out << emit_report(s, doc, format_of(check_c));
            return ExitCode::ok;
        }

        if (*psi_cmd) {
            Scenario s = load(psi_c, in);
            apply_epsilon(s, psi_c);
            json doc = envelope("psi");
            if (per_type) {
                if (!pivot.empty())
                    throw ValidationError("--pivot cannot be combined with --per-type");
                const PerTypeDeficit r = psi_per_type(s);
                json parts = json::array();
                for (std::size_t j = 0; j < r.per_type.size(); ++j) {
                    json part = report_json(s, r.per_type[j]);
                    part["type"] = s.type_names[j];
                    parts.push_back(part);
                }
                doc["per_type"] = parts;
                doc["allocation"] = allocation_json(r.allocation);
                doc["psi"] = value_json(r.total_twd);
            } else if (!pivot.empty()) {
                if (s.types() != 1)
                    throw ValidationError("--pivot requires a single item type");
                merge(doc, report_json(s, psi_p(s, resolve_agent(s, pivot))));
            } else if (s.types() == 1) {
                merge(doc, report_json(s, psi(s)));
            } else {
                merge(doc, report_json(s, psi_multitype(s)));
            }
            out << emit_report(s, doc, format_of(psi_c));
            return ExitCode::ok;
        }

        if (*coins) {
            Scenario s = load(coins_c, in);
            apply_epsilon(s, coins_c);
            json doc = envelope("coins");
            merge(doc, report_json(s, coin_compensation(s, CoinOptions{!no_scale})));
            out << emit_report(s, doc, format_of(coins_c));
            return ExitCode::ok;
        }

        if (*shares) {
            Scenario s = load(shares_c, in);
            apply_epsilon(s, shares_c);
            const WmmsDecision d = decide_wmms(s);
            json doc = envelope("shares");
            merge(doc, report_json(s, d.shares));
            doc["exists"] = d.exists;
            doc["allocation"] = d.allocation ? allocation_json(*d.allocation) : json(nullptr);
            out << emit_report(s, doc, format_of(shares_c));
            return ExitCode::ok;
        }

        if (*oracle) {
            Scenario s;
            if (seed && oracle_c.input.empty()) {
                std::mt19937_64 rng(*seed);
                s = random_scenario(rng);
            } else {
                s = load(oracle_c, in);
            }
            apply_epsilon(s, oracle_c);
            std::string name = oracle_objective;
            std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
            json doc = envelope("oracle");
            doc["objective"] = name;
            if (seed)
                doc["seed"] = *seed;
            if (seed && oracle_c.input.empty())
                doc["scenario"] = scenario_to_json(s);
            if (name == "wmms") {
                const OracleWmms r = oracle_wmms(s);
                merge(doc, report_json(s, r.shares));
                doc["exists"] = r.exists;
            } else if (name == "coins") {
                doc["coins"] = integer_json(oracle_min_coins(s));
            } else {
                const Objective o = parse_objective(name);
                const WelfareReport r = oracle_best(s, o);
                merge(doc, report_json(s, r));
                switch (o) {
                case Objective::utilitarian: doc["value"] = value_json(r.utilitarian); break;
                case Objective::rawlsian:
                case Objective::leximin: doc["value"] = value_json(*r.rawlsian); break;
                case Objective::nash: doc["log_nash"] = value_json(Value(*r.log_nash)); break;
                case Objective::min_twd: doc["psi"] = value_json(*r.twd); break;
                }
            }
            out << emit_report(s, doc, format_of(oracle_c));
            return ExitCode::ok;
        }

        if (*validate) {
            Scenario s = load(validate_c, in);
            apply_epsilon(s, validate_c);
            json doc = envelope("validate");
            doc["valid"] = true;
            doc["agents"] = s.agents();
            doc["types"] = s.types();
            doc["counts"] = s.counts;
            doc["exact"] = s.is_exact();
            json concave = json::array();
            for (std::size_t i = 0; i < s.agents(); ++i) {
                bool c = true;
                for (std::size_t j = 0; j < s.types(); ++j)
                    c = c && check_concave(s.utility(i, j), s.counts[j]);
                concave.push_back(c);
            }
            doc["concave"] = concave;
            doc["scenario"] = scenario_to_json(s);
            out << emit_report(s, doc, format_of(validate_c));
            return ExitCode::ok;
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return ExitCode::validation_error;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return ExitCode::solver_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return ExitCode::solver_error;
    }
    return ExitCode::validation_error;
}

} // namespace eqalloc::cli
