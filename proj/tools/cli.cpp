#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "polycount/partitions.hpp"

namespace polycount::cli {

using nlohmann::json;

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

unsigned require_degree(const RunConfig& c)
{
    if (!c.d)
        throw UsageError("--d is required");
    if (*c.d < 1)
        throw UsageError("degree must be at least 1 (got " + std::to_string(*c.d) + ")");
    return *c.d;
}

unsigned require_max_degree(const RunConfig& c, unsigned minimum)
{
    const auto v = c.d_max ? c.d_max : c.d;
    if (!v)
        throw UsageError("--dmax is required");
    if (*v < minimum)
        throw UsageError("--dmax must be at least " + std::to_string(minimum) + " (got " +
                         std::to_string(*v) + ")");
    return *v;
}

CountingParams params_of(const RunConfig& c) { return CountingParams(c.q, c.m); }

json params_json(const CountingParams& p) { return {{"q", p.q()}, {"m", p.m()}}; }

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

/// Left-aligned columns separated by two spaces, trailing spaces trimmed.
void print_aligned(std::ostream& out, const std::vector<std::vector<std::string>>& rows)
{
    std::vector<std::size_t> width;
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (width.size() <= i)
                width.push_back(0);
            width[i] = std::max(width[i], r[i].size());
        }
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t i = 0; i < r.size(); ++i) {
            line += r[i];
            if (i + 1 < r.size())
                line.append(width[i] - r[i].size() + 2, ' ');
        }
        out << line << '\n';
    }
}

void print_csv(std::ostream& out, const std::vector<std::vector<std::string>>& rows)
{
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i)
            out << (i ? "," : "") << csv_escape(r[i]);
        out << '\n';
    }
}

json big_array(const std::vector<BigCount>& v)
{
    json a = json::array();
    for (const auto& x : v)
        a.push_back(x.to_string());
    return a;
}

} // namespace

std::string render_ratio(const ExactRatio& r, unsigned precision, OutputFormat format)
{
    if (format == OutputFormat::text) {
        std::string s = render_decimal(r, precision, Rounding::truncate);
        if (!decimal_terminates_within(r, precision))
            s += "...";
        return s;
    }
    return render_decimal(r, precision, Rounding::half_even);
}

CountTable load_table(const RunConfig& config, std::ostream& err)
{
    CountingParams params = params_of(config);
    if (config.cache_path && !config.cache_path->empty()) {
        std::ifstream in(*config.cache_path);
        if (!in) {
            err << "warning: cannot read cache " << *config.cache_path << "; computing fresh\n";
        } else {
            std::stringstream buf;
            buf << in.rdbuf();
            try {
                CountTable cached = CountTable::from_json(buf.str());
                if (cached.params() == params)
                    return cached;
                err << "warning: cache " << *config.cache_path << " is for q="
                    << cached.params().q() << " m=" << cached.params().m()
                    << "; computing fresh\n";
            } catch (const std::exception& e) {
                err << "warning: ignoring cache " << *config.cache_path << ": " << e.what()
                    << '\n';
            }
        }
    }
    return CountTable(params);
}

int cmd_count(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    const unsigned d = require_degree(config);
    CountTable table = load_table(config, err);
    table.extend_to(d);
    const CountRow& row = table.row(d);
    const ExactRatio density(row.irreducible, row.normalized);

    switch (config.format) {
    case OutputFormat::json: {
        json r = {{"d", d},
                  {"N", row.normalized.to_string()},
                  {"I", row.irreducible.to_string()},
                  {"R", row.reducible.to_string()},
                  {"S", big_array(row.by_factors)},
                  {"density", render_ratio(density, config.precision, config.format)},
                  {"density_exact", density.to_string()}};
        json doc = {{"params", params_json(table.params())}, {"rows", json::array({r})}};
        out << doc.dump(2) << '\n';
        break;
    }
    case OutputFormat::csv:
    case OutputFormat::text: {
        std::vector<std::vector<std::string>> rows;
        if (config.format == OutputFormat::csv)
            rows.push_back({"quantity", "value"});
        rows.push_back({"q", std::to_string(config.q)});
        rows.push_back({"m", std::to_string(config.m)});
        rows.push_back({"d", std::to_string(d)});
        rows.push_back({"N", row.normalized.to_string()});
        rows.push_back({"I", row.irreducible.to_string()});
        rows.push_back({"R", row.reducible.to_string()});
        for (unsigned k = 1; k <= d; ++k)
            rows.push_back({"S_" + std::to_string(k), row.with_k_factors(k).to_string()});
        rows.push_back({"I/N", render_ratio(density, config.precision, config.format)});
        if (config.format == OutputFormat::csv)
            print_csv(out, rows);
        else
            print_aligned(out, rows);
        break;
    }
    }
    return kOk;
}

int cmd_table(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    const unsigned d_max = require_max_degree(config, 1);
    CountTable table = load_table(config, err);
    table.extend_to(d_max);
    const auto& params = table.params();
    const std::string predicted_header = "1-" + simplified_defect_formula(params);

    auto predicted = [&](unsigned d) {
        return ExactRatio::integer(1) - simplified_defect(params, d);
    };

    if (config.format == OutputFormat::json) {
        json rows = json::array();
        for (unsigned d = 1; d <= d_max; ++d) {
            const CountRow& row = table.row(d);
            const ExactRatio density(row.irreducible, row.normalized);
            rows.push_back({{"d", d},
                            {"N", row.normalized.to_string()},
                            {"I", row.irreducible.to_string()},
                            {"R", row.reducible.to_string()},
                            {"S", big_array(row.by_factors)},
                            {"density", render_ratio(density, config.precision, config.format)},
                            {"predicted_density",
                             render_ratio(predicted(d), config.precision, config.format)}});
        }
        json doc = {{"params", params_json(params)},
                    {"predicted_formula", predicted_header},
                    {"rows", std::move(rows)}};
        out << doc.dump(2) << '\n';
        return kOk;
    }

    std::vector<std::vector<std::string>> rows;
    if (config.format == OutputFormat::csv)
        rows.push_back({"d", "N", "I", "density", "predicted_density"});
    else
        rows.push_back({"d", "N(d)", "I(d)", "I/N", predicted_header});
    for (unsigned d = 1; d <= d_max; ++d) {
        const CountRow& row = table.row(d);
        rows.push_back({std::to_string(d), row.normalized.to_string(),
                        row.irreducible.to_string(),
                        render_ratio(ExactRatio(row.irreducible, row.normalized),
                                     config.precision, config.format),
                        render_ratio(predicted(d), config.precision, config.format)});
    }
    if (config.format == OutputFormat::csv) {
        print_csv(out, rows);
    } else {
        out << "# q=" << params.q() << " m=" << params.m() << '\n';
        print_aligned(out, rows);
    }
    return kOk;
}

int cmd_asymptotic(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    const unsigned d_max = require_max_degree(config, 2);
    CountTable table = load_table(config, err);
    const auto report = asymptotic_report(table, d_max);
    const auto& params = table.params();
    const std::string formula = simplified_defect_formula(params);
    const ExactRatio one = ExactRatio::integer(1);
    const unsigned p = config.precision;

    if (config.format == OutputFormat::json) {
        json rows = json::array();
        for (const auto& r : report)
            rows.push_back({{"d", r.d},
                            {"density", render_ratio(r.density, p, config.format)},
                            {"density_exact", r.density.to_string()},
                            {"predicted", render_ratio(one - r.predicted_simplified, p,
                                                       config.format)},
                            {"predicted_exact", (one - r.predicted_simplified).to_string()},
                            {"relative_error",
                             render_ratio(r.relative_error_simplified, p, config.format)},
                            {"ratio_predicted",
                             render_ratio(one - r.predicted, p, config.format)},
                            {"ratio_relative_error",
                             render_ratio(r.relative_error, p, config.format)}});
        json doc = {{"params", params_json(params)},
                    {"predicted_formula", "1 - I/N ~ " + formula},
                    {"rows", std::move(rows)}};
        out << doc.dump(2) << '\n';
        return kOk;
    }

    std::vector<std::vector<std::string>> rows;
    rows.push_back(
        {"d", "density", "predicted", "relative_error", "ratio_predicted", "ratio_relative_error"});
    for (const auto& r : report)
        rows.push_back({std::to_string(r.d), render_ratio(r.density, p, config.format),
                        render_ratio(one - r.predicted_simplified, p, config.format),
                        render_ratio(r.relative_error_simplified, p, config.format),
                        render_ratio(one - r.predicted, p, config.format),
                        render_ratio(r.relative_error, p, config.format)});
    if (config.format == OutputFormat::csv) {
        print_csv(out, rows);
    } else {
        out << "# q=" << params.q() << " m=" << params.m() << ": 1 - I/N ~ " << formula
            << "  (predicted = 1 - " << formula << "; ratio_predicted = 1 - N(1)N(d-1)/N(d))\n";
        print_aligned(out, rows);
    }
    return kOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    const unsigned d_max = require_max_degree(config, 1);
    const CountingParams params = params_of(config);
    if (!is_prime(config.q) || config.q >= 256)
        throw UsageError("oracle requires prime q < 256 (got q=" + std::to_string(config.q) +
                         ")");
    const PrimeField field(static_cast<unsigned>(config.q));
    const std::uint64_t candidates = enumeration_candidates(field, config.m, d_max);
    if (candidates > config.oracle_guard)
        throw InfeasibleError("brute force for q=" + std::to_string(config.q) +
                              " m=" + std::to_string(config.m) + " d=" + std::to_string(d_max) +
                              " needs " + std::to_string(candidates) + " candidates (guard " +
                              std::to_string(config.oracle_guard) + ")");

    CountTable table = load_table(config, err);
    table.extend_to(d_max);
    BruteForceOracle oracle(field, config.m, config.oracle_guard);

    using clock = std::chrono::steady_clock;
    bool all_ok = true;
    json rows = json::array();
    std::vector<std::vector<std::string>> lines;
    lines.push_back({"d", "N", "I", "R", "S", "status", "seconds"});

    for (unsigned d = 1; d <= d_max; ++d) {
        const auto t0 = clock::now();
        const OracleCounts& got = oracle.counts(d);
        const FactorizationReport fact = oracle.verify_unique_factorization(d, table);
        const double seconds = std::chrono::duration<double>(clock::now() - t0).count();
        const CountRow& want = table.row(d);

        std::vector<std::string> problems;
        if (got.normalized != want.normalized)
            problems.push_back("N oracle=" + got.normalized.to_string() +
                               " formula=" + want.normalized.to_string());
        if (got.irreducible != want.irreducible)
            problems.push_back("I oracle=" + got.irreducible.to_string() +
                               " recursion=" + want.irreducible.to_string());
        if (got.reducible != want.reducible)
            problems.push_back("R oracle=" + got.reducible.to_string() +
                               " recursion=" + want.reducible.to_string());
        if (got.by_factors != want.by_factors)
            problems.push_back("S_k oracle=" + big_array(got.by_factors).dump() +
                               " recursion=" + big_array(want.by_factors).dump());
        if (!fact.unique) {
            std::string msg = "factorization not unique";
            if (fact.collision) {
                msg += ": product " + fact.collision->product + " from {";
                for (const auto& f : fact.collision->first)
                    msg += " (" + f + ")";
                msg += " } and {";
                for (const auto& f : fact.collision->second)
                    msg += " (" + f + ")";
                msg += " }";
            }
            problems.push_back(msg);
        }
        if (!fact.covers_reducible)
            problems.push_back("products of >= 2 irreducibles differ from the reducible set");

        const bool ok = problems.empty();
        all_ok = all_ok && ok;

        std::ostringstream secs;
        secs << std::fixed << std::setprecision(3) << seconds;
        std::string s_list;
        for (std::size_t i = 0; i < got.by_factors.size(); ++i)
            s_list += (i ? " " : "") + got.by_factors[i].to_string();
        lines.push_back({std::to_string(d), got.normalized.to_string(),
                         got.irreducible.to_string(), got.reducible.to_string(), s_list,
                         ok ? "PASS" : "FAIL", secs.str()});
        rows.push_back({{"d", d},
                        {"N", got.normalized.to_string()},
                        {"I", got.irreducible.to_string()},
                        {"R", got.reducible.to_string()},
                        {"S", big_array(got.by_factors)},
                        {"pass", ok},
                        {"problems", problems},
                        {"seconds", secs.str()}});
        for (const auto& pmsg : problems)
            err << "mismatch at d=" << d << ": " << pmsg << '\n';
    }

    if (config.dump_path) {
        std::ofstream dump(*config.dump_path);
        if (!dump)
            throw UsageError("cannot write " + *config.dump_path);
        for (unsigned d = 1; d <= d_max; ++d)
            for (const auto& f : oracle.irreducibles(d))
                dump << f.canonical_hex() << '\n';
    }

    const std::string summary = std::string(all_ok ? "PASS" : "FAIL") + ", " +
                                std::to_string(d_max) + " degrees checked";
    switch (config.format) {
    case OutputFormat::json:
        out << json({{"params", params_json(params)},
                     {"rows", std::move(rows)},
                     {"pass", all_ok},
                     {"summary", summary}})
                   .dump(2)
            << '\n';
        break;
    case OutputFormat::csv:
        print_csv(out, lines);
        break;
    case OutputFormat::text:
        out << "# verify q=" << config.q << " m=" << config.m << " dmax=" << d_max << '\n';
        print_aligned(out, lines);
        out << summary << '\n';
        break;
    }
    return all_ok ? kOk : kMismatch;
}

int cmd_partitions(const RunConfig& config, std::ostream& out, std::ostream& /*err*/)
{
    const unsigned d = require_degree(config);
    if (config.k && (*config.k < 1 || *config.k > d))
        throw UsageError("--k must satisfy 1 <= k <= d (got k=" + std::to_string(*config.k) +
                         ", d=" + std::to_string(d) + ")");

    const unsigned k_lo = config.k ? *config.k : 1;
    const unsigned k_hi = config.k ? *config.k : d;

    if (config.count_only) {
        BigCount n;
        if (config.k) {
            std::uint64_t c = 0;
            for ([[maybe_unused]] const auto& p : partitions_of(d, *config.k))
                ++c;
            n = BigCount(c);
        } else {
            n = count_partitions(d);
        }
        if (config.format == OutputFormat::json) {
            json doc = {{"d", d}, {"count", n.to_string()}};
            if (config.k)
                doc["k"] = *config.k;
            out << doc.dump(2) << '\n';
        } else if (config.format == OutputFormat::csv) {
            out << "d,k,count\n"
                << d << ',' << (config.k ? std::to_string(*config.k) : "") << ',' << n.to_string()
                << '\n';
        } else {
            out << n.to_string() << '\n';
        }
        return kOk;
    }

    switch (config.format) {
    case OutputFormat::json: {
        json list = json::array();
        for (unsigned k = k_lo; k <= k_hi; ++k)
            for (const auto& p : partitions_of(d, k))
                list.push_back(p);
        json doc = {{"d", d}, {"partitions", std::move(list)}};
        if (config.k)
            doc["k"] = *config.k;
        out << doc.dump() << '\n';
        break;
    }
    case OutputFormat::csv:
        out << "k,parts\n";
        for (unsigned k = k_lo; k <= k_hi; ++k)
            for (const auto& p : partitions_of(d, k)) {
                std::string parts;
                for (std::size_t i = 0; i < p.size(); ++i)
                    parts += (i ? " " : "") + std::to_string(p[i]);
                out << k << ',' << parts << '\n';
            }
        break;
    case OutputFormat::text:
        for (unsigned k = k_lo; k <= k_hi; ++k)
            for (const auto& p : partitions_of(d, k))
                out << format_partition(p) << '\n';
        break;
    }
    return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig config;
    if (const char* cache = std::getenv("POLYCOUNT_CACHE"))
        config.cache_path = cache;

    CLI::App app{"Exact counts of irreducible polynomials over finite fields", "polycount"};
    app.require_subcommand(1, 1);

    std::string format = "text";
    unsigned d = 0, d_max = 0, k = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--q", config.q, "Field size (a prime power)")->capture_default_str();
        sub->add_option("--m", config.m, "Number of variables")->capture_default_str();
        sub->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"text", "csv", "json"}))
            ->capture_default_str();
        sub->add_option("--precision", config.precision, "Fractional digits for ratios")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    };

    auto* count = app.add_subcommand("count", "N, I, R and S_k at one degree");
    add_common(count);
    count->add_option("--d", d, "Total degree")->required();

    auto* table = app.add_subcommand("table", "N, I and densities for d = 1..dmax");
    add_common(table);
    table->add_option("--dmax,--d", d_max, "Largest degree")->required();

    auto* verify = app.add_subcommand("verify", "Check the recursion against brute force");
    add_common(verify);
    verify->add_option("--dmax,--d", d_max, "Largest degree")->required();
    verify->add_option("--guard", config.oracle_guard, "Maximum enumeration candidates")
        ->capture_default_str();
    auto* dump = verify->add_option("--dump", "Write irreducibles as hex canonical bytes");

    auto* asym = app.add_subcommand("asymptotic", "Density against the asymptotic estimate");
    add_common(asym);
    asym->add_option("--dmax,--d", d_max, "Largest degree")->required();

    auto* parts = app.add_subcommand("partitions", "Partitions of d (into k parts)");
    add_common(parts);
    parts->add_option("--d", d, "Integer to partition")->required();
    auto* k_opt = parts->add_option("--k", k, "Exact number of parts");
    parts->add_flag("--count", config.count_only, "Print the number of partitions only");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidInput;
    }

    config.format = format == "csv"    ? OutputFormat::csv
                    : format == "json" ? OutputFormat::json
                                       : OutputFormat::text;
    if (k_opt->count())
        config.k = k;
    if (dump->count())
        config.dump_path = dump->as<std::string>();

    try {
        if (count->parsed()) {
            config.d = d;
            return cmd_count(config, out, err);
        }
        if (table->parsed()) {
            config.d_max = d_max;
            return cmd_table(config, out, err);
        }
        if (verify->parsed()) {
            config.d_max = d_max;
            return cmd_verify(config, out, err);
        }
        if (asym->parsed()) {
            config.d_max = d_max;
            return cmd_asymptotic(config, out, err);
        }
        config.d = d;
        return cmd_partitions(config, out, err);
    } catch (const InfeasibleError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }
}

} // namespace polycount::cli
