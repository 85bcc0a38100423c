#include <stdexcept>

#include <json.hpp>

#include "polycount/counting.hpp"

namespace polycount {

using nlohmann::json;

std::string CountTable::to_json(int indent) const
{
    json rows = json::array();
    for (const auto& r : rows_) {
        json s = json::array();
        for (const auto& v : r.by_factors)
            s.push_back(v.to_string());
        rows.push_back({{"d", r.d},
                        {"N", r.normalized.to_string()},
                        {"I", r.irreducible.to_string()},
                        {"R", r.reducible.to_string()},
                        {"S", std::move(s)}});
    }
    json doc = {{"q", params_.q()}, {"m", params_.m()}, {"rows", std::move(rows)}};
    return doc.dump(indent);
}

namespace {

BigCount big_from(const json& v, const char* field)
{
    if (!v.is_string())
        throw std::invalid_argument(std::string("CountTable JSON: '") + field +
                                    "' must be a decimal string");
    return BigCount::from_decimal(v.get<std::string>());
}

} // namespace

CountTable CountTable::from_json(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("CountTable JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("q") || !doc.contains("m") ||
        !doc.contains("rows") || !doc["rows"].is_array() ||
        !doc["q"].is_number_unsigned() || !doc["m"].is_number_unsigned())
        throw std::invalid_argument("CountTable JSON: expected {q, m, rows: [...]}");

    CountTable table(CountingParams(doc["q"].get<std::uint64_t>(), doc["m"].get<unsigned>()));
    unsigned expected_d = 1;
    for (const auto& jr : doc["rows"]) {
        if (!jr.is_object() || !jr.contains("d") || !jr["d"].is_number_unsigned())
            throw std::invalid_argument("CountTable JSON: row without integer 'd'");
        if (jr["d"].get<unsigned>() != expected_d)
            throw std::invalid_argument("CountTable JSON: rows must run 1..n without gaps");

        CountRow row;
        row.d = expected_d;
        row.normalized = big_from(jr.value("N", json()), "N");
        row.irreducible = big_from(jr.value("I", json()), "I");
        row.reducible = big_from(jr.value("R", json()), "R");
        const json s = jr.value("S", json());
        if (!s.is_array() || s.size() != row.d)
            throw std::invalid_argument("CountTable JSON: 'S' must list S_1..S_d");
        BigCount s_total;
        for (const auto& v : s) {
            row.by_factors.push_back(big_from(v, "S"));
            s_total += row.by_factors.back();
        }

        const std::string at = " at d=" + std::to_string(row.d);
        if (row.normalized != count_normalized(table.params_, row.d))
            throw std::invalid_argument("CountTable JSON: N disagrees with closed form" + at);
        if (row.irreducible + row.reducible != row.normalized)
            throw std::invalid_argument("CountTable JSON: N != I + R" + at);
        if (row.by_factors.front() != row.irreducible || s_total != row.normalized)
            throw std::invalid_argument("CountTable JSON: S_k inconsistent with N and I" + at);

        table.rows_.push_back(std::move(row));
        ++expected_d;
    }
    return table;
}

} // namespace polycount
