#pragma once

// JSON and CSV rendering. Exact scalars are written as "p/q" strings, floats
// in shortest round-trip form.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qladder/field.hpp"
#include "qladder/grid.hpp"
#include "qladder/hyper.hpp"
#include "qladder/params.hpp"

namespace qladder {

using Json = nlohmann::ordered_json;

template <Field F>
Json params_json(const QRacahParams<F>& p)
{
    return Json{{"alpha", to_string(p.alpha())},
                {"beta", to_string(p.beta())},
                {"delta", to_string(p.delta())},
                {"q", to_string(p.q())},
                {"N", p.N()}};
}

template <Field F>
Json params_json(const RacahParams<F>& p)
{
    return Json{{"alpha", to_string(p.alpha())},
                {"beta", to_string(p.beta())},
                {"delta", to_string(p.delta())},
                {"N", p.N()}};
}

template <Field F>
Json values_json(const GridFunction<F>& f)
{
    Json a = Json::array();
    for (const auto& v : f.values()) {
        a.push_back(to_string(v));
    }
    return a;
}

/// {"kind": "R", "N": n, "coeffs": [["p/q", ...], ...]}
template <Field F>
Json operator_json(const BandedOperator<F>& op)
{
    Json rows = Json::array();
    for (const auto& row : op.coeffs()) {
        Json r = Json::array();
        for (const auto& v : row) {
            r.push_back(to_string(v));
        }
        rows.push_back(std::move(r));
    }
    return Json{{"kind", kind_tag(op.kind())}, {"N", op.level()}, {"coeffs", std::move(rows)}};
}

/// {identity, params, lhs, rhs, equal}
template <Field F>
Json report_json(const IdentityReport<F>& r)
{
    Json params = Json::object();
    for (const auto& [name, value] : r.params) {
        params[name] = to_string(value);
    }
    return Json{{"identity", r.identity},
                {"params", std::move(params)},
                {"lhs", to_string(r.lhs)},
                {"rhs", to_string(r.rhs)},
                {"equal", r.equal}};
}

inline std::string csv_quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

/// Comma-delimited, header row first, every field quoted.
inline void write_csv(std::ostream& os, const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows)
{
    auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i > 0) {
                os << ',';
            }
            os << csv_quote(fields[i]);
        }
        os << '\n';
    };
    line(header);
    for (const auto& r : rows) {
        line(r);
    }
}

} // namespace qladder
