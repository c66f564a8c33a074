#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sympc/centralizer.hpp"

namespace sympc {

/// Field from CLI-style parameters: characteristic plus an optional modulus
/// in polynomial text form ("2,2,1" = X^2+2X+2).
inline FieldPtr field_from_spec(std::int64_t p, const std::string& ext_text = "") {
    FieldPtr base = Field::prime(p);
    if (ext_text.empty()) return base;
    return ext_field(p, parse_poly(base, ext_text).coeffs());
}

namespace detail {

inline felem element_from_json(const FieldPtr& F, const nlohmann::json& v) {
    if (v.is_number_integer()) return F->from_int(v.get<std::int64_t>());
    require(v.is_string(), "ParseError", "matrix entry must be an integer or a string");
    const std::string s = v.get<std::string>();
    std::vector<felem> coeffs;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(',', pos);
        std::string tok = s.substr(pos, next == std::string::npos ? next : next - pos);
        require(!tok.empty(), "ParseError", "empty coefficient in entry");
        coeffs.push_back(F->from_int(std::stoll(tok)));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return F->from_coeffs(coeffs);
}

inline nlohmann::json element_to_json(const FieldPtr& F, felem e) {
    if (F->is_prime_field()) return nlohmann::json(e);
    return nlohmann::json(F->to_string(e));
}

} // namespace detail

inline nlohmann::json matrix_to_json(const Matrix& m, bool skew = false) {
    const auto& F = m.field();
    nlohmann::json j;
    j["p"] = F->characteristic();
    if (!F->is_prime_field()) j["ext"] = F->modulus_text();
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    auto entries = nlohmann::json::array();
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) entries.push_back(detail::element_to_json(F, m.at(r, c)));
    j["entries"] = std::move(entries);
    if (skew) j["skew"] = true;
    return j;
}

/// Accepts either the full schema object or a bare nested array of entries
/// (the latter requires a field from context).
inline Matrix matrix_from_json(const nlohmann::json& j, const FieldPtr& context = nullptr) {
    if (j.is_array()) {
        require(context != nullptr, "ParseError", "bare matrix array needs a field context");
        int rows = static_cast<int>(j.size());
        require(rows > 0, "ParseError", "empty matrix");
        require(j[0].is_array(), "ParseError", "matrix rows must be arrays");
        int cols = static_cast<int>(j[0].size());
        Matrix m(context, rows, cols);
        for (int r = 0; r < rows; ++r) {
            require(j[static_cast<std::size_t>(r)].is_array() &&
                        static_cast<int>(j[static_cast<std::size_t>(r)].size()) == cols,
                    "ParseError", "ragged matrix rows");
            for (int c = 0; c < cols; ++c)
                m.at(r, c) = detail::element_from_json(
                    context, j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
        }
        return m;
    }
    require(j.is_object(), "ParseError", "matrix JSON must be an object or nested array");
    require(j.contains("rows") && j.contains("cols") && j.contains("entries"), "ParseError",
            "matrix object needs rows, cols, entries");
    FieldPtr F = context;
    if (j.contains("p")) {
        FieldPtr declared = field_from_spec(j["p"].get<std::int64_t>(), j.value("ext", ""));
        if (F) require(F->same(*declared), "FieldMismatch", "matrix declares a different field");
        F = declared;
    }
    require(F != nullptr, "ParseError", "matrix object lacks a field and no context given");
    int rows = j["rows"].get<int>(), cols = j["cols"].get<int>();
    require(rows > 0 && cols > 0, "ParseError", "matrix dimensions must be positive");
    const auto& entries = j["entries"];
    require(entries.is_array() && static_cast<int>(entries.size()) == rows * cols, "ParseError",
            "entry count does not match dimensions");
    Matrix m(F, rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            m.at(r, c) = detail::element_from_json(
                F, entries[static_cast<std::size_t>(r * cols + c)]);
    return m;
}

inline nlohmann::json report_to_json(const CentralizerReport& rep) {
    nlohmann::json j;
    auto factors = nlohmann::json::array();
    for (const auto& f : rep.factors)
        factors.push_back({{"symbol", f.symbol}, {"value", f.value.str()}});
    j["factors"] = std::move(factors);
    j["total"] = rep.total.str();
    return j;
}

} // namespace sympc
