#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "whitney/actions.hpp"

namespace whitney {

using Json = nlohmann::json;

/// Number encoding: exact mode writes canonical "p/q" (or "p") strings,
/// float mode writes JSON numbers with 17 significant digits. Parsing
/// accepts both; exact mode rejects non-integral decimal input.
Json number_to_json(const Rational& q, bool exact_mode);
Rational number_from_json(const Json& j, bool exact_mode);

/// Term syntax `c * x1^a1*...*xn^an`, terms joined by `+`; rational
/// coefficients as `p/q`. Exponent 1 may be omitted, as may a unit
/// coefficient. The printer emits the canonical ascending graded-lex form.
std::string format_polynomial(const Polynomial& f, bool exact_mode = true);
Polynomial parse_polynomial(const std::string& text, std::size_t dim, bool exact_mode);

Json cloud_to_json(const PointCloud& c, bool exact_mode);
PointCloud cloud_from_json(const Json& j, bool exact_mode, const Tolerance& tol);

/// {"dimension": n, "components": ["<polynomial>", ...]}
Json polymap_to_json(const PolyMap& m, bool exact_mode);
PolyMap polymap_from_json(const Json& j, bool exact_mode);

/// {"dimension", "order", "points", "coefficients": [{"alpha", "values"}]}.
/// Coefficient rows that are zero at every point are omitted; absent alpha
/// means zero. Bit-exact round trip in exact mode.
Json jet_to_json(const JetField& f, bool exact_mode);
JetField jet_from_json(const Json& j, bool exact_mode, const Tolerance& cloud_tol);

/// {"type": "finite", "dimension", "generators" | "elements", "labels"?} or
/// {"type": "circle", "dimension", "blocks": [{"coords": [i,j], "weight"}]}.
struct GroupDocument {
    std::variant<FiniteGroup, CircleAction> group;

    bool is_finite() const { return std::holds_alternative<FiniteGroup>(group); }
    const FiniteGroup& finite() const { return std::get<FiniteGroup>(group); }
    const CircleAction& circle() const { return std::get<CircleAction>(group); }
};

GroupDocument group_from_json(const Json& j, bool exact_mode, const Tolerance& tol, std::size_t max_order);
Json finite_group_to_json(const FiniteGroup& g, bool exact_mode);

Json load_json_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& contents);

} // namespace whitney
