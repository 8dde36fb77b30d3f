#pragma once

#include "json.hpp"

#include "mz/qpoly.hpp"
#include "mz/rational.hpp"

namespace mz {

/// Rationals as JSON integers when integral and within int64, otherwise "num/den" strings.
nlohmann::json rational_to_json(const Rational& r);
/// Always the "num/den" (or "num") string form.
nlohmann::json rational_to_json_string(const Rational& r);
/// Accepts JSON integers and "num/den" strings. Throws InvalidInput.
Rational rational_from_json(const nlohmann::json& j);

/// Ascending coefficient list.
nlohmann::json poly_to_json(const QPoly& p);
QPoly poly_from_json(const nlohmann::json& j);

}  // namespace mz
