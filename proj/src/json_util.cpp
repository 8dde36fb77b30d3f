#include "mz/json_util.hpp"

#include "mz/error.hpp"

namespace mz {

nlohmann::json rational_to_json(const Rational& r) {
  if (is_integer(r) && r.get_num().fits_slong_p()) return static_cast<long long>(r.get_num().get_si());
  return to_string(r);
}

nlohmann::json rational_to_json_string(const Rational& r) { return to_string(r); }

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  fail(ErrorKind::InvalidInput, "expected an integer or a \"num/den\" string, got " + j.dump());
}

nlohmann::json poly_to_json(const QPoly& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : p.coeffs()) arr.push_back(rational_to_json(c));
  return arr;
}

QPoly poly_from_json(const nlohmann::json& j) {
  if (!j.is_array()) fail(ErrorKind::InvalidInput, "expected a coefficient list, got " + j.dump());
  std::vector<Rational> c;
  for (const auto& x : j) c.push_back(rational_from_json(x));
  return QPoly(std::move(c));
}

}  // namespace mz
