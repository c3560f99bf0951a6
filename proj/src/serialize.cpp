#include "monodromy/serialize.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monodromy {

namespace {

Json coeffs_to_json(const std::vector<Rational>& coeffs) {
  Json out = Json::array();
  for (const auto& c : coeffs) {
    out.push_back(Json::array({integer_to_json(c.get_num()), integer_to_json(c.get_den())}));
  }
  return out;
}

std::vector<Rational> coeffs_from_json(const Json& j) {
  if (!j.is_object() || j.value("var", "") != "q") throw std::invalid_argument("polynomial JSON must have var \"q\"");
  std::vector<Rational> coeffs;
  for (const auto& pair : j.at("coeffs")) {
    if (!pair.is_array() || pair.size() != 2) throw std::invalid_argument("coefficient must be [num, den]");
    Integer den = integer_from_json(pair[1]);
    if (den == 0) throw std::invalid_argument("coefficient with zero denominator");
    Rational c(integer_from_json(pair[0]), den);
    c.canonicalize();
    coeffs.push_back(std::move(c));
  }
  return coeffs;
}

}  // namespace

Json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(static_cast<std::int64_t>(z.get_si()));
  return Json(z.get_str());
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) return Integer(j.get<std::string>());
  throw std::invalid_argument("expected an integer or a decimal string");
}

Json poly_to_json(const Poly& p) { return Json{{"var", "q"}, {"coeffs", coeffs_to_json(p.coeffs())}}; }

Poly poly_from_json(const Json& j) { return Poly(coeffs_from_json(j)); }

Json laurent_to_json(const LaurentPoly& p) {
  return Json{{"var", "q"}, {"minDegree", p.min_degree()}, {"coeffs", coeffs_to_json(p.coeffs())}};
}

LaurentPoly laurent_from_json(const Json& j) {
  return LaurentPoly(j.at("minDegree").get<std::int64_t>(), coeffs_from_json(j));
}

Json rational_function_to_json(const RationalFunction& f) {
  return Json{{"numerator", poly_to_json(f.numerator())}, {"denominator", poly_to_json(f.denominator())}};
}

RationalFunction rational_function_from_json(const Json& j) {
  return RationalFunction(poly_from_json(j.at("numerator")), poly_from_json(j.at("denominator")));
}

}  // namespace monodromy
