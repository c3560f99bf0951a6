#pragma once

#include <json.hpp>

#include "monodromy/exactpoly.hpp"

namespace monodromy {

using Json = nlohmann::json;

/// Integers that fit in 64 bits are JSON numbers; larger ones are decimal
/// strings so nothing is lost in transit.
Json integer_to_json(const Integer& z);
Integer integer_from_json(const Json& j);

/// {"var":"q","coeffs":[[num,den],...]}, ascending degree.
Json poly_to_json(const Poly& p);
Poly poly_from_json(const Json& j);

/// Polynomial form plus "minDegree".
Json laurent_to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const Json& j);

/// {"numerator":<poly>,"denominator":<poly>}
Json rational_function_to_json(const RationalFunction& f);
RationalFunction rational_function_from_json(const Json& j);

}  // namespace monodromy
