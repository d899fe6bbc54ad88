#pragma once

#include "duflo/rational.hpp"

#include <json.hpp>

namespace duflo {

/// [num, den] components given as integers or integer strings; throws UsageError.
Rational json_rational(const nlohmann::json& num, const nlohmann::json& den);

}  // namespace duflo
