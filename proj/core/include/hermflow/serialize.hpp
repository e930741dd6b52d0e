#pragma once

#include <json.hpp>

#include "hermflow/hermite_ops.hpp"
#include "hermflow/polynomial.hpp"
#include "hermflow/rational.hpp"

namespace hermflow {

using Json = nlohmann::ordered_json;

/// {"num":"p","den":"q"}; strings keep arbitrary precision.
Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

/// {"dim":N,"terms":[{"beta":[...],"num":"...","den":"..."}, ...]}, terms
/// ascending in graded-lex order.
Json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j);

/// {"dim":N,"components":[<Polynomial>, ...]}
Json to_json(const VectorPolyField& v);
VectorPolyField field_from_json(const Json& j);

Json to_json(const MultiIndex& beta);
MultiIndex multi_index_from_json(const Json& j);

Json to_json(const EigenPair& e);
EigenPair eigenpair_from_json(const Json& j);

/// Rows of {"num","den"} objects.
Json to_json(const RationalMatrix& a);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

}  // namespace hermflow
