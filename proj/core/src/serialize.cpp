#include "hermflow/serialize.hpp"

#include <charconv>
#include <cmath>

#include "hermflow/error.hpp"

namespace hermflow {

Json to_json(const Rational& q) {
  return Json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

Rational rational_from_json(const Json& j) {
  try {
    auto read = [](const Json& v) {
      return v.is_string() ? Integer(v.get<std::string>(), 10) : Integer(v.get<long>());
    };
    return make_rational(read(j.at("num")), read(j.at("den")));
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed rational: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw ValidationError("malformed rational: not an integer string");
  }
}

Json to_json(const MultiIndex& beta) { return Json(beta.entries()); }

MultiIndex multi_index_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("multi-index must be a JSON array");
  return MultiIndex(j.get<std::vector<int>>());
}

Json to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [beta, c] : p.terms()) {
    Json t = Json::object();
    t["beta"] = to_json(beta);
    t["num"] = c.get_num().get_str();
    t["den"] = c.get_den().get_str();
    terms.push_back(std::move(t));
  }
  return Json{{"dim", p.dim()}, {"terms", std::move(terms)}};
}

Polynomial polynomial_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("terms"))
    throw ValidationError("polynomial JSON needs \"dim\" and \"terms\"");
  Polynomial p(j.at("dim").get<int>());
  for (const auto& t : j.at("terms")) {
    MultiIndex beta = multi_index_from_json(t.at("beta"));
    if (beta.dim() != p.dim()) throw ValidationError("term dimension does not match \"dim\"");
    p.add_term(beta, rational_from_json(t));
  }
  return p;
}

Json to_json(const VectorPolyField& v) {
  Json comps = Json::array();
  for (const auto& c : v.components()) comps.push_back(to_json(c));
  return Json{{"dim", v.dim()}, {"components", std::move(comps)}};
}

VectorPolyField field_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("components"))
    throw ValidationError("vector field JSON needs \"components\"");
  std::vector<Polynomial> comps;
  for (const auto& c : j.at("components")) comps.push_back(polynomial_from_json(c));
  VectorPolyField v(std::move(comps));
  if (j.contains("dim") && j.at("dim").get<int>() != v.dim())
    throw ValidationError("component count does not match \"dim\"");
  return v;
}

Json to_json(const EigenPair& e) {
  return Json{{"beta", to_json(e.beta)},
              {"lambda", to_json(e.lambda)},
              {"psi_star", to_json(e.psi_star)},
              {"norm_sq", to_json(e.norm_sq)}};
}

EigenPair eigenpair_from_json(const Json& j) {
  return EigenPair{multi_index_from_json(j.at("beta")), rational_from_json(j.at("lambda")),
                   polynomial_from_json(j.at("psi_star")), rational_from_json(j.at("norm_sq"))};
}

Json to_json(const RationalMatrix& a) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < a.cols(); ++c) row.push_back(to_json(a(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace hermflow
