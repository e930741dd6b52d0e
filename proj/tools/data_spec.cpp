#include "data_spec.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <vector>

#include "hermflow/error.hpp"
#include "hermflow/solenoidal.hpp"

namespace hermflow::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) out.push_back(part);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

int parse_int(const std::string& s, const std::string& context) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw ValidationError("expected an integer in '" + context + "'");
  return v;
}

// Splits "a+b-c" into signed terms, keeping exponents like 1e-2 intact.
std::vector<std::string> terms(const std::string& spec) {
  std::vector<std::string> out;
  std::string cur;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const char ch = spec[i];
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    const bool exponent = i > 0 && (spec[i - 1] == 'e' || spec[i - 1] == 'E') && i > 1 &&
                          std::isdigit(static_cast<unsigned char>(spec[i - 2]));
    if ((ch == '+' || ch == '-') && !cur.empty() && !exponent && cur.back() != '*') {
      out.push_back(cur);
      cur.clear();
    }
    if (ch == '+' && cur.empty()) continue;
    cur.push_back(ch);
  }
  if (!cur.empty()) out.push_back(cur);
  if (out.empty()) throw ValidationError("empty data spec");
  return out;
}

VectorPolyField toroidal(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0) throw ValidationError("toroidal exponents must be non-negative");
  const auto g = gradient(Polynomial::monomial(MultiIndex({a, b, c})));
  std::vector<Polynomial> y;
  for (int i = 0; i < 3; ++i) y.push_back(Polynomial::variable(3, i));
  return VectorPolyField({y[1] * g[2] - y[2] * g[1], y[2] * g[0] - y[0] * g[2], y[0] * g[1] - y[1] * g[0]});
}

VectorPolyField generic(const Rational& amp, const LeveledBasis& basis) {
  const std::size_t n = basis.size();
  std::vector<double> c(n);
  double norm = 0;
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = std::sin(1.7 * static_cast<double>(i) + 0.3);
    norm += c[i] * c[i];
  }
  const double scale = to_double(amp) / std::sqrt(norm);
  auto v = VectorPolyField::zero(3);
  for (std::size_t i = 0; i < n; ++i) v += basis.field(i) * Rational(c[i] * scale);
  return v;
}

const VectorPolyField& pick(const std::vector<VectorPolyField>& fields, int i, const std::string& term) {
  if (i < 0 || static_cast<std::size_t>(i) >= fields.size())
    throw ValidationError("index out of range in '" + term + "' (" + std::to_string(fields.size()) + " fields)");
  return fields[static_cast<std::size_t>(i)];
}

VectorPolyField source(const std::string& src, const LeveledBasis& basis) {
  const auto parts = split(src, ':');
  const auto& kind = parts[0];
  auto arg = [&](std::size_t i) { return parse_int(parts[i], src); };
  if (kind == "generic") {
    if (parts.size() != 2) throw ValidationError("expected generic:amp");
    return generic(parse_rational(parts[1]), basis);
  }
  if (parts.size() == 4 && kind == "toroidal") return toroidal(arg(1), arg(2), arg(3));
  if (parts.size() != 3) throw ValidationError("malformed data term '" + src + "'");
  const int k = arg(1), i = arg(2);
  if (kind == "fixture") return pick(fixture(basis.params.m, k), i, src);
  if (kind == "kernel") return pick(reduced_kernel(k, basis.params).fields, i, src);
  if (kind == "harmonic") return pick(harmonic_gradients(k, basis.params), i, src);
  throw ValidationError("unknown data source '" + kind + "'");
}

std::pair<Rational, std::string> coefficient(const std::string& term) {
  const auto star = term.find('*');
  if (star != std::string::npos) return {parse_rational(term.substr(0, star)), term.substr(star + 1)};
  if (term[0] == '-') return {Rational(-1), term.substr(1)};
  return {Rational(1), term};
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto fail = [&] { return ValidationError("not a number: '" + text + "'"); };
  if (text.empty()) throw fail();
  if (const auto slash = text.find('/'); slash != std::string::npos)
    return make_rational(Integer(parse_rational(text.substr(0, slash)).get_num()),
                         Integer(parse_rational(text.substr(slash + 1)).get_num()));
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
  std::string digits;
  long scale = 0;
  bool dot = false;
  for (; i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.'); ++i) {
    if (text[i] == '.') {
      if (dot) throw fail();
      dot = true;
    } else {
      digits.push_back(text[i]);
      if (dot) --scale;
    }
  }
  if (digits.empty()) throw fail();
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') throw fail();
    scale += parse_int(text.substr(i + 1), text);
  }
  Rational q{Integer(digits, 10)};
  Integer pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  if (scale >= 0)
    q *= pow10;
  else
    q /= pow10;
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

VectorPolyField parse_field(const std::string& spec, const LeveledBasis& basis) {
  auto v = VectorPolyField::zero(3);
  for (const auto& term : terms(spec)) {
    const auto [c, src] = coefficient(term);
    v += source(src, basis) * c;
  }
  return v;
}

int spec_level(const std::string& spec) {
  int level = 0;
  for (const auto& term : terms(spec)) {
    const auto parts = split(coefficient(term).second, ':');
    if (parts.size() == 4 && parts[0] == "toroidal")
      level = std::max(level, parse_int(parts[1], term) + parse_int(parts[2], term) + parse_int(parts[3], term));
    else if (parts.size() == 3)
      level = std::max(level, parse_int(parts[1], term));
  }
  return level;
}

}  // namespace hermflow::cli
