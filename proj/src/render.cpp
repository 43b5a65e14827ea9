#include "qtr/render.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "qtr/tensor.hpp"

namespace qtr {

namespace {

constexpr const char* kSchema = "qtr-1";
constexpr const char* kSingular = "x/(y-x)*casimir";

// LaTeX for one variable power, e.g. "x", "y^{2}", "x_{1}".
std::string latex_var(Var v, int exp) {
  std::string name = var_name(v);
  if (name.size() == 2) name = std::string(1, name[0]) + "_{" + name[1] + "}";
  if (exp == 1) return name;
  return name + "^{" + std::to_string(exp) + "}";
}

std::string latex_rational_abs(const Rational& q) {
  const Integer num = boost::multiprecision::abs(numerator(q));
  const Integer den = denominator(q);
  if (den == 1) return num.str();
  return "\\tfrac{" + num.str() + "}{" + den.str() + "}";
}

// Appends "+ coeff monomial" pieces for every term of p to out; `unit` is
// the trailing tensor atom (empty for a bare polynomial).
void latex_poly_terms(const Poly& p, const std::string& unit,
                      std::string* out) {
  for (const auto& [mono, coeff] : p.terms()) {
    *out += coeff < 0 ? " - " : " + ";
    std::string vars;
    for (int v = 0; v < kNumVars; ++v)
      if (mono[static_cast<size_t>(v)] > 0) {
        if (!vars.empty()) vars += " ";
        vars += latex_var(static_cast<Var>(v), mono[static_cast<size_t>(v)]);
      }
    const Rational a = coeff < 0 ? Rational(-coeff) : coeff;
    std::string body;
    if (a != 1 || (vars.empty() && unit.empty())) body = latex_rational_abs(a);
    if (!vars.empty()) {
      if (!body.empty()) body += " ";
      body += vars;
    }
    if (!unit.empty()) {
      if (!body.empty()) body += "\\, ";
      body += unit;
    }
    *out += body;
  }
}

// One extra term block: every unit of t rendered with its coefficient.  When
// a coefficient has several terms it is wrapped in parentheses.
std::string latex_tensor_terms(const TensorPoly& t) {
  std::string out;
  const auto terms = t.terms();
  for (const auto& [key, coeff] : terms) {
    const std::string unit = "e_{" + std::to_string(key[0]) +
                             std::to_string(key[1]) + "} \\otimes e_{" +
                             std::to_string(key[2]) + std::to_string(key[3]) +
                             "}";
    if (coeff.terms().size() <= 1) {
      latex_poly_terms(coeff, unit, &out);
    } else {
      out += " + \\left(";
      std::string inner;
      latex_poly_terms(coeff, "", &inner);
      // Strip the leading " + " of the first summand inside the parentheses.
      if (inner.rfind(" + ", 0) == 0) inner = inner.substr(3);
      else if (inner.rfind(" - ", 0) == 0) inner = "-" + inner.substr(3);
      out += inner + "\\right) " + unit;
    }
  }
  return out;
}

// Splits p - p_standard into the non-Cartan part u and the Cartan part t.
std::pair<TensorPoly, TensorPoly> split_extra(const QuasiTrigR& r) {
  const TensorPoly extra = r.p - r_standard(r.n).p;
  std::pair<TensorPoly, TensorPoly> out{TensorPoly(r.n, 2),
                                        TensorPoly(r.n, 2)};
  const auto terms = extra.terms();
  for (const auto& [key, coeff] : terms) {
    if (key[0] == key[1] && key[2] == key[3])
      out.second.add(key, coeff);
    else
      out.first.add(key, coeff);
  }
  return out;
}

}  // namespace

std::string render_json(const QuasiTrigR& r, int c) {
  nlohmann::ordered_json doc;
  doc["schema"] = kSchema;
  doc["n"] = r.n;
  doc["c"] = c;
  doc["singular"] = kSingular;
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  const auto term_map = r.p.terms();
  for (const auto& [key, coeff] : term_map) {
    nlohmann::ordered_json term;
    term["left"] = {static_cast<int>(key[0]), static_cast<int>(key[1])};
    term["right"] = {static_cast<int>(key[2]), static_cast<int>(key[3])};
    term["coeff"] = coeff.str();
    terms.push_back(term);
  }
  doc["poly"] = terms;
  return doc.dump();
}

ParsedDocument parse_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("document: invalid JSON: ") +
                                e.what());
  }
  if (!doc.is_object())
    throw std::invalid_argument("document: expected a JSON object");
  for (const char* key : {"schema", "n", "c", "singular", "poly"})
    if (!doc.contains(key))
      throw std::invalid_argument(std::string("document: missing key ") + key);
  if (!doc["schema"].is_string() || doc["schema"].get<std::string>() != kSchema)
    throw std::invalid_argument("document: unsupported schema");
  if (!doc["singular"].is_string() ||
      doc["singular"].get<std::string>() != kSingular)
    throw std::invalid_argument("document: unsupported singular part");
  if (!doc["n"].is_number_integer() || !doc["c"].is_number_integer())
    throw std::invalid_argument("document: n and c must be integers");
  const int n = doc["n"].get<int>();
  if (n < 2) throw std::invalid_argument("document: n must be at least 2");
  ParsedDocument out{QuasiTrigR{n, TensorPoly(n, 2)}, doc["c"].get<int>()};
  if (!doc["poly"].is_array())
    throw std::invalid_argument("document: poly must be an array");
  for (const auto& term : doc["poly"]) {
    if (!term.is_object() || !term.contains("left") || !term.contains("right") ||
        !term.contains("coeff"))
      throw std::invalid_argument(
          "document: poly terms need left, right and coeff");
    auto read_pair = [&](const nlohmann::json& arr) {
      if (!arr.is_array() || arr.size() != 2 || !arr[0].is_number_integer() ||
          !arr[1].is_number_integer())
        throw std::invalid_argument(
            "document: unit indices must be pairs of integers");
      const int i = arr[0].get<int>();
      const int j = arr[1].get<int>();
      if (i < 1 || i > out.r.n || j < 1 || j > out.r.n)
        throw std::invalid_argument("document: unit index out of range");
      return std::pair<int, int>(i, j);
    };
    const auto [i1, j1] = read_pair(term["left"]);
    const auto [i2, j2] = read_pair(term["right"]);
    if (!term["coeff"].is_string())
      throw std::invalid_argument("document: coeff must be a string");
    Poly coeff;
    try {
      coeff = Poly::parse(term["coeff"].get<std::string>());
    } catch (const std::exception& e) {
      throw std::invalid_argument(std::string("document: bad coefficient: ") +
                                  e.what());
    }
    out.r.p.add(unit_key(i1, j1, i2, j2), coeff);
  }
  return out;
}

std::string render_latex(const QuasiTrigR& r) {
  const auto [u, t] = split_extra(r);
  std::string out =
      "r(x,y) = \\frac{x}{y-x}\\,\\gamma"
      " + \\frac{1}{2}\\gamma"
      " + \\frac{1}{2}\\sum_{i<j} e_{ij} \\wedge e_{ji}";
  if (!u.is_zero()) out += latex_tensor_terms(u);
  if (!t.is_zero()) out += latex_tensor_terms(t);
  return out;
}

std::string render_text(const QuasiTrigR& r) {
  const auto [u, t] = split_extra(r);
  std::ostringstream out;
  out << "r(x,y) = x/(y-x)*gamma + (gamma + W)/2 + u + t\n";
  out << "u = " << (u.is_zero() ? "0" : u.str()) << "\n";
  out << "t = " << (t.is_zero() ? "0" : t.str()) << "\n";
  return out.str();
}

OutputDocument render_document(const QuasiTrigR& r, int c,
                               const std::string& format) {
  if (format == "json") return OutputDocument{format, render_json(r, c)};
  if (format == "latex") return OutputDocument{format, render_latex(r) + "\n"};
  if (format == "text") return OutputDocument{format, render_text(r)};
  throw std::invalid_argument("render: unknown format " + format);
}

}  // namespace qtr
