#ifndef LCYCLE_SERIALIZE_HPP
#define LCYCLE_SERIALIZE_HPP

/// \file
/// JSON encoding of descriptors and systems.
///
/// FunctionDescriptor:
///   {"kind":"polynomial","coeffs":[...]} | {"kind":"gauss_bump","c":..,"d":..,"e":..}
///   | {"kind":"negated","inner":..} | {"kind":"sum","terms":[..]}
///   | {"kind":"product","factors":[..]} | {"kind":"shifted","offset":..,"inner":..}
///   | {"kind":"quotient","num":..,"den":..}
/// BivariateDescriptor:
///   {"kind":"special_form","psi1":..,"psi2":..} | {"kind":"lienard","f":..}
///   | {"kind":"scaled","k":..,"inner":..} | {"kind":"y_quotient","inner":..,"den":..}
/// PlanarSystem:
///   {"phi":FD,"g":FD,"F":BD,"domain":[a,b],"psi1":FD,"psi2":FD}
/// Infinite domain endpoints are written as null and read from null or from
/// the strings "-inf"/"inf".

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lcycle/error.hpp"
#include "lcycle/funcdesc.hpp"
#include "lcycle/system.hpp"

namespace lcycle {

/// Malformed JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field \"") + key + "\" in " + j.dump());
  }
  return j.at(key);
}

inline double number(const nlohmann::json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number()) throw ParseError(std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

inline double endpoint(const nlohmann::json& v) {
  if (v.is_null()) return kInf;
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    throw ParseError("bad domain endpoint \"" + s + "\"");
  }
  if (!v.is_number()) throw ParseError("domain endpoints must be numbers, null or \"inf\"");
  return v.get<double>();
}

}  // namespace detail

inline nlohmann::json to_json(const FunctionDescriptor& f) {
  using nlohmann::json;
  struct Visitor {
    json operator()(const fd::Polynomial& p) const { return {{"kind", "polynomial"}, {"coeffs", p.coeffs}}; }
    json operator()(const fd::GaussBump& b) const {
      return {{"kind", "gauss_bump"}, {"c", b.c}, {"d", b.d}, {"e", b.e}};
    }
    json operator()(const std::shared_ptr<const fd::Negated>& n) const {
      return {{"kind", "negated"}, {"inner", to_json(n->inner)}};
    }
    json operator()(const std::shared_ptr<const fd::Sum>& n) const {
      json terms = json::array();
      for (const auto& t : n->terms) terms.push_back(to_json(t));
      return {{"kind", "sum"}, {"terms", terms}};
    }
    json operator()(const std::shared_ptr<const fd::Product>& n) const {
      json factors = json::array();
      for (const auto& t : n->factors) factors.push_back(to_json(t));
      return {{"kind", "product"}, {"factors", factors}};
    }
    json operator()(const std::shared_ptr<const fd::ShiftedArg>& n) const {
      return {{"kind", "shifted"}, {"offset", n->offset}, {"inner", to_json(n->inner)}};
    }
    json operator()(const std::shared_ptr<const fd::Quotient>& n) const {
      return {{"kind", "quotient"}, {"num", to_json(n->num)}, {"den", to_json(n->den)}};
    }
  };
  return std::visit(Visitor{}, f.node());
}

inline FunctionDescriptor function_from_json(const nlohmann::json& j) {
  using detail::field;
  using detail::number;
  const auto& kind_v = field(j, "kind");
  if (!kind_v.is_string()) throw ParseError("\"kind\" must be a string");
  const auto kind = kind_v.get<std::string>();
  auto list = [&](const char* key) {
    const auto& arr = field(j, key);
    if (!arr.is_array()) throw ParseError(std::string("field \"") + key + "\" must be an array");
    std::vector<FunctionDescriptor> out;
    for (const auto& e : arr) out.push_back(function_from_json(e));
    return out;
  };
  if (kind == "polynomial") {
    const auto& c = field(j, "coeffs");
    if (!c.is_array()) throw ParseError("\"coeffs\" must be an array");
    std::vector<double> coeffs;
    for (const auto& v : c) {
      if (!v.is_number()) throw ParseError("polynomial coefficients must be numbers");
      coeffs.push_back(v.get<double>());
    }
    return FunctionDescriptor::polynomial(std::move(coeffs));
  }
  if (kind == "gauss_bump") return FunctionDescriptor::gauss_bump(number(j, "c"), number(j, "d"), number(j, "e"));
  if (kind == "negated") return FunctionDescriptor::negated(function_from_json(field(j, "inner")));
  if (kind == "sum") return FunctionDescriptor::sum(list("terms"));
  if (kind == "product") return FunctionDescriptor::product(list("factors"));
  if (kind == "shifted") return FunctionDescriptor::shifted(function_from_json(field(j, "inner")), number(j, "offset"));
  if (kind == "quotient") {
    return FunctionDescriptor::quotient(function_from_json(field(j, "num")), function_from_json(field(j, "den")));
  }
  throw ParseError("unknown function kind \"" + kind + "\"");
}

inline nlohmann::json to_json(const BivariateDescriptor& F) {
  using nlohmann::json;
  struct Visitor {
    json operator()(const bd::SpecialForm& s) const {
      return {{"kind", "special_form"}, {"psi1", to_json(s.psi1)}, {"psi2", to_json(s.psi2)}};
    }
    json operator()(const bd::Lienard& l) const { return {{"kind", "lienard"}, {"f", to_json(l.f)}}; }
    json operator()(const std::shared_ptr<const bd::Scaled>& s) const {
      return {{"kind", "scaled"}, {"k", s->k}, {"inner", to_json(s->inner)}};
    }
    json operator()(const std::shared_ptr<const bd::YQuotient>& q) const {
      return {{"kind", "y_quotient"}, {"inner", to_json(q->inner)}, {"den", to_json(q->den)}};
    }
  };
  return std::visit(Visitor{}, F.node());
}

inline BivariateDescriptor bivariate_from_json(const nlohmann::json& j) {
  using detail::field;
  const auto& kind_v = field(j, "kind");
  if (!kind_v.is_string()) throw ParseError("\"kind\" must be a string");
  const auto kind = kind_v.get<std::string>();
  if (kind == "special_form") {
    return BivariateDescriptor::special_form(function_from_json(field(j, "psi1")),
                                             function_from_json(field(j, "psi2")));
  }
  if (kind == "lienard") return BivariateDescriptor::lienard(function_from_json(field(j, "f")));
  if (kind == "scaled") return BivariateDescriptor::scaled(bivariate_from_json(field(j, "inner")), detail::number(j, "k"));
  if (kind == "y_quotient") {
    return BivariateDescriptor::y_quotient(bivariate_from_json(field(j, "inner")),
                                           function_from_json(field(j, "den")));
  }
  throw ParseError("unknown bivariate kind \"" + kind + "\"");
}

inline nlohmann::json to_json(const PlanarSystem& sys) {
  using nlohmann::json;
  auto end = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json j = {{"phi", to_json(sys.phi())},
            {"g", to_json(sys.g())},
            {"F", to_json(sys.F())},
            {"domain", json::array({end(sys.domain().a), end(sys.domain().b)})}};
  if (sys.has_curves()) {
    j["psi1"] = to_json(sys.psi(1));
    j["psi2"] = to_json(sys.psi(2));
  }
  return j;
}

inline PlanarSystem system_from_json(const nlohmann::json& j) {
  using detail::field;
  Domain dom;
  if (j.is_object() && j.contains("domain")) {
    const auto& d = j.at("domain");
    if (!d.is_array() || d.size() != 2) throw ParseError("\"domain\" must be [a, b]");
    dom.a = detail::endpoint(d[0]);
    dom.b = detail::endpoint(d[1]);
    if (d[0].is_null()) dom.a = -kInf;
  }
  std::optional<FunctionDescriptor> psi1;
  std::optional<FunctionDescriptor> psi2;
  if (j.contains("psi1")) psi1 = function_from_json(j.at("psi1"));
  if (j.contains("psi2")) psi2 = function_from_json(j.at("psi2"));
  return PlanarSystem(function_from_json(field(j, "phi")), function_from_json(field(j, "g")),
                      bivariate_from_json(field(j, "F")), dom, std::move(psi1), std::move(psi2));
}

}  // namespace lcycle

#endif  // LCYCLE_SERIALIZE_HPP
