#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "iia/catalog.hpp"
#include "iia/lie_algebra.hpp"
#include "json.hpp"

namespace iia {

namespace expr_detail {

// Arithmetic expressions for parameter values: + - * / ( ), decimal and
// rational literals, and the unary functions log, exp, sqrt.
class Evaluator {
 public:
  explicit Evaluator(const std::string& text) : text_(text) {}

  double run() {
    double v = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(pos_, "trailing input in expression");
    return v;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  double expr() {
    double v = term();
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        v += term();
      } else if (peek() == '-') {
        ++pos_;
        v -= term();
      } else {
        return v;
      }
    }
  }

  double term() {
    double v = factor();
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        v *= factor();
      } else if (peek() == '/') {
        size_t at = pos_++;
        double d = factor();
        if (d == 0.0) throw ParseError(at, "division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }

  double factor() {
    skip_ws();
    if (peek() == '-') {
      ++pos_;
      return -factor();
    }
    if (peek() == '+') {
      ++pos_;
      return factor();
    }
    return primary();
  }

  double primary() {
    skip_ws();
    if (peek() == '(') {
      size_t at = pos_++;
      double v = expr();
      skip_ws();
      if (peek() != ')') throw ParseError(at, "unbalanced '('");
      ++pos_;
      return v;
    }
    if ((peek() >= '0' && peek() <= '9') || peek() == '.') {
      size_t start = pos_;
      while ((peek() >= '0' && peek() <= '9') || peek() == '.') ++pos_;
      try {
        return std::stod(text_.substr(start, pos_ - start));
      } catch (const std::exception&) {
        throw ParseError(start, "bad numeric literal");
      }
    }
    if ((peek() >= 'a' && peek() <= 'z') || (peek() >= 'A' && peek() <= 'Z')) {
      size_t start = pos_;
      std::string name;
      while ((peek() >= 'a' && peek() <= 'z') || (peek() >= 'A' && peek() <= 'Z') || (peek() >= '0' && peek() <= '9'))
        name += text_[pos_++];
      skip_ws();
      if (peek() != '(') throw ParseError(start, "unknown name '" + name + "' (expected a function call)");
      ++pos_;
      double a = expr();
      skip_ws();
      if (peek() != ')') throw ParseError(pos_, "expected ')' closing call");
      ++pos_;
      if (name == "log") {
        if (a <= 0.0) throw ParseError(start, "log needs a positive argument");
        return std::log(a);
      }
      if (name == "exp") return std::exp(a);
      if (name == "sqrt") {
        if (a < 0.0) throw ParseError(start, "sqrt needs a nonnegative argument");
        return std::sqrt(a);
      }
      throw ParseError(start, "unknown function '" + name + "'");
    }
    throw ParseError(pos_, "expected a value");
  }

  const std::string& text_;
  size_t pos_ = 0;
};

inline bool try_parse_rational_literal(const std::string& text, Rat& out) {
  size_t pos = 0;
  auto at_end = [&] { return pos == text.size(); };
  bool neg = false;
  if (!at_end() && (text[pos] == '+' || text[pos] == '-')) neg = text[pos++] == '-';
  std::string intpart, fracpart, denpart;
  while (!at_end() && text[pos] >= '0' && text[pos] <= '9') intpart += text[pos++];
  if (intpart.empty()) return false;
  if (!at_end() && text[pos] == '.') {
    ++pos;
    while (!at_end() && text[pos] >= '0' && text[pos] <= '9') fracpart += text[pos++];
    if (fracpart.empty()) return false;
  } else if (!at_end() && text[pos] == '/') {
    ++pos;
    while (!at_end() && text[pos] >= '0' && text[pos] <= '9') denpart += text[pos++];
    if (denpart.empty() || denpart == "0") return false;
  }
  if (!at_end()) return false;
  out = salamon_detail::scalar_from_parts<Rat>(text, 0, intpart, fracpart, denpart);
  if (neg) out = -out;
  return true;
}

}  // namespace expr_detail

inline double eval_param_expr(const std::string& text) { return expr_detail::Evaluator(text).run(); }

template <class S>
struct LoadedAlgebra {
  LieAlgebraSpec<S> spec;
  KForm<S> omega{2};
};

// Algebra description files: {"name": ..., "salamon": "(...)", "params":
// {name: expression}, "omega": "e12+e34+e56"}. "params" and "omega" are
// optional; omega defaults to the standard form. In rational mode every
// parameter value must itself be a rational literal.
template <class S>
LoadedAlgebra<S> parse_algebra_json(const std::string& text, const std::string& origin) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(origin + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("salamon") || !j["salamon"].is_string())
    throw std::runtime_error(origin + ": expected an object with a \"salamon\" string");
  std::string name = j.value("name", std::string("unnamed"));

  std::map<std::string, S> params;
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw std::runtime_error(origin + ": \"params\" must be an object");
    for (auto it = j["params"].begin(); it != j["params"].end(); ++it) {
      if (!it.value().is_string() && !it.value().is_number())
        throw std::runtime_error(origin + ": parameter '" + it.key() + "' must be a string or number");
      std::string vtext = it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
      if constexpr (std::is_same_v<S, Rat>) {
        Rat q;
        if (!expr_detail::try_parse_rational_literal(vtext, q))
          throw std::runtime_error(origin + ": parameter '" + it.key() + "' = \"" + vtext +
                                   "\" is not a rational literal; exact arithmetic cannot use this algebra");
        params[it.key()] = q;
      } else {
        params[it.key()] = eval_param_expr(vtext);
      }
    }
  }

  LoadedAlgebra<S> out;
  out.spec = LieAlgebraSpec<S>(name, parse_salamon<S>(j["salamon"].get<std::string>(), params));
  if (j.contains("omega")) {
    if (!j["omega"].is_string()) throw std::runtime_error(origin + ": \"omega\" must be a string");
    out.omega = parse_two_form<S>(j["omega"].get<std::string>(), params);
  } else {
    out.omega = standard_omega<S>();
  }
  return out;
}

template <class S>
LoadedAlgebra<S> load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open algebra file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_algebra_json<S>(ss.str(), path);
}

}  // namespace iia
