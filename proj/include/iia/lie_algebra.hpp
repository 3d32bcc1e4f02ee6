#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iia/kform.hpp"
#include "iia/linalg.hpp"

namespace iia {

// Parse failure with the byte offset into the original string.
class ParseError : public std::runtime_error {
 public:
  ParseError(size_t pos, const std::string& what)
      : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + what), pos_(pos) {}
  size_t position() const { return pos_; }

 private:
  size_t pos_;
};

// A 6-dimensional Lie algebra presented through the duals: d e^k are 2-forms,
// d e^k = -1/2 c^k_ij e^i e^j. The differential extends to all degrees by the
// graded Leibniz rule; d*d = 0 is exactly the Jacobi identity.
template <class S>
class LieAlgebraSpec {
 public:
  LieAlgebraSpec() : d1_{KForm<S>(2), KForm<S>(2), KForm<S>(2), KForm<S>(2), KForm<S>(2), KForm<S>(2)} {}
  LieAlgebraSpec(std::string name, std::array<KForm<S>, 6> d_images)
      : name_(std::move(name)), d1_(std::move(d_images)) {
    for (const auto& f : d1_)
      if (f.degree() != 2) throw std::invalid_argument("d images must be 2-forms");
  }

  const std::string& name() const { return name_; }
  const std::array<KForm<S>, 6>& d_images() const { return d1_; }

  // c^k_ij, antisymmetric in (i,j); [e_i, e_j] = c^k_ij e_k.
  S structure_const(int k, int i, int j) const {
    if (i == j) return S(0);
    Blade b = static_cast<Blade>(blade_bit(i) | blade_bit(j));
    S c = -d1_[k - 1].coeff(b);
    return i < j ? c : S(-1) * c;
  }

  std::array<S, 6> bracket(int i, int j) const {
    std::array<S, 6> out{};
    for (int k = 1; k <= kDim; ++k) out[k - 1] = structure_const(k, i, j);
    return out;
  }

  const KForm<S>& d_of_blade(Blade b) const {
    auto& slot = cache_[b];
    if (!slot) slot = compute_d_blade(b);
    return *slot;
  }

  KForm<S> d(const KForm<S>& a) const {
    if (a.degree() == kDim) return KForm<S>(kDim);  // nothing above top degree; treat as 0 in top
    KForm<S> out(a.degree() + 1);
    for (const auto& [b, v] : a.coeffs()) out += v * d_of_blade(b);
    return out;
  }

 private:
  KForm<S> compute_d_blade(Blade b) const {
    int k = blade_degree(b);
    if (k == 0) return KForm<S>(1);
    if (k == 1) {
      for (int i = 1; i <= kDim; ++i)
        if (b == blade_bit(i)) return d1_[i - 1];
    }
    // d(e^i ^ rest) = d e^i ^ rest - e^i ^ d(rest), i the smallest index
    int i = 1;
    while (!(b & blade_bit(i))) ++i;
    Blade rest = static_cast<Blade>(b & ~blade_bit(i));
    KForm<S> rest_form = KForm<S>::monomial(rest, S(1));
    KForm<S> out = wedge(d1_[i - 1], rest_form);
    KForm<S> drest = d_of_blade(rest);
    if (!drest.empty()) out -= wedge(KForm<S>::monomial(blade_bit(i), S(1)), drest);
    return out;
  }

  std::string name_;
  std::array<KForm<S>, 6> d1_;
  mutable std::array<std::optional<KForm<S>>, 64> cache_;
};

// Floating-point copy of an exact presentation, for the numeric paths.
inline LieAlgebraSpec<double> approximate(const LieAlgebraSpec<Rat>& s) {
  const auto& im = s.d_images();
  return LieAlgebraSpec<double>(
      s.name(), {approximate(im[0]), approximate(im[1]), approximate(im[2]),
                 approximate(im[3]), approximate(im[4]), approximate(im[5])});
}

namespace salamon_detail {

inline bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;
}

template <class S>
S scalar_from_parts(const std::string& text, size_t pos, const std::string& intpart,
                    const std::string& fracpart, const std::string& denpart);

template <>
inline Rat scalar_from_parts<Rat>(const std::string&, size_t, const std::string& intpart,
                                  const std::string& fracpart, const std::string& denpart) {
  // explicit base 10: the default mpz string constructor auto-detects the
  // base, which turns a leading zero into octal
  if (!denpart.empty()) {
    Rat q{mpz_class(intpart, 10), mpz_class(denpart, 10)};
    q.canonicalize();
    return q;
  }
  if (!fracpart.empty()) {
    mpz_class num(intpart + fracpart, 10);
    mpz_class den(1);
    for (size_t i = 0; i < fracpart.size(); ++i) den *= 10;
    Rat q{num, den};
    q.canonicalize();
    return q;
  }
  return Rat(mpz_class(intpart, 10));
}

template <>
inline double scalar_from_parts<double>(const std::string&, size_t, const std::string& intpart,
                                        const std::string& fracpart, const std::string& denpart) {
  if (!denpart.empty()) return std::stod(intpart) / std::stod(denpart);
  if (!fracpart.empty()) return std::stod(intpart + "." + fracpart);
  return std::stod(intpart);
}

}  // namespace salamon_detail

namespace salamon_detail {

template <class S>
class Parser {
 public:
  Parser(const std::string& text, const std::map<std::string, S>& params) : text_(text), params_(params) {}

  // A single 2-form expression, e.g. "e12+e34+e56".
  KForm<S> run_two_form() {
    skip_ws();
    KForm<S> out = parse_field();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(pos_, "trailing input after the 2-form");
    return out;
  }

  std::array<KForm<S>, 6> run() {
    std::array<KForm<S>, 6> out{KForm<S>(2), KForm<S>(2), KForm<S>(2), KForm<S>(2), KForm<S>(2), KForm<S>(2)};
    skip_ws();
    bool parens = peek() == '(';
    if (parens) ++pos_;
    for (int k = 0; k < kDim; ++k) {
      out[k] = parse_field();
      skip_ws();
      if (k < kDim - 1) {
        if (peek() != ',') throw ParseError(pos_, "expected ',' between fields");
        ++pos_;
      }
    }
    skip_ws();
    if (parens) {
      if (peek() != ')') throw ParseError(pos_, "expected ')'");
      ++pos_;
      skip_ws();
    }
    if (pos_ != text_.size()) throw ParseError(pos_, "trailing input after the six fields");
    return out;
  }

 private:
  char peek(size_t ahead = 0) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }
  bool is_digit(char c) const { return c >= '0' && c <= '9'; }

  bool looks_like_monomial() const {
    if (peek() != 'e') return false;
    return peek(1) == '^' || is_digit(peek(1));
  }

  Blade parse_monomial() {
    size_t start = pos_;
    ++pos_;  // 'e'
    bool braced = false;
    if (peek() == '^') {
      ++pos_;
      if (peek() != '{') throw ParseError(pos_, "expected '{' after '^'");
      ++pos_;
      braced = true;
    }
    std::string digits;
    while (is_digit(peek())) digits += text_[pos_++];
    if (braced) {
      if (peek() != '}') throw ParseError(pos_, "expected '}' closing the index braces");
      ++pos_;
    }
    if (digits.size() < 2) throw ParseError(start, "monomial needs two indices, e.g. e15");
    if (digits.size() > 2) throw ParseError(start, "too many indices for a 2-form monomial");
    int i = digits[0] - '0';
    int j = digits[1] - '0';
    if (i < 1 || i > kDim || j < 1 || j > kDim) throw ParseError(start, "index out of range 1..6");
    if (i == j) throw ParseError(start, "repeated index in monomial");
    if (i > j) throw ParseError(start, "indices must be ascending");
    return static_cast<Blade>(blade_bit(i) | blade_bit(j));
  }

  // [sign][scalar]['*']monomial; a bare "0" makes an empty contribution.
  // Returns false when no term could start here (end of field).
  bool parse_term(KForm<S>& field, bool first) {
    skip_ws();
    S sign(1);
    bool have_sign = false;
    if (peek() == '+' || peek() == '-') {
      if (peek() == '-') sign = S(-1);
      ++pos_;
      have_sign = true;
      skip_ws();
    }
    if (!first && !have_sign) return false;
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of input in field");

    if (looks_like_monomial()) {
      field.add(parse_monomial(), sign);
      return true;
    }
    if (is_digit(peek())) {
      size_t numpos = pos_;
      std::string intpart, fracpart, denpart;
      while (is_digit(peek())) intpart += text_[pos_++];
      if (peek() == '.') {
        ++pos_;
        while (is_digit(peek())) fracpart += text_[pos_++];
        if (fracpart.empty()) throw ParseError(pos_, "digits expected after decimal point");
      } else if (peek() == '/') {
        ++pos_;
        while (is_digit(peek())) denpart += text_[pos_++];
        if (denpart.empty()) throw ParseError(pos_, "digits expected after '/'");
        if (denpart == "0") throw ParseError(numpos, "zero denominator");
      }
      S coeff = sign * scalar_from_parts<S>(text_, numpos, intpart, fracpart, denpart);
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
      }
      if (looks_like_monomial()) {
        field.add(parse_monomial(), coeff);
      } else if (intpart == "0" && fracpart.empty() && denpart.empty()) {
        // bare zero term
      } else {
        throw ParseError(pos_, "expected monomial after scalar");
      }
      return true;
    }
    if (is_name_char(peek())) {
      size_t npos = pos_;
      std::string nm;
      while (is_name_char(peek())) nm += text_[pos_++];
      auto it = params_.find(nm);
      if (it == params_.end()) throw ParseError(npos, "unknown parameter '" + nm + "'");
      S coeff = sign * it->second;
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
      }
      if (!looks_like_monomial()) throw ParseError(pos_, "expected monomial after parameter");
      field.add(parse_monomial(), coeff);
      return true;
    }
    throw ParseError(pos_, "expected a term");
  }

  KForm<S> parse_field() {
    KForm<S> field(2);
    bool first = true;
    while (parse_term(field, first)) first = false;
    return field;
  }

  const std::string& text_;
  const std::map<std::string, S>& params_;
  size_t pos_ = 0;
};

// %.17g but without exponent notation, so the Salamon grammar can read it back.
inline std::string decimal_str(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  std::string s(buf);
  if (s.find('e') == std::string::npos && s.find('E') == std::string::npos) return s;
  std::snprintf(buf, sizeof(buf), "%.17f", x);
  s = buf;
  size_t last = s.find_last_not_of('0');
  if (last != std::string::npos && s[last] == '.') ++last;
  return s.substr(0, last + 1);
}

inline std::string coeff_prefix(const Rat& c) {
  Rat a = abs(c);
  if (a == 1) return sgn(c) < 0 ? "-" : "";
  return (sgn(c) < 0 ? "-" : "") + a.get_str() + "*";
}

inline std::string coeff_prefix(double c) {
  double a = std::fabs(c);
  if (a == 1.0) return c < 0 ? "-" : "";
  return (c < 0 ? "-" : "") + decimal_str(a) + "*";
}

}  // namespace salamon_detail

// Parser for the d-image tuple notation "(0,0,0,e15,0,e13)". Accepted term
// shapes: [sign][scalar]['*']monomial with monomial "e15" or "e^{15}", scalar a
// rational or decimal literal or a declared parameter name. Whitespace-free
// grammar; errors carry the byte position.
template <class S>
std::array<KForm<S>, 6> parse_salamon(const std::string& text, const std::map<std::string, S>& params = {}) {
  salamon_detail::Parser<S> p(text, params);
  return p.run();
}

// Same term grammar, one 2-form instead of a 6-tuple (used for omega).
template <class S>
KForm<S> parse_two_form(const std::string& text, const std::map<std::string, S>& params = {}) {
  salamon_detail::Parser<S> p(text, params);
  return p.run_two_form();
}

// Canonical printing: fields in order, terms in lex blade order, no spaces.
// parse(print(spec)) == spec for numeric coefficients.
template <class S>
std::string print_salamon(const LieAlgebraSpec<S>& spec) {
  std::string out = "(";
  for (int k = 0; k < kDim; ++k) {
    if (k) out += ",";
    const auto& f = spec.d_images()[k];
    if (f.empty()) {
      out += "0";
      continue;
    }
    bool first = true;
    for (const auto& [b, v] : f.coeffs()) {
      std::string pre = salamon_detail::coeff_prefix(v);
      if (!first && pre.rfind('-', 0) != 0) out += "+";
      out += pre + blade_str(b);
      first = false;
    }
  }
  return out + ")";
}

struct ValidationReport {
  bool jacobi_ok = false;
  bool unimodular_ok = false;
  bool omega_closed = false;
  bool omega_nondegenerate = false;
  std::string detail;

  bool ok() const { return jacobi_ok && unimodular_ok && omega_closed && omega_nondegenerate; }
};

// d*d = 0 on generators (Jacobi) and sum_i c^i_ij = 0 (unimodularity), plus
// the symplectic conditions for the supplied 2-form.
template <class S>
ValidationReport validate(const LieAlgebraSpec<S>& spec, const KForm<S>& omega) {
  ValidationReport rep;
  rep.jacobi_ok = true;
  for (int k = 1; k <= kDim; ++k) {
    KForm<S> dd = spec.d(spec.d_images()[k - 1]);
    if (!dd.empty()) {
      rep.jacobi_ok = false;
      rep.detail += "d(d e" + std::to_string(k) + ") = " + form_str(dd) + "; ";
    }
  }
  rep.unimodular_ok = true;
  for (int j = 1; j <= kDim; ++j) {
    S tr(0);
    for (int i = 1; i <= kDim; ++i) tr += spec.structure_const(i, i, j);
    if (!is_zero(tr)) {
      rep.unimodular_ok = false;
      rep.detail += "trace ad failure at j=" + std::to_string(j) + "; ";
    }
  }
  KForm<S> dw = spec.d(omega);
  rep.omega_closed = dw.empty();
  if (!rep.omega_closed) rep.detail += "d omega = " + form_str(dw) + "; ";
  KForm<S> vol = wedge(wedge(omega, omega), omega);
  rep.omega_nondegenerate = !is_zero(vol.coeff(kFullBlade));
  if (!rep.omega_nondegenerate) rep.detail += "omega^3 = 0; ";
  return rep;
}

// Ideal test for a span of basis vectors: [g, W] must land back in W, which
// for coordinate spans means every bracket component outside the span is 0.
template <class S>
bool kernel_distribution_is_ideal(const LieAlgebraSpec<S>& spec, const std::vector<int>& indices) {
  std::array<bool, kDim + 1> in_w{};
  for (int i : indices) {
    if (i < 1 || i > kDim) throw std::out_of_range("basis index out of range");
    in_w[i] = true;
  }
  for (int j = 1; j <= kDim; ++j)
    for (int i = 1; i <= kDim; ++i) {
      if (!in_w[i]) continue;
      for (int k = 1; k <= kDim; ++k)
        if (!in_w[k] && !is_zero(spec.structure_const(k, j, i))) return false;
    }
  return true;
}

// General subspace version (rows are vectors in coordinates).
template <class S>
bool subspace_is_ideal(const LieAlgebraSpec<S>& spec, const Mat<S>& vectors, const S& eps = S(0)) {
  Mat<S> basis = row_space(vectors, eps);
  for (int j = 1; j <= kDim; ++j) {
    for (const auto& w : basis) {
      std::vector<S> u(kDim, S(0));
      for (int k = 1; k <= kDim; ++k)
        for (int i = 1; i <= kDim; ++i)
          if (!is_zero(w[i - 1])) u[k - 1] += w[i - 1] * spec.structure_const(k, j, i);
      if (!in_row_span(basis, u, eps)) return false;
    }
  }
  return true;
}

}  // namespace iia
