#pragma once

#include <array>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "iia/blade.hpp"
#include "iia/rational.hpp"

namespace iia {

// Homogeneous k-form with sparse blade -> coefficient storage. Exact zeros are
// pruned so that equality of forms is equality of the maps.
template <class S>
class KForm {
 public:
  using CoeffMap = std::map<Blade, S, BladeLexLess>;

  explicit KForm(int degree = 0) : deg_(degree) {
    if (degree < 0 || degree > kDim) throw std::out_of_range("form degree out of range");
  }

  static KForm monomial(Blade b, const S& coeff) {
    KForm f(blade_degree(b));
    f.add(b, coeff);
    return f;
  }

  int degree() const { return deg_; }
  bool empty() const { return c_.empty(); }
  const CoeffMap& coeffs() const { return c_; }

  void add(Blade b, const S& v) {
    if (blade_degree(b) != deg_) throw std::invalid_argument("blade degree mismatch");
    if (is_zero(v)) return;
    auto it = c_.find(b);
    if (it == c_.end()) {
      c_.emplace(b, v);
    } else {
      it->second += v;
      if (is_zero(it->second)) c_.erase(it);
    }
  }

  S coeff(Blade b) const {
    auto it = c_.find(b);
    return it == c_.end() ? S(0) : it->second;
  }

  KForm& operator+=(const KForm& o) {
    require_same_degree(o);
    for (const auto& [b, v] : o.c_) add(b, v);
    return *this;
  }
  KForm& operator-=(const KForm& o) {
    require_same_degree(o);
    for (const auto& [b, v] : o.c_) add(b, S(-1) * v);
    return *this;
  }
  KForm& operator*=(const S& s) {
    if (is_zero(s)) {
      c_.clear();
      return *this;
    }
    for (auto& [b, v] : c_) v *= s;
    return *this;
  }

  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator*(KForm a, const S& s) { return a *= s; }
  friend KForm operator*(const S& s, KForm a) { return a *= s; }
  friend KForm operator-(KForm a) { return a *= S(-1); }

  bool operator==(const KForm& o) const { return deg_ == o.deg_ && c_ == o.c_; }
  bool operator!=(const KForm& o) const { return !(*this == o); }

  // max |coefficient|; 0 for the zero form
  S linf_norm() const {
    S m(0);
    for (const auto& [b, v] : c_) {
      S a = abs_val(v);
      if (m < a) m = a;
    }
    return m;
  }

  S coeff_norm_sq() const {
    S acc(0);
    for (const auto& [b, v] : c_) acc += v * v;
    return acc;
  }

 private:
  void require_same_degree(const KForm& o) const {
    if (deg_ != o.deg_) throw std::invalid_argument("form degree mismatch");
  }

  int deg_;
  CoeffMap c_;
};

template <class S>
KForm<S> wedge(const KForm<S>& a, const KForm<S>& b) {
  int d = a.degree() + b.degree();
  if (d > kDim) throw std::invalid_argument("wedge degree exceeds dimension");
  KForm<S> out(d);
  for (const auto& [ba, va] : a.coeffs()) {
    for (const auto& [bb, vb] : b.coeffs()) {
      int sg = wedge_sign(ba, bb);
      if (sg == 0) continue;
      out.add(static_cast<Blade>(ba | bb), S(sg) * va * vb);
    }
  }
  return out;
}

// Interior product with the basis vector e_i.
template <class S>
KForm<S> interior(int index1, const KForm<S>& a) {
  if (a.degree() == 0) return KForm<S>(0);
  KForm<S> out(a.degree() - 1);
  Blade bit = blade_bit(index1);
  for (const auto& [b, v] : a.coeffs()) {
    int sg = interior_sign(index1, b);
    if (sg == 0) continue;
    out.add(static_cast<Blade>(b & ~bit), S(sg) * v);
  }
  return out;
}

// Interior product with a general vector v = sum v_i e_i.
template <class S>
KForm<S> interior(const std::array<S, 6>& v, const KForm<S>& a) {
  if (a.degree() == 0) return KForm<S>(0);
  KForm<S> out(a.degree() - 1);
  for (int i = 1; i <= kDim; ++i) {
    if (is_zero(v[i - 1])) continue;
    out += v[i - 1] * interior(i, a);
  }
  return out;
}

// Canonical isomorphism from 5-forms to vector-valued 6-forms:
// a |-> sum_i e_i (x) (e^i ^ a). Returns the vector of e^{123456}-coefficients.
template <class S>
std::array<S, 6> five_form_to_vector(const KForm<S>& a) {
  if (a.degree() != 5) throw std::invalid_argument("five_form_to_vector needs a 5-form");
  std::array<S, 6> out{};
  for (int i = 1; i <= kDim; ++i) {
    KForm<S> top = wedge(KForm<S>::monomial(blade_bit(i), S(1)), a);
    out[i - 1] = top.coeff(kFullBlade);
  }
  return out;
}

// Inverse direction of the same isomorphism: v |-> sum_i v_i iota_{e_i} e^{123456}.
template <class S>
KForm<S> vector_to_five_form(const std::array<S, 6>& v) {
  KForm<S> out(5);
  for (int i = 1; i <= kDim; ++i) {
    int sg = interior_sign(i, kFullBlade);
    out.add(static_cast<Blade>(kFullBlade & ~blade_bit(i)), S(sg) * v[i - 1]);
  }
  return out;
}

// Exact conversion (every double is a rational).
inline KForm<Rat> rationalize(const KForm<double>& f) {
  KForm<Rat> out(f.degree());
  for (const auto& [b, v] : f.coeffs()) out.add(b, Rat(v));
  return out;
}

inline KForm<double> approximate(const KForm<Rat>& f) {
  KForm<double> out(f.degree());
  for (const auto& [b, v] : f.coeffs()) out.add(b, v.get_d());
  return out;
}

template <class S>
std::string form_str(const KForm<S>& f) {
  if (f.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [b, v] : f.coeffs()) {
    std::string cs = scalar_str(v);
    bool neg = !cs.empty() && cs[0] == '-';
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    if (neg) cs = cs.substr(1);
    if (b == 0) {
      os << cs;
    } else if (cs == "1") {
      os << blade_str(b);
    } else {
      os << cs << "*" << blade_str(b);
    }
    first = false;
  }
  return os.str();
}

}  // namespace iia
