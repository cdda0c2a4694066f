#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ptrs/error.hpp"
#include "ptrs/rational.hpp"

namespace ptrs {

/// Sparse commutative polynomial. A monomial is the sorted multiset of its
/// variables; the empty monomial is the constant part. Zero coefficients
/// are never stored.
template <class Var, class Coeff>
class Polynomial {
 public:
  using Monomial = std::vector<Var>;
  using Terms = std::map<Monomial, Coeff>;

  Polynomial() = default;
  Polynomial(const Coeff& c) { add_term({}, c); }  // NOLINT: constants convert implicitly

  static Polynomial variable(const Var& v) {
    Polynomial p;
    p.add_term({v}, Coeff(1));
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Coeff coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff(0) : it->second;
  }
  Coeff constant_term() const { return coefficient({}); }

  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.size());
    return d;
  }

  void add_term(Monomial m, const Coeff& c) {
    if (is_zero_value(c)) return;
    std::sort(m.begin(), m.end());
    auto [it, inserted] = terms_.emplace(std::move(m), c);
    if (!inserted) {
      it->second = it->second + c;
      if (is_zero_value(it->second)) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, Coeff(0) - c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  /// Unrestricted product.
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return multiply(a, b, false); }

  /// Product that rejects any monomial with a repeated variable, throwing
  /// Error(DegreeOverflow).
  static Polynomial multiply(const Polynomial& a, const Polynomial& b, bool multilinear) {
    Polynomial out;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m;
        m.reserve(ma.size() + mb.size());
        std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
        if (multilinear && std::adjacent_find(m.begin(), m.end()) != m.end()) {
          throw Error(ErrorCode::DegreeOverflow,
                      "non-multilinear monomial arises from composing the interpretation");
        }
        out.add_term(std::move(m), ca * cb);
      }
    }
    return out;
  }

  Polynomial scaled(const Coeff& k) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) out.add_term(m, c * k);
    return out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

 private:
  static bool is_zero_value(const Coeff& c) {
    if constexpr (requires { c.is_zero(); }) {
      return c.is_zero();
    } else {
      return c == 0;
    }
  }

  Terms terms_;
};

/// Polynomial over SMT unknowns (identified by index) with integer
/// coefficients.
using UnknownPoly = Polynomial<std::size_t, Integer>;

/// Term-level form: polynomial over term variables.
template <class Coeff>
using TermPoly = Polynomial<std::string, Coeff>;

template <class C>
using Matrix = std::vector<std::vector<C>>;

template <class C>
Matrix<C> zero_matrix(std::size_t m) {
  return Matrix<C>(m, std::vector<C>(m, C(0)));
}

template <class C>
Matrix<C> identity_matrix(std::size_t m) {
  Matrix<C> out = zero_matrix<C>(m);
  for (std::size_t i = 0; i < m; ++i) out[i][i] = C(1);
  return out;
}

template <class C>
Matrix<C> operator*(const Matrix<C>& a, const Matrix<C>& b) {
  const std::size_t m = a.size();
  Matrix<C> out = zero_matrix<C>(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t j = 0; j < m; ++j) out[i][j] = out[i][j] + a[i][k] * b[k][j];
  return out;
}

template <class C>
std::vector<C> operator*(const Matrix<C>& a, const std::vector<C>& v) {
  std::vector<C> out(a.size(), C(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < v.size(); ++k) out[i] = out[i] + a[i][k] * v[k];
  return out;
}

template <class C>
void add_into(Matrix<C>& a, const Matrix<C>& b, const C& scale) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) a[i][j] = a[i][j] + b[i][j] * scale;
}

template <class C>
void add_into(std::vector<C>& a, const std::vector<C>& b, const C& scale) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] + b[i] * scale;
}

/// Affine vector form sum_x M_x * x + c over term variables x, the symbolic
/// value of a term under a matrix interpretation.
template <class C>
struct VectorForm {
  std::size_t dimension = 1;
  std::map<std::string, Matrix<C>> linear;
  std::vector<C> constant;

  static VectorForm zero(std::size_t m) { return {m, {}, std::vector<C>(m, C(0))}; }

  /// this += scale * other
  void accumulate(const VectorForm& other, const C& scale) {
    for (const auto& [x, mat] : other.linear) {
      auto it = linear.find(x);
      if (it == linear.end()) it = linear.emplace(x, zero_matrix<C>(dimension)).first;
      add_into(it->second, mat, scale);
    }
    add_into(constant, other.constant, scale);
  }

  /// Left-multiplies every part by `m`.
  VectorForm transformed(const Matrix<C>& m) const {
    VectorForm out{dimension, {}, m * constant};
    for (const auto& [x, mat] : linear) out.linear.emplace(x, m * mat);
    return out;
  }
};

}  // namespace ptrs
