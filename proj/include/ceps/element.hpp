#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ceps/rational.hpp"

namespace ceps {

// A vector-lattice element: one exact rational coordinate per atom. At finite
// dimension every element is bounded by a multiple of the unit, so the
// f-algebra product below is total on the whole space.
class Element {
 public:
  Element() = default;
  explicit Element(std::vector<Rational> coords) : coords_(std::move(coords)) {}

  static Element zero(std::size_t dimension) {
    return Element(std::vector<Rational>(dimension, Rational(0)));
  }
  static Element constant(std::size_t dimension, const Rational& value) {
    return Element(std::vector<Rational>(dimension, value));
  }
  // The weak order unit e: all ones.
  static Element unit(std::size_t dimension) {
    return constant(dimension, Rational(1));
  }
  static Element atom_indicator(std::size_t dimension, std::size_t atom) {
    Element f = zero(dimension);
    f.coords_.at(atom) = 1;
    return f;
  }

  std::size_t dimension() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Rational>& coords() const { return coords_; }

  bool operator==(const Element& other) const {
    return coords_ == other.coords_;
  }

  Element& operator+=(const Element& other) {
    check_same_dimension(other);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other[i];
    return *this;
  }
  Element& operator-=(const Element& other) {
    check_same_dimension(other);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other[i];
    return *this;
  }
  Element& operator*=(const Rational& scalar) {
    for (auto& c : coords_) c *= scalar;
    return *this;
  }

  friend Element operator+(Element lhs, const Element& rhs) { return lhs += rhs; }
  friend Element operator-(Element lhs, const Element& rhs) { return lhs -= rhs; }
  friend Element operator*(const Rational& scalar, Element f) {
    return f *= scalar;
  }
  Element operator-() const {
    Element out(*this);
    for (auto& c : out.coords_) c = -c;
    return out;
  }

  void check_same_dimension(const Element& other) const {
    if (coords_.size() != other.coords_.size())
      throw std::invalid_argument("dimension mismatch: " +
                                  std::to_string(coords_.size()) + " vs " +
                                  std::to_string(other.coords_.size()));
  }

 private:
  std::vector<Rational> coords_;
};

inline Element sup(const Element& f, const Element& g) {
  f.check_same_dimension(g);
  std::vector<Rational> out(f.dimension());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = f[i] >= g[i] ? f[i] : g[i];
  return Element(std::move(out));
}

inline Element inf(const Element& f, const Element& g) {
  f.check_same_dimension(g);
  std::vector<Rational> out(f.dimension());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = f[i] <= g[i] ? f[i] : g[i];
  return Element(std::move(out));
}

inline Element abs(const Element& f) {
  std::vector<Rational> out(f.dimension());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = rational_abs(f[i]);
  return Element(std::move(out));
}

inline Element positive_part(const Element& f) {
  std::vector<Rational> out(f.dimension());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = f[i] > 0 ? f[i] : Rational(0);
  return Element(std::move(out));
}

inline Element negative_part(const Element& f) {
  std::vector<Rational> out(f.dimension());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = f[i] < 0 ? Rational(-f[i]) : Rational(0);
  return Element(std::move(out));
}

// The f-algebra product of the unit-bounded part. With the unit normalized to
// all-ones this is the componentwise product, and indicator elements multiply
// as intersections.
inline Element multiply(const Element& f, const Element& g) {
  f.check_same_dimension(g);
  std::vector<Rational> out(f.dimension());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f[i] * g[i];
  return Element(std::move(out));
}

// Componentwise partial order.
inline bool leq(const Element& f, const Element& g) {
  f.check_same_dimension(g);
  for (std::size_t i = 0; i < f.dimension(); ++i)
    if (f[i] > g[i]) return false;
  return true;
}

inline bool is_nonnegative(const Element& f) {
  for (std::size_t i = 0; i < f.dimension(); ++i)
    if (f[i] < 0) return false;
  return true;
}

inline bool is_zero(const Element& f) {
  for (std::size_t i = 0; i < f.dimension(); ++i)
    if (f[i] != 0) return false;
  return true;
}

inline Rational sup_norm(const Element& f) {
  Rational best(0);
  for (std::size_t i = 0; i < f.dimension(); ++i) {
    Rational a = rational_abs(f[i]);
    if (a > best) best = a;
  }
  return best;
}

inline std::string to_string(const Element& f) {
  std::string out = "(";
  for (std::size_t i = 0; i < f.dimension(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(f[i]);
  }
  return out + ")";
}

}  // namespace ceps
