#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ceps/element.hpp"

namespace ceps {

// Thrown when an exhaustive enumeration would exceed its configured cap and
// the caller did not ask for sampled quantification.
struct CapExceededError : std::length_error {
  using std::length_error::length_error;
};

// A band projection is a coordinate mask: it keeps the coordinates of an atom
// subset and zeroes the rest. Idempotent, and 0 <= Pf <= f for f >= 0.
class BandProjection {
 public:
  explicit BandProjection(std::vector<bool> mask) : mask_(std::move(mask)) {}

  static BandProjection empty(std::size_t dimension) {
    return BandProjection(std::vector<bool>(dimension, false));
  }
  static BandProjection full(std::size_t dimension) {
    return BandProjection(std::vector<bool>(dimension, true));
  }
  static BandProjection singleton(std::size_t dimension, std::size_t atom) {
    auto p = empty(dimension);
    p.mask_.at(atom) = true;
    return p;
  }
  static BandProjection from_atoms(std::size_t dimension,
                                   const std::vector<std::size_t>& atoms) {
    auto p = empty(dimension);
    for (std::size_t a : atoms) p.mask_.at(a) = true;
    return p;
  }
  // Bit i of `bits` selects atom i; used for deterministic enumeration.
  static BandProjection from_mask_bits(std::size_t dimension,
                                       std::uint64_t bits) {
    std::vector<bool> mask(dimension, false);
    for (std::size_t i = 0; i < dimension; ++i)
      mask[i] = ((bits >> i) & 1u) != 0;
    return BandProjection(std::move(mask));
  }

  std::size_t dimension() const { return mask_.size(); }
  bool contains(std::size_t atom) const { return mask_.at(atom); }
  const std::vector<bool>& mask() const { return mask_; }

  std::vector<std::size_t> atoms() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < mask_.size(); ++i)
      if (mask_[i]) out.push_back(i);
    return out;
  }

  Element apply(const Element& f) const {
    if (f.dimension() != mask_.size())
      throw std::invalid_argument("projection/element dimension mismatch");
    std::vector<Rational> out(mask_.size(), Rational(0));
    for (std::size_t i = 0; i < mask_.size(); ++i)
      if (mask_[i]) out[i] = f[i];
    return Element(std::move(out));
  }

  // Pe: the 0/1 indicator of the mask.
  Element indicator() const { return apply(Element::unit(mask_.size())); }

  // Composition of band projections is intersection of masks.
  BandProjection intersect(const BandProjection& other) const {
    if (other.dimension() != mask_.size())
      throw std::invalid_argument("projection dimension mismatch");
    std::vector<bool> mask(mask_.size());
    for (std::size_t i = 0; i < mask_.size(); ++i)
      mask[i] = mask_[i] && other.mask_[i];
    return BandProjection(std::move(mask));
  }

  bool operator==(const BandProjection& other) const {
    return mask_ == other.mask_;
  }

 private:
  std::vector<bool> mask_;
};

inline Element project(const BandProjection& p, const Element& f) {
  return p.apply(f);
}

// All 2^n band projections in mask order (bit i = atom i, masks ascending).
inline std::vector<BandProjection> enumerate_band_projections(
    std::size_t dimension, std::size_t cap = 16) {
  if (dimension > cap)
    throw CapExceededError("band projection enumeration cap exceeded: " +
                           std::to_string(dimension) + " atoms > cap " +
                           std::to_string(cap));
  std::vector<BandProjection> out;
  out.reserve(std::size_t(1) << dimension);
  for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << dimension); ++bits)
    out.push_back(BandProjection::from_mask_bits(dimension, bits));
  return out;
}

}  // namespace ceps
