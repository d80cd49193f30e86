#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ceps/element.hpp"
#include "ceps/partition.hpp"
#include "ceps/projection.hpp"
#include "ceps/space.hpp"

namespace ceps {

// Thrown by operations that only make sense on a system whose validation
// passed (ergodic limits, mixing terms, ...).
struct InvalidSystemError : std::domain_error {
  using std::domain_error::domain_error;
};

// Conditional expectation induced by a partition: on each block, replace f by
// the weight-weighted block average. Strictly positive because all atom
// weights are, a projection, and fixes the unit.
class CondExpectation {
 public:
  CondExpectation(AtomicMeasureSpace space, Partition partition)
      : space_(std::move(space)), partition_(std::move(partition)) {
    if (partition_.atom_count() != space_.atom_count())
      throw std::invalid_argument("partition does not match the space");
    block_mass_.reserve(partition_.block_count());
    for (const auto& block : partition_.blocks()) {
      Rational mass(0);
      for (std::size_t atom : block) mass += space_.weight(atom);
      block_mass_.push_back(mass);
    }
  }

  const AtomicMeasureSpace& space() const { return space_; }
  const Partition& partition() const { return partition_; }

  Element apply(const Element& f) const {
    if (f.dimension() != space_.atom_count())
      throw std::invalid_argument("element does not match the space");
    std::vector<Rational> out(f.dimension());
    for (std::size_t b = 0; b < partition_.block_count(); ++b) {
      Rational acc(0);
      for (std::size_t atom : partition_.blocks()[b])
        acc += space_.weight(atom) * f[atom];
      acc /= block_mass_[b];
      for (std::size_t atom : partition_.blocks()[b]) out[atom] = acc;
    }
    return Element(std::move(out));
  }

  // Membership in the range: constant on every block.
  bool in_range(const Element& f) const {
    if (f.dimension() != space_.atom_count())
      throw std::invalid_argument("element does not match the space");
    for (const auto& block : partition_.blocks())
      for (std::size_t atom : block)
        if (f[atom] != f[block.front()]) return false;
    return true;
  }

  bool operator==(const CondExpectation& other) const {
    return space_ == other.space_ && partition_ == other.partition_;
  }

 private:
  AtomicMeasureSpace space_;
  Partition partition_;
  std::vector<Rational> block_mass_;
};

// The averaging identity T(f.g) = f.Tg for f in the range of T. Returns the
// exact-equality verdict; throws if f is not in the range.
inline bool averaging_identity_check(const CondExpectation& T, const Element& f,
                                     const Element& g) {
  if (!T.in_range(f))
    throw std::invalid_argument(
        "averaging identity requires f in the range of T");
  return T.apply(multiply(f, g)) == multiply(f, T.apply(g));
}

inline bool range_membership(const CondExpectation& T, const Element& f) {
  return T.in_range(f);
}

// Composition operator (Sf)_i = f_{tau(i)} for a total coordinate map tau.
// Always a Riesz homomorphism fixing the unit; bijectivity is NOT required at
// construction, so invalid systems can be built and then rejected by
// validation.
class CompositionOperator {
 public:
  explicit CompositionOperator(std::vector<std::size_t> tau)
      : tau_(std::move(tau)) {
    for (std::size_t image : tau_)
      if (image >= tau_.size())
        throw std::invalid_argument("tau maps outside the atom set");
  }

  static CompositionOperator identity(std::size_t atom_count) {
    std::vector<std::size_t> tau(atom_count);
    for (std::size_t i = 0; i < atom_count; ++i) tau[i] = i;
    return CompositionOperator(std::move(tau));
  }

  std::size_t atom_count() const { return tau_.size(); }
  const std::vector<std::size_t>& map() const { return tau_; }

  Element apply(const Element& f) const {
    if (f.dimension() != tau_.size())
      throw std::invalid_argument("element does not match the operator");
    std::vector<Rational> out(tau_.size());
    for (std::size_t i = 0; i < tau_.size(); ++i) out[i] = f[tau_[i]];
    return Element(std::move(out));
  }

  Element apply_power(const Element& f, std::size_t k) const {
    Element out = f;
    for (std::size_t step = 0; step < k; ++step) out = apply(out);
    return out;
  }

  bool is_bijective() const {
    std::vector<bool> hit(tau_.size(), false);
    for (std::size_t image : tau_) {
      if (hit[image]) return false;
      hit[image] = true;
    }
    return true;
  }

  bool operator==(const CompositionOperator& other) const {
    return tau_ == other.tau_;
  }

 private:
  std::vector<std::size_t> tau_;
};

struct AtomCheck {
  std::size_t atom = 0;
  Element lhs;  // T S e_atom
  Element rhs;  // T e_atom
  bool pass = false;
};

// Outcome of checking the defining identity TS = T. Checking it on the atom
// indicators suffices: they span the space and both sides are linear. When
// the check passes, the structural characterization below holds: tau permutes
// each block of T's partition and preserves weights within it.
struct ValidationReport {
  bool valid = false;
  std::vector<AtomCheck> atom_checks;
  std::optional<std::size_t> witness_atom;  // first failing indicator

  bool tau_preserves_blocks = false;
  bool tau_blockwise_bijective = false;
  bool tau_preserves_weights = false;  // weight(tau(i)) == weight(i)
};

inline ValidationReport validate_ceps(const AtomicMeasureSpace& space,
                                      const CondExpectation& T,
                                      const CompositionOperator& S) {
  if (T.space().atom_count() != space.atom_count() ||
      S.atom_count() != space.atom_count())
    throw std::invalid_argument("system components disagree on atom count");

  ValidationReport report;
  report.valid = true;
  const std::size_t n = space.atom_count();
  for (std::size_t atom = 0; atom < n; ++atom) {
    AtomCheck check;
    check.atom = atom;
    const Element indicator = Element::atom_indicator(n, atom);
    check.lhs = T.apply(S.apply(indicator));
    check.rhs = T.apply(indicator);
    check.pass = check.lhs == check.rhs;
    if (!check.pass && !report.witness_atom) report.witness_atom = atom;
    report.valid = report.valid && check.pass;
    report.atom_checks.push_back(std::move(check));
  }

  const Partition& partition = T.partition();
  report.tau_preserves_blocks = true;
  report.tau_preserves_weights = true;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t image = S.map()[i];
    if (partition.block_of(image) != partition.block_of(i))
      report.tau_preserves_blocks = false;
    if (space.weight(image) != space.weight(i))
      report.tau_preserves_weights = false;
  }
  report.tau_blockwise_bijective =
      report.tau_preserves_blocks && S.is_bijective();
  return report;
}

// Cross-check of the same identity quantified over all 2^n band projections
// instead of the n atom indicators.
inline bool validate_ceps_exhaustive(const AtomicMeasureSpace& space,
                                     const CondExpectation& T,
                                     const CompositionOperator& S,
                                     std::size_t cap = 16) {
  for (const BandProjection& p :
       enumerate_band_projections(space.atom_count(), cap)) {
    const Element pe = p.indicator();
    if (T.apply(S.apply(pe)) != T.apply(pe)) return false;
  }
  return true;
}

// The quadruple (E, T, S, e). Construction accepts degenerate tau; validation
// runs eagerly (everything is immutable) and its verdict gates the ergodic
// operations.
class CEPSystem {
 public:
  CEPSystem(AtomicMeasureSpace space, Partition partition,
            std::vector<std::size_t> tau)
      : T_(std::move(space), std::move(partition)),
        S_(std::move(tau)),
        validation_(validate_ceps(T_.space(), T_, S_)) {}

  CEPSystem(AtomicMeasureSpace space, CondExpectation T, CompositionOperator S)
      : T_(std::move(T)),
        S_(std::move(S)),
        validation_((check_spaces(space, T_), validate_ceps(T_.space(), T_, S_))) {}

  const AtomicMeasureSpace& space() const { return T_.space(); }
  const CondExpectation& T() const { return T_; }
  const CompositionOperator& S() const { return S_; }
  std::size_t atom_count() const { return T_.space().atom_count(); }
  Element unit() const { return Element::unit(atom_count()); }

  const ValidationReport& validation() const { return validation_; }
  bool is_valid() const { return validation_.valid; }
  void require_valid() const {
    if (!validation_.valid)
      throw InvalidSystemError(
          "system fails TS = T; witness atom " +
          std::to_string(validation_.witness_atom.value_or(0) + 1));
  }

 private:
  static void check_spaces(const AtomicMeasureSpace& space,
                           const CondExpectation& T) {
    if (!(space == T.space()))
      throw std::invalid_argument("conditional expectation built on a "
                                  "different space");
  }

  CondExpectation T_;
  CompositionOperator S_;
  ValidationReport validation_;
};

}  // namespace ceps
