#pragma once

#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ceps/operators.hpp"

namespace ceps {

// Cycle structure of a bijective coordinate map. Cycles are listed by least
// member, members in orbit order starting from the least one. `period` is the
// lcm of the cycle lengths: iterates of S repeat after it.
struct CycleDecomposition {
  std::vector<std::vector<std::size_t>> cycles;
  std::vector<std::size_t> cycle_of;
  std::size_t period = 1;
};

inline CycleDecomposition cycle_decomposition(const CompositionOperator& S) {
  if (!S.is_bijective())
    throw std::invalid_argument("cycle decomposition needs a bijective map");
  const std::size_t n = S.atom_count();
  CycleDecomposition out;
  out.cycle_of.assign(n, 0);
  std::vector<bool> seen(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> cycle;
    std::size_t atom = start;
    do {
      seen[atom] = true;
      out.cycle_of[atom] = out.cycles.size();
      cycle.push_back(atom);
      atom = S.map()[atom];
    } while (atom != start);
    out.period = std::lcm(out.period, cycle.size());
    out.cycles.push_back(std::move(cycle));
  }
  return out;
}

// Exact Cesaro mean (f + Sf + ... + S^{n-1} f) / n.
inline Element cesaro_mean(const CEPSystem& sys, const Element& f,
                           std::size_t n) {
  if (n == 0) throw std::invalid_argument("Cesaro mean needs n >= 1");
  Element iterate = f;
  Element acc = f;
  for (std::size_t k = 1; k < n; ++k) {
    iterate = sys.S().apply(iterate);
    acc += iterate;
  }
  return Rational(1, static_cast<unsigned long>(n)) * acc;
}

// The means S_1 f .. S_N f, computed incrementally and exactly.
struct CesaroTrace {
  std::size_t horizon = 0;
  std::vector<Element> means;
};

inline CesaroTrace cesaro_trace(const CEPSystem& sys, const Element& f,
                                std::size_t horizon) {
  CesaroTrace trace;
  trace.horizon = horizon;
  Element iterate = f;
  Element acc = f;
  for (std::size_t n = 1; n <= horizon; ++n) {
    if (n > 1) {
      iterate = sys.S().apply(iterate);
      acc += iterate;
    }
    trace.means.push_back(Rational(1, static_cast<unsigned long>(n)) * acc);
  }
  return trace;
}

// Closed-form ergodic limit. On a valid system tau permutes each block, so
// weights are constant along each cycle and the order limit of the Cesaro
// means is the weighted average over the cycle through each atom.
struct ErgodicLimit {
  Element limit;
  CycleDecomposition certificate;
};

inline ErgodicLimit ergodic_average_exact(const CEPSystem& sys,
                                          const Element& f) {
  sys.require_valid();
  if (f.dimension() != sys.atom_count())
    throw std::invalid_argument("element does not match the system");
  ErgodicLimit out;
  out.certificate = cycle_decomposition(sys.S());
  std::vector<Rational> coords(sys.atom_count());
  for (const auto& cycle : out.certificate.cycles) {
    Rational mass(0), acc(0);
    for (std::size_t atom : cycle) {
      mass += sys.space().weight(atom);
      acc += sys.space().weight(atom) * f[atom];
    }
    acc /= mass;
    for (std::size_t atom : cycle) coords[atom] = acc;
  }
  out.limit = Element(std::move(coords));
  return out;
}

struct IterativeResult {
  Element approx;
  std::size_t n_used = 0;
  bool converged = false;
};

// Runs the Cesaro iteration until the sup-distance to the exact limit is at
// most epsilon. The periodicity bound |S_n f - L f|_inf <= 2 p |f|_inf / n
// guarantees convergence well before n_max = 2 p |f|_inf / epsilon.
inline IterativeResult ergodic_average_iterative(const CEPSystem& sys,
                                                 const Element& f,
                                                 const Rational& epsilon,
                                                 std::size_t n_max) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  const Element limit = ergodic_average_exact(sys, f).limit;
  IterativeResult result;
  Element iterate = f;
  Element acc = f;
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (n > 1) {
      iterate = sys.S().apply(iterate);
      acc += iterate;
    }
    Element mean = Rational(1, static_cast<unsigned long>(n)) * acc;
    if (sup_norm(mean - limit) <= epsilon) {
      result.approx = std::move(mean);
      result.n_used = n;
      result.converged = true;
      return result;
    }
    result.approx = std::move(mean);
    result.n_used = n;
  }
  return result;
}

// Basis of the S-invariant elements: the cycle indicators. Every fixed point
// of S is a rational combination of these; the dimension is the cycle count.
inline std::vector<Element> invariant_space_basis(const CEPSystem& sys) {
  sys.require_valid();
  const CycleDecomposition cycles = cycle_decomposition(sys.S());
  std::vector<Element> basis;
  basis.reserve(cycles.cycles.size());
  for (const auto& cycle : cycles.cycles) {
    Element indicator = Element::zero(sys.atom_count());
    for (std::size_t atom : cycle) indicator[atom] = 1;
    basis.push_back(std::move(indicator));
  }
  return basis;
}

struct ErgodicVerdict {
  bool ergodic = false;
  // An S-invariant element whose ergodic limit lies outside the range of T
  // (definition route) or differs from its T-image (mean route).
  std::optional<Element> witness;
};

// Ergodicity by definition: the ergodic limit of every invariant element lies
// in the range of T. Checking the invariant-space basis suffices since the
// limit operator is linear and the range is a subspace.
inline ErgodicVerdict is_ergodic_definition(const CEPSystem& sys) {
  ErgodicVerdict verdict;
  verdict.ergodic = true;
  for (const Element& b : invariant_space_basis(sys)) {
    const Element limit = ergodic_average_exact(sys, b).limit;
    if (!sys.T().in_range(limit)) {
      verdict.ergodic = false;
      verdict.witness = b;
      return verdict;
    }
  }
  return verdict;
}

// Ergodicity via time mean = conditional mean: L f = T f on invariants.
inline ErgodicVerdict is_ergodic_tsm(const CEPSystem& sys) {
  ErgodicVerdict verdict;
  verdict.ergodic = true;
  for (const Element& b : invariant_space_basis(sys)) {
    if (ergodic_average_exact(sys, b).limit != sys.T().apply(b)) {
      verdict.ergodic = false;
      verdict.witness = b;
      return verdict;
    }
  }
  return verdict;
}

struct OperatorEqualityVerdict {
  bool ergodic = false;
  std::optional<std::size_t> witness_atom;  // column where T and L differ
  // Structural criterion equivalent to the operator equality in this model.
  bool blocks_are_cycles = false;
};

// Ergodicity as operator equality T = L, compared column by column on the
// atom indicators.
inline OperatorEqualityVerdict is_ergodic_operator_equality(
    const CEPSystem& sys) {
  sys.require_valid();
  OperatorEqualityVerdict verdict;
  verdict.ergodic = true;
  for (std::size_t atom = 0; atom < sys.atom_count(); ++atom) {
    const Element indicator = Element::atom_indicator(sys.atom_count(), atom);
    if (ergodic_average_exact(sys, indicator).limit !=
        sys.T().apply(indicator)) {
      verdict.ergodic = false;
      if (!verdict.witness_atom) verdict.witness_atom = atom;
    }
  }
  const CycleDecomposition cycles = cycle_decomposition(sys.S());
  verdict.blocks_are_cycles = true;
  for (const auto& block : sys.T().partition().blocks()) {
    const std::size_t c = cycles.cycle_of[block.front()];
    if (cycles.cycles[c].size() != block.size()) {
      verdict.blocks_are_cycles = false;
      break;
    }
    for (std::size_t atom : block)
      if (cycles.cycle_of[atom] != c) {
        verdict.blocks_are_cycles = false;
        break;
      }
  }
  return verdict;
}

// The three band-projection classes: commuting with T, S-invariant, and fixed
// by the limit operator. The first is always contained in the other two and
// the last two always coincide.
struct ProjectionClasses {
  std::vector<BandProjection> commuting;    // TPe = PTe = Pe
  std::vector<BandProjection> s_invariant;  // SPe = Pe
  std::vector<BandProjection> limit_fixed;  // L Pe = Pe
  bool commuting_subset_invariant = false;
  bool invariant_equals_limit_fixed = false;
};

inline ProjectionClasses classify_projections(const CEPSystem& sys,
                                              std::size_t cap = 16) {
  sys.require_valid();
  ProjectionClasses out;
  out.commuting_subset_invariant = true;
  const Element te = sys.T().apply(sys.unit());
  for (const BandProjection& p :
       enumerate_band_projections(sys.atom_count(), cap)) {
    const Element pe = p.indicator();
    const bool commutes = sys.T().apply(pe) == pe && p.apply(te) == pe;
    const bool invariant = sys.S().apply(pe) == pe;
    const bool fixed = ergodic_average_exact(sys, pe).limit == pe;
    if (commutes) out.commuting.push_back(p);
    if (invariant) out.s_invariant.push_back(p);
    if (fixed) out.limit_fixed.push_back(p);
    if (commutes && !invariant) out.commuting_subset_invariant = false;
  }
  out.invariant_equals_limit_fixed = out.s_invariant == out.limit_fixed;
  return out;
}

// Exact limit of the Cesaro means of T(S^k f . g) together with the product
// of the conditional means. The limit is computed in closed form as
// T(Lf . g); the truncated sequence is available from
// product_criterion_trace for inspection.
struct ProductCriterion {
  Element limit;  // T(Lf . g)
  Element rhs;    // Tf . Tg
  bool verdict = false;
};

inline ProductCriterion product_criterion(const CEPSystem& sys,
                                          const Element& f, const Element& g) {
  sys.require_valid();
  ProductCriterion out;
  const Element lf = ergodic_average_exact(sys, f).limit;
  out.limit = sys.T().apply(multiply(lf, g));
  out.rhs = multiply(sys.T().apply(f), sys.T().apply(g));
  out.verdict = out.limit == out.rhs;
  return out;
}

// Running Cesaro means of the sequence T(S^k f . g), k = 0..horizon-1.
inline std::vector<Element> product_criterion_trace(const CEPSystem& sys,
                                                    const Element& f,
                                                    const Element& g,
                                                    std::size_t horizon) {
  sys.require_valid();
  std::vector<Element> means;
  Element iterate = f;
  Element acc = Element::zero(sys.atom_count());
  for (std::size_t n = 1; n <= horizon; ++n) {
    if (n > 1) iterate = sys.S().apply(iterate);
    acc += sys.T().apply(multiply(iterate, g));
    means.push_back(Rational(1, static_cast<unsigned long>(n)) * acc);
  }
  return means;
}

// Running Cesaro means of an arbitrary finite sequence.
inline std::vector<Element> cesaro_means(const std::vector<Element>& seq) {
  std::vector<Element> means;
  if (seq.empty()) return means;
  Element acc = Element::zero(seq.front().dimension());
  for (std::size_t n = 1; n <= seq.size(); ++n) {
    acc += seq[n - 1];
    means.push_back(Rational(1, static_cast<unsigned long>(n)) * acc);
  }
  return means;
}

struct GeometricCesaroCheck {
  bool within_bound = false;
  std::size_t n_checked = 0;
  std::optional<std::size_t> first_violation;
};

// For the geometric sequence f_k = r^k v (0 < r < 1), verifies the summed
// tail bound: the Cesaro mean of |f_k| at every n <= n_max is dominated by
// (|v|_inf / (n (1-r))) e. Streaming, exact.
inline GeometricCesaroCheck cesaro_geometric_check(const Element& v,
                                                   const Rational& r,
                                                   std::size_t n_max) {
  if (r <= 0 || r >= 1)
    throw std::invalid_argument("geometric ratio must satisfy 0 < r < 1");
  GeometricCesaroCheck out;
  out.within_bound = true;
  const Element av = abs(v);
  const Rational norm = sup_norm(v);
  const Rational cap = norm / (1 - r);  // n * bound_n
  Rational power(1);  // r^k
  Rational partial(0);  // sum of r^0..r^{k-1}
  for (std::size_t n = 1; n <= n_max; ++n) {
    partial += power;
    power *= r;
    // mean_n = (partial / n) av; bound_n = cap / n; compare n * both sides.
    for (std::size_t i = 0; i < av.dimension(); ++i) {
      if (partial * av[i] > cap) {
        out.within_bound = false;
        if (!out.first_violation) out.first_violation = n;
        break;
      }
    }
    out.n_checked = n;
    if (!out.within_bound) break;
  }
  return out;
}

}  // namespace ceps
