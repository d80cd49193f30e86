#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ceps/ergodic.hpp"
#include "ceps/operators.hpp"
#include "ceps/partition.hpp"

namespace ceps {

// A closed Riesz subspace of the model, represented by the partition on whose
// blocks its members are constant. It contains the range of T exactly when
// its partition refines T's.
class ClosedSubspace {
 public:
  explicit ClosedSubspace(Partition partition)
      : partition_(std::move(partition)) {}

  // Subspace generated by the given elements together with the range of T:
  // functions constant on the coarsest partition refining T's on which every
  // generator is constant.
  static ClosedSubspace generated_by(const CondExpectation& T,
                                     std::span<const Element> generators) {
    return ClosedSubspace(partition_generated_by(T.partition(), generators));
  }

  const Partition& partition() const { return partition_; }
  std::size_t atom_count() const { return partition_.atom_count(); }

  bool contains_range_of(const CondExpectation& T) const {
    return partition_.refines(T.partition());
  }

  bool contains(const Element& f) const {
    for (const auto& block : partition_.blocks())
      for (std::size_t atom : block)
        if (f[atom] != f[block.front()]) return false;
    return true;
  }

  // The band projections with indicator inside the subspace: block unions.
  std::vector<BandProjection> block_union_projections(std::size_t cap = 16) const {
    const std::size_t b = partition_.block_count();
    if (b > cap)
      throw CapExceededError("block-union projection enumeration cap exceeded");
    std::vector<BandProjection> out;
    out.reserve(std::size_t(1) << b);
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << b); ++bits) {
      auto mask = std::vector<bool>(partition_.atom_count(), false);
      for (std::size_t k = 0; k < b; ++k)
        if ((bits >> k) & 1u)
          for (std::size_t atom : partition_.blocks()[k]) mask[atom] = true;
      out.emplace_back(std::move(mask));
    }
    return out;
  }

  bool operator==(const ClosedSubspace& other) const {
    return partition_ == other.partition_;
  }

 private:
  Partition partition_;
};

// Conditional independence of two band projections: T P T Q e = T P Q e.
// The mirrored equality T P Q e = T Q T P e follows and is exercised as a
// test property rather than rechecked here.
inline bool projections_independent(const CondExpectation& T,
                                    const BandProjection& P,
                                    const BandProjection& Q) {
  const Element tq = T.apply(Q.indicator());
  const Element lhs = T.apply(P.apply(tq));
  const Element rhs = T.apply(P.intersect(Q).indicator());
  return lhs == rhs;
}

struct IndependenceOptions {
  // exhaustive: quantify over all block-union projections of each subspace.
  // reduced: quantify over single-block pairs only; equivalent because both
  // sides of the defining equality are bilinear in the indicators.
  enum class Mode { exhaustive, reduced };
  Mode mode = Mode::exhaustive;
  std::size_t block_cap = 16;
};

inline std::optional<std::pair<BandProjection, BandProjection>>
subspaces_independence_witness(const CondExpectation& T,
                               const ClosedSubspace& first,
                               const ClosedSubspace& second,
                               const IndependenceOptions& opts = {}) {
  if (!first.contains_range_of(T) || !second.contains_range_of(T))
    throw std::invalid_argument(
        "subspace independence requires both subspaces to contain the range "
        "of T");
  const std::size_t n = T.space().atom_count();
  if (opts.mode == IndependenceOptions::Mode::reduced) {
    for (const auto& a : first.partition().blocks())
      for (const auto& b : second.partition().blocks()) {
        const BandProjection P = BandProjection::from_atoms(n, a);
        const BandProjection Q = BandProjection::from_atoms(n, b);
        if (!projections_independent(T, P, Q)) return std::make_pair(P, Q);
      }
    return std::nullopt;
  }
  for (const BandProjection& P : first.block_union_projections(opts.block_cap))
    for (const BandProjection& Q :
         second.block_union_projections(opts.block_cap))
      if (!projections_independent(T, P, Q)) return std::make_pair(P, Q);
  return std::nullopt;
}

inline bool subspaces_independent(const CondExpectation& T,
                                  const ClosedSubspace& first,
                                  const ClosedSubspace& second,
                                  const IndependenceOptions& opts = {}) {
  return !subspaces_independence_witness(T, first, second, opts).has_value();
}

struct SeqIndependenceOptions {
  std::size_t horizon = 0;      // 0: the period of tau
  std::size_t horizon_cap = 64;
  std::size_t subset_cap = 3;   // max indices per side
  IndependenceOptions::Mode mode = IndependenceOptions::Mode::reduced;
};

struct SeqIndependenceVerdict {
  bool independent = false;
  std::size_t horizon = 0;
  std::size_t subset_cap = 3;
  // Lexicographically first failing pair of index sets, as minimal
  // representatives of the distinct generated subspaces.
  std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
      witness;
  std::optional<std::pair<BandProjection, BandProjection>> witness_projections;
};

// T-conditional independence of the sequence (S^j f). Index sets live in the
// naturals; since the iterates repeat with the period of tau, disjoint index
// sets reduce to (possibly overlapping) subsets of one period, and distinct
// indices with identical generated subspaces collapse. The quantification
// runs over pairs of nonempty subsets of the distinct-subspace
// representatives, sizes capped per side.
inline SeqIndependenceVerdict sequence_independence(
    const CEPSystem& sys, const Element& f,
    const SeqIndependenceOptions& opts = {}) {
  sys.require_valid();
  const std::size_t period = cycle_decomposition(sys.S()).period;
  const std::size_t horizon = opts.horizon == 0 ? period : opts.horizon;
  if (horizon > opts.horizon_cap)
    throw CapExceededError("sequence independence horizon cap exceeded: " +
                           std::to_string(horizon) + " > " +
                           std::to_string(opts.horizon_cap));

  SeqIndependenceVerdict verdict;
  verdict.horizon = horizon;
  verdict.subset_cap = opts.subset_cap;

  // Iterates S^j f for one horizon, deduplicated by generated subspace.
  std::vector<Element> iterates;
  iterates.reserve(horizon);
  Element cur = f;
  for (std::size_t j = 0; j < horizon; ++j) {
    if (j > 0) cur = sys.S().apply(cur);
    iterates.push_back(cur);
  }
  std::vector<Partition> generator_partition;
  std::vector<std::size_t> representatives;  // minimal index per subspace
  std::map<Partition, std::size_t> seen;
  for (std::size_t j = 0; j < horizon; ++j) {
    Partition p = partition_generated_by(
        sys.T().partition(), std::span<const Element>(&iterates[j], 1));
    if (seen.emplace(p, representatives.size()).second) {
      generator_partition.push_back(std::move(p));
      representatives.push_back(j);
    }
  }
  const std::size_t m = representatives.size();

  // Nonempty subsets of the representatives up to the cap, lexicographic by
  // member list.
  std::vector<std::vector<std::size_t>> subsets;
  {
    std::vector<std::size_t> current;
    const std::function<void(std::size_t)> grow = [&](std::size_t from) {
      for (std::size_t k = from; k < m; ++k) {
        current.push_back(k);
        subsets.push_back(current);
        if (current.size() < opts.subset_cap) grow(k + 1);
        current.pop_back();
      }
    };
    grow(0);
  }

  const auto union_subspace = [&](const std::vector<std::size_t>& ids) {
    Partition joined = generator_partition[ids.front()];
    for (std::size_t k = 1; k < ids.size(); ++k)
      joined = common_refinement(joined, generator_partition[ids[k]]);
    return ClosedSubspace(std::move(joined));
  };
  std::vector<ClosedSubspace> union_cache;
  union_cache.reserve(subsets.size());
  for (const auto& ids : subsets) union_cache.push_back(union_subspace(ids));

  IndependenceOptions pair_opts;
  pair_opts.mode = opts.mode;
  std::map<std::pair<Partition, Partition>,
           std::optional<std::pair<BandProjection, BandProjection>>>
      memo;
  verdict.independent = true;
  for (std::size_t a = 0; a < subsets.size(); ++a) {
    for (std::size_t b = 0; b < subsets.size(); ++b) {
      const auto key = std::make_pair(union_cache[a].partition(),
                                      union_cache[b].partition());
      auto it = memo.find(key);
      if (it == memo.end())
        it = memo.emplace(key, subspaces_independence_witness(
                                   sys.T(), union_cache[a], union_cache[b],
                                   pair_opts))
                 .first;
      if (it->second) {
        verdict.independent = false;
        std::vector<std::size_t> left, right;
        for (std::size_t id : subsets[a]) left.push_back(representatives[id]);
        for (std::size_t id : subsets[b]) right.push_back(representatives[id]);
        verdict.witness = {std::move(left), std::move(right)};
        verdict.witness_projections = it->second;
        return verdict;
      }
    }
  }
  return verdict;
}

struct SllnReport {
  std::vector<SeqIndependenceVerdict> per_indicator;
  bool hypothesis = false;      // every atom-indicator sequence independent
  bool conclusion = false;      // T = L as operators
  bool implication_holds = false;
};

// Strong-law harness: if every atom-indicator iteration sequence is
// T-conditionally independent, the time mean operator must equal T.
inline SllnReport slln_check(const CEPSystem& sys,
                             const SeqIndependenceOptions& opts = {}) {
  sys.require_valid();
  SllnReport report;
  report.hypothesis = true;
  for (std::size_t atom = 0; atom < sys.atom_count(); ++atom) {
    auto verdict = sequence_independence(
        sys, Element::atom_indicator(sys.atom_count(), atom), opts);
    report.hypothesis = report.hypothesis && verdict.independent;
    report.per_indicator.push_back(std::move(verdict));
  }
  report.conclusion = is_ergodic_operator_equality(sys).ergodic;
  report.implication_holds = !report.hypothesis || report.conclusion;
  return report;
}

}  // namespace ceps
