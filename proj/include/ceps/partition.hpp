#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ceps/element.hpp"

namespace ceps {

// A partition of the atom set into disjoint nonempty blocks. Blocks are kept
// in canonical form (members ascending, blocks ordered by least member), so
// equal partitions compare equal and serialize identically.
class Partition {
 public:
  Partition(std::size_t atom_count, std::vector<std::vector<std::size_t>> blocks)
      : atom_count_(atom_count), blocks_(std::move(blocks)) {
    std::vector<bool> seen(atom_count_, false);
    for (auto& block : blocks_) {
      if (block.empty())
        throw std::invalid_argument("partition block must be nonempty");
      std::sort(block.begin(), block.end());
      for (std::size_t atom : block) {
        if (atom >= atom_count_)
          throw std::invalid_argument("partition references atom " +
                                      std::to_string(atom + 1) +
                                      " outside the space");
        if (seen[atom])
          throw std::invalid_argument("partition blocks overlap at atom " +
                                      std::to_string(atom + 1));
        seen[atom] = true;
      }
    }
    for (std::size_t atom = 0; atom < atom_count_; ++atom)
      if (!seen[atom])
        throw std::invalid_argument("partition does not cover atom " +
                                    std::to_string(atom + 1));
    std::sort(blocks_.begin(), blocks_.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    block_of_.assign(atom_count_, 0);
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      for (std::size_t atom : blocks_[b]) block_of_[atom] = b;
  }

  static Partition singletons(std::size_t atom_count) {
    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < atom_count; ++i) blocks.push_back({i});
    return Partition(atom_count, std::move(blocks));
  }
  // One block containing everything.
  static Partition trivial(std::size_t atom_count) {
    std::vector<std::size_t> all(atom_count);
    for (std::size_t i = 0; i < atom_count; ++i) all[i] = i;
    return Partition(atom_count, {std::move(all)});
  }

  std::size_t atom_count() const { return atom_count_; }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
  std::size_t block_of(std::size_t atom) const { return block_of_.at(atom); }

  // True when every block of *this lies inside a single block of `coarser`.
  bool refines(const Partition& coarser) const {
    if (coarser.atom_count_ != atom_count_)
      throw std::invalid_argument("partition dimension mismatch");
    for (const auto& block : blocks_) {
      const std::size_t target = coarser.block_of(block.front());
      for (std::size_t atom : block)
        if (coarser.block_of(atom) != target) return false;
    }
    return true;
  }

  bool operator==(const Partition& other) const {
    return atom_count_ == other.atom_count_ && blocks_ == other.blocks_;
  }
  bool operator<(const Partition& other) const {
    return blocks_ < other.blocks_;
  }

 private:
  std::size_t atom_count_;
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> block_of_;
};

inline Partition common_refinement(const Partition& a, const Partition& b) {
  if (a.atom_count() != b.atom_count())
    throw std::invalid_argument("partition dimension mismatch");
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> cells;
  for (std::size_t atom = 0; atom < a.atom_count(); ++atom)
    cells[{a.block_of(atom), b.block_of(atom)}].push_back(atom);
  std::vector<std::vector<std::size_t>> blocks;
  blocks.reserve(cells.size());
  for (auto& [key, atoms] : cells) blocks.push_back(std::move(atoms));
  return Partition(a.atom_count(), std::move(blocks));
}

// Coarsest partition refining `base` on which every generator is constant:
// atoms are grouped by (base block, generator values).
inline Partition partition_generated_by(const Partition& base,
                                        std::span<const Element> generators) {
  using Key = std::pair<std::size_t, std::vector<Rational>>;
  std::map<Key, std::vector<std::size_t>> cells;
  for (std::size_t atom = 0; atom < base.atom_count(); ++atom) {
    std::vector<Rational> values;
    values.reserve(generators.size());
    for (const Element& g : generators) {
      if (g.dimension() != base.atom_count())
        throw std::invalid_argument("generator dimension mismatch");
      values.push_back(g[atom]);
    }
    cells[{base.block_of(atom), std::move(values)}].push_back(atom);
  }
  std::vector<std::vector<std::size_t>> blocks;
  blocks.reserve(cells.size());
  for (auto& [key, atoms] : cells) blocks.push_back(std::move(atoms));
  return Partition(base.atom_count(), std::move(blocks));
}

}  // namespace ceps
