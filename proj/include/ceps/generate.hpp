#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "ceps/ergodic.hpp"
#include "ceps/operators.hpp"

namespace ceps {

// Deterministic seeded generator of systems. Valid systems are valid by
// construction: a random partition, a random permutation of each block, and
// weights constant along each resulting cycle (then normalized). The
// adversarial variant draws an arbitrary coordinate map instead, which
// usually fails validation.
//
// Randomness is reduced from the raw mt19937_64 stream with plain modulo so
// the sequence of draws is identical on every platform.
class SystemGenerator {
 public:
  explicit SystemGenerator(std::uint64_t seed, std::size_t max_atoms = 8)
      : rng_(seed), max_atoms_(max_atoms == 0 ? 1 : max_atoms) {}

  CEPSystem next() {
    const std::size_t n = 1 + below(max_atoms_);
    Partition partition = random_partition(n);
    std::vector<std::size_t> tau = blockwise_permutation(partition);
    return CEPSystem(cycle_constant_weights(n, tau), std::move(partition),
                     std::move(tau));
  }

  CEPSystem next_adversarial() {
    const std::size_t n = 1 + below(max_atoms_);
    Partition partition = random_partition(n);
    std::vector<std::size_t> tau(n);
    for (std::size_t i = 0; i < n; ++i) tau[i] = below(n);
    std::vector<Rational> weights(n, Rational(1, static_cast<unsigned long>(n)));
    return CEPSystem(AtomicMeasureSpace(std::move(weights)),
                     std::move(partition), std::move(tau));
  }

  std::uint64_t raw() { return rng_(); }

  std::size_t below(std::size_t bound) {
    return static_cast<std::size_t>(rng_() % static_cast<std::uint64_t>(bound));
  }

 private:
  Partition random_partition(std::size_t n) {
    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t atom = 0; atom < n; ++atom) {
      const std::size_t choice = below(blocks.size() + 1);
      if (choice == blocks.size())
        blocks.push_back({atom});
      else
        blocks[choice].push_back(atom);
    }
    return Partition(n, std::move(blocks));
  }

  std::vector<std::size_t> blockwise_permutation(const Partition& partition) {
    std::vector<std::size_t> tau(partition.atom_count());
    for (const auto& block : partition.blocks()) {
      std::vector<std::size_t> image = block;
      for (std::size_t k = image.size(); k > 1; --k)
        std::swap(image[k - 1], image[below(k)]);
      for (std::size_t k = 0; k < block.size(); ++k) tau[block[k]] = image[k];
    }
    return tau;
  }

  AtomicMeasureSpace cycle_constant_weights(std::size_t n,
                                            const std::vector<std::size_t>& tau) {
    CycleDecomposition cycles = cycle_decomposition(CompositionOperator(tau));
    std::vector<Rational> raw(n);
    Rational total(0);
    for (const auto& cycle : cycles.cycles) {
      const Rational value(1 + static_cast<long>(below(6)),
                           1 + static_cast<unsigned long>(below(6)));
      for (std::size_t atom : cycle) {
        raw[atom] = value;
        total += value;
      }
    }
    for (auto& w : raw) w /= total;
    return AtomicMeasureSpace(std::move(raw));
  }

  std::mt19937_64 rng_;
  std::size_t max_atoms_;
};

}  // namespace ceps
