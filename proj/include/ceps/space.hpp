#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ceps/rational.hpp"

namespace ceps {

// Carrier of the whole model: n atoms with strictly positive rational masses
// summing to one. The function space over the atoms is R^n with the
// componentwise order; the weak order unit is the all-ones vector.
class AtomicMeasureSpace {
 public:
  explicit AtomicMeasureSpace(std::vector<Rational> weights,
                              std::vector<std::string> labels = {})
      : weights_(std::move(weights)), labels_(std::move(labels)) {
    if (weights_.empty())
      throw std::invalid_argument("measure space needs at least one atom");
    Rational total(0);
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      if (weights_[i] <= 0)
        throw std::invalid_argument("atom weight " + std::to_string(i + 1) +
                                    " must be positive");
      total += weights_[i];
    }
    if (total != 1)
      throw std::invalid_argument("atom weights must sum to 1, got " +
                                  to_string(total));
    if (labels_.empty()) {
      labels_.reserve(weights_.size());
      for (std::size_t i = 0; i < weights_.size(); ++i)
        labels_.push_back(std::to_string(i + 1));
    } else if (labels_.size() != weights_.size()) {
      throw std::invalid_argument("label count does not match atom count");
    }
  }

  static AtomicMeasureSpace uniform(std::size_t atom_count) {
    if (atom_count == 0)
      throw std::invalid_argument("measure space needs at least one atom");
    const Rational w(1, static_cast<unsigned long>(atom_count));
    return AtomicMeasureSpace(std::vector<Rational>(atom_count, w));
  }

  std::size_t atom_count() const { return weights_.size(); }
  const Rational& weight(std::size_t atom) const { return weights_.at(atom); }
  const std::vector<Rational>& weights() const { return weights_; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool operator==(const AtomicMeasureSpace& other) const {
    return weights_ == other.weights_ && labels_ == other.labels_;
  }

 private:
  std::vector<Rational> weights_;
  std::vector<std::string> labels_;
};

}  // namespace ceps
