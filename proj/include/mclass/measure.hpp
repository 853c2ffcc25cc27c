#pragma once

#include <cstddef>
#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mclass/rational.hpp"

namespace mclass {

/// Value labels form an opaque finite alphabet, ordered lexicographically
/// wherever a canonical order is needed.
using Label = std::string;

/// A finite probability space: distinct atoms with positive exact weights
/// summing to one.
class FiniteMeasureSpace {
 public:
  /// Throws InvalidMeasure when a weight is non-positive, the weights do not
  /// sum to 1, the sizes differ, or atom ids repeat.
  FiniteMeasureSpace(std::vector<std::string> atom_ids, std::vector<Rational> weights);

  /// Atoms named "0", "1", ...
  static FiniteMeasureSpace from_weights(std::vector<Rational> weights);
  static FiniteMeasureSpace uniform(std::size_t atoms);

  std::size_t size() const noexcept { return weights_.size(); }
  const std::vector<std::string>& atom_ids() const noexcept { return atom_ids_; }
  const std::vector<Rational>& weights() const noexcept { return weights_; }
  const Rational& weight(std::size_t atom) const { return weights_.at(atom); }

  friend bool operator==(const FiniteMeasureSpace&, const FiniteMeasureSpace&) = default;

 private:
  std::vector<std::string> atom_ids_;
  std::vector<Rational> weights_;
};

/// Non-increasing atom weights of a finite measure, labels forgotten.
class MetricType {
 public:
  /// Throws InvalidMeasure unless the sequence is non-increasing, every entry
  /// lies in (0,1], and the entries sum to exactly 1.
  explicit MetricType(std::vector<Rational> weights);

  const std::vector<Rational>& weights() const noexcept { return weights_; }

  friend bool operator==(const MetricType& a, const MetricType& b) { return a.weights_ == b.weights_; }
  friend bool operator<(const MetricType& a, const MetricType& b) {
    return std::lexicographical_compare(a.weights_.begin(), a.weights_.end(), b.weights_.begin(),
                                        b.weights_.end());
  }

 private:
  std::vector<Rational> weights_;
};

std::string to_string(const MetricType& type);

/// f: X -> Z on a finite space.
struct OneVarFunction {
  OneVarFunction(FiniteMeasureSpace domain, std::vector<Label> values);

  FiniteMeasureSpace domain;
  std::vector<Label> values;
};

/// Distribution of the extended function x -> (f(x), metric type of the fiber).
using RokhlinInvariant = std::map<std::pair<Label, MetricType>, Rational>;

/// mu( . | f = z). Throws ZeroMassValue when no atom maps to z.
FiniteMeasureSpace conditional_measure(const OneVarFunction& f, const Label& z);

MetricType metric_type(const FiniteMeasureSpace& space);

RokhlinInvariant rokhlin_invariant(const OneVarFunction& f);

/// Exact Rokhlin isomorphism for finite atomic spaces.
bool rokhlin_isomorphic(const OneVarFunction& f, const OneVarFunction& g);

}  // namespace mclass
