#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "mclass/finite_function.hpp"

namespace mclass {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;

/// Exact law of the top-left k x k corner of the random matrix (f(x_i, y_j)).
/// Keys are row-major k*k label sequences.
struct CornerDistribution {
  std::size_t k = 0;
  std::map<std::vector<Label>, Rational> entries;

  friend bool operator==(const CornerDistribution&, const CornerDistribution&) = default;
};

/// Enumerates all row and column k-tuples of atoms. Throws BudgetExceeded when
/// |X|^k |Y|^k exceeds `budget`.
CornerDistribution exact_corner_distribution(const FiniteFunction& f, std::size_t k,
                                             std::uint64_t budget = kDefaultEnumerationBudget);

bool corner_distributions_equal(const FiniteFunction& f, const FiniteFunction& g, std::size_t k,
                                std::uint64_t budget = kDefaultEnumerationBudget);

/// Half the L1 distance over the union of supports. Throws SizeMismatch when
/// the corner sizes differ.
Rational total_variation(const CornerDistribution& a, const CornerDistribution& b);

/// Total variation of two finite distributions given as maps.
template <class Key>
Rational total_variation(const std::map<Key, Rational>& a, const std::map<Key, Rational>& b) {
  Rational sum = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      sum += abs(ia->second);
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      sum += abs(ib->second);
      ++ib;
    } else {
      sum += abs(Rational(ia->second - ib->second));
      ++ia;
      ++ib;
    }
  }
  return sum / 2;
}

/// f: X_1 x ... x X_n -> Z. Values are row-major with the last axis fastest.
class TensorFunction {
 public:
  TensorFunction(std::vector<FiniteMeasureSpace> axes, std::vector<Label> values);
  explicit TensorFunction(const FiniteFunction& f);

  std::size_t arity() const noexcept { return axes_.size(); }
  const std::vector<FiniteMeasureSpace>& axes() const noexcept { return axes_; }
  std::vector<std::size_t> shape() const;
  const std::vector<Label>& values() const noexcept { return values_; }
  const Label& at(std::span<const std::size_t> index) const;

 private:
  std::vector<FiniteMeasureSpace> axes_;
  std::vector<Label> values_;
};

/// Law of the k x ... x k corner of the random tensor; keys are row-major
/// k^n label sequences.
struct TensorCornerDistribution {
  std::size_t arity = 0;
  std::size_t k = 0;
  std::map<std::vector<Label>, Rational> entries;
};

TensorCornerDistribution exact_tensor_corner(const TensorFunction& f, std::size_t k,
                                             std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace mclass
