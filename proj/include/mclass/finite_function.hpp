#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mclass/measure.hpp"

namespace mclass {

/// f: X x Y -> Z on finite spaces. Row i is atom i of X, column j atom j of Y.
class FiniteFunction {
 public:
  /// `values` is row-major with |X| * |Y| entries; throws InvalidFunction otherwise.
  FiniteFunction(FiniteMeasureSpace x_space, FiniteMeasureSpace y_space, std::vector<Label> values);

  /// Convenience for tests and bindings: rows of labels.
  FiniteFunction(FiniteMeasureSpace x_space, FiniteMeasureSpace y_space,
                 const std::vector<std::vector<Label>>& rows);

  const FiniteMeasureSpace& x_space() const noexcept { return x_; }
  const FiniteMeasureSpace& y_space() const noexcept { return y_; }
  std::size_t rows() const noexcept { return x_.size(); }
  std::size_t cols() const noexcept { return y_.size(); }
  const Label& at(std::size_t row, std::size_t col) const { return values_[row * cols() + col]; }
  std::span<const Label> row(std::size_t i) const {
    return std::span<const Label>(values_).subspan(i * cols(), cols());
  }
  const std::vector<Label>& values() const noexcept { return values_; }

  /// g(i, j) = f(row_order[i], col_order[j]): the function re-presented in a
  /// different atom order. Both orders must be permutations.
  FiniteFunction permuted(std::span<const std::size_t> row_order,
                          std::span<const std::size_t> col_order) const;

  friend bool operator==(const FiniteFunction&, const FiniteFunction&) = default;

 private:
  FiniteMeasureSpace x_;
  FiniteMeasureSpace y_;
  std::vector<Label> values_;
};

/// Projections from original atoms onto purified atoms.
struct FactorMaps {
  std::vector<std::size_t> row_projection;
  std::vector<std::size_t> col_projection;
};

struct Purification {
  FiniteFunction pure;
  FactorMaps maps;
};

/// No two rows equal and no two columns equal.
bool is_pure(const FiniteFunction& f);

/// Merges identical rows, then identical columns. Purified atoms are numbered
/// by first occurrence and keep the id of their first member.
Purification purify(const FiniteFunction& f);

struct ExtendedValueLabel {
  Label base;
  MetricType row_type;
  MetricType col_type;

  friend bool operator==(const ExtendedValueLabel&, const ExtendedValueLabel&) = default;
  friend bool operator<(const ExtendedValueLabel& a, const ExtendedValueLabel& b) {
    if (a.base != b.base) return a.base < b.base;
    if (!(a.row_type == b.row_type)) return a.row_type < b.row_type;
    return a.col_type < b.col_type;
  }
};

std::string to_string(const ExtendedValueLabel& label);

/// The extended pure factor: purified spaces and cells (value, row type, column type).
struct ExtendedFunction {
  FiniteMeasureSpace x_space;
  FiniteMeasureSpace y_space;
  std::vector<ExtendedValueLabel> values;  // row-major

  const ExtendedValueLabel& at(std::size_t row, std::size_t col) const {
    return values[row * y_space.size() + col];
  }
};

ExtendedFunction extended_pure_factor(const FiniteFunction& f);

/// Complete isomorphism invariant: the extended pure factor with rows and
/// columns in canonical order.
struct CanonicalForm {
  std::vector<Rational> x_weights;
  std::vector<Rational> y_weights;
  std::vector<ExtendedValueLabel> values;  // row-major

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

/// Canonical form plus the orders that produced it: row_order[i] is the
/// purified atom placed at canonical row i.
struct CanonicalLabeling {
  CanonicalForm form;
  std::vector<std::size_t> row_order;
  std::vector<std::size_t> col_order;
};

CanonicalLabeling canonical_labeling(const ExtendedFunction& ext);
CanonicalForm canonical_form(const FiniteFunction& f);

/// Weight-preserving bijections between the purified atom sets of f and g:
/// rows[x] is the purified g-atom assigned to purified f-atom x.
struct IsoWitness {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

/// Returns a verified witness carrying the extended pure factor of f onto that
/// of g, or nullopt when f and g are not isomorphic.
std::optional<IsoWitness> isomorphic(const FiniteFunction& f, const FiniteFunction& g);

}  // namespace mclass
