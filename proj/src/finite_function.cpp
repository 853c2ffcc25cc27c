#include "mclass/finite_function.hpp"

#include <map>

#include "mclass/errors.hpp"

namespace mclass {

FiniteFunction::FiniteFunction(FiniteMeasureSpace x_space, FiniteMeasureSpace y_space,
                               std::vector<Label> values)
    : x_(std::move(x_space)), y_(std::move(y_space)), values_(std::move(values)) {
  if (values_.size() != x_.size() * y_.size()) {
    throw InvalidFunction("value matrix has " + std::to_string(values_.size()) +
                          " cells, expected " + std::to_string(x_.size()) + "x" +
                          std::to_string(y_.size()));
  }
}

namespace {

std::vector<Label> flatten(const std::vector<std::vector<Label>>& rows, std::size_t cols) {
  std::vector<Label> flat;
  flat.reserve(rows.size() * cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw InvalidFunction("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                            " values, expected " + std::to_string(cols));
    }
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return flat;
}

void check_permutation(std::span<const std::size_t> order, std::size_t n, const char* axis) {
  std::vector<bool> seen(n, false);
  if (order.size() != n) throw InvalidFunction(std::string(axis) + " order has the wrong length");
  for (std::size_t v : order) {
    if (v >= n || seen[v]) throw InvalidFunction(std::string(axis) + " order is not a permutation");
    seen[v] = true;
  }
}

FiniteMeasureSpace reorder(const FiniteMeasureSpace& space, std::span<const std::size_t> order) {
  std::vector<std::string> ids;
  std::vector<Rational> weights;
  for (std::size_t v : order) {
    ids.push_back(space.atom_ids()[v]);
    weights.push_back(space.weight(v));
  }
  return FiniteMeasureSpace(std::move(ids), std::move(weights));
}

// Groups equal keys by first occurrence; returns the class of each index.
template <class Key>
std::vector<std::size_t> classes_by_first_occurrence(const std::vector<Key>& keys,
                                                     std::size_t& class_count) {
  std::map<Key, std::size_t> index;
  std::vector<std::size_t> projection(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    auto [it, inserted] = index.try_emplace(keys[i], index.size());
    projection[i] = it->second;
  }
  class_count = index.size();
  return projection;
}

FiniteMeasureSpace quotient(const FiniteMeasureSpace& space,
                            const std::vector<std::size_t>& projection, std::size_t classes) {
  std::vector<std::string> ids(classes);
  std::vector<Rational> weights(classes, Rational(0));
  std::vector<bool> named(classes, false);
  for (std::size_t i = 0; i < projection.size(); ++i) {
    const std::size_t c = projection[i];
    if (!named[c]) {
      ids[c] = space.atom_ids()[i];
      named[c] = true;
    }
    weights[c] += space.weight(i);
  }
  return FiniteMeasureSpace(std::move(ids), std::move(weights));
}

// Metric type of mu(. | projection = c) for every class c.
std::vector<MetricType> fiber_types(const FiniteMeasureSpace& space,
                                    const std::vector<std::size_t>& projection,
                                    const FiniteMeasureSpace& quotient_space) {
  std::vector<std::vector<Rational>> fibers(quotient_space.size());
  for (std::size_t i = 0; i < projection.size(); ++i) {
    fibers[projection[i]].push_back(space.weight(i) / quotient_space.weight(projection[i]));
  }
  std::vector<MetricType> types;
  types.reserve(fibers.size());
  for (auto& fiber : fibers) types.push_back(metric_type(FiniteMeasureSpace::from_weights(fiber)));
  return types;
}

}  // namespace

FiniteFunction::FiniteFunction(FiniteMeasureSpace x_space, FiniteMeasureSpace y_space,
                               const std::vector<std::vector<Label>>& rows)
    : FiniteFunction(x_space, y_space, flatten(rows, y_space.size())) {
  if (rows.size() != x_.size()) {
    throw InvalidFunction("value matrix has " + std::to_string(rows.size()) + " rows, expected " +
                          std::to_string(x_.size()));
  }
}

FiniteFunction FiniteFunction::permuted(std::span<const std::size_t> row_order,
                                        std::span<const std::size_t> col_order) const {
  check_permutation(row_order, rows(), "row");
  check_permutation(col_order, cols(), "column");
  std::vector<Label> values;
  values.reserve(values_.size());
  for (std::size_t i : row_order) {
    for (std::size_t j : col_order) values.push_back(at(i, j));
  }
  return FiniteFunction(reorder(x_, row_order), reorder(y_, col_order), std::move(values));
}

bool is_pure(const FiniteFunction& f) {
  std::size_t row_classes = 0;
  std::size_t col_classes = 0;
  std::vector<std::vector<Label>> rows, cols;
  for (std::size_t i = 0; i < f.rows(); ++i) rows.emplace_back(f.row(i).begin(), f.row(i).end());
  for (std::size_t j = 0; j < f.cols(); ++j) {
    std::vector<Label> col;
    for (std::size_t i = 0; i < f.rows(); ++i) col.push_back(f.at(i, j));
    cols.push_back(std::move(col));
  }
  classes_by_first_occurrence(rows, row_classes);
  classes_by_first_occurrence(cols, col_classes);
  return row_classes == f.rows() && col_classes == f.cols();
}

Purification purify(const FiniteFunction& f) {
  // Rows first. Merging equal rows only drops repeated coordinates of each
  // column, so it never changes which columns are equal.
  std::vector<std::vector<Label>> rows;
  for (std::size_t i = 0; i < f.rows(); ++i) rows.emplace_back(f.row(i).begin(), f.row(i).end());
  std::size_t row_classes = 0;
  auto row_projection = classes_by_first_occurrence(rows, row_classes);

  std::vector<std::size_t> representative(row_classes);
  for (std::size_t i = f.rows(); i-- > 0;) representative[row_projection[i]] = i;

  std::vector<std::vector<Label>> cols;
  for (std::size_t j = 0; j < f.cols(); ++j) {
    std::vector<Label> col;
    for (std::size_t c = 0; c < row_classes; ++c) col.push_back(f.at(representative[c], j));
    cols.push_back(std::move(col));
  }
  std::size_t col_classes = 0;
  auto col_projection = classes_by_first_occurrence(cols, col_classes);

  std::vector<std::size_t> col_representative(col_classes);
  for (std::size_t j = f.cols(); j-- > 0;) col_representative[col_projection[j]] = j;

  std::vector<Label> values;
  values.reserve(row_classes * col_classes);
  for (std::size_t r = 0; r < row_classes; ++r) {
    for (std::size_t c = 0; c < col_classes; ++c) {
      values.push_back(f.at(representative[r], col_representative[c]));
    }
  }
  FiniteFunction pure(quotient(f.x_space(), row_projection, row_classes),
                      quotient(f.y_space(), col_projection, col_classes), std::move(values));
  return {std::move(pure), FactorMaps{std::move(row_projection), std::move(col_projection)}};
}

std::string to_string(const ExtendedValueLabel& label) {
  return label.base + "|" + to_string(label.row_type) + "|" + to_string(label.col_type);
}

ExtendedFunction extended_pure_factor(const FiniteFunction& f) {
  auto [pure, maps] = purify(f);
  const auto row_types = fiber_types(f.x_space(), maps.row_projection, pure.x_space());
  const auto col_types = fiber_types(f.y_space(), maps.col_projection, pure.y_space());
  std::vector<ExtendedValueLabel> values;
  values.reserve(pure.values().size());
  for (std::size_t i = 0; i < pure.rows(); ++i) {
    for (std::size_t j = 0; j < pure.cols(); ++j) {
      values.push_back({pure.at(i, j), row_types[i], col_types[j]});
    }
  }
  return {pure.x_space(), pure.y_space(), std::move(values)};
}

}  // namespace mclass
