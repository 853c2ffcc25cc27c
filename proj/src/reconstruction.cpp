#include "mclass/reconstruction.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "mclass/detail/bijection_search.hpp"
#include "mclass/errors.hpp"

namespace mclass {
namespace {

struct Classes {
  std::vector<Prefix> prefixes;         // sorted
  std::vector<std::size_t> member_of;   // per row (or column)
  std::vector<std::size_t> sizes;
};

// An N x N value grid whose rows (columns) fall into groups of identical
// index behavior: every row of a group has the same values. A plain matrix
// uses one group per row; a sample of a finite function groups by atom, which
// keeps counting at O(|X| |Y|) instead of O(N^2) with identical results.
struct Grid {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<std::size_t> row_group;
  std::vector<std::size_t> col_group;
  std::size_t row_groups = 0;
  std::size_t col_groups = 0;
  std::function<const Label&(std::size_t, std::size_t)> value;  // (row group, column group)

  const Label& at(std::size_t i, std::size_t j) const { return value(row_group[i], col_group[j]); }
};

std::vector<std::size_t> identity_groups(std::size_t n) {
  std::vector<std::size_t> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = i;
  return g;
}

Grid grid_of(const SampledMatrix& r) {
  Grid g;
  g.n_rows = r.n_rows;
  g.n_cols = r.n_cols;
  g.row_group = identity_groups(r.n_rows);
  g.col_group = identity_groups(r.n_cols);
  g.row_groups = r.n_rows;
  g.col_groups = r.n_cols;
  g.value = [&r](std::size_t i, std::size_t j) -> const Label& { return r.at(i, j); };
  return g;
}

Grid grid_of(const FiniteFunction& f, std::vector<std::size_t> row_atoms, std::vector<std::size_t> col_atoms) {
  Grid g;
  g.n_rows = row_atoms.size();
  g.n_cols = col_atoms.size();
  g.row_group = std::move(row_atoms);
  g.col_group = std::move(col_atoms);
  g.row_groups = f.rows();
  g.col_groups = f.cols();
  g.value = [&f](std::size_t x, std::size_t y) -> const Label& { return f.at(x, y); };
  return g;
}

Classes classify(const Grid& r, std::size_t depth, bool by_rows) {
  const std::size_t count = by_rows ? r.n_rows : r.n_cols;
  const std::size_t limit = by_rows ? r.n_cols : r.n_rows;
  if (depth > limit) {
    throw DepthExceedsMatrix("depth " + std::to_string(depth) + " exceeds the " +
                             std::to_string(limit) + " available " + (by_rows ? "columns" : "rows"));
  }
  std::vector<Prefix> prefixes(count);
  for (std::size_t i = 0; i < count; ++i) {
    prefixes[i].reserve(depth);
    for (std::size_t d = 0; d < depth; ++d) prefixes[i].push_back(by_rows ? r.at(i, d) : r.at(d, i));
  }
  Classes c;
  c.prefixes = prefixes;
  std::sort(c.prefixes.begin(), c.prefixes.end());
  c.prefixes.erase(std::unique(c.prefixes.begin(), c.prefixes.end()), c.prefixes.end());
  c.sizes.assign(c.prefixes.size(), 0);
  c.member_of.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    c.member_of[i] = static_cast<std::size_t>(
        std::lower_bound(c.prefixes.begin(), c.prefixes.end(), prefixes[i]) - c.prefixes.begin());
    ++c.sizes[c.member_of[i]];
  }
  return c;
}

PrefixMeasure to_measure(const Classes& c, std::size_t total) {
  PrefixMeasure m;
  for (std::size_t i = 0; i < c.prefixes.size(); ++i) {
    m.emplace(c.prefixes[i], Rational(static_cast<long long>(c.sizes[i]), static_cast<long long>(total)));
  }
  return m;
}

// Per (row class, column class, label code) cell counts.
struct CellCounts {
  Classes rows;
  Classes cols;
  std::vector<Label> alphabet;
  std::vector<std::size_t> counts;

  std::size_t index(std::size_t a, std::size_t b, std::size_t z) const {
    return (a * cols.prefixes.size() + b) * alphabet.size() + z;
  }
};

CellCounts count_cells(const Grid& r, std::size_t depth) {
  CellCounts cc{classify(r, depth, true), classify(r, depth, false), {}, {}};
  // Multiplicity and class of every group that occurs.
  constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
  std::vector<std::size_t> row_mult(r.row_groups, 0), row_class(r.row_groups, kAbsent);
  std::vector<std::size_t> col_mult(r.col_groups, 0), col_class(r.col_groups, kAbsent);
  for (std::size_t i = 0; i < r.n_rows; ++i) {
    ++row_mult[r.row_group[i]];
    row_class[r.row_group[i]] = cc.rows.member_of[i];
  }
  for (std::size_t j = 0; j < r.n_cols; ++j) {
    ++col_mult[r.col_group[j]];
    col_class[r.col_group[j]] = cc.cols.member_of[j];
  }
  std::vector<std::size_t> rg, cg;
  for (std::size_t a = 0; a < r.row_groups; ++a) {
    if (row_mult[a]) rg.push_back(a);
  }
  for (std::size_t b = 0; b < r.col_groups; ++b) {
    if (col_mult[b]) cg.push_back(b);
  }
  for (std::size_t a : rg) {
    for (std::size_t b : cg) cc.alphabet.push_back(r.value(a, b));
  }
  std::sort(cc.alphabet.begin(), cc.alphabet.end());
  cc.alphabet.erase(std::unique(cc.alphabet.begin(), cc.alphabet.end()), cc.alphabet.end());
  cc.counts.assign(cc.rows.prefixes.size() * cc.cols.prefixes.size() * cc.alphabet.size(), 0);
  for (std::size_t a : rg) {
    for (std::size_t b : cg) {
      const auto z = static_cast<std::size_t>(
          std::lower_bound(cc.alphabet.begin(), cc.alphabet.end(), r.value(a, b)) - cc.alphabet.begin());
      cc.counts[cc.index(row_class[a], col_class[b], z)] += row_mult[a] * col_mult[b];
    }
  }
  return cc;
}

Rational numeric_value(const Label& label) {
  Rational v;
  try {
    v = parse_rational(label, false);
  } catch (const std::invalid_argument&) {
    throw InvalidFunction("label '" + label + "' is not numeric");
  }
  if (v < 0 || v > 1) throw InvalidFunction("numeric label '" + label + "' outside [0,1]");
  return v;
}

Rational half_l1(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += abs(Rational(a[i] - b[i]));
  return sum / 2;
}

}  // namespace

std::string join_prefix(const Prefix& prefix) {
  std::string out;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (i) out += ',';
    for (char c : prefix[i]) {
      if (c == ',' || c == '\\') out += '\\';
      out += c;
    }
  }
  return out;
}

PrefixMeasure empirical_row_measure(const SampledMatrix& r, std::size_t depth) {
  return to_measure(classify(grid_of(r), depth, true), r.n_rows);
}

PrefixMeasure empirical_col_measure(const SampledMatrix& r, std::size_t depth) {
  return to_measure(classify(grid_of(r), depth, false), r.n_cols);
}

EmpiricalModel empirical_joint(const SampledMatrix& r, std::size_t depth, bool numeric) {
  const CellCounts cc = count_cells(grid_of(r), depth);
  std::vector<Rational> label_values;
  if (numeric) {
    for (const auto& l : cc.alphabet) label_values.push_back(numeric_value(l));
  }
  EmpiricalModel model;
  model.depth = depth;
  model.row_classes = to_measure(cc.rows, r.n_rows);
  model.col_classes = to_measure(cc.cols, r.n_cols);
  const auto all_cells = static_cast<long long>(r.n_rows * r.n_cols);
  for (std::size_t a = 0; a < cc.rows.prefixes.size(); ++a) {
    for (std::size_t b = 0; b < cc.cols.prefixes.size(); ++b) {
      const auto cells = static_cast<long long>(cc.rows.sizes[a] * cc.cols.sizes[b]);
      if (cells == 0) {
        throw EmptyCell("no cells for (" + join_prefix(cc.rows.prefixes[a]) + " | " +
                        join_prefix(cc.cols.prefixes[b]) + ")");
      }
      JointCell cell;
      cell.mass = Rational(cells, all_cells);
      Rational value_sum = 0;
      for (std::size_t z = 0; z < cc.alphabet.size(); ++z) {
        const auto n = static_cast<long long>(cc.counts[cc.index(a, b, z)]);
        if (n == 0) continue;
        cell.frequencies.emplace(cc.alphabet[z], Rational(n, cells));
        if (numeric) value_sum += label_values[z] * n;
      }
      if (numeric) {
        cell.measure = value_sum / all_cells;
        cell.density = value_sum / cells;
      }
      model.joint.emplace(std::make_pair(cc.rows.prefixes[a], cc.cols.prefixes[b]), std::move(cell));
    }
  }
  return model;
}

namespace {

FiniteFunction reconstruct_grid(const Grid& r, std::size_t depth, const Rational& min_class_mass) {
  const CellCounts cc = count_cells(r, depth);
  const Rational threshold = 1 - min_class_mass;

  std::vector<std::string> row_ids, col_ids;
  std::vector<Rational> row_weights, col_weights;
  for (std::size_t a = 0; a < cc.rows.prefixes.size(); ++a) {
    row_ids.push_back(join_prefix(cc.rows.prefixes[a]));
    row_weights.emplace_back(static_cast<long long>(cc.rows.sizes[a]), static_cast<long long>(r.n_rows));
  }
  for (std::size_t b = 0; b < cc.cols.prefixes.size(); ++b) {
    col_ids.push_back(join_prefix(cc.cols.prefixes[b]));
    col_weights.emplace_back(static_cast<long long>(cc.cols.sizes[b]), static_cast<long long>(r.n_cols));
  }

  std::vector<Label> values;
  for (std::size_t a = 0; a < row_ids.size(); ++a) {
    for (std::size_t b = 0; b < col_ids.size(); ++b) {
      std::size_t best = 0;
      std::size_t total = 0;
      for (std::size_t z = 0; z < cc.alphabet.size(); ++z) {
        const std::size_t n = cc.counts[cc.index(a, b, z)];
        total += n;
        if (n > cc.counts[cc.index(a, b, best)]) best = z;  // ties keep the smaller label
      }
      const Rational share(static_cast<long long>(cc.counts[cc.index(a, b, best)]),
                           static_cast<long long>(total));
      if (row_weights[a] >= min_class_mass && col_weights[b] >= min_class_mass && share < threshold) {
        throw AmbiguousCell(row_ids[a], col_ids[b], to_double(share));
      }
      values.push_back(cc.alphabet[best]);
    }
  }
  return FiniteFunction(FiniteMeasureSpace(std::move(row_ids), std::move(row_weights)),
                        FiniteMeasureSpace(std::move(col_ids), std::move(col_weights)),
                        std::move(values));
}

}  // namespace

FiniteFunction reconstruct(const SampledMatrix& r, std::size_t depth, const Rational& min_class_mass) {
  return reconstruct_grid(grid_of(r), depth, min_class_mass);
}

ReconstructionReport reconstruction_check(const FiniteFunction& f, std::size_t n_samples,
                                          std::size_t depth, std::uint64_t seed,
                                          const Rational& tol, const Rational& min_class_mass,
                                          bool deepen) {
  if (depth == 0) throw std::invalid_argument("depth must be positive");
  // Same atoms as sample_matrix(f, n_samples, seed), counted per atom.
  const Grid r = grid_of(f, sample_atoms(f.x_space(), n_samples, seed, 0),
                         sample_atoms(f.y_space(), n_samples, seed, 1));
  std::size_t used = std::min(depth, r.n_cols);
  std::optional<FiniteFunction> rebuilt;
  while (!rebuilt) {
    try {
      rebuilt = reconstruct_grid(r, used, min_class_mass);
    } catch (const AmbiguousCell&) {
      if (!deepen || used >= r.n_cols) throw;
      used = std::min(2 * used, r.n_cols);
    }
  }

  const FiniteFunction source = purify(f).pure;
  ReconstructionReport report{*rebuilt, false, Rational(1), used, std::nullopt};
  const auto any = [](std::size_t, std::size_t) { return true; };
  detail::for_each_value_bijection(
      *rebuilt, source, any, any,
      [&](const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
        std::vector<Rational> target_x, target_y;
        for (std::size_t x : rows) target_x.push_back(source.x_space().weight(x));
        for (std::size_t y : cols) target_y.push_back(source.y_space().weight(y));
        const Rational tv = std::max(half_l1(rebuilt->x_space().weights(), target_x),
                                     half_l1(rebuilt->y_space().weights(), target_y));
        if (!report.matching || tv < report.weight_tv) {
          report.weight_tv = tv;
          report.matching = IsoWitness{rows, cols};
        }
        return true;
      });
  report.isomorphic_to_source = report.matching.has_value() && report.weight_tv <= tol;
  return report;
}

Rational definetti_diagnostic(const SampledMatrix& r, std::size_t depth) {
  if (r.n_rows % 2 != 0) throw std::invalid_argument("de Finetti diagnostic needs an even row count");
  const Classes c = classify(grid_of(r), depth, true);
  const std::size_t classes = c.prefixes.size();
  const std::size_t pairs = r.n_rows / 2;
  std::vector<std::size_t> joint(classes * classes, 0);
  for (std::size_t i = 0; i < pairs; ++i) ++joint[c.member_of[2 * i] * classes + c.member_of[2 * i + 1]];

  // sum |n_ab / P - s_a s_b / N^2|, over the common denominator P * N^2.
  const auto n = static_cast<long long>(r.n_rows);
  BigInt sum = 0;
  for (std::size_t a = 0; a < classes; ++a) {
    for (std::size_t b = 0; b < classes; ++b) {
      BigInt diff = BigInt(joint[a * classes + b]) * n * n -
                    BigInt(c.sizes[a]) * BigInt(c.sizes[b]) * static_cast<long long>(pairs);
      sum += diff < 0 ? BigInt(-diff) : diff;
    }
  }
  return Rational(sum, BigInt(2) * static_cast<long long>(pairs) * n * n);
}

}  // namespace mclass
