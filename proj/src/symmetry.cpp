#include "mclass/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "mclass/detail/bijection_search.hpp"
#include "mclass/errors.hpp"
#include "mclass/sampling.hpp"

namespace mclass {
namespace {

void check_weight_classes(const FiniteMeasureSpace& space) {
  std::map<Rational, std::size_t> sizes;
  for (const auto& w : space.weights()) {
    if (++sizes[w] > kMaxWeightClass) {
      throw SearchLimitExceeded("an equal-weight class has more than " +
                                std::to_string(kMaxWeightClass) + " atoms");
    }
  }
}

// Lifts purified atoms back to their first original member.
std::vector<std::size_t> first_members(const std::vector<std::size_t>& projection, std::size_t classes) {
  std::vector<std::size_t> lift(classes);
  for (std::size_t i = projection.size(); i-- > 0;) lift[projection[i]] = i;
  return lift;
}

bool same_matrix(const FiniteFunction& f, const std::vector<std::size_t>& xs,
                 const std::vector<std::size_t>& ys, const std::vector<std::size_t>& xs2,
                 const std::vector<std::size_t>& ys2) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      if (f.at(xs[i], ys[j]) != f.at(xs2[i], ys2[j])) return false;
    }
  }
  return true;
}

using Matrix = std::vector<std::vector<Label>>;  // rows

Matrix unflatten(const std::vector<Label>& cells, std::size_t k) {
  Matrix m(k);
  for (std::size_t i = 0; i < k; ++i) m[i].assign(cells.begin() + i * k, cells.begin() + (i + 1) * k);
  return m;
}

Matrix transpose(const Matrix& m) {
  const std::size_t k = m.size();
  Matrix t(k, std::vector<Label>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) t[j][i] = m[i][j];
  }
  return t;
}

// Smallest row-major form over all row and column permutations: for each row
// order, sorting the columns lexicographically gives the best column order.
std::vector<Label> orbit_representative(const Matrix& m) {
  const std::size_t k = m.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::vector<Label> best;
  do {
    Matrix permuted(k);
    for (std::size_t i = 0; i < k; ++i) permuted[i] = m[order[i]];
    Matrix cols = transpose(permuted);
    std::sort(cols.begin(), cols.end());
    std::vector<Label> flat;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) flat.push_back(cols[j][i]);
    }
    if (best.empty() || flat < best) best = std::move(flat);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace

bool CongruenceElement::is_identity() const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] != i) return false;
  }
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] != j) return false;
  }
  return true;
}

CongruenceGroup congruence_group(const FiniteFunction& f) {
  const FiniteFunction pure = purify(f).pure;
  check_weight_classes(pure.x_space());
  const auto& xw = pure.x_space().weights();
  const auto& yw = pure.y_space().weights();
  CongruenceGroup group;
  detail::for_each_value_bijection(
      pure, pure, [&](std::size_t x, std::size_t s) { return xw[x] == xw[s]; },
      [&](std::size_t y, std::size_t t) { return yw[y] == yw[t]; },
      [&](const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
        group.elements.push_back({rows, cols});
        return true;
      });
  std::sort(group.elements.begin(), group.elements.end());
  return group;
}

bool is_completely_pure(const FiniteFunction& f) {
  return is_pure(f) && congruence_group(f).order() == 1;
}

namespace {

std::vector<std::size_t> project(const std::vector<std::size_t>& atoms, const std::vector<std::size_t>& map) {
  std::vector<std::size_t> out;
  out.reserve(atoms.size());
  for (std::size_t a : atoms) out.push_back(map.at(a));
  return out;
}

// Pairs that differ only by swapping duplicate atoms are the same point of
// the pure factor and do not count.
bool verify_with_maps(const FiniteFunction& f, const FactorMaps& maps, const CollisionWitness& w) {
  const std::size_t n = w.first_rows.size();
  if (w.first_cols.size() != n || w.second_rows.size() != n || w.second_cols.size() != n) return false;
  if (project(w.first_rows, maps.row_projection) == project(w.second_rows, maps.row_projection) &&
      project(w.first_cols, maps.col_projection) == project(w.second_cols, maps.col_projection)) {
    return false;
  }
  return same_matrix(f, w.first_rows, w.first_cols, w.second_rows, w.second_cols);
}

}  // namespace

bool verify_collision(const FiniteFunction& f, const CollisionWitness& w) {
  return verify_with_maps(f, purify(f).maps, w);
}

std::optional<CollisionWitness> collision_witness(const FiniteFunction& f, std::size_t length,
                                                  std::size_t trials, std::uint64_t seed) {
  if (length == 0) throw std::invalid_argument("collision length must be positive");
  const auto [pure, maps] = purify(f);
  const CongruenceGroup group = congruence_group(f);

  if (group.order() > 1) {
    const CongruenceElement& g = group.elements[1];
    const auto lift_x = first_members(maps.row_projection, pure.rows());
    const auto lift_y = first_members(maps.col_projection, pure.cols());
    CollisionWitness w;
    w.first_rows = sample_atoms(f.x_space(), length, seed, 0);
    w.first_cols = sample_atoms(f.y_space(), length, seed, 1);
    const auto moves_x = [&](std::size_t x) { return g.rows[maps.row_projection[x]] != maps.row_projection[x]; };
    const auto moves_y = [&](std::size_t y) { return g.cols[maps.col_projection[y]] != maps.col_projection[y]; };
    if (std::none_of(w.first_rows.begin(), w.first_rows.end(), moves_x) &&
        std::none_of(w.first_cols.begin(), w.first_cols.end(), moves_y)) {
      // The sample only hit fixed points; put a moved atom in front.
      bool placed = false;
      for (std::size_t x = 0; x < g.rows.size() && !placed; ++x) {
        if (g.rows[x] != x) {
          w.first_rows[0] = lift_x[x];
          placed = true;
        }
      }
      for (std::size_t y = 0; y < g.cols.size() && !placed; ++y) {
        if (g.cols[y] != y) {
          w.first_cols[0] = lift_y[y];
          placed = true;
        }
      }
    }
    for (std::size_t x : w.first_rows) w.second_rows.push_back(lift_x[g.rows[maps.row_projection[x]]]);
    for (std::size_t y : w.first_cols) w.second_cols.push_back(lift_y[g.cols[maps.col_projection[y]]]);
    if (!verify_with_maps(f, maps, w)) throw std::logic_error("congruence element produced no collision");
    return w;
  }

  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t offset = static_cast<std::uint64_t>(t) * length;
    CollisionWitness w{sample_atoms(f.x_space(), length, seed, 2, offset),
                       sample_atoms(f.y_space(), length, seed, 3, offset),
                       sample_atoms(f.x_space(), length, seed, 4, offset),
                       sample_atoms(f.y_space(), length, seed, 5, offset)};
    if (verify_with_maps(f, maps, w)) return w;
  }
  return std::nullopt;
}

std::size_t collision_search_length(const FiniteFunction& f, std::size_t trials) {
  const FiniteFunction pure = purify(f).pure;
  double worst = 0.0;
  const auto consider = [&](const Rational& mass) {
    if (mass < 1) worst = std::max(worst, static_cast<double>(mass));
  };
  for (const auto& w : pure.x_space().weights()) consider(w);
  for (const auto& w : pure.y_space().weights()) consider(w);
  for (std::size_t a = 0; a < pure.rows(); ++a) {
    for (std::size_t b = a + 1; b < pure.rows(); ++b) {
      Rational agree = 0;
      for (std::size_t y = 0; y < pure.cols(); ++y) {
        if (pure.at(a, y) == pure.at(b, y)) agree += pure.y_space().weights()[y];
      }
      consider(agree);
    }
  }
  for (std::size_t a = 0; a < pure.cols(); ++a) {
    for (std::size_t b = a + 1; b < pure.cols(); ++b) {
      Rational agree = 0;
      for (std::size_t x = 0; x < pure.rows(); ++x) {
        if (pure.at(x, a) == pure.at(x, b)) agree += pure.x_space().weights()[x];
      }
      consider(agree);
    }
  }
  if (worst <= 0.0 || trials == 0) return kMinCollisionLength;
  const double needed = std::ceil(std::log(static_cast<double>(trials) / 1e-3) / -std::log(worst));
  return std::max(kMinCollisionLength, static_cast<std::size_t>(needed));
}

bool simplicity_decision(const FiniteFunction& f) { return congruence_group(f).order() == 1; }

SimplicityDiagnostic empirical_simplicity_diagnostic(const FiniteFunction& f, std::size_t k,
                                                     std::uint64_t budget) {
  const CornerDistribution corners = exact_corner_distribution(f, k, budget);
  using GroupKey = std::pair<Matrix, Matrix>;
  std::map<GroupKey, std::vector<Matrix>> groups;
  for (const auto& [cells, p] : corners.entries) {
    Matrix m = unflatten(cells, k);
    Matrix rows = m;
    Matrix cols = transpose(m);
    std::sort(rows.begin(), rows.end());
    std::sort(cols.begin(), cols.end());
    groups[{std::move(rows), std::move(cols)}].push_back(std::move(m));
  }

  SimplicityDiagnostic report;
  report.k = k;
  report.corners = corners.entries.size();
  report.groups = groups.size();
  for (const auto& [key, members] : groups) {
    std::vector<std::vector<Label>> reps;
    for (const auto& m : members) reps.push_back(orbit_representative(m));
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    if (reps.size() > 1) report.violations.push_back({key.first, key.second, std::move(reps)});
  }
  report.certifies_non_simple = !report.violations.empty();
  report.note = report.certifies_non_simple
                    ? "a group spans several orbits: D_f is not simple"
                    : "no violation at this k; this check is necessary only and cannot "
                      "certify simplicity (use the congruence group decision)";
  return report;
}

}  // namespace mclass
