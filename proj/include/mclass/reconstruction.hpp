#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mclass/finite_function.hpp"
#include "mclass/sampling.hpp"

namespace mclass {

/// A row prefix (r_{k,1}, ..., r_{k,n}) or a column prefix (r_{1,l}, ..., r_{n,l}).
using Prefix = std::vector<Label>;
using PrefixMeasure = std::map<Prefix, Rational>;

/// "a,b,c"; commas and backslashes inside labels are backslash-escaped.
std::string join_prefix(const Prefix& prefix);

/// Empirical distribution of the length-`depth` row prefixes; denominators
/// divide n_rows. Throws DepthExceedsMatrix when depth > n_cols.
PrefixMeasure empirical_row_measure(const SampledMatrix& r, std::size_t depth);

/// Column analogue; throws DepthExceedsMatrix when depth > n_rows.
PrefixMeasure empirical_col_measure(const SampledMatrix& r, std::size_t depth);

/// Statistics of the cells whose row prefix is in class A and column prefix in B.
struct JointCell {
  Rational mass;                          // share of all cells, mu_r(A) * nu_r(B)
  std::map<Label, Rational> frequencies;  // conditional label frequencies
  // Numeric labels only: m_r(A x B) = (1/N^2) * sum of r_{k,l}, and its
  // density against mu_r x nu_r, i.e. the mean value in the cell.
  std::optional<Rational> measure;
  std::optional<Rational> density;
};

struct EmpiricalModel {
  std::size_t depth = 0;
  PrefixMeasure row_classes;
  PrefixMeasure col_classes;
  std::map<std::pair<Prefix, Prefix>, JointCell> joint;
};

/// With `numeric` set, labels must parse as rationals in [0,1] and the
/// measure/density fields are filled.
EmpiricalModel empirical_joint(const SampledMatrix& r, std::size_t depth, bool numeric = false);

inline const Rational kDefaultMinClassMass{1, 100};

/// Individual canonical model at depth n: atoms are prefix classes with their
/// empirical weights, each cell takes its majority label. A cell whose row and
/// column classes both weigh at least `min_class_mass` must have a majority
/// share of at least 1 - min_class_mass, otherwise AmbiguousCell is thrown.
FiniteFunction reconstruct(const SampledMatrix& r, std::size_t depth,
                           const Rational& min_class_mass = kDefaultMinClassMass);

struct ReconstructionReport {
  FiniteFunction reconstructed;
  bool isomorphic_to_source = false;
  /// max of the row and column total variations between reconstructed and
  /// purified source weights under the best value-preserving matching; 1 when
  /// no matching exists.
  Rational weight_tv;
  std::size_t depth_used = 0;
  /// Reconstructed atom -> purified source atom, when a matching exists.
  std::optional<IsoWitness> matching;
};

/// Samples an N x N matrix, reconstructs it, and matches the result against
/// purify(f). Starting at `depth`, an ambiguous reconstruction is retried at
/// twice the depth (capped at N); depth_used records the depth that worked.
/// With `deepen` false the first AmbiguousCell propagates.
ReconstructionReport reconstruction_check(const FiniteFunction& f, std::size_t n_samples,
                                          std::size_t depth, std::uint64_t seed,
                                          const Rational& tol,
                                          const Rational& min_class_mass = kDefaultMinClassMass,
                                          bool deepen = true);

/// Total variation between the empirical law of (prefix of row 2i, prefix of
/// row 2i+1) and the product of the empirical row-prefix law with itself.
/// Requires an even number of rows.
Rational definetti_diagnostic(const SampledMatrix& r, std::size_t depth);

}  // namespace mclass
