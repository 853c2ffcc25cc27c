#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mclass/finite_function.hpp"
#include "mclass/matrix_distribution.hpp"

namespace mclass {

/// (S, T) over purified atom indices: row x maps to rows[x], column y to cols[y].
struct CongruenceElement {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;

  bool is_identity() const;
  friend bool operator==(const CongruenceElement&, const CongruenceElement&) = default;
  friend auto operator<=>(const CongruenceElement&, const CongruenceElement&) = default;
};

/// Weight-preserving (S, T) with f(S x, T y) = f(x, y), computed on the pure
/// factor. Elements are sorted; the identity comes first.
struct CongruenceGroup {
  std::vector<CongruenceElement> elements;
  std::size_t order() const noexcept { return elements.size(); }
};

/// Largest equal-weight class the row search will permute (10! candidates).
inline constexpr std::size_t kMaxWeightClass = 10;

/// Throws SearchLimitExceeded when an equal-weight class of purified row atoms
/// is larger than kMaxWeightClass.
CongruenceGroup congruence_group(const FiniteFunction& f);

bool is_completely_pure(const FiniteFunction& f);

/// Two different pairs of atom sequences (original atom indices) of equal
/// length whose value matrices agree cell for cell.
struct CollisionWitness {
  std::vector<std::size_t> first_rows;
  std::vector<std::size_t> first_cols;
  std::vector<std::size_t> second_rows;
  std::vector<std::size_t> second_cols;
};

inline constexpr std::size_t kMinCollisionLength = 16;

/// Length at which a search of `trials` trials on a function with trivial
/// congruence group is unlikely (below 1e-3) to hit a null-set collision.
/// Uses a^L, where a is the largest mass below 1 that a single pure atom, or
/// the agreement set of two distinct pure atoms, can carry on either axis.
/// Never less than kMinCollisionLength.
std::size_t collision_search_length(const FiniteFunction& f, std::size_t trials);

/// With a non-trivial congruence group, applies its first non-identity element
/// to a sampled sequence pair. Otherwise runs `trials` searches over
/// independently sampled pairs and returns nullopt when none collide; that is
/// evidence, not proof, of injectivity. Short lengths admit collisions that
/// exist only on null sets (a heavy constant column, for example); see
/// collision_search_length.
std::optional<CollisionWitness> collision_witness(const FiniteFunction& f, std::size_t length,
                                                  std::size_t trials, std::uint64_t seed);

/// True when every cell of the two value matrices agrees and the pairs differ
/// as sequences of pure-factor atoms.
bool verify_collision(const FiniteFunction& f, const CollisionWitness& w);

/// D_f is simple iff the congruence group of the pure factor is trivial.
bool simplicity_decision(const FiniteFunction& f);

struct DiagnosticViolation {
  std::vector<std::vector<Label>> row_multiset;
  std::vector<std::vector<Label>> col_multiset;
  std::vector<std::vector<Label>> orbit_representatives;  // row-major k*k
};

struct SimplicityDiagnostic {
  std::size_t k = 0;
  std::size_t corners = 0;  // positive-probability k x k matrices
  std::size_t groups = 0;
  std::vector<DiagnosticViolation> violations;
  /// A violation certifies non-simplicity; no violation proves nothing.
  bool certifies_non_simple = false;
  std::string note;
};

/// Groups the positive-probability k-corners by their row and column
/// multisets and reports groups that span several row/column permutation orbits.
SimplicityDiagnostic empirical_simplicity_diagnostic(const FiniteFunction& f, std::size_t k,
                                                     std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace mclass
