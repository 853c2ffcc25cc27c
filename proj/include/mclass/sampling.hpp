#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "mclass/finite_function.hpp"
#include "mclass/matrix_distribution.hpp"

namespace mclass {

/// Philox4x32-10 (Salmon et al., SC'11), the counter-based generator used for
/// every draw. Fixtures depend on it; do not change the round structure or
/// constants.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// One 64-bit draw for stream (seed, axis, index).
/// key = (seed lo, seed hi), counter = (index lo, index hi, axis, 0),
/// result = word1 << 32 | word0.
std::uint64_t counter_draw(std::uint64_t seed, std::uint32_t axis, std::uint64_t index);

/// Atom index for a 64-bit draw u: the first atom i with
/// u < ceil(2^64 * (w_0 + ... + w_i)).
std::size_t atom_for_draw(const FiniteMeasureSpace& space, std::uint64_t draw);

/// `count` i.i.d. atoms of `space` from stream (seed, axis, offset..offset+count-1).
std::vector<std::size_t> sample_atoms(const FiniteMeasureSpace& space, std::size_t count,
                                      std::uint64_t seed, std::uint32_t axis, std::uint64_t offset = 0);

/// An N x N realization (f(x_i, y_j)). Atom indices are kept for test oracles.
struct SampledMatrix {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<Label> values;  // row-major
  std::uint64_t seed = 0;
  std::vector<std::size_t> row_atoms;
  std::vector<std::size_t> col_atoms;

  const Label& at(std::size_t i, std::size_t j) const { return values[i * n_cols + j]; }

  /// A matrix with no generating function (atoms left empty).
  static SampledMatrix from_rows(const std::vector<std::vector<Label>>& rows);
};

/// Rows use axis 0 and columns axis 1.
SampledMatrix sample_matrix(const FiniteFunction& f, std::size_t n, std::uint64_t seed);

struct SampledTensor {
  std::vector<std::size_t> shape;
  std::vector<Label> values;  // row-major, last axis fastest
  std::uint64_t seed = 0;
  std::vector<std::vector<std::size_t>> atoms;  // one stream per axis
};

/// Axis a draws from stream (seed, a, .); for n = 2 this equals sample_matrix.
SampledTensor sample_tensor(const TensorFunction& f, std::size_t n, std::uint64_t seed);

}  // namespace mclass
