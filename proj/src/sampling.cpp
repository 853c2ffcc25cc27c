#include "mclass/sampling.hpp"

#include <stdexcept>

#include "mclass/errors.hpp"

namespace mclass {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

using u128 = unsigned __int128;

// ceil(2^64 * c) for 0 <= c <= 1, exact.
u128 scaled_threshold(const Rational& c) {
  BigInt num = boost::multiprecision::numerator(c);
  const BigInt& den = boost::multiprecision::denominator(c);
  num <<= 64;
  BigInt q = num / den;
  if (q * den != num) q += 1;
  u128 out = static_cast<std::uint64_t>(q >> 64);
  out <<= 64;
  out |= static_cast<std::uint64_t>(q & BigInt(~std::uint64_t{0}));
  return out;
}

// Cumulative thresholds per space, recomputed per call; spaces are small.
std::vector<u128> thresholds(const FiniteMeasureSpace& space) {
  std::vector<u128> out;
  out.reserve(space.size());
  Rational cumulative = 0;
  for (const auto& w : space.weights()) {
    cumulative += w;
    out.push_back(scaled_threshold(cumulative));
  }
  return out;
}

std::size_t pick(const std::vector<u128>& cut, std::uint64_t draw) {
  for (std::size_t i = 0; i < cut.size(); ++i) {
    if (static_cast<u128>(draw) < cut[i]) return i;
  }
  return cut.size() - 1;  // unreachable: the last threshold is 2^64
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::uint64_t counter_draw(std::uint64_t seed, std::uint32_t axis, std::uint64_t index) {
  const auto out = philox4x32_10(
      {static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), axis, 0u},
      {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

std::size_t atom_for_draw(const FiniteMeasureSpace& space, std::uint64_t draw) {
  return pick(thresholds(space), draw);
}

std::vector<std::size_t> sample_atoms(const FiniteMeasureSpace& space, std::size_t count,
                                      std::uint64_t seed, std::uint32_t axis, std::uint64_t offset) {
  const auto cut = thresholds(space);
  std::vector<std::size_t> atoms(count);
  for (std::size_t i = 0; i < count; ++i) atoms[i] = pick(cut, counter_draw(seed, axis, offset + i));
  return atoms;
}

SampledMatrix SampledMatrix::from_rows(const std::vector<std::vector<Label>>& rows) {
  SampledMatrix m;
  m.n_rows = rows.size();
  m.n_cols = rows.empty() ? 0 : rows.front().size();
  for (const auto& row : rows) {
    if (row.size() != m.n_cols) throw SizeMismatch("ragged matrix rows");
    m.values.insert(m.values.end(), row.begin(), row.end());
  }
  return m;
}

SampledMatrix sample_matrix(const FiniteFunction& f, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample size must be positive");
  SampledMatrix m;
  m.n_rows = n;
  m.n_cols = n;
  m.seed = seed;
  m.row_atoms = sample_atoms(f.x_space(), n, seed, 0);
  m.col_atoms = sample_atoms(f.y_space(), n, seed, 1);
  m.values.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.values.push_back(f.at(m.row_atoms[i], m.col_atoms[j]));
  }
  return m;
}

SampledTensor sample_tensor(const TensorFunction& f, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample size must be positive");
  SampledTensor t;
  t.seed = seed;
  t.shape.assign(f.arity(), n);
  for (std::size_t a = 0; a < f.arity(); ++a) {
    t.atoms.push_back(sample_atoms(f.axes()[a], n, seed, static_cast<std::uint32_t>(a)));
  }
  std::size_t cells = 1;
  for (std::size_t a = 0; a < f.arity(); ++a) cells *= n;
  t.values.reserve(cells);
  std::vector<std::size_t> index(f.arity(), 0);
  std::vector<std::size_t> atom_index(f.arity());
  for (std::size_t c = 0; c < cells; ++c) {
    for (std::size_t a = 0; a < f.arity(); ++a) atom_index[a] = t.atoms[a][index[a]];
    t.values.push_back(f.at(atom_index));
    for (std::size_t a = f.arity(); a-- > 0;) {
      if (++index[a] < n) break;
      index[a] = 0;
    }
  }
  return t;
}

}  // namespace mclass
