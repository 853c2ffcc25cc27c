// Exact corner enumeration.
//
// Weights on each axis are scaled to integers over the axis' common
// denominator D, so the mass of a tuple is an integer numerator over
// D_x^k * D_y^k. Numerators accumulate in unsigned __int128 when that total
// fits, else in cpp_int. Per row tuple, columns that produce the same column
// vector are merged before the column tuples are enumerated.

#include "mclass/matrix_distribution.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "mclass/errors.hpp"

namespace mclass {
namespace {

using u128 = unsigned __int128;

struct CodeHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::uint32_t x : v) {
      h ^= x;
      h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h);
  }
};

template <class Acc>
using Accumulator = std::unordered_map<std::vector<std::uint32_t>, Acc, CodeHash>;

struct Alphabet {
  std::vector<Label> labels;  // sorted
  std::uint32_t code(const Label& l) const {
    return static_cast<std::uint32_t>(std::lower_bound(labels.begin(), labels.end(), l) -
                                      labels.begin());
  }
};

Alphabet make_alphabet(const std::vector<Label>& values) {
  Alphabet a{values};
  std::sort(a.labels.begin(), a.labels.end());
  a.labels.erase(std::unique(a.labels.begin(), a.labels.end()), a.labels.end());
  return a;
}

struct ScaledWeights {
  BigInt denominator;
  std::vector<BigInt> numerators;
};

ScaledWeights scale(const FiniteMeasureSpace& space) {
  ScaledWeights s{1, {}};
  for (const auto& w : space.weights()) {
    s.denominator = boost::multiprecision::lcm(s.denominator, BigInt(boost::multiprecision::denominator(w)));
  }
  for (const auto& w : space.weights()) {
    s.numerators.push_back(boost::multiprecision::numerator(w) *
                           (s.denominator / boost::multiprecision::denominator(w)));
  }
  return s;
}

void check_budget(const std::vector<std::size_t>& axis_sizes, std::size_t k, std::uint64_t budget) {
  if (k == 0) throw std::invalid_argument("corner size k must be at least 1");
  BigInt required = 1;
  for (std::size_t n : axis_sizes) required *= boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(k));
  if (required > budget) throw BudgetExceeded(required.str(), std::to_string(budget));
}

bool fits_u128(const std::vector<ScaledWeights>& axes, std::size_t k) {
  std::size_t bits = 0;
  for (const auto& a : axes) bits += k * (boost::multiprecision::msb(a.denominator) + 1);
  return bits <= 126;
}

template <class Acc>
Acc to_acc(const BigInt& v) {
  if constexpr (std::is_same_v<Acc, u128>) {
    u128 out = static_cast<std::uint64_t>(v >> 64);
    out <<= 64;
    return out | static_cast<std::uint64_t>(v & BigInt(~std::uint64_t{0}));
  } else {
    return v;
  }
}

BigInt to_big(u128 v) {
  BigInt out = static_cast<std::uint64_t>(v >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(v);
  return out;
}
const BigInt& to_big(const BigInt& v) { return v; }

template <class Acc>
std::map<std::vector<Label>, Rational> finish(const Accumulator<Acc>& acc, const Alphabet& alphabet,
                                              const BigInt& total) {
  // Codes follow label order, so sorted codes give keys in map order.
  std::vector<const typename Accumulator<Acc>::value_type*> sorted;
  sorted.reserve(acc.size());
  for (const auto& entry : acc) sorted.push_back(&entry);
  std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) { return a->first < b->first; });
  std::map<std::vector<Label>, Rational> out;
  for (const auto* entry : sorted) {
    std::vector<Label> key;
    key.reserve(entry->first.size());
    for (std::uint32_t c : entry->first) key.push_back(alphabet.labels[c]);
    out.emplace_hint(out.end(), std::move(key), Rational(to_big(entry->second), total));
  }
  return out;
}

template <class Acc>
class MatrixCornerEnumerator {
 public:
  MatrixCornerEnumerator(const FiniteFunction& f, const Alphabet& alphabet, std::size_t k,
                         const ScaledWeights& xw, const ScaledWeights& yw)
      : f_(f), k_(k), cells_(k * k), rows_(k) {
    codes_.reserve(f.values().size());
    for (const auto& v : f.values()) codes_.push_back(alphabet.code(v));
    for (const auto& w : xw.numerators) x_weights_.push_back(to_acc<Acc>(w));
    for (const auto& w : yw.numerators) y_weights_.push_back(to_acc<Acc>(w));
  }

  Accumulator<Acc> run() {
    choose_row(0, Acc(1));
    return std::move(acc_);
  }

 private:
  struct ColumnClass {
    std::vector<std::uint32_t> vector;
    Acc weight;
  };

  std::uint32_t code(std::size_t x, std::size_t y) const { return codes_[x * f_.cols() + y]; }

  void choose_row(std::size_t depth, const Acc& weight) {
    if (depth == k_) {
      build_column_classes();
      choose_col(0, weight);
      return;
    }
    for (std::size_t x = 0; x < f_.rows(); ++x) {
      rows_[depth] = x;
      choose_row(depth + 1, weight * x_weights_[x]);
    }
  }

  void build_column_classes() {
    classes_.clear();
    std::vector<std::uint32_t> column(k_);
    for (std::size_t y = 0; y < f_.cols(); ++y) {
      for (std::size_t i = 0; i < k_; ++i) column[i] = code(rows_[i], y);
      auto it = std::find_if(classes_.begin(), classes_.end(),
                             [&](const ColumnClass& c) { return c.vector == column; });
      if (it == classes_.end()) {
        classes_.push_back({column, y_weights_[y]});
      } else {
        it->weight += y_weights_[y];
      }
    }
  }

  void choose_col(std::size_t depth, const Acc& weight) {
    if (depth == k_) {
      auto it = acc_.find(cells_);
      if (it == acc_.end()) {
        acc_.emplace(cells_, weight);
      } else {
        it->second += weight;
      }
      return;
    }
    for (const auto& cls : classes_) {
      for (std::size_t i = 0; i < k_; ++i) cells_[i * k_ + depth] = cls.vector[i];
      choose_col(depth + 1, weight * cls.weight);
    }
  }

  const FiniteFunction& f_;
  std::size_t k_;
  std::vector<std::uint32_t> codes_;
  std::vector<Acc> x_weights_;
  std::vector<Acc> y_weights_;
  std::vector<std::uint32_t> cells_;
  std::vector<std::size_t> rows_;
  std::vector<ColumnClass> classes_;
  Accumulator<Acc> acc_;
};

template <class Acc>
class TensorCornerEnumerator {
 public:
  TensorCornerEnumerator(const TensorFunction& f, const Alphabet& alphabet, std::size_t k,
                         const std::vector<ScaledWeights>& weights)
      : f_(f), k_(k), shape_(f.shape()) {
    codes_.reserve(f.values().size());
    for (const auto& v : f.values()) codes_.push_back(alphabet.code(v));
    for (const auto& axis : weights) {
      std::vector<Acc> w;
      for (const auto& n : axis.numerators) w.push_back(to_acc<Acc>(n));
      weights_.push_back(std::move(w));
    }
    strides_.assign(f.arity(), 1);
    for (std::size_t a = f.arity(); a-- > 1;) strides_[a - 1] = strides_[a] * shape_[a];
    cells_ = 1;
    for (std::size_t a = 0; a < f.arity(); ++a) cells_ *= k;
    picks_.assign(f.arity() * k, 0);
  }

  Accumulator<Acc> run() {
    choose(0, Acc(1));
    return std::move(acc_);
  }

 private:
  // picks_[a * k + i] is the atom drawn at position i on axis a.
  void choose(std::size_t slot, const Acc& weight) {
    if (slot == picks_.size()) {
      record(weight);
      return;
    }
    const std::size_t axis = slot / k_;
    for (std::size_t x = 0; x < shape_[axis]; ++x) {
      picks_[slot] = x;
      choose(slot + 1, weight * weights_[axis][x]);
    }
  }

  void record(const Acc& weight) {
    std::vector<std::uint32_t> key(cells_);
    std::vector<std::size_t> index(f_.arity(), 0);
    for (std::size_t c = 0; c < cells_; ++c) {
      std::size_t offset = 0;
      for (std::size_t a = 0; a < f_.arity(); ++a) offset += picks_[a * k_ + index[a]] * strides_[a];
      key[c] = codes_[offset];
      for (std::size_t a = f_.arity(); a-- > 0;) {
        if (++index[a] < k_) break;
        index[a] = 0;
      }
    }
    acc_[std::move(key)] += weight;
  }

  const TensorFunction& f_;
  std::size_t k_;
  std::vector<std::size_t> shape_;
  std::vector<std::size_t> strides_;
  std::size_t cells_ = 1;
  std::vector<std::uint32_t> codes_;
  std::vector<std::vector<Acc>> weights_;
  std::vector<std::size_t> picks_;
  Accumulator<Acc> acc_;
};

}  // namespace

CornerDistribution exact_corner_distribution(const FiniteFunction& f, std::size_t k,
                                             std::uint64_t budget) {
  check_budget({f.rows(), f.cols()}, k, budget);
  const Alphabet alphabet = make_alphabet(f.values());
  const ScaledWeights xw = scale(f.x_space());
  const ScaledWeights yw = scale(f.y_space());
  const BigInt total = boost::multiprecision::pow(xw.denominator, static_cast<unsigned>(k)) *
                       boost::multiprecision::pow(yw.denominator, static_cast<unsigned>(k));
  CornerDistribution out{k, {}};
  if (fits_u128({xw, yw}, k)) {
    out.entries = finish(MatrixCornerEnumerator<u128>(f, alphabet, k, xw, yw).run(), alphabet, total);
  } else {
    out.entries = finish(MatrixCornerEnumerator<BigInt>(f, alphabet, k, xw, yw).run(), alphabet, total);
  }
  return out;
}

bool corner_distributions_equal(const FiniteFunction& f, const FiniteFunction& g, std::size_t k,
                                std::uint64_t budget) {
  return exact_corner_distribution(f, k, budget) == exact_corner_distribution(g, k, budget);
}

Rational total_variation(const CornerDistribution& a, const CornerDistribution& b) {
  if (a.k != b.k) {
    throw SizeMismatch("corner sizes differ: " + std::to_string(a.k) + " vs " + std::to_string(b.k));
  }
  return total_variation(a.entries, b.entries);
}

TensorFunction::TensorFunction(std::vector<FiniteMeasureSpace> axes, std::vector<Label> values)
    : axes_(std::move(axes)), values_(std::move(values)) {
  if (axes_.empty()) throw InvalidFunction("a tensor function needs at least one axis");
  std::size_t cells = 1;
  for (const auto& a : axes_) cells *= a.size();
  if (cells != values_.size()) {
    throw InvalidFunction("tensor has " + std::to_string(values_.size()) + " values, shape needs " +
                          std::to_string(cells));
  }
}

TensorFunction::TensorFunction(const FiniteFunction& f)
    : TensorFunction({f.x_space(), f.y_space()}, f.values()) {}

std::vector<std::size_t> TensorFunction::shape() const {
  std::vector<std::size_t> s;
  for (const auto& a : axes_) s.push_back(a.size());
  return s;
}

const Label& TensorFunction::at(std::span<const std::size_t> index) const {
  std::size_t offset = 0;
  for (std::size_t a = 0; a < axes_.size(); ++a) offset = offset * axes_[a].size() + index[a];
  return values_[offset];
}

TensorCornerDistribution exact_tensor_corner(const TensorFunction& f, std::size_t k,
                                             std::uint64_t budget) {
  check_budget(f.shape(), k, budget);
  const Alphabet alphabet = make_alphabet(f.values());
  std::vector<ScaledWeights> weights;
  BigInt total = 1;
  for (const auto& axis : f.axes()) {
    weights.push_back(scale(axis));
    total *= boost::multiprecision::pow(weights.back().denominator, static_cast<unsigned>(k));
  }
  TensorCornerDistribution out{f.arity(), k, {}};
  if (fits_u128(weights, k)) {
    out.entries = finish(TensorCornerEnumerator<u128>(f, alphabet, k, weights).run(), alphabet, total);
  } else {
    out.entries = finish(TensorCornerEnumerator<BigInt>(f, alphabet, k, weights).run(), alphabet, total);
  }
  return out;
}

}  // namespace mclass
