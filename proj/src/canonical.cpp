// Canonical labeling of weighted labeled matrices.
//
// Rows and columns carry colours. Refinement splits colours by the multiset
// of (opposite colour, cell code) pairs until stable; colour ranks come from
// sorted signatures, so the result depends only on the isomorphism class.
// While a colour class has several members, each member is individualized
// in turn and the smallest leaf certificate (the code matrix in colour order)
// wins.

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "mclass/finite_function.hpp"

namespace mclass {
namespace {

using Colours = std::vector<int>;

struct CodedMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<int> codes;  // row-major
  int at(std::size_t i, std::size_t j) const { return codes[i * cols + j]; }
};

int count_colours(const Colours& colours) {
  return colours.empty() ? 0 : *std::max_element(colours.begin(), colours.end()) + 1;
}

template <class Signature>
Colours rank(const std::vector<Signature>& signatures) {
  std::vector<Signature> sorted = signatures;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Colours out(signatures.size());
  for (std::size_t i = 0; i < signatures.size(); ++i) {
    out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), signatures[i]) -
                              sorted.begin());
  }
  return out;
}

using Signature = std::pair<int, std::vector<std::pair<int, int>>>;

void refine(const CodedMatrix& m, Colours& rows, Colours& cols) {
  for (;;) {
    const int before = count_colours(rows) + count_colours(cols);
    std::vector<Signature> row_sigs(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) {
      row_sigs[i].first = rows[i];
      for (std::size_t j = 0; j < m.cols; ++j) row_sigs[i].second.emplace_back(cols[j], m.at(i, j));
      std::sort(row_sigs[i].second.begin(), row_sigs[i].second.end());
    }
    rows = rank(row_sigs);
    std::vector<Signature> col_sigs(m.cols);
    for (std::size_t j = 0; j < m.cols; ++j) {
      col_sigs[j].first = cols[j];
      for (std::size_t i = 0; i < m.rows; ++i) col_sigs[j].second.emplace_back(rows[i], m.at(i, j));
      std::sort(col_sigs[j].second.begin(), col_sigs[j].second.end());
    }
    cols = rank(col_sigs);
    if (count_colours(rows) + count_colours(cols) == before) return;
  }
}

// First colour shared by more than one element, or -1.
int first_nonsingleton(const Colours& colours) {
  std::vector<int> sizes(colours.size(), 0);
  for (int c : colours) ++sizes[c];
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    if (sizes[c] > 1) return static_cast<int>(c);
  }
  return -1;
}

Colours individualize(const Colours& colours, int target, std::size_t chosen) {
  Colours out(colours.size());
  for (std::size_t i = 0; i < colours.size(); ++i) {
    const int c = colours[i];
    if (c < target) {
      out[i] = c;
    } else if (c > target) {
      out[i] = c + 1;
    } else {
      out[i] = i == chosen ? target : target + 1;
    }
  }
  return out;
}

std::vector<std::size_t> order_by_colour(const Colours& colours) {
  std::vector<std::size_t> order(colours.size());
  for (std::size_t i = 0; i < colours.size(); ++i) order[colours[i]] = i;
  return order;
}

struct Leaf {
  std::vector<int> certificate;
  std::vector<std::size_t> row_order;
  std::vector<std::size_t> col_order;
};

void search(const CodedMatrix& m, Colours rows, Colours cols, std::optional<Leaf>& best) {
  refine(m, rows, cols);
  int target = first_nonsingleton(rows);
  if (target >= 0) {
    for (std::size_t v = 0; v < rows.size(); ++v) {
      if (rows[v] == target) search(m, individualize(rows, target, v), cols, best);
    }
    return;
  }
  target = first_nonsingleton(cols);
  if (target >= 0) {
    for (std::size_t v = 0; v < cols.size(); ++v) {
      if (cols[v] == target) search(m, rows, individualize(cols, target, v), best);
    }
    return;
  }
  Leaf leaf{{}, order_by_colour(rows), order_by_colour(cols)};
  leaf.certificate.reserve(m.codes.size());
  for (std::size_t i : leaf.row_order) {
    for (std::size_t j : leaf.col_order) leaf.certificate.push_back(m.at(i, j));
  }
  if (!best || leaf.certificate < best->certificate) best = std::move(leaf);
}

Colours weight_colours(const std::vector<Rational>& weights) { return rank(weights); }

}  // namespace

CanonicalLabeling canonical_labeling(const ExtendedFunction& ext) {
  std::vector<ExtendedValueLabel> alphabet = ext.values;
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());

  CodedMatrix m{ext.x_space.size(), ext.y_space.size(), {}};
  m.codes.reserve(ext.values.size());
  for (const auto& v : ext.values) {
    m.codes.push_back(static_cast<int>(std::lower_bound(alphabet.begin(), alphabet.end(), v) -
                                       alphabet.begin()));
  }

  std::optional<Leaf> best;
  search(m, weight_colours(ext.x_space.weights()), weight_colours(ext.y_space.weights()), best);

  CanonicalLabeling out;
  out.row_order = std::move(best->row_order);
  out.col_order = std::move(best->col_order);
  for (std::size_t i : out.row_order) out.form.x_weights.push_back(ext.x_space.weight(i));
  for (std::size_t j : out.col_order) out.form.y_weights.push_back(ext.y_space.weight(j));
  for (int code : best->certificate) out.form.values.push_back(alphabet[code]);
  return out;
}

CanonicalForm canonical_form(const FiniteFunction& f) {
  return canonical_labeling(extended_pure_factor(f)).form;
}

std::optional<IsoWitness> isomorphic(const FiniteFunction& f, const FiniteFunction& g) {
  const ExtendedFunction ef = extended_pure_factor(f);
  const ExtendedFunction eg = extended_pure_factor(g);
  const CanonicalLabeling lf = canonical_labeling(ef);
  const CanonicalLabeling lg = canonical_labeling(eg);
  if (!(lf.form == lg.form)) return std::nullopt;

  IsoWitness witness{std::vector<std::size_t>(lf.row_order.size()),
                     std::vector<std::size_t>(lf.col_order.size())};
  for (std::size_t i = 0; i < lf.row_order.size(); ++i) witness.rows[lf.row_order[i]] = lg.row_order[i];
  for (std::size_t j = 0; j < lf.col_order.size(); ++j) witness.cols[lf.col_order[j]] = lg.col_order[j];

  for (std::size_t x = 0; x < witness.rows.size(); ++x) {
    if (ef.x_space.weight(x) != eg.x_space.weight(witness.rows[x])) {
      throw std::logic_error("isomorphism witness does not preserve row weights");
    }
    for (std::size_t y = 0; y < witness.cols.size(); ++y) {
      if (!(ef.at(x, y) == eg.at(witness.rows[x], witness.cols[y]))) {
        throw std::logic_error("isomorphism witness fails substitution check");
      }
    }
  }
  for (std::size_t y = 0; y < witness.cols.size(); ++y) {
    if (ef.y_space.weight(y) != eg.y_space.weight(witness.cols[y])) {
      throw std::logic_error("isomorphism witness does not preserve column weights");
    }
  }
  return witness;
}

}  // namespace mclass
