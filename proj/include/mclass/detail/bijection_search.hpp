#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "mclass/finite_function.hpp"

namespace mclass::detail {

using AllowPair = std::function<bool(std::size_t, std::size_t)>;
/// Return false to stop the enumeration.
using BijectionVisitor =
    std::function<bool(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols)>;

/// Enumerates pairs of bijections (S, T) with a(x, y) = b(S x, T y) for all
/// atoms, S and T restricted by the predicates. `b` must be pure, so T is
/// forced once S is fixed. Row assignments are tried in lexicographic order
/// and a branch is cut as soon as the multisets of partial columns disagree.
void for_each_value_bijection(const FiniteFunction& a, const FiniteFunction& b,
                              const AllowPair& row_allowed, const AllowPair& col_allowed,
                              const BijectionVisitor& visit);

}  // namespace mclass::detail
