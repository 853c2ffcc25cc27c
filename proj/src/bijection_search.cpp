#include "mclass/detail/bijection_search.hpp"

#include <algorithm>
#include <map>

namespace mclass::detail {
namespace {

class Search {
 public:
  Search(const FiniteFunction& a, const FiniteFunction& b, const AllowPair& row_allowed,
         const AllowPair& col_allowed, const BijectionVisitor& visit)
      : rows_(a.rows()), cols_(a.cols()), row_allowed_(row_allowed), col_allowed_(col_allowed),
        visit_(visit) {
    std::map<Label, int> alphabet;
    for (const auto& v : a.values()) alphabet.emplace(v, 0);
    for (const auto& v : b.values()) alphabet.emplace(v, 0);
    int next = 0;
    for (auto& [label, code] : alphabet) code = next++;
    for (const auto& v : a.values()) a_.push_back(alphabet[v]);
    for (const auto& v : b.values()) b_.push_back(alphabet[v]);
    image_.assign(rows_, 0);
    used_.assign(rows_, false);
  }

  void run() {
    if (rows_ == 0 || cols_ == 0) return;
    assign(0);
  }

 private:
  int a_at(std::size_t x, std::size_t y) const { return a_[x * cols_ + y]; }
  int b_at(std::size_t x, std::size_t y) const { return b_[x * cols_ + y]; }

  // Multisets of columns restricted to rows 0..depth (a) and their images (b).
  bool partial_columns_agree(std::size_t depth) const {
    std::vector<std::vector<int>> left(cols_), right(cols_);
    for (std::size_t y = 0; y < cols_; ++y) {
      for (std::size_t x = 0; x <= depth; ++x) {
        left[y].push_back(a_at(x, y));
        right[y].push_back(b_at(image_[x], y));
      }
    }
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    return left == right;
  }

  // Returns false when the visitor asked to stop.
  bool assign(std::size_t x) {
    if (x == rows_) return complete();
    for (std::size_t candidate = 0; candidate < rows_; ++candidate) {
      if (used_[candidate] || !row_allowed_(x, candidate)) continue;
      image_[x] = candidate;
      used_[candidate] = true;
      const bool keep_going = !partial_columns_agree(x) || assign(x + 1);
      used_[candidate] = false;
      if (!keep_going) return false;
    }
    return true;
  }

  bool complete() {
    std::vector<std::size_t> col_image(cols_);
    std::vector<bool> taken(cols_, false);
    for (std::size_t y = 0; y < cols_; ++y) {
      bool found = false;
      for (std::size_t target = 0; target < cols_ && !found; ++target) {
        bool match = true;
        for (std::size_t x = 0; x < rows_ && match; ++x) match = a_at(x, y) == b_at(image_[x], target);
        if (!match) continue;
        if (taken[target] || !col_allowed_(y, target)) return true;
        col_image[y] = target;
        taken[target] = true;
        found = true;
      }
      if (!found) return true;
    }
    return visit_(image_, col_image);
  }

  std::size_t rows_;
  std::size_t cols_;
  const AllowPair& row_allowed_;
  const AllowPair& col_allowed_;
  const BijectionVisitor& visit_;
  std::vector<int> a_;
  std::vector<int> b_;
  std::vector<std::size_t> image_;
  std::vector<bool> used_;
};

}  // namespace

void for_each_value_bijection(const FiniteFunction& a, const FiniteFunction& b,
                              const AllowPair& row_allowed, const AllowPair& col_allowed,
                              const BijectionVisitor& visit) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return;
  Search(a, b, row_allowed, col_allowed, visit).run();
}

}  // namespace mclass::detail
