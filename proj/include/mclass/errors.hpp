#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mclass {

/// Root of every library error. `kind()` is the stable machine-readable name.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept = 0;
};

#define MCLASS_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                      \
   public:                                                         \
    using Error::Error;                                            \
    const char* kind() const noexcept override { return #Name; }  \
  }

MCLASS_DEFINE_ERROR(InvalidMeasure);
MCLASS_DEFINE_ERROR(InvalidFunction);
MCLASS_DEFINE_ERROR(ZeroMassValue);
MCLASS_DEFINE_ERROR(SizeMismatch);
MCLASS_DEFINE_ERROR(DepthExceedsMatrix);
MCLASS_DEFINE_ERROR(EmptyCell);
MCLASS_DEFINE_ERROR(SearchLimitExceeded);

#undef MCLASS_DEFINE_ERROR

/// Raised before an exact enumeration that would visit more tuples than allowed.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string required, std::string budget)
      : Error("enumeration needs " + required + " tuples, budget is " + budget),
        required_(std::move(required)) {}
  const char* kind() const noexcept override { return "BudgetExceeded"; }
  /// Decimal tuple count; may exceed 64 bits.
  const std::string& required() const noexcept { return required_; }

 private:
  std::string required_;
};

/// A (row class, column class) cell whose majority label is below threshold.
class AmbiguousCell : public Error {
 public:
  AmbiguousCell(std::string row_class, std::string col_class, double majority)
      : Error("cell (" + row_class + " | " + col_class + ") has majority " +
              std::to_string(majority) + "; increase the depth"),
        row_class_(std::move(row_class)),
        col_class_(std::move(col_class)) {}
  const char* kind() const noexcept override { return "AmbiguousCell"; }
  const std::string& row_class() const noexcept { return row_class_; }
  const std::string& col_class() const noexcept { return col_class_; }

 private:
  std::string row_class_;
  std::string col_class_;
};

}  // namespace mclass
