#pragma once

#include <stdexcept>
#include <string>

namespace dlv {

class DlvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public DlvError {
 public:
  using DlvError::DlvError;
};

// A parameter restriction of a catalog entry or ansatz does not hold.
class RestrictionError : public DlvError {
 public:
  RestrictionError(std::string entry, std::string condition)
      : DlvError(entry + ": restriction violated: " + condition),
        entry_(std::move(entry)),
        condition_(std::move(condition)) {}
  const std::string& entry() const { return entry_; }
  const std::string& condition() const { return condition_; }

 private:
  std::string entry_;
  std::string condition_;
};

// Evaluation at a point outside a solution's validity domain.
class DomainError : public DlvError {
 public:
  using DlvError::DlvError;
};

class UnsupportedError : public DlvError {
 public:
  using DlvError::DlvError;
};

class BlowUpError : public DlvError {
 public:
  BlowUpError(double t, const std::string& what) : DlvError(what), t_(t) {}
  double time() const { return t_; }

 private:
  double t_;
};

}  // namespace dlv
