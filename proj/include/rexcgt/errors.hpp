#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rexcgt {

// Malformed input: bad file syntax, unknown element names, poset mismatches.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A theorem hypothesis does not hold (e.g. canonicalizing a non-premotive game).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exponential search ran past its node budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

// Caps the number of expanded nodes on the current thread while alive.
// Scopes nest; the innermost one is charged. With no scope installed,
// searches are unbounded.
class BudgetScope {
 public:
  explicit BudgetScope(std::uint64_t limit);
  ~BudgetScope();
  BudgetScope(const BudgetScope&) = delete;
  BudgetScope& operator=(const BudgetScope&) = delete;

  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

 private:
  friend void charge(std::uint64_t);
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
  BudgetScope* previous_;
};

namespace detail {
BudgetScope*& current_budget();
[[noreturn]] void throw_budget(std::uint64_t limit);
}  // namespace detail

inline void charge(std::uint64_t nodes = 1) {
  BudgetScope* scope = detail::current_budget();
  if (scope == nullptr) return;
  scope->used_ += nodes;
  if (scope->used_ > scope->limit_) detail::throw_budget(scope->limit_);
}

}  // namespace rexcgt
