#include "rexcgt/errors.hpp"

namespace rexcgt {

namespace detail {

BudgetScope*& current_budget() {
  thread_local BudgetScope* scope = nullptr;
  return scope;
}

void throw_budget(std::uint64_t limit) {
  throw BudgetExceeded("node budget of " + std::to_string(limit) + " exhausted");
}

}  // namespace detail

BudgetScope::BudgetScope(std::uint64_t limit)
    : limit_(limit), previous_(detail::current_budget()) {
  detail::current_budget() = this;
}

BudgetScope::~BudgetScope() { detail::current_budget() = previous_; }

}  // namespace rexcgt
