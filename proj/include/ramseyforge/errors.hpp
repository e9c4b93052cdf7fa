#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ramseyforge {

// Bad input: mismatched signatures, out-of-range indices, malformed data.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A structured precondition failed; `clause` names the violated condition
// (e.g. the prescription clauses "a".."d").
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string clause, const std::string& what)
        : std::invalid_argument(what), clause_(std::move(clause)) {}
    const std::string& clause() const noexcept { return clause_; }

private:
    std::string clause_;
};

// An exhaustive computation would exceed its configured budget.
// `cost_log2` is the base-2 log of the estimated work (colorings, candidates,
// partitions), so costs beyond 2^64 are still reportable.
class BudgetError : public std::runtime_error {
public:
    BudgetError(const std::string& what, double cost_log2, double budget_log2)
        : std::runtime_error(what), cost_log2_(cost_log2), budget_log2_(budget_log2) {}
    double cost_log2() const noexcept { return cost_log2_; }
    double budget_log2() const noexcept { return budget_log2_; }

private:
    double cost_log2_;
    double budget_log2_;
};

// A computation that must stabilize across prefix depths failed to do so
// within its depth cap.
class StabilizationError : public std::runtime_error {
public:
    explicit StabilizationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ramseyforge
