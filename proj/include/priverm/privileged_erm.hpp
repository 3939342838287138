#pragma once

#include <cstdint>

#include "priverm/core.hpp"

namespace priverm {

// Exact positive rational, used for the weight C so that objective
// comparisons never depend on float rounding.
struct Rational {
    std::int64_t num = 1;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d);
    // Exact conversion of a finite positive double with a power-of-two
    // denominator up to 2^40; throws InputError otherwise.
    static Rational from_double(double v);
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct ErmResult {
    Hypothesis h;
    std::size_t h_index = 0;
    // err(h, S)
    double empirical_error = 0.0;
    std::size_t error_count = 0;
    std::size_t minimizer_count = 0;
};

ErmResult erm_standard(const HypothesisClass& h, const TripleSample& s);

struct EmpiricalStats {
    double eps_ig = 0.0;
    double eps_u = 0.0;
    double raw_error = 0.0;
};

EmpiricalStats empirical_stats(const Hypothesis& h, const Hypothesis& phi, const TripleSample& s);

enum class ErmStrategy { automatic, pair_scan, branch_and_bound };

struct PrivilegedErmOptions {
    Rational c{1, 1};
    ErmStrategy strategy = ErmStrategy::automatic;
    // automatic uses the full pair scan up to this many (h, phi) pairs.
    std::uint64_t pair_scan_limit = std::uint64_t{1} << 20;
    // Maximum number of (h, phi) evaluations; 0 = unlimited. Exceeding it
    // throws BudgetExhausted.
    std::uint64_t node_budget = 0;
};

struct PrivilegedErmResult {
    Hypothesis h;
    Hypothesis phi;
    std::size_t h_index = 0;
    std::size_t phi_index = 0;
    // (1/m) sum of the composite loss; for C = 1 equals eps_ig + eps_u.
    double objective = 0.0;
    // sum of the composite loss over the sample
    double objective_sum = 0.0;
    std::size_t ignored_count = 0;
    std::size_t unexplained_count = 0;
    double ignored_weight = 0.0;
    double unexplained_error = 0.0;
    std::uint64_t nodes = 0;
    bool used_branch_and_bound = false;
};

// Minimizes sum_i (1/C) phi(x*_i) + [1[h(x_i) != y_i] - phi(x*_i)]_+ over
// H x Phi. Ties go to the smallest (objective, ignored count, h index,
// phi index).
PrivilegedErmResult erm_privileged(const HypothesisClass& h, const HypothesisClass& phi, const TripleSample& s,
                                   const PrivilegedErmOptions& options = {});

}  // namespace priverm
