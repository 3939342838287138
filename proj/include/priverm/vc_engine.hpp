#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "priverm/core.hpp"

namespace priverm {

// Projection of a class onto an ordered subset of points. Pattern bit i is
// the label of subset[i]; patterns are sorted and distinct.
struct ProjectionTable {
    std::vector<PointIndex> subset;
    std::vector<std::uint64_t> patterns;
};

ProjectionTable project(const HypothesisClass& cls, std::span<const PointIndex> subset);

bool is_shattered(const HypothesisClass& cls, std::span<const PointIndex> subset);

enum class VcMode { exact, lower_bound_only };

struct VcOptions {
    VcMode mode = VcMode::exact;
    // Maximum number of candidate sets tested for shattering; 0 means unlimited.
    std::uint64_t budget = 0;
    unsigned threads = 1;
    // Lower-bound mode verifies this set instead of searching greedily.
    std::optional<std::vector<PointIndex>> witness;
};

struct VcReport {
    std::size_t vc = 0;
    // False when the value is only a verified lower bound (requested, or the
    // exact search ran out of budget).
    bool exact = true;
    // Lexicographically first shattered set of size vc.
    std::vector<PointIndex> witness;
    // Number of shattered sets of each size 0, 1, ..., found by the search.
    std::vector<std::uint64_t> shattered_count_by_level;
    std::uint64_t nodes = 0;
    // Smallest d with sauer_bound(d, n) >= |class| over the n non-constant
    // points; the VC dimension can never be below it.
    std::size_t sauer_lower_bound = 0;
    // floor(log2 |class|)
    std::size_t log2_upper_bound = 0;
};

VcReport vc_dimension(const HypothesisClass& cls, const VcOptions& options = {});

// Max over m-point subsets of the number of distinct projected labelings.
// Throws BudgetExhausted when more than `budget` subsets would be needed
// (0 = unlimited).
std::uint64_t growth_function(const HypothesisClass& cls, std::size_t m, std::uint64_t budget = 0);

// sum_{i=0..d} C(m, i). Throws std::overflow_error past 64 bits.
std::uint64_t sauer_bound(std::size_t d, std::size_t m);

HypothesisClass union_class(const HypothesisClass& a, const HypothesisClass& b);

// All unions (pointwise ORs) of k members, repetition allowed.
HypothesisClass k_fold_union(const HypothesisClass& r, std::size_t k);

// Loss patterns of H and Phi lifted to the product domain X x X* x {0,1}:
// (x, x*, y) -> 1[h(x) != y], and (x, x*, y) -> phi(x*).
std::vector<BitSet> lift_nonprivileged(const HypothesisClass& h, const FiniteDomain& xstar);
std::vector<BitSet> lift_privileged(const HypothesisClass& phi, const FiniteDomain& x);

HypothesisClass build_f_class(const HypothesisClass& h, const HypothesisClass& phi);
HypothesisClass build_aux_class(const HypothesisClass& h, const HypothesisClass& phi);

enum class LossSide { nonprivileged, privileged };

// Zero-one loss class over X x {0,1}, or ignoring-loss class over X* x {0,1}.
HypothesisClass build_loss_class(const HypothesisClass& cls, LossSide side);

}  // namespace priverm
