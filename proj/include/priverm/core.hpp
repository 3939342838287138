#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "priverm/bitset.hpp"

namespace priverm {

using Label = std::uint8_t;
using PointIndex = std::uint32_t;

// Thrown for malformed or inconsistent user input (bad JSON, bad indices,
// mismatched domains). The CLI maps it to exit code 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Filesystem failures; the message carries the offending path. Exit code 4.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when a search exceeds its node budget. The CLI maps it to exit code 3.
class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FiniteDomain {
    std::size_t size = 1;
    std::string label = "X";

    FiniteDomain() = default;
    FiniteDomain(std::size_t n, std::string name);

    // X x X* x {0,1}; points ordered x-major, x*-minor, y-last.
    static FiniteDomain product(const FiniteDomain& x, const FiniteDomain& xstar);
    // X x {0,1}; points ordered x-major, y-last.
    static FiniteDomain with_labels(const FiniteDomain& x);

    friend bool operator==(const FiniteDomain&, const FiniteDomain&) = default;
};

// Index of (x, x*, y) in the product domain of sizes (nx, nxstar).
constexpr std::size_t product_index(std::size_t x, std::size_t xstar, Label y, std::size_t nxstar)
{
    return (x * nxstar + xstar) * 2 + y;
}

class Hypothesis {
public:
    Hypothesis(FiniteDomain domain, BitSet bits);
    static Hypothesis zeros(const FiniteDomain& domain);
    static Hypothesis ones(const FiniteDomain& domain);
    static Hypothesis from_string(const FiniteDomain& domain, std::string_view s);

    const FiniteDomain& domain() const { return domain_; }
    const BitSet& bits() const { return bits_; }
    Label operator()(std::size_t point) const;

    friend bool operator==(const Hypothesis& a, const Hypothesis& b)
    {
        return a.domain_ == b.domain_ && a.bits_ == b.bits_;
    }

private:
    FiniteDomain domain_;
    BitSet bits_;
};

// Deduplicated finite class. Members are kept in canonical order (the
// lexicographic order of their point-0-first bit strings), so member indices
// are reproducible regardless of input order. Per-point columns (the set of
// members labeling that point 1) are cached at construction.
class HypothesisClass {
public:
    HypothesisClass(FiniteDomain domain, std::vector<BitSet> patterns);
    HypothesisClass(FiniteDomain domain, std::span<const Hypothesis> members);

    const FiniteDomain& domain() const { return domain_; }
    std::size_t size() const { return patterns_.size(); }
    bool empty() const { return patterns_.empty(); }

    const BitSet& pattern(std::size_t i) const { return patterns_[i]; }
    const std::vector<BitSet>& patterns() const { return patterns_; }
    Hypothesis member(std::size_t i) const { return Hypothesis(domain_, patterns_[i]); }

    // Members labeling `point` with 1, as a bitset over member indices.
    const BitSet& column(std::size_t point) const { return columns_[point]; }

    // Index of an exact pattern, or size() when absent.
    std::size_t find(const BitSet& pattern) const;
    bool contains(const BitSet& pattern) const { return find(pattern) < size(); }

private:
    FiniteDomain domain_;
    std::vector<BitSet> patterns_;
    std::vector<BitSet> columns_;
};

struct Triple {
    PointIndex x = 0;
    PointIndex xstar = 0;
    Label y = 0;

    friend bool operator==(const Triple&, const Triple&) = default;
    friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct TripleSample {
    std::vector<Triple> triples;

    std::size_t m() const { return triples.size(); }
};

class FiniteDistribution {
public:
    struct Atom {
        Triple triple;
        double p = 0.0;
    };

    static constexpr double kNormalizationTolerance = 1e-12;

    explicit FiniteDistribution(std::vector<Atom> support);

    const std::vector<Atom>& support() const { return support_; }
    std::size_t size() const { return support_.size(); }

private:
    std::vector<Atom> support_;
};

int zero_one_loss(Label yhat, Label y);
int ignoring_loss(Label z, Label y);
// (1/C) * lstar + max(l - lstar, 0)
double composite_loss(int l, int lstar, double c);
// max(zero_one_loss(h(x), y), ignoring_loss(phi(x*), y))
int f_loss(const Hypothesis& h, const Hypothesis& phi, const Triple& t);
// 1 iff h(x) != y and phi(x*) == 0
int aux_loss(const Hypothesis& h, const Hypothesis& phi, const Triple& t);

// P[h(X) != Y] under an exact probability table.
double exact_true_error(const Hypothesis& h, const FiniteDistribution& dist);
// P[phi(X*) = 1]
double exact_flag_rate(const Hypothesis& phi, const FiniteDistribution& dist);
// P[h(X) != Y and phi(X*) = 0]
double exact_aux_error(const Hypothesis& h, const Hypothesis& phi, const FiniteDistribution& dist);

void check_triple(const Triple& t, std::size_t nx, std::size_t nxstar);

}  // namespace priverm
