#pragma once

#include <cstddef>

namespace priverm {

// Logarithm used inside the rate functions. Natural by default; base 2 is
// there for sensitivity runs only.
enum class LogBase { natural, two };

struct BoundInputs {
    std::size_t m = 1;
    double delta = 0.05;
    std::size_t d = 0;
    std::size_t dstar = 0;
    std::size_t d_a = 0;
    double eps_erm = 0.0;
    double eps_ig = 0.0;
    double eps_u = 0.0;
    LogBase log_base = LogBase::natural;

    // Throws InputError on m = 0, delta outside (0,1) or an eps outside [0,1].
    void validate() const;
    // log(4/delta) / (2 log(m+1))
    double a_constant() const;
    // d_a >= d + dstar - 2 whenever d, dstar > 1
    bool lemma2_consistent() const;
    // eps_erm <= eps_ig + eps_u
    bool lemma4_consistent() const;
};

// (8 d log(m+1) + 4 log(4/delta)) / m
double r_fast(std::size_t d, std::size_t m, double delta, LogBase base = LogBase::natural);
// sqrt(x * r_fast(d, m, delta))
double r_slow(double x, std::size_t d, std::size_t m, double delta, LogBase base = LogBase::natural);

struct ErmBoundTerms {
    double eps_erm = 0.0;
    double slow = 0.0;
    double fast = 0.0;
    double total = 0.0;
    bool vacuous = false;
};

struct PrBoundTerms {
    double eps_ig = 0.0;
    double eps_u = 0.0;
    double slow_ig = 0.0;
    double slow_u = 0.0;
    double fast_dstar = 0.0;
    double fast_da = 0.0;
    double total = 0.0;
    bool vacuous = false;
};

ErmBoundTerms bound_erm_terms(const BoundInputs& in);
PrBoundTerms bound_pr_terms(const BoundInputs& in);
inline double bound_erm(const BoundInputs& in) { return bound_erm_terms(in).total; }
inline double bound_pr(const BoundInputs& in) { return bound_pr_terms(in).total; }

struct DaInterval {
    std::size_t lower = 0;
    double upper = 0.0;
};

// Lower d + dstar - 2 (only when d, dstar > 1), upper 4 log2(4e) (d + dstar + 1).
DaInterval d_a_interval(std::size_t d, std::size_t dstar);

inline constexpr double kExactPremiseTolerance = 1e-9;

struct SufficientConditionReport {
    bool holds = false;
    // sqrt(eps_u)
    double lhs = 0.0;
    // sqrt(eps_erm) (Rs(1,d) - Rs(1,d*)) / Rs(1,d_a) + (Rf(d) - Rf(d*) - Rf(d_a)) / Rs(1,d_a)
    double rhs = 0.0;
};

// Requires eps_erm == eps_ig + eps_u within kExactPremiseTolerance.
SufficientConditionReport sufficient_condition(const BoundInputs& in);

struct NecessaryConditionReport {
    double b_erm = 0.0;
    double b_pr = 0.0;
    bool pr_leq_erm = false;

    double a_constant = 0.0;
    // sqrt(eps_u) sqrt(d_a + A)
    double lemma5_lhs = 0.0;
    // sqrt(eps_erm (d + A)) - sqrt(eps_ig (dstar + A))
    double lemma5_rhs = 0.0;
    bool lemma5_holds = false;

    bool lemma2_consistent = false;
    bool lemma4_consistent = false;

    double alpha = 0.0;  // dstar / d
    double alpha_threshold = 0.0;
    bool alpha_within_threshold = false;
    // Rounded asymptotic value, annotation only.
    double asymptotic_alpha = 2.25;
};

// Throws InputError when d = 0.
NecessaryConditionReport necessary_condition(const BoundInputs& in);

// a^3 - 2a^2 - a + 1, from squaring sqrt(1+a)(1 - 1/a) = 1.
double alpha_cubic(double a);
// Root of alpha_cubic in (2, 2.25).
double alpha_threshold();

}  // namespace priverm
