#include "priverm/bounds.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "priverm/core.hpp"

namespace priverm {

namespace {

double log_in(double v, LogBase base) { return base == LogBase::natural ? std::log(v) : std::log2(v); }

void check_rate_args(std::size_t m, double delta)
{
    if (m < 1) throw InputError("sample size m must be at least 1");
    if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must lie in (0,1)");
}

void check_unit(double v, const char* name)
{
    if (!(v >= 0.0 && v <= 1.0)) throw InputError(std::string(name) + " must lie in [0,1]");
}

}  // namespace

void BoundInputs::validate() const
{
    check_rate_args(m, delta);
    check_unit(eps_erm, "eps_erm");
    check_unit(eps_ig, "eps_ig");
    check_unit(eps_u, "eps_u");
}

double BoundInputs::a_constant() const
{
    check_rate_args(m, delta);
    return std::log(4.0 / delta) / (2.0 * std::log(static_cast<double>(m) + 1.0));
}

bool BoundInputs::lemma2_consistent() const
{
    if (d <= 1 || dstar <= 1) return true;
    return d_a + 2 >= d + dstar;
}

bool BoundInputs::lemma4_consistent() const { return eps_erm <= eps_ig + eps_u; }

double r_fast(std::size_t d, std::size_t m, double delta, LogBase base)
{
    check_rate_args(m, delta);
    const double md = static_cast<double>(m);
    return (8.0 * static_cast<double>(d) * log_in(md + 1.0, base) + 4.0 * log_in(4.0 / delta, base)) / md;
}

double r_slow(double x, std::size_t d, std::size_t m, double delta, LogBase base)
{
    check_unit(x, "slow-rate argument");
    return std::sqrt(x * r_fast(d, m, delta, base));
}

ErmBoundTerms bound_erm_terms(const BoundInputs& in)
{
    in.validate();
    ErmBoundTerms t;
    t.eps_erm = in.eps_erm;
    t.slow = r_slow(in.eps_erm, in.d, in.m, in.delta, in.log_base);
    t.fast = r_fast(in.d, in.m, in.delta, in.log_base);
    t.total = t.eps_erm + t.slow + t.fast;
    t.vacuous = t.total > 1.0;
    return t;
}

PrBoundTerms bound_pr_terms(const BoundInputs& in)
{
    in.validate();
    PrBoundTerms t;
    t.eps_ig = in.eps_ig;
    t.eps_u = in.eps_u;
    t.slow_ig = r_slow(in.eps_ig, in.dstar, in.m, in.delta, in.log_base);
    t.slow_u = r_slow(in.eps_u, in.d_a, in.m, in.delta, in.log_base);
    t.fast_dstar = r_fast(in.dstar, in.m, in.delta, in.log_base);
    t.fast_da = r_fast(in.d_a, in.m, in.delta, in.log_base);
    t.total = t.eps_ig + t.eps_u + t.slow_ig + t.slow_u + t.fast_dstar + t.fast_da;
    t.vacuous = t.total > 1.0;
    return t;
}

DaInterval d_a_interval(std::size_t d, std::size_t dstar)
{
    DaInterval iv;
    iv.lower = (d > 1 && dstar > 1) ? d + dstar - 2 : 0;
    iv.upper = 4.0 * std::log2(4.0 * std::numbers::e) * static_cast<double>(d + dstar + 1);
    return iv;
}

SufficientConditionReport sufficient_condition(const BoundInputs& in)
{
    in.validate();
    if (std::abs(in.eps_erm - (in.eps_ig + in.eps_u)) > kExactPremiseTolerance)
        throw InputError("sufficient condition requires eps_erm = eps_ig + eps_u");
    const auto rf = [&](std::size_t k) { return r_fast(k, in.m, in.delta, in.log_base); };
    const double rs_d = std::sqrt(rf(in.d));
    const double rs_dstar = std::sqrt(rf(in.dstar));
    const double rs_da = std::sqrt(rf(in.d_a));
    SufficientConditionReport r;
    r.lhs = std::sqrt(in.eps_u);
    r.rhs = std::sqrt(in.eps_erm) * (rs_d - rs_dstar) / rs_da + (rf(in.d) - rf(in.dstar) - rf(in.d_a)) / rs_da;
    r.holds = r.lhs <= r.rhs;
    return r;
}

NecessaryConditionReport necessary_condition(const BoundInputs& in)
{
    in.validate();
    if (in.d == 0) throw InputError("necessary condition needs d >= 1 (alpha = dstar / d)");
    NecessaryConditionReport r;
    r.b_erm = bound_erm(in);
    r.b_pr = bound_pr(in);
    r.pr_leq_erm = r.b_pr <= r.b_erm;

    r.a_constant = in.a_constant();
    const double a = r.a_constant;
    r.lemma5_lhs = std::sqrt(in.eps_u) * std::sqrt(static_cast<double>(in.d_a) + a);
    r.lemma5_rhs = std::sqrt(in.eps_erm * (static_cast<double>(in.d) + a)) -
                   std::sqrt(in.eps_ig * (static_cast<double>(in.dstar) + a));
    r.lemma5_holds = r.lemma5_lhs <= r.lemma5_rhs;

    r.lemma2_consistent = in.lemma2_consistent();
    r.lemma4_consistent = in.lemma4_consistent();

    r.alpha = static_cast<double>(in.dstar) / static_cast<double>(in.d);
    r.alpha_threshold = alpha_threshold();
    r.alpha_within_threshold = r.alpha <= r.alpha_threshold;
    return r;
}

double alpha_cubic(double a) { return ((a - 2.0) * a - 1.0) * a + 1.0; }

double alpha_threshold()
{
    double lo = 2.0, hi = 2.25;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (alpha_cubic(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace priverm
