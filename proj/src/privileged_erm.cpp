#include "priverm/privileged_erm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

namespace priverm {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d)
{
    if (n <= 0 || d <= 0) throw InputError("C must be a positive rational");
    const std::int64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
}

Rational Rational::from_double(double v)
{
    if (!std::isfinite(v) || v <= 0.0) throw InputError("C must be a positive finite number");
    std::int64_t den = 1;
    double scaled = v;
    for (int i = 0; i <= 40; ++i) {
        if (scaled == std::floor(scaled)) {
            if (scaled > 9.0e15) break;
            return Rational(static_cast<std::int64_t>(scaled), den);
        }
        scaled *= 2.0;
        den *= 2;
    }
    throw InputError("C = " + std::to_string(v) + " has no exact dyadic representation with denominator <= 2^40");
}

namespace {

std::vector<BitSet> error_masks(const HypothesisClass& h, const TripleSample& s)
{
    std::vector<BitSet> out(h.size(), BitSet(s.m()));
    for (std::size_t i = 0; i < s.m(); ++i) {
        const Triple& t = s.triples[i];
        if (t.x >= h.domain().size)
            throw InputError("sample x index " + std::to_string(t.x) + " outside H domain of size " +
                             std::to_string(h.domain().size));
        if (t.y > 1) throw InputError("label must be 0 or 1");
        const BitSet& col = h.column(t.x);
        for (std::size_t j = 0; j < h.size(); ++j)
            if ((col.test(j) ? 1 : 0) != t.y) out[j].set(i);
    }
    return out;
}

std::vector<BitSet> ignore_masks(const HypothesisClass& phi, const TripleSample& s)
{
    std::vector<BitSet> out(phi.size(), BitSet(s.m()));
    for (std::size_t i = 0; i < s.m(); ++i) {
        const Triple& t = s.triples[i];
        if (t.xstar >= phi.domain().size)
            throw InputError("sample x* index " + std::to_string(t.xstar) + " outside Phi domain of size " +
                             std::to_string(phi.domain().size));
        const BitSet& col = phi.column(t.xstar);
        for (std::size_t j = 0; j < phi.size(); ++j)
            if (col.test(j)) out[j].set(i);
    }
    return out;
}

// key = ignored*den + unexplained*num = num * (ignored/C + unexplained), so
// integer comparison of keys orders pairs exactly by objective.
struct Candidate {
    __int128 key = 0;
    std::size_t ignored = 0;
    std::size_t unexplained = 0;
    std::size_t h = 0;
    std::size_t phi = 0;

    bool better_than(const Candidate& o) const
    {
        return std::tie(key, ignored, h, phi) < std::tie(o.key, o.ignored, o.h, o.phi);
    }
};

}  // namespace

ErmResult erm_standard(const HypothesisClass& h, const TripleSample& s)
{
    if (h.empty()) throw InputError("ERM over an empty class");
    const auto masks = error_masks(h, s);
    std::size_t best = 0, best_err = masks[0].count(), ties = 1;
    for (std::size_t j = 1; j < masks.size(); ++j) {
        const std::size_t e = masks[j].count();
        if (e < best_err) {
            best = j;
            best_err = e;
            ties = 1;
        } else if (e == best_err) {
            ++ties;
        }
    }
    ErmResult r{h.member(best), best, s.m() ? static_cast<double>(best_err) / s.m() : 0.0, best_err, ties};
    return r;
}

EmpiricalStats empirical_stats(const Hypothesis& h, const Hypothesis& phi, const TripleSample& s)
{
    EmpiricalStats st;
    if (s.m() == 0) return st;
    std::size_t ig = 0, u = 0, raw = 0;
    for (const auto& t : s.triples) {
        const bool err = zero_one_loss(h(t.x), t.y) == 1;
        const bool flagged = phi(t.xstar) == 1;
        ig += flagged;
        u += err && !flagged;
        raw += err;
    }
    const double m = static_cast<double>(s.m());
    st.eps_ig = ig / m;
    st.eps_u = u / m;
    st.raw_error = raw / m;
    return st;
}

PrivilegedErmResult erm_privileged(const HypothesisClass& h, const HypothesisClass& phi, const TripleSample& s,
                                   const PrivilegedErmOptions& options)
{
    if (h.empty() || phi.empty()) throw InputError("privileged ERM needs nonempty H and Phi");
    const Rational c(options.c.num, options.c.den);
    const auto err = error_masks(h, s);
    const auto ign = ignore_masks(phi, s);
    const std::uint64_t pairs = static_cast<std::uint64_t>(h.size()) * phi.size();
    const bool bnb = options.strategy == ErmStrategy::branch_and_bound ||
                     (options.strategy == ErmStrategy::automatic && pairs > options.pair_scan_limit);

    std::uint64_t nodes = 0;
    auto evaluate = [&](std::size_t hi, std::size_t pi, std::size_t ignored) {
        if (++nodes > options.node_budget && options.node_budget != 0)
            throw BudgetExhausted("privileged ERM exceeded its node budget of " + std::to_string(options.node_budget));
        Candidate cand;
        cand.ignored = ignored;
        cand.unexplained = BitSet::count_andnot(err[hi], ign[pi]);
        cand.key = static_cast<__int128>(ignored) * c.den + static_cast<__int128>(cand.unexplained) * c.num;
        cand.h = hi;
        cand.phi = pi;
        return cand;
    };

    Candidate best;
    bool have = false;
    auto offer = [&](const Candidate& cand) {
        if (!have || cand.better_than(best)) {
            best = cand;
            have = true;
        }
    };

    if (!bnb) {
        for (std::size_t pi = 0; pi < phi.size(); ++pi) {
            const std::size_t ignored = ign[pi].count();
            for (std::size_t hi = 0; hi < h.size(); ++hi) offer(evaluate(hi, pi, ignored));
        }
    } else {
        // phi in increasing ignored-count order; h in increasing error-count
        // order. |E \ I| >= |E| - |I| bounds every pair from below.
        std::vector<std::size_t> phi_order(phi.size()), h_order(h.size());
        std::vector<std::size_t> ign_count(phi.size()), err_count(h.size());
        for (std::size_t i = 0; i < phi.size(); ++i) ign_count[i] = ign[i].count();
        for (std::size_t i = 0; i < h.size(); ++i) err_count[i] = err[i].count();
        std::iota(phi_order.begin(), phi_order.end(), 0);
        std::iota(h_order.begin(), h_order.end(), 0);
        std::stable_sort(phi_order.begin(), phi_order.end(),
                         [&](std::size_t a, std::size_t b) { return ign_count[a] < ign_count[b]; });
        std::stable_sort(h_order.begin(), h_order.end(),
                         [&](std::size_t a, std::size_t b) { return err_count[a] < err_count[b]; });
        const std::size_t min_err = err_count[h_order.front()];

        auto lower_key = [&](std::size_t ignored, std::size_t errors) {
            const std::size_t residual = errors > ignored ? errors - ignored : 0;
            return static_cast<__int128>(ignored) * c.den + static_cast<__int128>(residual) * c.num;
        };
        auto prunable = [&](__int128 lb, std::size_t ignored) {
            return have && (lb > best.key || (lb == best.key && ignored > best.ignored));
        };

        for (std::size_t pi : phi_order) {
            const std::size_t ignored = ign_count[pi];
            if (have && static_cast<__int128>(ignored) * c.den > best.key) break;
            if (prunable(lower_key(ignored, min_err), ignored)) continue;
            for (std::size_t hi : h_order) {
                if (prunable(lower_key(ignored, err_count[hi]), ignored)) break;
                offer(evaluate(hi, pi, ignored));
            }
        }
    }

    PrivilegedErmResult r{h.member(best.h), phi.member(best.phi)};
    r.h_index = best.h;
    r.phi_index = best.phi;
    r.ignored_count = best.ignored;
    r.unexplained_count = best.unexplained;
    r.objective_sum = static_cast<double>(best.ignored) * static_cast<double>(c.den) / static_cast<double>(c.num) +
                      static_cast<double>(best.unexplained);
    const double m = static_cast<double>(s.m());
    r.objective = s.m() ? r.objective_sum / m : 0.0;
    r.ignored_weight = s.m() ? best.ignored / m : 0.0;
    r.unexplained_error = s.m() ? best.unexplained / m : 0.0;
    r.nodes = nodes;
    r.used_branch_and_bound = bnb;
    return r;
}

}  // namespace priverm
