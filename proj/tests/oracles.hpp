#pragma once

// Brute-force reference implementations and random generators used only by
// the tests. Everything here is deliberately naive: subsets are enumerated
// exhaustively and patterns are compared as strings.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "priverm/core.hpp"

namespace oracle {

using priverm::BitSet;
using priverm::FiniteDomain;
using priverm::HypothesisClass;
using priverm::Triple;
using priverm::TripleSample;

inline std::set<std::string> pattern_strings(const HypothesisClass& cls)
{
    std::set<std::string> out;
    for (const auto& p : cls.patterns()) out.insert(p.to_string());
    return out;
}

inline bool shattered(const HypothesisClass& cls, const std::vector<std::size_t>& pts)
{
    std::set<std::string> seen;
    for (const auto& p : cls.patterns()) {
        std::string s;
        for (std::size_t i : pts) s += p.test(i) ? '1' : '0';
        seen.insert(s);
    }
    return seen.size() == (std::size_t{1} << pts.size());
}

// Exhaustive over all 2^n subsets; n must be small.
inline std::size_t vc(const HypothesisClass& cls)
{
    const std::size_t n = cls.domain().size;
    std::size_t best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const auto k = static_cast<std::size_t>(std::popcount(mask));
        if (k <= best) continue;
        std::vector<std::size_t> pts;
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1u) pts.push_back(i);
        if (shattered(cls, pts)) best = k;
    }
    return best;
}

inline std::uint64_t growth(const HypothesisClass& cls, std::size_t m)
{
    const std::size_t n = cls.domain().size;
    std::uint64_t best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != m) continue;
        std::set<std::string> seen;
        for (const auto& p : cls.patterns()) {
            std::string s;
            for (std::size_t i = 0; i < n; ++i)
                if ((mask >> i) & 1u) s += p.test(i) ? '1' : '0';
            seen.insert(s);
        }
        best = std::max<std::uint64_t>(best, seen.size());
    }
    return best;
}

inline std::uint64_t binomial_sum(std::size_t d, std::size_t m)
{
    std::uint64_t total = 0;
    for (std::size_t i = 0; i <= std::min(d, m); ++i) {
        std::uint64_t c = 1;
        for (std::size_t j = 0; j < i; ++j) c = c * (m - j) / (j + 1);
        total += c;
    }
    return total;
}

inline std::string or_strings(const std::string& a, const std::string& b)
{
    std::string s = a;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (b[i] == '1') s[i] = '1';
    return s;
}

// Every ordered k-tuple of members, ORed.
inline std::set<std::string> k_fold(const HypothesisClass& r, std::size_t k)
{
    const auto base = pattern_strings(r);
    std::vector<std::string> members(base.begin(), base.end());
    std::set<std::string> out;
    std::vector<std::size_t> idx(k, 0);
    while (true) {
        std::string s(r.domain().size, '0');
        for (std::size_t i : idx) s = or_strings(s, members[i]);
        out.insert(s);
        std::size_t pos = 0;
        while (pos < k && ++idx[pos] == members.size()) idx[pos++] = 0;
        if (pos == k) break;
    }
    return out;
}

// Loss-class patterns over X x X* x {0,1} evaluated point by point, with the
// product index computed here rather than taken from the library.
template <typename Loss>
std::set<std::string> product_loss_class(const HypothesisClass& h, const HypothesisClass& phi, Loss loss)
{
    const std::size_t nx = h.domain().size, ns = phi.domain().size;
    std::set<std::string> out;
    for (const auto& hp : h.patterns())
        for (const auto& pp : phi.patterns()) {
            std::string s(nx * ns * 2, '0');
            for (std::size_t x = 0; x < nx; ++x)
                for (std::size_t xs = 0; xs < ns; ++xs)
                    for (int y = 0; y < 2; ++y) {
                        const int err = (hp.test(x) ? 1 : 0) != y;
                        const int ign = pp.test(xs) ? 1 : 0;
                        if (loss(err, ign)) s[(x * ns + xs) * 2 + y] = '1';
                    }
            out.insert(s);
        }
    return out;
}

struct PairOptimum {
    // objective scaled by C: C * sum of composite losses, an integer
    std::int64_t scaled = 0;
    std::size_t ignored = 0;
};

// Exhaustive minimum over all (h, phi) of sum_i (1/C) phi + [err - phi]_+,
// reported as C times the sum so that it is an integer for integer C.
inline PairOptimum privileged_optimum(const HypothesisClass& h, const HypothesisClass& phi, const TripleSample& s,
                                      std::int64_t c)
{
    PairOptimum best{-1, 0};
    for (const auto& hp : h.patterns())
        for (const auto& pp : phi.patterns()) {
            std::int64_t ig = 0, u = 0;
            for (const auto& t : s.triples) {
                const bool err = (hp.test(t.x) ? 1 : 0) != t.y;
                const bool flagged = pp.test(t.xstar);
                ig += flagged;
                u += err && !flagged;
            }
            const std::int64_t scaled = ig + c * u;
            if (best.scaled < 0 || scaled < best.scaled ||
                (scaled == best.scaled && static_cast<std::size_t>(ig) < best.ignored))
                best = {scaled, static_cast<std::size_t>(ig)};
        }
    return best;
}

inline std::size_t min_errors(const HypothesisClass& h, const TripleSample& s)
{
    std::size_t best = s.m() + 1;
    for (const auto& hp : h.patterns()) {
        std::size_t e = 0;
        for (const auto& t : s.triples) e += (hp.test(t.x) ? 1 : 0) != t.y;
        best = std::min(best, e);
    }
    return best;
}

// --- random generators ---

inline BitSet random_pattern(std::size_t n, std::mt19937_64& rng, double p_one = 0.5)
{
    std::bernoulli_distribution b(p_one);
    BitSet out(n);
    for (std::size_t i = 0; i < n; ++i)
        if (b(rng)) out.set(i);
    return out;
}

inline HypothesisClass random_class(std::size_t n, std::size_t members, std::mt19937_64& rng,
                                    const std::string& label = "X")
{
    const double p = std::uniform_real_distribution<double>(0.2, 0.8)(rng);
    std::vector<BitSet> pats;
    for (std::size_t i = 0; i < members; ++i) pats.push_back(random_pattern(n, rng, p));
    return HypothesisClass(FiniteDomain(n, label), std::move(pats));
}

inline TripleSample random_sample(std::size_t nx, std::size_t ns, std::size_t m, std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::size_t> ux(0, nx - 1), us(0, ns - 1);
    std::bernoulli_distribution coin(0.5);
    TripleSample s;
    for (std::size_t i = 0; i < m; ++i)
        s.triples.push_back(Triple{static_cast<priverm::PointIndex>(ux(rng)), static_cast<priverm::PointIndex>(us(rng)),
                                   static_cast<priverm::Label>(coin(rng))});
    return s;
}

}  // namespace oracle
