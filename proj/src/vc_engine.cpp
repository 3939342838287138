#include "priverm/vc_engine.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace priverm {

namespace {

// Splits the member set by one point at a time. A subset is shattered iff
// every block survives every split.
class PartitionRefiner {
public:
    explicit PartitionRefiner(const HypothesisClass& cls) : cls_(cls), words_((cls.size() + 63) / 64) {}

    bool shattered(std::span<const PointIndex> subset)
    {
        const std::size_t k = subset.size();
        if (k >= 63 || (std::uint64_t{1} << k) > cls_.size()) return false;
        reset();
        std::size_t blocks = 1;
        for (PointIndex p : subset) {
            const std::uint64_t* col = cls_.column(p).data();
            next_.resize(2 * blocks * words_);
            for (std::size_t b = 0; b < blocks; ++b) {
                const std::uint64_t* src = &cur_[b * words_];
                std::uint64_t* zero = &next_[2 * b * words_];
                std::uint64_t* one = zero + words_;
                std::uint64_t any0 = 0, any1 = 0;
                for (std::size_t w = 0; w < words_; ++w) {
                    zero[w] = src[w] & ~col[w];
                    one[w] = src[w] & col[w];
                    any0 |= zero[w];
                    any1 |= one[w];
                }
                if (!any0 || !any1) return false;
            }
            cur_.swap(next_);
            blocks *= 2;
        }
        return true;
    }

    // Number of distinct labelings the class induces on `subset`.
    std::size_t count_patterns(std::span<const PointIndex> subset)
    {
        reset();
        std::size_t blocks = 1;
        for (PointIndex p : subset) {
            const std::uint64_t* col = cls_.column(p).data();
            next_.resize(2 * blocks * words_);
            std::size_t out = 0;
            for (std::size_t b = 0; b < blocks; ++b) {
                const std::uint64_t* src = &cur_[b * words_];
                std::uint64_t* zero = &next_[out * words_];
                std::uint64_t any0 = 0;
                for (std::size_t w = 0; w < words_; ++w) {
                    zero[w] = src[w] & ~col[w];
                    any0 |= zero[w];
                }
                if (any0) ++out;
                std::uint64_t* one = &next_[out * words_];
                std::uint64_t any1 = 0;
                for (std::size_t w = 0; w < words_; ++w) {
                    one[w] = src[w] & col[w];
                    any1 |= one[w];
                }
                if (any1) ++out;
            }
            next_.resize(out * words_);
            cur_.swap(next_);
            blocks = out;
        }
        return cls_.empty() ? 0 : blocks;
    }

private:
    void reset()
    {
        cur_.assign(words_, ~std::uint64_t{0});
        if (cls_.size() % 64 != 0) cur_.back() = (std::uint64_t{1} << (cls_.size() % 64)) - 1;
    }

    const HypothesisClass& cls_;
    std::size_t words_;
    std::vector<std::uint64_t> cur_, next_;
};

void check_subset(const HypothesisClass& cls, std::span<const PointIndex> subset)
{
    std::vector<PointIndex> sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InputError("subset contains duplicate points");
    if (!sorted.empty() && sorted.back() >= cls.domain().size)
        throw InputError("subset point " + std::to_string(sorted.back()) + " outside domain of size " +
                         std::to_string(cls.domain().size));
}

std::size_t floor_log2(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(std::bit_width(n) - 1); }

std::vector<PointIndex> nonconstant_points(const HypothesisClass& cls)
{
    std::vector<PointIndex> pts;
    for (std::size_t p = 0; p < cls.domain().size; ++p) {
        const std::size_t ones = cls.column(p).count();
        if (ones > 0 && ones < cls.size()) pts.push_back(static_cast<PointIndex>(p));
    }
    return pts;
}

// Sets of size k stored back to back in lexicographic order.
struct Level {
    std::size_t k = 0;
    std::vector<PointIndex> flat;

    std::size_t count() const { return k == 0 ? 0 : flat.size() / k; }
    std::span<const PointIndex> at(std::size_t i) const { return {flat.data() + i * k, k}; }

    bool contains(std::span<const PointIndex> s) const
    {
        std::size_t lo = 0, hi = count();
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            const auto m = at(mid);
            if (std::lexicographical_compare(m.begin(), m.end(), s.begin(), s.end()))
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo == count()) return false;
        const auto m = at(lo);
        return std::equal(m.begin(), m.end(), s.begin(), s.end());
    }
};

// Apriori join: two k-sets sharing their first k-1 points give one (k+1)-set,
// kept only if every other k-subset is also shattered. Output is sorted.
std::vector<PointIndex> next_candidates(const Level& level)
{
    const std::size_t k = level.k;
    std::vector<PointIndex> out;
    std::vector<PointIndex> cand(k + 1), sub(k);
    const std::size_t n = level.count();
    std::size_t run_start = 0;
    while (run_start < n) {
        std::size_t run_end = run_start + 1;
        const auto first = level.at(run_start);
        while (run_end < n && std::equal(first.begin(), first.end() - 1, level.at(run_end).begin())) ++run_end;
        for (std::size_t i = run_start; i < run_end; ++i) {
            const auto a = level.at(i);
            for (std::size_t j = i + 1; j < run_end; ++j) {
                std::copy(a.begin(), a.end(), cand.begin());
                cand[k] = level.at(j)[k - 1];
                bool ok = true;
                for (std::size_t drop = 0; ok && drop + 1 < k; ++drop) {
                    std::size_t w = 0;
                    for (std::size_t t = 0; t <= k; ++t)
                        if (t != drop) sub[w++] = cand[t];
                    ok = level.contains(sub);
                }
                if (ok) out.insert(out.end(), cand.begin(), cand.end());
            }
        }
        run_start = run_end;
    }
    return out;
}

// Tests candidates [0, limit) for shattering, in parallel chunks.
std::vector<std::uint8_t> check_candidates(const HypothesisClass& cls, const std::vector<PointIndex>& flat,
                                           std::size_t k, std::size_t limit, unsigned threads)
{
    std::vector<std::uint8_t> flags(limit, 0);
    auto work = [&](std::size_t begin, std::size_t end) {
        PartitionRefiner refiner(cls);
        for (std::size_t i = begin; i < end; ++i)
            flags[i] = refiner.shattered({flat.data() + i * k, k}) ? 1 : 0;
    };
    const unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(limit / 64 + 1)));
    if (t == 1) {
        work(0, limit);
        return flags;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (limit + t - 1) / t;
    for (unsigned w = 0; w < t; ++w) {
        const std::size_t b = w * chunk, e = std::min(limit, b + chunk);
        if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
    return flags;
}

std::size_t sauer_lower(std::size_t cardinality, std::size_t n)
{
    for (std::size_t d = 0; d <= n; ++d) {
        try {
            if (sauer_bound(d, n) >= cardinality) return d;
        } catch (const std::overflow_error&) {
            return d;
        }
    }
    return n;
}

VcReport greedy_lower_bound(const HypothesisClass& cls, const std::vector<PointIndex>& points)
{
    VcReport r;
    r.exact = false;
    PartitionRefiner refiner(cls);
    std::vector<PointIndex> s;
    for (PointIndex p : points) {
        s.push_back(p);
        ++r.nodes;
        if (!refiner.shattered(s)) s.pop_back();
    }
    r.vc = s.size();
    r.witness = s;
    return r;
}

}  // namespace

ProjectionTable project(const HypothesisClass& cls, std::span<const PointIndex> subset)
{
    check_subset(cls, subset);
    if (subset.size() > 64) throw InputError("projection supports at most 64 points");
    ProjectionTable t;
    t.subset.assign(subset.begin(), subset.end());
    t.patterns.reserve(cls.size());
    for (const auto& p : cls.patterns()) {
        std::uint64_t code = 0;
        for (std::size_t i = 0; i < subset.size(); ++i)
            if (p.test(subset[i])) code |= std::uint64_t{1} << i;
        t.patterns.push_back(code);
    }
    std::sort(t.patterns.begin(), t.patterns.end());
    t.patterns.erase(std::unique(t.patterns.begin(), t.patterns.end()), t.patterns.end());
    return t;
}

bool is_shattered(const HypothesisClass& cls, std::span<const PointIndex> subset)
{
    check_subset(cls, subset);
    if (subset.empty()) return !cls.empty();
    PartitionRefiner refiner(cls);
    return refiner.shattered(subset);
}

VcReport vc_dimension(const HypothesisClass& cls, const VcOptions& options)
{
    if (cls.empty()) throw InputError("VC dimension of an empty class is undefined");
    const auto points = nonconstant_points(cls);
    const std::size_t cap = floor_log2(cls.size());
    const std::size_t sauer_lb = sauer_lower(cls.size(), points.size());

    if (options.mode == VcMode::lower_bound_only) {
        VcReport r;
        if (options.witness) {
            if (!is_shattered(cls, *options.witness)) throw InputError("supplied witness is not shattered by the class");
            r.exact = false;
            r.vc = options.witness->size();
            r.witness = *options.witness;
            std::sort(r.witness.begin(), r.witness.end());
            r.nodes = 1;
        } else {
            r = greedy_lower_bound(cls, points);
        }
        r.sauer_lower_bound = sauer_lb;
        r.log2_upper_bound = cap;
        return r;
    }

    VcReport r;
    r.sauer_lower_bound = sauer_lb;
    r.log2_upper_bound = cap;
    r.shattered_count_by_level.push_back(1);

    Level level{1, {}};
    for (PointIndex p : points) level.flat.push_back(p);
    r.nodes = points.size();
    if (cap == 0 || level.count() == 0) {
        r.vc = 0;
        return r;
    }
    r.shattered_count_by_level.push_back(level.count());
    r.vc = 1;
    r.witness.assign(level.at(0).begin(), level.at(0).end());

    while (r.vc < cap) {
        const std::size_t k = level.k + 1;
        auto cands = next_candidates(level);
        std::size_t n = cands.size() / k;
        if (n == 0) break;
        bool truncated = false;
        if (options.budget != 0) {
            const std::uint64_t left = options.budget > r.nodes ? options.budget - r.nodes : 0;
            if (n > left) {
                n = static_cast<std::size_t>(left);
                truncated = true;
            }
        }
        const auto flags = check_candidates(cls, cands, k, n, options.threads);
        r.nodes += n;
        Level next{k, {}};
        for (std::size_t i = 0; i < n; ++i)
            if (flags[i]) next.flat.insert(next.flat.end(), cands.begin() + i * k, cands.begin() + (i + 1) * k);
        if (next.count() > 0) {
            r.shattered_count_by_level.push_back(next.count());
            r.vc = k;
            r.witness.assign(next.at(0).begin(), next.at(0).end());
        }
        if (truncated) {
            r.exact = false;
            break;
        }
        if (next.count() == 0) break;
        level = std::move(next);
    }
    return r;
}

std::uint64_t growth_function(const HypothesisClass& cls, std::size_t m, std::uint64_t budget)
{
    if (m > cls.domain().size) throw InputError("growth function argument exceeds domain size");
    if (cls.empty()) return 0;
    if (m == 0) return 1;
    // Constant points never split a projection, so the maximum is attained on
    // non-constant points alone.
    const auto points = nonconstant_points(cls);
    const std::size_t k = std::min(m, points.size());
    if (k == 0) return 1;
    const std::uint64_t ceiling =
        m < 63 ? std::min<std::uint64_t>(cls.size(), std::uint64_t{1} << m) : static_cast<std::uint64_t>(cls.size());

    PartitionRefiner refiner(cls);
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    std::vector<PointIndex> subset(k);
    std::uint64_t best = 0, visited = 0;
    while (true) {
        if (budget != 0 && ++visited > budget) throw BudgetExhausted("growth function exceeded its subset budget");
        for (std::size_t i = 0; i < k; ++i) subset[i] = points[idx[i]];
        best = std::max<std::uint64_t>(best, refiner.count_patterns(subset));
        if (best >= ceiling) return best;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == points.size() - k + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return best;
}

std::uint64_t sauer_bound(std::size_t d, std::size_t m)
{
    unsigned __int128 total = 0, binom = 1;
    const std::size_t top = std::min(d, m);
    for (std::size_t i = 0; i <= top; ++i) {
        if (i > 0) binom = binom * (m - i + 1) / i;
        total += binom;
        if (total > std::numeric_limits<std::uint64_t>::max())
            throw std::overflow_error("Sauer bound exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(total);
}

HypothesisClass union_class(const HypothesisClass& a, const HypothesisClass& b)
{
    if (!(a.domain() == b.domain())) throw InputError("union of classes over different domains");
    std::vector<BitSet> all = a.patterns();
    all.insert(all.end(), b.patterns().begin(), b.patterns().end());
    return HypothesisClass(a.domain(), std::move(all));
}

HypothesisClass k_fold_union(const HypothesisClass& r, std::size_t k)
{
    if (k < 2) throw InputError("k-fold union needs k >= 2");
    // Unions of j+1 members are exactly {u | a}: u a union of j members, a in r.
    // Deduplicating after each round keeps the frontier at distinct sets.
    std::unordered_set<BitSet> current(r.patterns().begin(), r.patterns().end());
    for (std::size_t round = 1; round < k; ++round) {
        std::unordered_set<BitSet> next = current;
        for (const auto& u : current)
            for (const auto& a : r.patterns()) next.insert(u | a);
        if (next.size() == current.size()) break;
        current = std::move(next);
    }
    return HypothesisClass(r.domain(), std::vector<BitSet>(current.begin(), current.end()));
}

std::vector<BitSet> lift_nonprivileged(const HypothesisClass& h, const FiniteDomain& xstar)
{
    const std::size_t nx = h.domain().size, ns = xstar.size;
    std::vector<BitSet> out;
    out.reserve(h.size());
    for (const auto& p : h.patterns()) {
        BitSet b(nx * ns * 2);
        for (std::size_t x = 0; x < nx; ++x) {
            // error on y = 1 when h(x) = 0, on y = 0 when h(x) = 1
            const Label wrong_y = p.test(x) ? 0 : 1;
            for (std::size_t s = 0; s < ns; ++s) b.set(product_index(x, s, wrong_y, ns));
        }
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<BitSet> lift_privileged(const HypothesisClass& phi, const FiniteDomain& x)
{
    const std::size_t nx = x.size, ns = phi.domain().size;
    std::vector<BitSet> out;
    out.reserve(phi.size());
    for (const auto& p : phi.patterns()) {
        BitSet b(nx * ns * 2);
        for (std::size_t s = 0; s < ns; ++s) {
            if (!p.test(s)) continue;
            for (std::size_t xi = 0; xi < nx; ++xi) {
                b.set(product_index(xi, s, 0, ns));
                b.set(product_index(xi, s, 1, ns));
            }
        }
        out.push_back(std::move(b));
    }
    return out;
}

namespace {
template <typename Combine>
HypothesisClass pairwise_class(const HypothesisClass& h, const HypothesisClass& phi, Combine combine)
{
    if (h.empty() || phi.empty()) throw InputError("loss classes need nonempty H and Phi");
    const auto hl = lift_nonprivileged(h, phi.domain());
    const auto pl = lift_privileged(phi, h.domain());
    std::unordered_set<BitSet> seen;
    seen.reserve(h.size() * phi.size());
    for (const auto& a : hl)
        for (const auto& b : pl) seen.insert(combine(a, b));
    return HypothesisClass(FiniteDomain::product(h.domain(), phi.domain()),
                           std::vector<BitSet>(seen.begin(), seen.end()));
}
}  // namespace

HypothesisClass build_f_class(const HypothesisClass& h, const HypothesisClass& phi)
{
    return pairwise_class(h, phi, [](const BitSet& err, const BitSet& ign) { return err | ign; });
}

HypothesisClass build_aux_class(const HypothesisClass& h, const HypothesisClass& phi)
{
    return pairwise_class(h, phi, [](BitSet err, const BitSet& ign) { return err.subtract(ign); });
}

HypothesisClass build_loss_class(const HypothesisClass& cls, LossSide side)
{
    if (cls.empty()) throw InputError("loss class of an empty class");
    const std::size_t n = cls.domain().size;
    std::vector<BitSet> out;
    for (const auto& p : cls.patterns()) {
        BitSet b(2 * n);
        for (std::size_t x = 0; x < n; ++x) {
            if (side == LossSide::nonprivileged) {
                b.set(2 * x + (p.test(x) ? 0 : 1));
            } else if (p.test(x)) {
                b.set(2 * x);
                b.set(2 * x + 1);
            }
        }
        out.push_back(std::move(b));
    }
    return HypothesisClass(FiniteDomain::with_labels(cls.domain()), std::move(out));
}

}  // namespace priverm
