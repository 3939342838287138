#include "priverm/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace priverm {

FiniteDomain::FiniteDomain(std::size_t n, std::string name) : size(n), label(std::move(name))
{
    if (n == 0) throw InputError("domain size must be at least 1");
}

FiniteDomain FiniteDomain::product(const FiniteDomain& x, const FiniteDomain& xstar)
{
    return FiniteDomain(x.size * xstar.size * 2, x.label + "x" + xstar.label + "xY");
}

FiniteDomain FiniteDomain::with_labels(const FiniteDomain& x)
{
    return FiniteDomain(x.size * 2, x.label + "xY");
}

Hypothesis::Hypothesis(FiniteDomain domain, BitSet bits) : domain_(std::move(domain)), bits_(std::move(bits))
{
    if (bits_.size() != domain_.size)
        throw InputError("hypothesis has " + std::to_string(bits_.size()) + " bits but domain " + domain_.label +
                         " has " + std::to_string(domain_.size) + " points");
}

Hypothesis Hypothesis::zeros(const FiniteDomain& domain) { return Hypothesis(domain, BitSet(domain.size)); }

Hypothesis Hypothesis::ones(const FiniteDomain& domain) { return Hypothesis(domain, ~BitSet(domain.size)); }

Hypothesis Hypothesis::from_string(const FiniteDomain& domain, std::string_view s)
{
    return Hypothesis(domain, BitSet::from_string(s));
}

Label Hypothesis::operator()(std::size_t point) const
{
    if (point >= domain_.size)
        throw InputError("point " + std::to_string(point) + " outside domain " + domain_.label + " of size " +
                         std::to_string(domain_.size));
    return bits_.test(point) ? 1 : 0;
}

HypothesisClass::HypothesisClass(FiniteDomain domain, std::vector<BitSet> patterns)
    : domain_(std::move(domain)), patterns_(std::move(patterns))
{
    for (const auto& p : patterns_)
        if (p.size() != domain_.size)
            throw InputError("class member has " + std::to_string(p.size()) + " bits, expected " +
                             std::to_string(domain_.size));
    std::sort(patterns_.begin(), patterns_.end());
    patterns_.erase(std::unique(patterns_.begin(), patterns_.end()), patterns_.end());

    columns_.assign(domain_.size, BitSet(patterns_.size()));
    for (std::size_t j = 0; j < patterns_.size(); ++j) {
        const BitSet& p = patterns_[j];
        for (std::size_t w = 0; w < p.word_count(); ++w) {
            std::uint64_t bits = p.word(w);
            while (bits) {
                const int b = std::countr_zero(bits);
                columns_[w * 64 + static_cast<std::size_t>(b)].set(j);
                bits &= bits - 1;
            }
        }
    }
}

namespace {
std::vector<BitSet> bits_of(const FiniteDomain& domain, std::span<const Hypothesis> members)
{
    std::vector<BitSet> out;
    out.reserve(members.size());
    for (const auto& h : members) {
        if (!(h.domain() == domain)) throw InputError("class members must share the class domain");
        out.push_back(h.bits());
    }
    return out;
}
}  // namespace

HypothesisClass::HypothesisClass(FiniteDomain domain, std::span<const Hypothesis> members)
    : HypothesisClass(domain, bits_of(domain, members))
{
}

std::size_t HypothesisClass::find(const BitSet& pattern) const
{
    auto it = std::lower_bound(patterns_.begin(), patterns_.end(), pattern);
    if (it != patterns_.end() && *it == pattern) return static_cast<std::size_t>(it - patterns_.begin());
    return patterns_.size();
}

FiniteDistribution::FiniteDistribution(std::vector<Atom> support) : support_(std::move(support))
{
    if (support_.empty()) throw InputError("distribution support is empty");
    double total = 0.0;
    std::set<Triple> seen;
    for (const auto& a : support_) {
        if (!(a.p >= 0.0 && a.p <= 1.0)) throw InputError("probability outside [0,1]");
        if (a.triple.y > 1) throw InputError("label must be 0 or 1");
        if (!seen.insert(a.triple).second) throw InputError("duplicate triple in distribution support");
        total += a.p;
    }
    if (std::abs(total - 1.0) > kNormalizationTolerance)
        throw InputError("distribution probabilities sum to " + std::to_string(total) + ", not 1");
}

namespace {
void check_label(Label v)
{
    if (v > 1) throw InputError("label must be 0 or 1");
}
}  // namespace

int zero_one_loss(Label yhat, Label y)
{
    check_label(yhat);
    check_label(y);
    return yhat != y ? 1 : 0;
}

int ignoring_loss(Label z, Label y)
{
    check_label(z);
    check_label(y);
    return z == 1 ? 1 : 0;
}

double composite_loss(int l, int lstar, double c)
{
    if (!(c > 0.0)) throw InputError("composite loss weight C must be positive");
    if ((l != 0 && l != 1) || (lstar != 0 && lstar != 1)) throw InputError("composite loss expects binary losses");
    return lstar / c + std::max(l - lstar, 0);
}

int f_loss(const Hypothesis& h, const Hypothesis& phi, const Triple& t)
{
    return std::max(zero_one_loss(h(t.x), t.y), ignoring_loss(phi(t.xstar), t.y));
}

int aux_loss(const Hypothesis& h, const Hypothesis& phi, const Triple& t)
{
    return (zero_one_loss(h(t.x), t.y) == 1 && phi(t.xstar) == 0) ? 1 : 0;
}

double exact_true_error(const Hypothesis& h, const FiniteDistribution& dist)
{
    double err = 0.0;
    for (const auto& a : dist.support())
        if (h(a.triple.x) != a.triple.y) err += a.p;
    return err;
}

double exact_flag_rate(const Hypothesis& phi, const FiniteDistribution& dist)
{
    double r = 0.0;
    for (const auto& a : dist.support())
        if (phi(a.triple.xstar) == 1) r += a.p;
    return r;
}

double exact_aux_error(const Hypothesis& h, const Hypothesis& phi, const FiniteDistribution& dist)
{
    double r = 0.0;
    for (const auto& a : dist.support())
        if (aux_loss(h, phi, a.triple)) r += a.p;
    return r;
}

void check_triple(const Triple& t, std::size_t nx, std::size_t nxstar)
{
    if (t.x >= nx) throw InputError("triple x index " + std::to_string(t.x) + " outside domain of size " + std::to_string(nx));
    if (t.xstar >= nxstar)
        throw InputError("triple x* index " + std::to_string(t.xstar) + " outside domain of size " + std::to_string(nxstar));
    check_label(t.y);
}

}  // namespace priverm
