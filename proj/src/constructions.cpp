#include "priverm/constructions.hpp"

#include <cmath>

#include "priverm/vc_engine.hpp"

namespace priverm {

std::vector<std::string> point_names(const FiniteDomain& domain, const std::string& prefix)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < domain.size; ++i) names.push_back(prefix + std::to_string(i + 1));
    return names;
}

std::vector<std::string> product_point_names(std::size_t nx, std::size_t nxstar)
{
    std::vector<std::string> names(nx * nxstar * 2);
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t s = 0; s < nxstar; ++s)
            for (Label y = 0; y < 2; ++y)
                names[product_index(x, s, y, nxstar)] =
                    "(x" + std::to_string(x + 1) + ",x*" + std::to_string(s + 1) + "," + std::to_string(y) + ")";
    return names;
}

namespace {

std::vector<BitSet> triplet_products(const std::vector<std::string>& base, std::size_t d)
{
    std::vector<BitSet> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= base.size();
    for (std::size_t code = 0; code < total; ++code) {
        BitSet b(3 * d);
        std::size_t c = code;
        for (std::size_t t = 0; t < d; ++t) {
            const std::string& tri = base[c % base.size()];
            c /= base.size();
            for (std::size_t i = 0; i < 3; ++i)
                if (tri[i] == '1') b.set(3 * t + i);
        }
        out.push_back(std::move(b));
    }
    return out;
}

}  // namespace

ClassPair construct_theorem1(std::size_t d)
{
    if (d < 1) throw InputError("theorem-1 construction needs d >= 1");
    if (d > kMaxTheorem1D) throw InputError("theorem-1 construction is capped at d = " + std::to_string(kMaxTheorem1D));
    static const std::vector<std::string> h1 = {"000", "001", "100", "110"};
    static const std::vector<std::string> phi1 = {"000", "001", "010", "101"};
    return ClassPair{HypothesisClass(FiniteDomain(3 * d, "X"), triplet_products(h1, d)),
                     HypothesisClass(FiniteDomain(3 * d, "X*"), triplet_products(phi1, d))};
}

std::vector<PointIndex> theorem1_witness(std::size_t d)
{
    std::vector<PointIndex> pts;
    for (std::size_t i = 0; i < 3 * d; ++i) pts.push_back(static_cast<PointIndex>(product_index(i, i, 0, 3 * d)));
    return pts;
}

Lemma1Classes construct_lemma1_tight(std::size_t d, std::size_t dstar)
{
    const std::size_t n = d + dstar + 1;
    if (n > 24) throw InputError("lemma-1 construction limited to d + dstar + 1 <= 24 points");
    std::vector<BitSet> h, j;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
        const auto ones = static_cast<std::size_t>(std::popcount(code));
        if (ones > d && n - ones > dstar) continue;
        BitSet b(n);
        for (std::size_t i = 0; i < n; ++i)
            if ((code >> i) & 1u) b.set(i);
        if (ones <= d) h.push_back(b);
        if (n - ones <= dstar) j.push_back(b);
    }
    const FiniteDomain domain(n, "X");
    return Lemma1Classes{HypothesisClass(domain, std::move(h)), HypothesisClass(domain, std::move(j))};
}

Lemma2Witness construct_lemma2_witness(const HypothesisClass& h, const HypothesisClass& phi)
{
    const auto rh = vc_dimension(h);
    const auto rp = vc_dimension(phi);
    if (rh.vc <= 1 || rp.vc <= 1)
        throw InputError("lemma-2 witness needs VC(H) > 1 and VC(Phi) > 1 (got " + std::to_string(rh.vc) + " and " +
                         std::to_string(rp.vc) + ")");
    Lemma2Witness w;
    w.d = rh.vc;
    w.dstar = rp.vc;
    w.shattered_h = rh.witness;
    w.shattered_phi = rp.witness;
    const PointIndex last_x = w.shattered_h.back();
    const PointIndex last_xs = w.shattered_phi.back();
    for (std::size_t i = 0; i + 1 < w.d; ++i) w.triples.push_back(Triple{w.shattered_h[i], last_xs, 0});
    for (std::size_t j = 0; j + 1 < w.dstar; ++j) w.triples.push_back(Triple{last_x, w.shattered_phi[j], 0});
    const std::size_t ns = phi.domain().size;
    for (const auto& t : w.triples) w.points.push_back(static_cast<PointIndex>(product_index(t.x, t.xstar, t.y, ns)));
    w.verified = is_shattered(build_aux_class(h, phi), w.points);
    return w;
}

double theorem5_alpha(double eps, double delta) { return 8.0 * eps / (1.0 - 8.0 * delta); }

Theorem5Construction construct_theorem5_family(const HypothesisClass& phi, double eps, double delta,
                                               std::vector<Label> heavy_side)
{
    if (!(eps > 0.0 && eps < 1.0)) throw InputError("eps must lie in (0,1)");
    if (!(delta > 0.0 && delta < 0.125)) throw InputError("delta must lie in (0, 1/8) for alpha to be positive");
    const double alpha = theorem5_alpha(eps, delta);
    if (!(alpha < 1.0)) throw InputError("alpha = 8 eps / (1 - 8 delta) must be below 1, got " + std::to_string(alpha));

    const auto report = vc_dimension(phi);
    Theorem5Family fam;
    fam.alpha = alpha;
    fam.eps = eps;
    fam.delta = delta;
    fam.dstar = report.vc;
    fam.dstar_used = report.vc - report.vc % 2;
    if (fam.dstar_used < 2) throw InputError("theorem-5 family needs VC(Phi) >= 2");
    const auto& c = report.witness;
    for (std::size_t i = 0; i < fam.dstar_used; i += 2) fam.pairs.emplace_back(c[i], c[i + 1]);

    if (heavy_side.empty()) heavy_side.assign(fam.pairs.size(), 0);
    if (heavy_side.size() != fam.pairs.size())
        throw InputError("heavy_side needs one entry per pair (" + std::to_string(fam.pairs.size()) + ")");
    for (Label v : heavy_side)
        if (v > 1) throw InputError("heavy_side entries must be 0 or 1");
    fam.heavy_side = std::move(heavy_side);

    const double n = static_cast<double>(fam.dstar_used);
    const double heavy = (1.0 + alpha) / n, light = (1.0 - alpha) / n;
    std::vector<FiniteDistribution::Atom> atoms;
    BitSet wanted(phi.domain().size);
    for (std::size_t i = 0; i < fam.pairs.size(); ++i) {
        const auto [a, b] = fam.pairs[i];
        const bool a_heavy = fam.heavy_side[i] == 0;
        atoms.push_back({Triple{0, a, 0}, a_heavy ? heavy : light});
        atoms.push_back({Triple{0, b, 0}, a_heavy ? light : heavy});
        wanted.set(a_heavy ? b : a);
    }

    // phi* must match `wanted` on C; off C it is free, take the first such member.
    std::size_t star = phi.size();
    for (std::size_t j = 0; j < phi.size() && star == phi.size(); ++j) {
        bool ok = true;
        for (const auto& [a, b] : fam.pairs)
            ok = ok && phi.pattern(j).test(a) == wanted.test(a) && phi.pattern(j).test(b) == wanted.test(b);
        if (ok) star = j;
    }
    if (star == phi.size()) throw InputError("shattered set does not realize phi*");

    return Theorem5Construction{std::move(fam), FiniteDistribution(std::move(atoms)), phi.member(star), star};
}

HypothesisClass phi_prime(const HypothesisClass& phi, const Theorem5Family& family)
{
    std::vector<BitSet> keep;
    for (const auto& p : phi.patterns()) {
        bool ok = true;
        for (const auto& [a, b] : family.pairs) ok = ok && (p.test(a) != p.test(b));
        if (ok) keep.push_back(p);
    }
    return HypothesisClass(phi.domain(), std::move(keep));
}

}  // namespace priverm
