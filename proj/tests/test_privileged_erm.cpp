#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "priverm/privileged_erm.hpp"

using namespace priverm;

namespace {

HypothesisClass from_strings(std::size_t n, const std::vector<std::string>& v, const std::string& label)
{
    std::vector<BitSet> pats;
    for (const auto& s : v) pats.push_back(BitSet::from_string(s));
    return HypothesisClass(FiniteDomain(n, label), std::move(pats));
}

HypothesisClass with_zero(HypothesisClass c)
{
    auto pats = c.patterns();
    pats.push_back(BitSet(c.domain().size));
    return HypothesisClass(c.domain(), std::move(pats));
}

}  // namespace

TEST_CASE("rational weight")
{
    const Rational r(6, 4);
    CHECK(r.num == 3);
    CHECK(r.den == 2);
    CHECK(Rational::from_double(2.0).num == 2);
    CHECK(Rational::from_double(0.375).den == 8);
    CHECK_THROWS_AS(Rational::from_double(0.0), InputError);
    CHECK_THROWS_AS(Rational::from_double(-1.0), InputError);
    CHECK_THROWS_AS(Rational::from_double(0.1), InputError);
    CHECK_THROWS_AS(Rational(0, 1), InputError);
}

TEST_CASE("standard ERM on a realizable sample")
{
    const auto h = from_strings(3, {"000", "011", "101"}, "X");
    TripleSample s{{Triple{0, 0, 0}, Triple{1, 0, 1}, Triple{2, 0, 1}}};
    const auto r = erm_standard(h, s);
    CHECK(r.empirical_error == 0.0);
    CHECK(r.h.bits().to_string() == "011");
}

TEST_CASE("standard ERM with an empty sample returns the first member")
{
    const auto h = from_strings(3, {"110", "001"}, "X");
    const auto r = erm_standard(h, TripleSample{});
    CHECK(r.empirical_error == 0.0);
    CHECK(r.h_index == 0);
    CHECK(r.h.bits().to_string() == "001");
    CHECK(r.minimizer_count == 2);
}

TEST_CASE("standard ERM matches the exhaustive oracle")
{
    std::mt19937_64 rng(101);
    for (int rep = 0; rep < 500; ++rep) {
        const auto h = oracle::random_class(1 + rng() % 6, 1 + rng() % 64, rng, "X");
        const auto s = oracle::random_sample(h.domain().size, 1, rng() % 21, rng);
        const auto r = erm_standard(h, s);
        CHECK(r.error_count == oracle::min_errors(h, s));
        // first minimizer in canonical order
        for (std::size_t j = 0; j < r.h_index; ++j) {
            std::size_t e = 0;
            for (const auto& t : s.triples) e += zero_one_loss(h.member(j)(t.x), t.y);
            CHECK(e > r.error_count);
        }
    }
}

TEST_CASE("empirical statistics by definition")
{
    // h errs on samples 1 and 2, phi ignores samples 2 and 3, m = 5
    const auto h = Hypothesis::from_string(FiniteDomain(5, "X"), "01100");
    const auto phi = Hypothesis::from_string(FiniteDomain(5, "X*"), "00110");
    TripleSample s;
    for (PointIndex i = 0; i < 5; ++i) s.triples.push_back(Triple{i, i, 0});
    const auto st = empirical_stats(h, phi, s);
    CHECK(st.eps_ig == doctest::Approx(0.4));
    CHECK(st.eps_u == doctest::Approx(0.2));
    CHECK(st.raw_error == doctest::Approx(0.4));

    const auto ones = Hypothesis::ones(FiniteDomain(5, "X*"));
    const auto zeros = Hypothesis::zeros(FiniteDomain(5, "X*"));
    CHECK(empirical_stats(h, ones, s).eps_ig == 1.0);
    CHECK(empirical_stats(h, ones, s).eps_u == 0.0);
    CHECK(empirical_stats(h, zeros, s).eps_ig == 0.0);
    CHECK(empirical_stats(h, zeros, s).eps_u == st.raw_error);
    const auto empty = empirical_stats(h, phi, TripleSample{});
    CHECK(empty.eps_ig == 0.0);
    CHECK(empty.eps_u == 0.0);
    CHECK(empty.raw_error == 0.0);
}

TEST_CASE("privileged ERM with phi = 0 reduces to standard ERM")
{
    std::mt19937_64 rng(103);
    for (int rep = 0; rep < 200; ++rep) {
        const auto h = oracle::random_class(1 + rng() % 6, 1 + rng() % 30, rng, "X");
        const std::size_t ns = 1 + rng() % 4;
        const auto phi0 = HypothesisClass(FiniteDomain(ns, "X*"), std::vector<BitSet>{BitSet(ns)});
        const auto s = oracle::random_sample(h.domain().size, ns, rng() % 21, rng);
        const auto std_r = erm_standard(h, s);
        const auto pr = erm_privileged(h, phi0, s);
        CHECK(pr.ignored_count == 0);
        CHECK(pr.unexplained_count == std_r.error_count);
        CHECK(pr.h_index == std_r.h_index);
    }
}

TEST_CASE("privileged ERM objective is zero on realizable samples when phi = 0 is available")
{
    const auto h = from_strings(3, {"000", "011", "101"}, "X");
    const auto phi = from_strings(2, {"00", "11", "10"}, "X*");
    TripleSample s{{Triple{0, 1, 0}, Triple{1, 0, 1}, Triple{2, 1, 1}}};
    const auto r = erm_privileged(h, phi, s);
    CHECK(r.objective == 0.0);
    CHECK(r.phi.bits().none());
}

TEST_CASE("privileged ERM matches the exhaustive oracle for C in {1, 2}")
{
    std::mt19937_64 rng(107);
    for (int rep = 0; rep < 1500; ++rep) {
        const auto h = oracle::random_class(1 + rng() % 6, 1 + rng() % 64, rng, "X");
        const auto phi = oracle::random_class(1 + rng() % 6, 1 + rng() % 64, rng, "X*");
        const auto s = oracle::random_sample(h.domain().size, phi.domain().size, rng() % 21, rng);
        for (std::int64_t c : {1, 2}) {
            PrivilegedErmOptions o;
            o.c = Rational(c, 1);
            const auto opt = oracle::privileged_optimum(h, phi, s, c);
            for (ErmStrategy st : {ErmStrategy::pair_scan, ErmStrategy::branch_and_bound}) {
                o.strategy = st;
                const auto r = erm_privileged(h, phi, s, o);
                CHECK(static_cast<std::int64_t>(r.ignored_count) + c * static_cast<std::int64_t>(r.unexplained_count) ==
                      opt.scaled);
                CHECK(r.ignored_count == opt.ignored);
                CHECK(r.objective_sum * c == doctest::Approx(static_cast<double>(opt.scaled)));
            }
        }
    }
}

TEST_CASE("branch and bound returns the same pair as the full scan")
{
    std::mt19937_64 rng(109);
    for (int rep = 0; rep < 800; ++rep) {
        const auto h = oracle::random_class(2 + rng() % 6, 1 + rng() % 64, rng, "X");
        const auto phi = oracle::random_class(2 + rng() % 6, 1 + rng() % 64, rng, "X*");
        const auto s = oracle::random_sample(h.domain().size, phi.domain().size, rng() % 25, rng);
        PrivilegedErmOptions a, b;
        a.strategy = ErmStrategy::pair_scan;
        b.strategy = ErmStrategy::branch_and_bound;
        a.c = b.c = rep % 3 == 0 ? Rational(1, 2) : rep % 3 == 1 ? Rational(1, 1) : Rational(3, 1);
        const auto ra = erm_privileged(h, phi, s, a);
        const auto rb = erm_privileged(h, phi, s, b);
        CHECK(ra.h_index == rb.h_index);
        CHECK(ra.phi_index == rb.phi_index);
        CHECK(rb.nodes <= ra.nodes);
    }
}

TEST_CASE("C = 1 objective equals the size of errors union ignored")
{
    std::mt19937_64 rng(113);
    for (int rep = 0; rep < 300; ++rep) {
        const auto h = oracle::random_class(1 + rng() % 5, 1 + rng() % 30, rng, "X");
        const auto phi = oracle::random_class(1 + rng() % 5, 1 + rng() % 30, rng, "X*");
        const auto s = oracle::random_sample(h.domain().size, phi.domain().size, 1 + rng() % 20, rng);
        const auto r = erm_privileged(h, phi, s);
        const auto st = empirical_stats(r.h, r.phi, s);
        CHECK(r.objective == doctest::Approx(st.eps_ig + st.eps_u));
        CHECK(r.objective_sum == doctest::Approx(s.m() * (st.eps_ig + st.eps_u)));
        CHECK(r.ignored_weight == doctest::Approx(st.eps_ig));
        CHECK(r.unexplained_error == doctest::Approx(st.eps_u));
        std::size_t union_size = 0;
        for (const auto& t : s.triples) union_size += (r.h(t.x) != t.y) || r.phi(t.xstar);
        CHECK(r.objective_sum == static_cast<double>(union_size));
    }
}

TEST_CASE("Lemma 4 holds for every solver output")
{
    std::mt19937_64 rng(127);
    for (int rep = 0; rep < 2000; ++rep) {
        const auto h = oracle::random_class(1 + rng() % 6, 1 + rng() % 40, rng, "X");
        const auto phi = oracle::random_class(1 + rng() % 6, 1 + rng() % 40, rng, "X*");
        const auto s = oracle::random_sample(h.domain().size, phi.domain().size, rng() % 21, rng);
        PrivilegedErmOptions o;
        o.c = rep % 2 ? Rational(2, 1) : Rational(1, 1);
        const auto r = erm_privileged(h, phi, s, o);
        CHECK(erm_standard(h, s).error_count <= r.ignored_count + r.unexplained_count);
    }
}

TEST_CASE("with phi = 0 in Phi and C = 1 the objective equals the ERM error")
{
    std::mt19937_64 rng(131);
    for (int rep = 0; rep < 300; ++rep) {
        const auto h = oracle::random_class(1 + rng() % 6, 1 + rng() % 30, rng, "X");
        const auto phi = with_zero(oracle::random_class(1 + rng() % 6, 1 + rng() % 30, rng, "X*"));
        const auto s = oracle::random_sample(h.domain().size, phi.domain().size, rng() % 21, rng);
        CHECK(erm_privileged(h, phi, s).objective_sum == static_cast<double>(erm_standard(h, s).error_count));
    }
}

TEST_CASE("solver output is invariant to sample permutation in objective and ignored weight")
{
    std::mt19937_64 rng(137);
    for (int rep = 0; rep < 200; ++rep) {
        const auto h = oracle::random_class(1 + rng() % 6, 1 + rng() % 30, rng, "X");
        const auto phi = oracle::random_class(1 + rng() % 6, 1 + rng() % 30, rng, "X*");
        auto s = oracle::random_sample(h.domain().size, phi.domain().size, rng() % 21, rng);
        const auto a = erm_privileged(h, phi, s);
        std::shuffle(s.triples.begin(), s.triples.end(), rng);
        const auto b = erm_privileged(h, phi, s);
        CHECK(a.objective_sum == b.objective_sum);
        CHECK(a.ignored_count == b.ignored_count);
    }
}

TEST_CASE("node budget raises BudgetExhausted")
{
    std::mt19937_64 rng(139);
    const auto h = oracle::random_class(5, 30, rng, "X");
    const auto phi = oracle::random_class(5, 30, rng, "X*");
    const auto s = oracle::random_sample(5, 5, 15, rng);
    PrivilegedErmOptions o;
    o.strategy = ErmStrategy::pair_scan;
    o.node_budget = 10;
    CHECK_THROWS_AS(erm_privileged(h, phi, s, o), BudgetExhausted);
}

TEST_CASE("privileged ERM input validation")
{
    const auto h = from_strings(2, {"01"}, "X");
    const auto phi = from_strings(2, {"00"}, "X*");
    CHECK_THROWS_AS(erm_privileged(h, phi, TripleSample{{Triple{2, 0, 0}}}), InputError);
    CHECK_THROWS_AS(erm_privileged(h, phi, TripleSample{{Triple{0, 2, 0}}}), InputError);
    CHECK_THROWS_AS(erm_standard(h, TripleSample{{Triple{0, 0, 3}}}), InputError);
}
