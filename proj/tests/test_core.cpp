#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "priverm/bitset.hpp"
#include "priverm/core.hpp"
#include "priverm/json_io.hpp"

using namespace priverm;

namespace {

Hypothesis hyp(std::size_t n, const std::string& s, const std::string& label = "X")
{
    return Hypothesis::from_string(FiniteDomain(n, label), s);
}

}  // namespace

TEST_CASE("bitset string round trip and word layout")
{
    const auto b = BitSet::from_string("1000000000000000000000000000000000000000000000000000000000000000011");
    CHECK(b.size() == 67);
    CHECK(b.test(0));
    CHECK(b.test(65));
    CHECK(b.test(66));
    CHECK(b.count() == 3);
    CHECK(b.word_count() == 2);
    CHECK(b.word(1) == 0b110);
    CHECK(BitSet::from_string(b.to_string()) == b);
}

TEST_CASE("bitset complement keeps the tail clear")
{
    BitSet b(70);
    b.set(3);
    const auto c = ~b;
    CHECK(c.count() == 69);
    CHECK(!c.test(3));
    CHECK(BitSet::count_andnot(c, b) == 69);
    CHECK(BitSet::count_and(c, b) == 0);
}

TEST_CASE("bitset ordering is lexicographic from point 0")
{
    std::vector<BitSet> v = {BitSet::from_string("110"), BitSet::from_string("001"), BitSet::from_string("100"),
                             BitSet::from_string("000")};
    std::sort(v.begin(), v.end());
    CHECK(v[0].to_string() == "000");
    CHECK(v[1].to_string() == "001");
    CHECK(v[2].to_string() == "100");
    CHECK(v[3].to_string() == "110");
}

TEST_CASE("bitset rejects non-binary characters")
{
    CHECK_THROWS(BitSet::from_string("01a"));
}

TEST_CASE("zero-one loss")
{
    CHECK(zero_one_loss(1, 1) == 0);
    CHECK(zero_one_loss(0, 1) == 1);
    CHECK(zero_one_loss(1, 0) == 1);
    CHECK(zero_one_loss(0, 0) == 0);
}

TEST_CASE("ignoring loss ignores the label")
{
    CHECK(ignoring_loss(1, 0) == 1);
    CHECK(ignoring_loss(1, 1) == 1);
    CHECK(ignoring_loss(0, 1) == 0);
    for (Label z : {0, 1}) CHECK(ignoring_loss(z, 0) == ignoring_loss(z, 1));
}

TEST_CASE("composite loss")
{
    CHECK(composite_loss(1, 1, 1.0) == 1.0);
    CHECK(composite_loss(0, 0, 1.0) == 0.0);
    CHECK(composite_loss(0, 1, 2.0) == 0.5);
    for (int l : {0, 1})
        for (int ls : {0, 1}) CHECK(composite_loss(l, ls, 1.0) == std::max(l, ls));
    CHECK_THROWS_AS(composite_loss(1, 0, 0.0), InputError);
    CHECK_THROWS_AS(composite_loss(1, 0, -1.0), InputError);
    CHECK_THROWS_AS(composite_loss(2, 0, 1.0), InputError);
}

TEST_CASE("f-loss and auxiliary loss examples")
{
    const auto h = hyp(2, "01");
    const auto phi0 = hyp(2, "00", "X*");
    const auto phi1 = hyp(2, "11", "X*");
    // h(0) = 0 = y: correct; h(1) = 1 != 0: error
    const Triple correct{0, 0, 0};
    const Triple wrong{1, 0, 0};
    CHECK(f_loss(h, phi0, correct) == 0);
    CHECK(f_loss(h, phi1, correct) == 1);
    CHECK(f_loss(h, phi0, wrong) == 1);
    CHECK(aux_loss(h, phi0, wrong) == 1);
    CHECK(aux_loss(h, phi1, wrong) == 0);
    CHECK(aux_loss(h, phi0, correct) == 0);
}

TEST_CASE("f-loss is ignoring loss plus auxiliary loss pointwise")
{
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 200; ++rep) {
        const auto h = Hypothesis(FiniteDomain(5, "X"), oracle::random_pattern(5, rng));
        const auto phi = Hypothesis(FiniteDomain(4, "X*"), oracle::random_pattern(4, rng));
        for (PointIndex x = 0; x < 5; ++x)
            for (PointIndex s = 0; s < 4; ++s)
                for (Label y : {0, 1}) {
                    const Triple t{x, s, y};
                    CHECK(f_loss(h, phi, t) == ignoring_loss(phi(s), y) + aux_loss(h, phi, t));
                }
    }
}

TEST_CASE("hypothesis rejects mismatched lengths and out-of-domain points")
{
    CHECK_THROWS_AS(Hypothesis(FiniteDomain(3, "X"), BitSet(2)), InputError);
    CHECK_THROWS_AS(hyp(3, "010")(3), InputError);
    CHECK_THROWS_AS(FiniteDomain(0, "X"), InputError);
}

TEST_CASE("product domain size and labels")
{
    const auto p = FiniteDomain::product(FiniteDomain(3, "X"), FiniteDomain(4, "X*"));
    CHECK(p.size == 24);
    CHECK(FiniteDomain::with_labels(FiniteDomain(5, "X")).size == 10);
    CHECK(product_index(0, 0, 0, 4) == 0);
    CHECK(product_index(0, 0, 1, 4) == 1);
    CHECK(product_index(0, 1, 0, 4) == 2);
    CHECK(product_index(1, 0, 0, 4) == 8);
    CHECK(product_index(2, 3, 1, 4) == 23);
}

TEST_CASE("hypothesis class deduplicates and orders members canonically")
{
    const FiniteDomain d(3, "X");
    HypothesisClass a(d, {BitSet::from_string("110"), BitSet::from_string("000"), BitSet::from_string("110")});
    HypothesisClass b(d, {BitSet::from_string("000"), BitSet::from_string("110")});
    CHECK(a.size() == 2);
    CHECK(a.patterns() == b.patterns());
    CHECK(a.pattern(0).to_string() == "000");
    CHECK(a.find(BitSet::from_string("110")) == 1);
    CHECK(!a.contains(BitSet::from_string("111")));
    CHECK(a.column(0).to_string() == "01");
}

TEST_CASE("distribution validation")
{
    using A = FiniteDistribution::Atom;
    CHECK_NOTHROW(FiniteDistribution({A{{0, 0, 0}, 0.25}, A{{1, 0, 1}, 0.75}}));
    CHECK_THROWS_AS(FiniteDistribution({A{{0, 0, 0}, 0.25}, A{{1, 0, 1}, 0.7}}), InputError);
    CHECK_THROWS_AS(FiniteDistribution({A{{0, 0, 0}, 0.5}, A{{0, 0, 0}, 0.5}}), InputError);
    CHECK_THROWS_AS(FiniteDistribution({A{{0, 0, 2}, 1.0}}), InputError);
    CHECK_THROWS_AS(FiniteDistribution({A{{0, 0, 0}, 1.5}, A{{0, 0, 1}, -0.5}}), InputError);
}

TEST_CASE("exact true error examples")
{
    using A = FiniteDistribution::Atom;
    const FiniteDistribution dist({A{{0, 0, 0}, 0.25}, A{{1, 0, 1}, 0.75}});
    CHECK(exact_true_error(hyp(2, "00"), dist) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(exact_true_error(hyp(2, "01"), dist) == 0.0);
    CHECK(exact_true_error(hyp(2, "10"), dist) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("exact measures are invariant to support order and linear in the table")
{
    std::mt19937_64 rng(5);
    using A = FiniteDistribution::Atom;
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<A> atoms;
        std::vector<double> w;
        for (PointIndex x = 0; x < 4; ++x)
            for (Label y : {0, 1}) {
                atoms.push_back(A{{x, static_cast<PointIndex>((x + y) % 3), y}, 0.0});
                w.push_back(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
            }
        double total = 0.0;
        for (double v : w) total += v;
        for (std::size_t i = 0; i < atoms.size(); ++i) atoms[i].p = w[i] / total;
        auto shuffled = atoms;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const auto h = Hypothesis(FiniteDomain(4, "X"), oracle::random_pattern(4, rng));
        const auto phi = Hypothesis(FiniteDomain(3, "X*"), oracle::random_pattern(3, rng));
        const FiniteDistribution d1(atoms), d2(shuffled);
        CHECK(exact_true_error(h, d1) == doctest::Approx(exact_true_error(h, d2)).epsilon(1e-14));
        CHECK(exact_flag_rate(phi, d1) == doctest::Approx(exact_flag_rate(phi, d2)).epsilon(1e-14));
        double manual = 0.0;
        for (const auto& a : atoms) manual += a.p * zero_one_loss(h(a.triple.x), a.triple.y);
        CHECK(exact_true_error(h, d1) == doctest::Approx(manual).epsilon(1e-14));
        // err <= P[phi = 1] + P[err and phi = 0]
        CHECK(exact_true_error(h, d1) <= exact_flag_rate(phi, d1) + exact_aux_error(h, phi, d1) + 1e-12);
    }
}

TEST_CASE("class JSON round trip")
{
    const FiniteDomain d(4, "X");
    HypothesisClass c(d, {BitSet::from_string("0110"), BitSet::from_string("1000")});
    const auto j = class_to_json(c);
    CHECK(j["domain_size"] == 4);
    CHECK(j["hypotheses"][0] == "0110");
    const auto back = class_from_json(parse_json(j.dump()));
    CHECK(back.patterns() == c.patterns());
}

TEST_CASE("distribution and sample JSON round trip")
{
    using A = FiniteDistribution::Atom;
    const FiniteDistribution dist({A{{0, 1, 0}, 0.5}, A{{2, 0, 1}, 0.5}});
    const auto back = distribution_from_json(parse_json(distribution_to_json(dist).dump()));
    REQUIRE(back.size() == 2);
    CHECK(back.support()[1].triple == Triple{2, 0, 1});
    TripleSample s{{Triple{1, 2, 1}, Triple{0, 0, 0}}};
    const auto sb = sample_from_json(sample_to_json(s));
    CHECK(sb.triples == s.triples);
}

TEST_CASE("malformed JSON reports line and column")
{
    try {
        parse_json("{\n  \"domain_size\": 3,\n  \"hypotheses\": [\"010\" \"1\"]\n}", "bad.json");
        FAIL("expected InputError");
    } catch (const InputError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("bad.json") != std::string::npos);
        CHECK(msg.find("line 3") != std::string::npos);
    }
}

TEST_CASE("class JSON errors are input errors")
{
    CHECK_THROWS_AS(class_from_json(parse_json(R"({"domain_size": 3, "hypotheses": ["01"]})")), InputError);
    CHECK_THROWS_AS(class_from_json(parse_json(R"({"hypotheses": ["01"]})")), InputError);
    CHECK_THROWS_AS(class_from_json(parse_json(R"({"domain_size": 2, "hypotheses": []})")), InputError);
    CHECK_THROWS_AS(read_json_file("/nonexistent/dir/x.json"), IoError);
}
