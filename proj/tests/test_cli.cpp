#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "priverm/cli.hpp"
#include "priverm/json_io.hpp"

using namespace priverm;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return Run{code, out.str(), err.str()};
}

class Scratch {
public:
    explicit Scratch(const std::string& name)
        : dir_(std::filesystem::temp_directory_path() / ("priverm_cli_" + name))
    {
        std::filesystem::remove_all(dir_);
        std::filesystem::create_directories(dir_);
    }
    ~Scratch() { std::filesystem::remove_all(dir_); }

    std::string write(const std::string& file, const std::string& text) const
    {
        std::ofstream(dir_ / file) << text;
        return (dir_ / file).string();
    }
    std::string path(const std::string& file) const { return (dir_ / file).string(); }

private:
    std::filesystem::path dir_;
};

}  // namespace

TEST_CASE("vc subcommand on small classes")
{
    Scratch s("vc");
    const auto h1 = s.write("h1.json", R"({"domain_size": 3, "hypotheses": ["000", "001", "100", "110"]})");
    auto r = run({"vc", h1});
    REQUIRE(r.code == kExitOk);
    const auto j = Json::parse(r.out);
    CHECK(j["vc"] == 1);
    CHECK(j["exact"] == true);

    const auto full = s.write("full.json",
                              R"({"domain_size": 4, "hypotheses": ["0000","0001","0010","0011","0100","0101",
                              "0110","0111","1000","1001","1010","1011","1100","1101","1110","1111"]})");
    CHECK(Json::parse(run({"vc", full}).out)["vc"] == 4);
    CHECK(Json::parse(run({"vc", full, "--mode", "lower_bound", "--witness", "0,2,3"}).out)["vc"] >= 3);
    CHECK(run({"vc", full, "--budget", "1"}).code == kExitBudget);
}

TEST_CASE("malformed JSON is an input error that names line and column")
{
    Scratch s("bad");
    const auto bad = s.write("bad.json", "{\n  \"domain_size\": 3,\n  \"hypotheses\": [\"000\" \"1\"]\n}");
    const auto r = run({"vc", bad});
    CHECK(r.code == kExitInputError);
    CHECK(r.err.find("line 3") != std::string::npos);
    CHECK(r.err.find("column") != std::string::npos);
}

TEST_CASE("exit codes for missing files and unknown flags")
{
    CHECK(run({"vc", "/nonexistent/dir/h.json"}).code == kExitIo);
    CHECK(run({"vc", "--no-such-flag"}).code == kExitInputError);
    CHECK(run({}).code == kExitInputError);
    CHECK(run({"bounds", "--m", "10", "--delta", "2"}).code == kExitInputError);
}

TEST_CASE("verify theorem1 d=1 passes and reports the Eq.(5) mismatch")
{
    const auto r = run({"--format", "table", "verify", "--suite", "theorem1", "--d", "1"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("suite theorem1: PASS") != std::string::npos);
    CHECK(r.out.find("REFUTED") != std::string::npos);
}

TEST_CASE("verify claims reports the d=2 refutation")
{
    const auto r = run({"verify", "--suite", "claims", "--d", "2"});
    CHECK(r.code == kExitOk);
    const auto j = Json::parse(r.out);
    CHECK(j["pass"] == true);
    bool found = false;
    for (const auto& c : j["checks"])
        if (c["name"].get<std::string>().find("predicted-by-Eq.(5)=4 measured=6") != std::string::npos)
            found = c["measured"] == "REFUTED";
    CHECK(found);
}

TEST_CASE("verify lemma1, lemma2 and theorem2 suites pass")
{
    for (const char* suite : {"lemma1", "lemma2", "theorem2"}) {
        const auto r = run({"verify", "--suite", suite, "--d", "2", "--dstar", "2"});
        CHECK_MESSAGE(r.code == kExitOk, suite);
    }
}

TEST_CASE("bounds subcommand reproduces the B_ERM example")
{
    const auto r = run({"bounds", "--m", "99", "--delta", "0.07326255555493671", "--d", "2", "--dstar", "1", "--d-a", "2",
                        "--eps-erm", "0.1", "--eps-ig", "0.05", "--eps-u", "0.05"});
    REQUIRE(r.code == kExitOk);
    const auto j = Json::parse(r.out);
    CHECK(j["b_erm"]["total"].get<double>() == doctest::Approx(1.3068).epsilon(1e-3));
    CHECK(j["sufficient_condition"]["applicable"] == true);
    CHECK(j["necessary_condition"]["alpha_threshold"].get<double>() == doctest::Approx(2.2469796037));

    const auto t = run({"--format", "csv", "bounds", "--m", "50", "--d", "1", "--dstar", "1", "--d-a", "1"});
    CHECK(t.code == kExitOk);
    CHECK(t.out.find("b_erm.total") != std::string::npos);
}

TEST_CASE("construct and erm round trip through files")
{
    Scratch s("erm");
    REQUIRE(run({"--output-dir", s.path("t1"), "construct", "--kind", "theorem1", "--d", "1"}).code == kExitOk);
    const auto sample = s.write("s.json", R"({"triples": [{"x": 0, "xstar": 0, "y": 1},
        {"x": 1, "xstar": 1, "y": 0}, {"x": 2, "xstar": 2, "y": 1}]})");
    const auto r = run({"erm", "--classes", s.path("t1/h.json"), s.path("t1/phi.json"), "--sample", sample});
    REQUIRE(r.code == kExitOk);
    const auto j = Json::parse(r.out);
    CHECK(j["m"] == 3);
    CHECK(j["lemma4"]["holds"] == true);
    CHECK(j["privileged"]["objective"].get<double>() <= j["erm"]["empirical_error"].get<double>() + 1e-12);

    const auto b = run({"erm", "--classes", s.path("t1/h.json"), s.path("t1/phi.json"), "--sample", sample,
                        "--strategy", "pair_scan", "--budget", "1"});
    CHECK(b.code == kExitBudget);
}

TEST_CASE("sim writes a run directory that reruns identically")
{
    Scratch s("sim");
    const auto cfg = s.write("cfg.json", R"({
        "classes": {"construction": "theorem1", "d": 1},
        "distribution": {"support": [{"x": 0, "xstar": 0, "y": 0, "p": 0.5},
                                     {"x": 2, "xstar": 1, "y": 1, "p": 0.5}]},
        "m": 10, "trials": 40, "seed": 3})");
    const auto r = run({"--threads", "1", "--output-dir", s.path("run"), "sim", "--config", cfg});
    REQUIRE(r.code == kExitOk);
    for (const char* f : {"config.json", "trials.csv", "summary.json", "manifest.json"})
        CHECK(std::filesystem::exists(s.path(std::string("run/") + f)));
    const auto r2 = run({"--threads", "4", "--output-dir", s.path("rerun"), "sim", "--config",
                         s.path("run/manifest.json")});
    REQUIRE(r2.code == kExitOk);
    std::ifstream a(s.path("run/trials.csv")), b(s.path("rerun/trials.csv"));
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(!sa.str().empty());
}
