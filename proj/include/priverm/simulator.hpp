#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "priverm/bounds.hpp"
#include "priverm/constructions.hpp"
#include "priverm/core.hpp"
#include "priverm/json_io.hpp"
#include "priverm/privileged_erm.hpp"

namespace priverm {

inline constexpr const char* kArtifactVersion = "1.0.0";

// splitmix64 finalizer applied to master + (index + 1) * golden-ratio step.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index);

// m i.i.d. draws by inverse CDF over the support, driven by mt19937_64.
TripleSample sample(const FiniteDistribution& dist, std::size_t m, std::uint64_t seed);

// Runs fn(i) for i in [0, n) on up to `threads` workers, contiguous chunks.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn);

unsigned default_thread_count();

struct ExperimentConfig {
    HypothesisClass h;
    HypothesisClass phi;
    FiniteDistribution distribution;
    std::size_t m = 50;
    std::size_t trials = 1000;
    double delta = 0.05;
    std::uint64_t seed = 1;
    Rational c{1, 1};
    std::uint64_t erm_budget = 0;
    unsigned threads = 1;
    std::filesystem::path output_dir{};
    // Fully resolved config (inline classes and distribution), echoed into
    // config.json and the manifest.
    Json echo{};
};

struct TrialRecord {
    std::size_t trial = 0;
    bool failed = false;
    double eps_erm = 0.0;
    double eps_ig = 0.0;
    double eps_u = 0.0;
    double true_err_erm = 0.0;
    double true_err_pr = 0.0;
    double b_erm = 0.0;
    double b_pr = 0.0;
    bool covered_erm = false;
    bool covered_pr = false;
    bool sufficient_holds = false;
    bool pr_leq_erm = false;
    // P[phi_hat = 1] and P[h_hat errs and phi_hat = 0]
    double flag_rate = 0.0;
    double aux_error = 0.0;
};

struct ComparisonSummary {
    std::size_t trials = 0;
    std::size_t effective_trials = 0;
    std::size_t failed_trials = 0;
    std::size_t d = 0;
    std::size_t dstar = 0;
    std::size_t d_a = 0;
    double delta = 0.0;
    double coverage_erm = 0.0;
    double coverage_pr = 0.0;
    double mean_true_err_erm = 0.0;
    double mean_true_err_pr = 0.0;
    double mean_b_erm = 0.0;
    double mean_b_pr = 0.0;
    double frac_pr_leq_erm = 0.0;
    double frac_sufficient = 0.0;
    std::size_t lemma4_violations = 0;
    std::size_t decomposition_violations = 0;
};

struct ComparisonResult {
    std::vector<TrialRecord> records;
    ComparisonSummary summary;
};

ExperimentConfig experiment_config_from_json(const Json& j, const std::filesystem::path& base_dir = ".");

ComparisonResult run_comparison(const ExperimentConfig& config);
ComparisonSummary summarize(const std::vector<TrialRecord>& records, std::size_t d, std::size_t dstar,
                            std::size_t d_a, double delta);

Json summary_to_json(const ComparisonSummary& s);
inline constexpr const char* kTrialsCsvHeader =
    "trial,eps_erm,eps_ig,eps_u,true_err_erm,true_err_pr,b_erm,b_pr,covered_erm,covered_pr";
std::string trials_to_csv(const std::vector<TrialRecord>& records);

// Writes config.json, trials.csv, summary.json and manifest.json into
// config.output_dir. Returns the directory.
std::filesystem::path persist_run(const std::vector<TrialRecord>& records, const ComparisonSummary& summary,
                                  const ExperimentConfig& config);

// --- Theorem-5 deviation experiment ---

enum class Theorem5Search { phi_prime, phi };

struct Theorem5Row {
    std::vector<Label> heavy_side;
    std::size_t trials = 0;
    // deviation of phi_hat = argmin of empirical P[phi = 1]
    std::size_t exceed_count = 0;
    double exceed_freq = 0.0;
    double mean_deviation = 0.0;
    // deviation of phi* alone
    double mean_deviation_star = 0.0;
    double exceed_freq_abs_star = 0.0;
    // sup over the search class of P - P_hat
    double exceed_freq_uniform = 0.0;
};

struct Theorem5Report {
    double eps = 0.0;
    double delta = 0.0;
    double alpha = 0.0;
    std::size_t m = 0;
    std::size_t dstar = 0;
    std::size_t dstar_used = 0;
    // (dstar - 1) / (1280 eps^2): the sample size below which the worst-case
    // statement applies.
    double worst_case_sample_size = 0.0;
    bool family_alpha_ok = false;
    bool phi_star_mass_ok = false;
    std::vector<Theorem5Row> rows;
    std::size_t best_row = 0;
    double max_exceed_freq = 0.0;
    bool exceeds_delta = false;
    std::string note;
};

Theorem5Row run_theorem5_experiment(const Theorem5Construction& construction, const HypothesisClass& search_class,
                                    std::size_t m, std::size_t trials, std::uint64_t seed, unsigned threads = 1);

struct Theorem5Config {
    HypothesisClass phi;
    double eps = 0.1;
    double delta = 0.005;
    std::size_t m = 50;
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    Theorem5Search search = Theorem5Search::phi_prime;
    // Try every heavy_side in {0,1}^{dstar/2} instead of only `heavy_side`.
    bool adversarial = true;
    std::vector<Label> heavy_side{};
    unsigned threads = 1;
    std::filesystem::path output_dir{};
    Json echo{};
};

Theorem5Config theorem5_config_from_json(const Json& j, const std::filesystem::path& base_dir = ".");
Theorem5Report run_theorem5_sweep(const Theorem5Config& config);
Json theorem5_report_to_json(const Theorem5Report& r);
std::filesystem::path persist_theorem5(const Theorem5Report& report, const Theorem5Config& config);

// Shared by both experiment kinds: config JSON, classes and distribution
// specs may be given inline, by file, or by construction name.
HypothesisClass class_spec_from_json(const Json& spec, const std::filesystem::path& base_dir, const std::string& label);

}  // namespace priverm

#include "priverm/detail/parallel.hpp"
