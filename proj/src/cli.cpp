#include "priverm/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>

#include "priverm/bounds.hpp"
#include "priverm/constructions.hpp"
#include "priverm/core.hpp"
#include "priverm/json_io.hpp"
#include "priverm/privileged_erm.hpp"
#include "priverm/simulator.hpp"
#include "priverm/vc_engine.hpp"

namespace priverm {

namespace {

enum class Format { json, csv, table };

struct Globals {
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::string format = "json";
    std::string output_dir;

    Format fmt() const
    {
        if (format == "csv") return Format::csv;
        if (format == "table") return Format::table;
        return Format::json;
    }
    unsigned thread_count() const { return threads ? *threads : default_thread_count(); }
};

// --- output ---

std::string scalar_text(const Json& v)
{
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + scalar_text(v[i]);
        return s;
    }
    return v.dump();
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows)
{
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
        return;
    }
    rows.emplace_back(prefix, scalar_text(j));
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

void emit(const Json& j, Format f, std::ostream& out)
{
    if (f == Format::json) {
        out << j.dump(2) << "\n";
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(j, "", rows);
    if (f == Format::table) {
        std::size_t w = 0;
        for (const auto& r : rows) w = std::max(w, r.first.size());
        for (const auto& r : rows) out << r.first << std::string(w - r.first.size() + 2, ' ') << r.second << "\n";
        return;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) out << (i ? "," : "") << csv_field(rows[i].first);
    out << "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) out << (i ? "," : "") << csv_field(rows[i].second);
    out << "\n";
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write " + path.string());
    f << text;
    if (!f) throw IoError("write failed for " + path.string());
}

void ensure_dir(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

std::string bits_of(const Hypothesis& h) { return h.bits().to_string(); }

Json vc_report_to_json(const VcReport& r)
{
    Json j;
    j["vc"] = r.vc;
    j["exact"] = r.exact;
    j["witness"] = r.witness;
    j["levels"] = r.shattered_count_by_level;
    j["nodes"] = r.nodes;
    j["sauer_lower_bound"] = r.sauer_lower_bound;
    j["log2_upper_bound"] = r.log2_upper_bound;
    return j;
}

Json legend(const FiniteDomain& d, const std::string& prefix)
{
    Json j = Json::object();
    const auto names = point_names(d, prefix);
    for (std::size_t i = 0; i < names.size(); ++i) j[std::to_string(i)] = names[i];
    return j;
}

std::vector<PointIndex> parse_index_list(const std::string& s)
{
    std::vector<PointIndex> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            std::size_t pos = 0;
            const unsigned long v = std::stoul(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            out.push_back(static_cast<PointIndex>(v));
        } catch (const std::logic_error&) {
            throw InputError("bad point index \"" + tok + "\"");
        }
    }
    return out;
}

// --- vc ---

struct VcArgs {
    std::string class_file;
    std::string mode = "exact";
    std::uint64_t budget = 0;
    std::string witness;
};

int cmd_vc(const VcArgs& a, const Globals& g, std::ostream& out)
{
    const auto cls = class_from_json(read_json_file(a.class_file));
    VcOptions o;
    o.mode = a.mode == "exact" ? VcMode::exact : VcMode::lower_bound_only;
    o.budget = a.budget;
    o.threads = g.thread_count();
    if (!a.witness.empty()) o.witness = parse_index_list(a.witness);
    const auto r = vc_dimension(cls, o);
    emit(vc_report_to_json(r), g.fmt(), out);
    if (o.mode == VcMode::exact && !r.exact) return kExitBudget;
    return kExitOk;
}

// --- construct ---

struct ConstructArgs {
    std::string kind = "theorem1";
    std::size_t d = 1;
    std::size_t dstar = 1;
    std::string phi_file;
    std::size_t phi_full = 8;
    double eps = 0.1;
    double delta = 0.005;
    std::string heavy_side;
    std::string distribution_file;
    std::size_t m = 20;
};

int cmd_construct(const ConstructArgs& a, const Globals& g, std::ostream& out)
{
    Json j;
    j["kind"] = a.kind;
    std::vector<std::pair<std::string, Json>> files;
    if (a.kind == "theorem1" || a.kind == "lemma1") {
        ClassPair p = a.kind == "theorem1" ? construct_theorem1(a.d) : [&] {
            auto l = construct_lemma1_tight(a.d, a.dstar);
            return ClassPair{std::move(l.h), std::move(l.j)};
        }();
        j["h"] = class_to_json(p.h);
        j[a.kind == "theorem1" ? "phi" : "j"] = class_to_json(p.phi);
        j["legend"] = {{"x", legend(p.h.domain(), "x")}, {"xstar", legend(p.phi.domain(), "x*")}};
        if (a.kind == "theorem1") j["witness"] = theorem1_witness(a.d);
        files = {{"h.json", j["h"]}, {a.kind == "theorem1" ? "phi.json" : "j.json", j[a.kind == "theorem1" ? "phi" : "j"]}};
    } else if (a.kind == "theorem5") {
        const Json spec = a.phi_file.empty() ? Json{{"construction", "full"}, {"size", a.phi_full}} : Json(a.phi_file);
        const auto phi = class_spec_from_json(spec, ".", "X*");
        std::vector<Label> hs;
        for (char c : a.heavy_side) {
            if (c != '0' && c != '1') throw InputError("heavy side must be a 0/1 string");
            hs.push_back(static_cast<Label>(c - '0'));
        }
        const auto c = construct_theorem5_family(phi, a.eps, a.delta, hs);
        j["phi"] = class_to_json(phi);
        j["alpha"] = c.family.alpha;
        j["dstar"] = c.family.dstar;
        j["dstar_used"] = c.family.dstar_used;
        Json pairs = Json::array();
        for (const auto& [x, y] : c.family.pairs) pairs.push_back({x, y});
        j["pairs"] = pairs;
        j["heavy_side"] = c.family.heavy_side;
        j["phi_star"] = bits_of(c.phi_star);
        j["phi_star_index"] = c.phi_star_index;
        j["distribution"] = distribution_to_json(c.distribution);
        j["legend"] = {{"xstar", legend(phi.domain(), "x*")}};
        files = {{"phi.json", j["phi"]}, {"distribution.json", j["distribution"]}};
    } else if (a.kind == "sample") {
        if (a.distribution_file.empty()) throw InputError("--kind sample needs --distribution");
        const auto dist = distribution_from_json(read_json_file(a.distribution_file));
        const auto s = sample(dist, a.m, g.seed.value_or(1));
        j["seed"] = g.seed.value_or(1);
        j["sample"] = sample_to_json(s);
        files = {{"sample.json", j["sample"]}};
    } else {
        throw InputError("unknown construction kind \"" + a.kind + "\"");
    }
    if (!g.output_dir.empty()) {
        ensure_dir(g.output_dir);
        for (const auto& [name, body] : files) write_file(std::filesystem::path(g.output_dir) / name, body.dump(2) + "\n");
    }
    emit(j, g.fmt(), out);
    return kExitOk;
}

// --- erm ---

struct ErmArgs {
    std::vector<std::string> classes;
    std::string sample_file;
    double c = 1.0;
    std::string strategy = "auto";
    std::uint64_t budget = 0;
};

int cmd_erm(const ErmArgs& a, const Globals& g, std::ostream& out)
{
    if (a.classes.size() != 2) throw InputError("--classes takes exactly two files: H and Phi");
    const auto h = class_from_json(read_json_file(a.classes[0]), "X");
    const auto phi = class_from_json(read_json_file(a.classes[1]), "X*");
    const auto s = sample_from_json(read_json_file(a.sample_file));
    PrivilegedErmOptions o;
    o.c = Rational::from_double(a.c);
    o.node_budget = a.budget;
    o.strategy = a.strategy == "pair_scan"          ? ErmStrategy::pair_scan
                 : a.strategy == "branch_and_bound" ? ErmStrategy::branch_and_bound
                                                    : ErmStrategy::automatic;
    const auto std_r = erm_standard(h, s);
    const auto pr = erm_privileged(h, phi, s, o);
    Json j;
    j["m"] = s.m();
    j["C"] = o.c.value();
    j["erm"] = {{"h", bits_of(std_r.h)},
                {"h_index", std_r.h_index},
                {"empirical_error", std_r.empirical_error},
                {"error_count", std_r.error_count},
                {"minimizer_count", std_r.minimizer_count}};
    j["privileged"] = {{"h", bits_of(pr.h)},
                       {"phi", bits_of(pr.phi)},
                       {"h_index", pr.h_index},
                       {"phi_index", pr.phi_index},
                       {"objective", pr.objective},
                       {"objective_sum", pr.objective_sum},
                       {"ignored_count", pr.ignored_count},
                       {"unexplained_count", pr.unexplained_count},
                       {"eps_ig", pr.ignored_weight},
                       {"eps_u", pr.unexplained_error},
                       {"nodes", pr.nodes},
                       {"branch_and_bound", pr.used_branch_and_bound}};
    j["lemma4"] = {{"eps_erm", std_r.empirical_error},
                   {"eps_ig_plus_eps_u", pr.ignored_weight + pr.unexplained_error},
                   {"holds", std_r.error_count <= pr.ignored_count + pr.unexplained_count}};
    emit(j, g.fmt(), out);
    return kExitOk;
}

// --- bounds ---

struct BoundsArgs {
    std::string config;
    std::optional<std::size_t> m, d, dstar, d_a;
    std::optional<double> delta, eps_erm, eps_ig, eps_u;
    std::optional<std::string> log_base;
};

int cmd_bounds(const BoundsArgs& a, const Globals& g, std::ostream& out)
{
    BoundInputs in;
    std::string base = "natural";
    if (!a.config.empty()) {
        const Json c = read_json_file(a.config);
        auto num = [&](const char* k, auto& field) {
            if (!c.contains(k)) return;
            try {
                field = c.at(k).get<std::decay_t<decltype(field)>>();
            } catch (const nlohmann::json::exception&) {
                throw InputError(std::string("bounds config field \"") + k + "\" has the wrong type");
            }
        };
        num("m", in.m);
        num("delta", in.delta);
        num("d", in.d);
        num("dstar", in.dstar);
        num("d_a", in.d_a);
        num("eps_erm", in.eps_erm);
        num("eps_ig", in.eps_ig);
        num("eps_u", in.eps_u);
        num("log_base", base);
    }
    if (a.m) in.m = *a.m;
    if (a.d) in.d = *a.d;
    if (a.dstar) in.dstar = *a.dstar;
    if (a.d_a) in.d_a = *a.d_a;
    if (a.delta) in.delta = *a.delta;
    if (a.eps_erm) in.eps_erm = *a.eps_erm;
    if (a.eps_ig) in.eps_ig = *a.eps_ig;
    if (a.eps_u) in.eps_u = *a.eps_u;
    if (a.log_base) base = *a.log_base;
    if (base != "natural" && base != "two") throw InputError("log_base must be \"natural\" or \"two\"");
    in.log_base = base == "two" ? LogBase::two : LogBase::natural;
    in.validate();

    const auto e = bound_erm_terms(in);
    const auto p = bound_pr_terms(in);
    const auto iv = d_a_interval(in.d, in.dstar);
    Json j;
    j["inputs"] = {{"m", in.m},          {"delta", in.delta},   {"d", in.d},         {"dstar", in.dstar},
                   {"d_a", in.d_a},      {"eps_erm", in.eps_erm}, {"eps_ig", in.eps_ig}, {"eps_u", in.eps_u},
                   {"log_base", base}};
    j["b_erm"] = {{"eps_erm", e.eps_erm}, {"r_slow", e.slow}, {"r_fast", e.fast}, {"total", e.total},
                  {"vacuous", e.vacuous}};
    j["b_pr"] = {{"eps_ig", p.eps_ig},         {"eps_u", p.eps_u},         {"r_slow_ig", p.slow_ig},
                 {"r_slow_u", p.slow_u},       {"r_fast_dstar", p.fast_dstar}, {"r_fast_d_a", p.fast_da},
                 {"total", p.total},           {"vacuous", p.vacuous}};
    j["pr_leq_erm"] = p.total <= e.total;
    j["d_a_interval"] = {{"lower", iv.lower}, {"upper", iv.upper}};
    j["lemma2_consistent"] = in.lemma2_consistent();
    j["lemma4_consistent"] = in.lemma4_consistent();
    if (std::abs(in.eps_erm - (in.eps_ig + in.eps_u)) <= kExactPremiseTolerance) {
        const auto s = sufficient_condition(in);
        j["sufficient_condition"] = {{"applicable", true}, {"holds", s.holds}, {"lhs", s.lhs}, {"rhs", s.rhs}};
    } else {
        j["sufficient_condition"] = {{"applicable", false}};
    }
    if (in.d >= 1) {
        const auto n = necessary_condition(in);
        j["necessary_condition"] = {{"a_constant", n.a_constant},
                                    {"lemma5_lhs", n.lemma5_lhs},
                                    {"lemma5_rhs", n.lemma5_rhs},
                                    {"lemma5_holds", n.lemma5_holds},
                                    {"alpha", n.alpha},
                                    {"alpha_threshold", n.alpha_threshold},
                                    {"alpha_within_threshold", n.alpha_within_threshold},
                                    {"asymptotic_alpha", n.asymptotic_alpha}};
    }
    emit(j, g.fmt(), out);
    return kExitOk;
}

// --- sim ---

struct SimArgs {
    std::string config;
    std::optional<std::size_t> trials;
};

int cmd_sim(const SimArgs& a, const Globals& g, std::ostream& out)
{
    const Json cfg_json = read_json_file(a.config);
    const std::filesystem::path base = std::filesystem::path(a.config).parent_path();
    const Json& body = cfg_json.contains("config") && cfg_json["config"].is_object() ? cfg_json["config"] : cfg_json;
    const bool t5 = body.value("experiment", std::string("comparison")) == "theorem5";
    const auto default_dir = [&](std::uint64_t seed) { return "run_" + std::to_string(seed); };

    if (t5) {
        auto c = theorem5_config_from_json(cfg_json, base);
        if (g.seed) c.seed = *g.seed, c.echo["seed"] = *g.seed;
        if (a.trials) c.trials = *a.trials, c.echo["trials"] = *a.trials;
        if (c.trials < 1) throw InputError("trials must be at least 1");
        c.threads = g.thread_count();
        if (!g.output_dir.empty()) c.output_dir = g.output_dir;
        if (c.output_dir.empty()) c.output_dir = default_dir(c.seed);
        const auto rep = run_theorem5_sweep(c);
        persist_theorem5(rep, c);
        Json j = theorem5_report_to_json(rep);
        j["run_dir"] = c.output_dir.string();
        emit(j, g.fmt(), out);
        return kExitOk;
    }
    auto c = experiment_config_from_json(cfg_json, base);
    if (g.seed) c.seed = *g.seed, c.echo["seed"] = *g.seed;
    if (a.trials) c.trials = *a.trials, c.echo["trials"] = *a.trials;
    if (c.trials < 1) throw InputError("trials must be at least 1");
    c.threads = g.thread_count();
    if (!g.output_dir.empty()) c.output_dir = g.output_dir;
    if (c.output_dir.empty()) c.output_dir = default_dir(c.seed);
    const auto res = run_comparison(c);
    persist_run(res.records, res.summary, c);
    if (g.fmt() == Format::csv) {
        out << trials_to_csv(res.records);
        return kExitOk;
    }
    Json j = summary_to_json(res.summary);
    j["run_dir"] = c.output_dir.string();
    emit(j, g.fmt(), out);
    return kExitOk;
}

// --- verify ---

struct Check {
    std::string name;
    std::string expected;
    std::string measured;
    bool pass = false;
};

struct VerifyArgs {
    std::string suite;
    std::size_t d = 1;
    std::size_t dstar = 1;
    std::uint64_t budget = 0;
    std::size_t exact_max_d = 2;
};

std::size_t exact_vc(const HypothesisClass& cls, const VerifyArgs& a, const Globals& g, const std::string& what)
{
    VcOptions o;
    o.budget = a.budget;
    o.threads = g.thread_count();
    const auto r = vc_dimension(cls, o);
    if (!r.exact) throw BudgetExhausted("exact VC of " + what + " exceeded the node budget");
    return r.vc;
}

Check eq_check(const std::string& name, std::size_t expected, std::size_t measured)
{
    return {name, std::to_string(expected), std::to_string(measured), expected == measured};
}

// Measured VC(F) for the theorem-1 classes: exact when d is small enough,
// otherwise the verified witness gives 3d as a lower bound.
struct FMeasure {
    std::size_t value = 0;
    bool exact = false;
    bool witness_shattered = false;
};

FMeasure measure_theorem1_f(const ClassPair& p, std::size_t d, const VerifyArgs& a, const Globals& g)
{
    const auto f = build_f_class(p.h, p.phi);
    FMeasure m;
    const auto w = theorem1_witness(d);
    m.witness_shattered = is_shattered(f, w);
    if (d <= a.exact_max_d) {
        m.value = exact_vc(f, a, g, "F");
        m.exact = true;
    } else {
        m.value = m.witness_shattered ? w.size() : 0;
    }
    return m;
}

std::vector<Check> suite_theorem1(const VerifyArgs& a, const Globals& g)
{
    const auto p = construct_theorem1(a.d);
    std::vector<Check> out;
    out.push_back(eq_check("VC(H)", a.d, exact_vc(p.h, a, g, "H")));
    out.push_back(eq_check("VC(Phi)", a.d, exact_vc(p.phi, a, g, "Phi")));
    const auto f = measure_theorem1_f(p, a.d, a, g);
    out.push_back({"witness of size 3d shattered by F", "true", f.witness_shattered ? "true" : "false",
                   f.witness_shattered});
    if (f.exact)
        out.push_back(eq_check("VC(F)", 3 * a.d, f.value));
    else
        out.push_back({"VC(F) >= 3d", ">= " + std::to_string(3 * a.d), ">= " + std::to_string(f.value),
                       f.value >= 3 * a.d});
    out.push_back({"Eq.(5) prediction d + d* = 2d", std::to_string(2 * a.d) + " (refuted)",
                   std::to_string(f.value) + (f.value != 2 * a.d ? " REFUTED" : " CONFIRMED"), f.value != 2 * a.d});
    return out;
}

std::vector<Check> suite_claims(const VerifyArgs& a, const Globals& g)
{
    std::vector<Check> out;
    const auto p = construct_theorem1(a.d);
    const std::size_t dh = exact_vc(p.h, a, g, "H");
    const std::size_t dp = exact_vc(p.phi, a, g, "Phi");
    const auto f = measure_theorem1_f(p, a.d, a, g);
    const std::size_t predicted = dh + dp;
    out.push_back({"d=" + std::to_string(a.d) + " predicted-by-Eq.(5)=" + std::to_string(predicted) +
                       " measured=" + std::to_string(f.value) + (f.exact ? "" : " (lower bound)"),
                   "REFUTED", f.value != predicted ? "REFUTED" : "CONFIRMED", f.value != predicted});
    return out;
}

std::vector<Check> suite_lemma1(const VerifyArgs& a, const Globals& g)
{
    const auto l = construct_lemma1_tight(a.d, a.dstar);
    std::vector<Check> out;
    const std::size_t dh = exact_vc(l.h, a, g, "H");
    const std::size_t dj = exact_vc(l.j, a, g, "J");
    out.push_back(eq_check("VC(H)", a.d, dh));
    out.push_back(eq_check("VC(J)", a.dstar, dj));
    const std::size_t du = exact_vc(union_class(l.h, l.j), a, g, "H u J");
    out.push_back(eq_check("VC(H u J) = d + d* + 1", a.d + a.dstar + 1, du));
    out.push_back({"VC(H u J) <= VC(H) + VC(J) + 1", "<= " + std::to_string(dh + dj + 1), std::to_string(du),
                   du <= dh + dj + 1});
    return out;
}

std::vector<std::pair<std::string, ClassPair>> instances(const VerifyArgs& a)
{
    std::vector<std::pair<std::string, ClassPair>> v;
    if (a.d <= 2) v.emplace_back("theorem1(d=" + std::to_string(a.d) + ")", construct_theorem1(a.d));
    auto l = construct_lemma1_tight(a.d, a.dstar);
    v.emplace_back("lemma1(d=" + std::to_string(a.d) + ",d*=" + std::to_string(a.dstar) + ")",
                   ClassPair{std::move(l.h), std::move(l.j)});
    return v;
}

std::vector<Check> suite_lemma2(const VerifyArgs& a, const Globals& g)
{
    std::vector<Check> out;
    for (const auto& [name, p] : instances(a)) {
        const std::size_t d = exact_vc(p.h, a, g, "H");
        const std::size_t ds = exact_vc(p.phi, a, g, "Phi");
        if (d <= 1 || ds <= 1) {
            out.push_back({name + ": d, d* > 1", "true", "false (skipped)", true});
            continue;
        }
        const std::size_t da = exact_vc(build_aux_class(p.h, p.phi), a, g, "aux class");
        out.push_back({name + ": d_a >= d + d* - 2", ">= " + std::to_string(d + ds - 2), std::to_string(da),
                       da + 2 >= d + ds});
        const auto w = construct_lemma2_witness(p.h, p.phi);
        out.push_back({name + ": witness of size d + d* - 2 shattered", std::to_string(d + ds - 2),
                       std::to_string(w.points.size()) + (w.verified ? " shattered" : " not shattered"),
                       w.verified && w.points.size() == d + ds - 2});
    }
    return out;
}

std::vector<Check> suite_theorem2(const VerifyArgs& a, const Globals& g)
{
    std::vector<Check> out;
    for (const auto& [name, p] : instances(a)) {
        const std::size_t d = exact_vc(p.h, a, g, "H");
        const std::size_t ds = exact_vc(p.phi, a, g, "Phi");
        const double upper = d_a_interval(d, ds).upper;
        char ub[32];
        std::snprintf(ub, sizeof ub, "<= %.4f", upper);
        const std::size_t df = exact_vc(build_f_class(p.h, p.phi), a, g, "F");
        out.push_back({name + ": VC(F) <= 4 log2(4e)(d + d* + 1)", ub, std::to_string(df), df <= upper});
        const std::size_t da = exact_vc(build_aux_class(p.h, p.phi), a, g, "aux class");
        out.push_back({name + ": d_a <= 4 log2(4e)(d + d* + 1)", ub, std::to_string(da), da <= upper});
    }
    return out;
}

int cmd_verify(const VerifyArgs& a, const Globals& g, std::ostream& out)
{
    std::vector<Check> checks;
    if (a.suite == "theorem1")
        checks = suite_theorem1(a, g);
    else if (a.suite == "lemma1")
        checks = suite_lemma1(a, g);
    else if (a.suite == "lemma2")
        checks = suite_lemma2(a, g);
    else if (a.suite == "theorem2")
        checks = suite_theorem2(a, g);
    else
        checks = suite_claims(a, g);
    bool all = true;
    for (const auto& c : checks) all = all && c.pass;

    if (g.fmt() == Format::json) {
        Json j;
        j["suite"] = a.suite;
        j["d"] = a.d;
        j["dstar"] = a.dstar;
        Json arr = Json::array();
        for (const auto& c : checks)
            arr.push_back({{"name", c.name}, {"expected", c.expected}, {"measured", c.measured}, {"pass", c.pass}});
        j["checks"] = arr;
        j["pass"] = all;
        out << j.dump(2) << "\n";
    } else if (g.fmt() == Format::csv) {
        out << "name,expected,measured,pass\n";
        for (const auto& c : checks)
            out << csv_field(c.name) << "," << csv_field(c.expected) << "," << csv_field(c.measured) << ","
                << (c.pass ? "PASS" : "FAIL") << "\n";
    } else {
        for (const auto& c : checks)
            out << (c.pass ? "PASS  " : "FAIL  ") << c.name << ": " << c.measured << " (expected " << c.expected
                << ")\n";
        out << "suite " << a.suite << ": " << (all ? "PASS" : "FAIL") << "\n";
    }
    return all ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Privileged-information ERM toolkit: VC dimensions, solvers, bounds and experiments", "priverm"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "Master seed");
    app.add_option("--threads", g.threads, "Worker threads (default: PRIVERM_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--output-dir", g.output_dir, "Directory for run artifacts");

    std::function<int()> action;

    VcArgs vc;
    auto* s_vc = app.add_subcommand("vc", "VC dimension of a class file");
    s_vc->add_option("class", vc.class_file, "Class JSON file")->required();
    s_vc->add_option("--mode", vc.mode, "exact or lower_bound")->check(CLI::IsMember({"exact", "lower_bound"}));
    s_vc->add_option("--budget", vc.budget, "Candidate-set budget, 0 = unlimited");
    s_vc->add_option("--witness", vc.witness, "Comma-separated point indices to verify (lower_bound mode)");
    s_vc->callback([&] { action = [&] { return cmd_vc(vc, g, out); }; });

    ConstructArgs co;
    auto* s_co = app.add_subcommand("construct", "Emit a construction in the core JSON formats");
    s_co->add_option("--kind", co.kind)->check(CLI::IsMember({"theorem1", "lemma1", "theorem5", "sample"}));
    s_co->add_option("--d", co.d);
    s_co->add_option("--dstar", co.dstar);
    s_co->add_option("--phi", co.phi_file, "Phi class file for theorem5 (default: full class on --phi-full points)");
    s_co->add_option("--phi-full", co.phi_full);
    s_co->add_option("--eps", co.eps);
    s_co->add_option("--delta", co.delta);
    s_co->add_option("--heavy-side", co.heavy_side, "0/1 string, one entry per pair");
    s_co->add_option("--distribution", co.distribution_file, "Distribution file for --kind sample");
    s_co->add_option("--m", co.m, "Sample size for --kind sample");
    s_co->callback([&] { action = [&] { return cmd_construct(co, g, out); }; });

    ErmArgs ea;
    auto* s_erm = app.add_subcommand("erm", "Standard and privileged ERM on a sample");
    s_erm->add_option("--classes", ea.classes, "H and Phi class files")->required()->expected(2);
    s_erm->add_option("--sample", ea.sample_file, "Sample file")->required();
    s_erm->add_option("--C", ea.c, "Weight C > 0 (dyadic)");
    s_erm->add_option("--strategy", ea.strategy)->check(CLI::IsMember({"auto", "pair_scan", "branch_and_bound"}));
    s_erm->add_option("--budget", ea.budget, "Node budget, 0 = unlimited");
    s_erm->callback([&] { action = [&] { return cmd_erm(ea, g, out); }; });

    BoundsArgs ba;
    auto* s_b = app.add_subcommand("bounds", "Itemized B_ERM, B_PR and condition checks");
    s_b->add_option("--config", ba.config, "BoundInputs JSON (flags override)");
    s_b->add_option("--m", ba.m);
    s_b->add_option("--delta", ba.delta);
    s_b->add_option("--d", ba.d);
    s_b->add_option("--dstar", ba.dstar);
    s_b->add_option("--d-a", ba.d_a);
    s_b->add_option("--eps-erm", ba.eps_erm);
    s_b->add_option("--eps-ig", ba.eps_ig);
    s_b->add_option("--eps-u", ba.eps_u);
    s_b->add_option("--log-base", ba.log_base)->check(CLI::IsMember({"natural", "two"}));
    s_b->callback([&] { action = [&] { return cmd_bounds(ba, g, out); }; });

    SimArgs sa;
    auto* s_sim = app.add_subcommand("sim", "Run an experiment config (or rerun a manifest)");
    s_sim->add_option("--config", sa.config, "Experiment config or manifest.json")->required();
    s_sim->add_option("--trials", sa.trials);
    s_sim->callback([&] { action = [&] { return cmd_sim(sa, g, out); }; });

    VerifyArgs va;
    auto* s_v = app.add_subcommand("verify", "Run a verification suite");
    s_v->add_option("--suite", va.suite)
        ->required()
        ->check(CLI::IsMember({"theorem1", "lemma1", "lemma2", "theorem2", "claims"}));
    s_v->add_option("--d", va.d)->check(CLI::Range(1, static_cast<int>(kMaxTheorem1D)));
    s_v->add_option("--dstar", va.dstar)->check(CLI::Range(1, 8));
    s_v->add_option("--budget", va.budget, "VC node budget, 0 = unlimited");
    s_v->add_option("--exact-max-d", va.exact_max_d, "Largest d for which VC(F) is computed exactly");
    s_v->callback([&] { action = [&] { return cmd_verify(va, g, out); }; });

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInputError;
    }

    try {
        return action ? action() : kExitInputError;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const nlohmann::json::exception& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const BudgetExhausted& e) {
        err << "budget exhausted: " << e.what() << "\n";
        return kExitBudget;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitVerifyFailed;
    }
}

}  // namespace priverm
