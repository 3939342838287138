#include "priverm/json_io.hpp"

#include <fstream>
#include <sstream>

namespace priverm {

namespace {

std::string line_column(const std::string& text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

template <typename T>
T get_field(const Json& j, const char* key, const char* what)
{
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string(what) + ": missing field \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string(what) + ": field \"" + key + "\" has the wrong type");
    }
}

Triple triple_from(const Json& e, const char* what)
{
    const auto x = get_field<long long>(e, "x", what);
    const auto xs = get_field<long long>(e, "xstar", what);
    const auto y = get_field<long long>(e, "y", what);
    if (x < 0 || xs < 0) throw InputError(std::string(what) + ": negative point index");
    if (y != 0 && y != 1) throw InputError(std::string(what) + ": label must be 0 or 1");
    return Triple{static_cast<PointIndex>(x), static_cast<PointIndex>(xs), static_cast<Label>(y)};
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source_name)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
        throw InputError(source_name + ": JSON parse error at " + line_column(text, at) + ": " + e.what());
    }
}

Json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path.string());
}

Json class_to_json(const HypothesisClass& cls)
{
    Json j;
    j["domain_size"] = cls.domain().size;
    Json hyps = Json::array();
    for (const auto& p : cls.patterns()) hyps.push_back(p.to_string());
    j["hypotheses"] = std::move(hyps);
    return j;
}

HypothesisClass class_from_json(const Json& j, const std::string& label)
{
    const auto n = get_field<long long>(j, "domain_size", "class");
    if (n < 1) throw InputError("class: domain_size must be at least 1");
    const FiniteDomain domain(static_cast<std::size_t>(n), label);
    if (!j.contains("hypotheses") || !j["hypotheses"].is_array())
        throw InputError("class: \"hypotheses\" must be an array of bit strings");
    std::vector<BitSet> patterns;
    for (const auto& h : j["hypotheses"]) {
        if (!h.is_string()) throw InputError("class: hypotheses must be bit strings");
        const auto s = h.get<std::string>();
        if (s.size() != domain.size)
            throw InputError("class: hypothesis \"" + s + "\" has length " + std::to_string(s.size()) +
                             ", expected " + std::to_string(domain.size));
        try {
            patterns.push_back(BitSet::from_string(s));
        } catch (const std::invalid_argument& e) {
            throw InputError(std::string("class: ") + e.what());
        }
    }
    if (patterns.empty()) throw InputError("class: no hypotheses");
    return HypothesisClass(domain, std::move(patterns));
}

Json distribution_to_json(const FiniteDistribution& dist)
{
    Json sup = Json::array();
    for (const auto& a : dist.support())
        sup.push_back({{"x", a.triple.x}, {"xstar", a.triple.xstar}, {"y", a.triple.y}, {"p", a.p}});
    return Json{{"support", std::move(sup)}};
}

FiniteDistribution distribution_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("support") || !j["support"].is_array())
        throw InputError("distribution: \"support\" must be an array");
    std::vector<FiniteDistribution::Atom> atoms;
    for (const auto& e : j["support"]) {
        FiniteDistribution::Atom a;
        a.triple = triple_from(e, "distribution");
        a.p = get_field<double>(e, "p", "distribution");
        atoms.push_back(a);
    }
    return FiniteDistribution(std::move(atoms));
}

Json sample_to_json(const TripleSample& s)
{
    Json arr = Json::array();
    for (const auto& t : s.triples) arr.push_back({{"x", t.x}, {"xstar", t.xstar}, {"y", t.y}});
    return Json{{"triples", std::move(arr)}};
}

TripleSample sample_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("triples") || !j["triples"].is_array())
        throw InputError("sample: \"triples\" must be an array");
    TripleSample s;
    for (const auto& e : j["triples"]) s.triples.push_back(triple_from(e, "sample"));
    return s;
}

}  // namespace priverm
