#include "adscausal/io.hpp"

#include <charconv>
#include <cmath>
#include <set>

namespace adscausal {

namespace {

void only_keys(const json& j, std::initializer_list<const char*> keys, const std::string& what) {
    if (!j.is_object()) throw std::invalid_argument(what + " must be a JSON object");
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) throw std::invalid_argument("unknown key '" + k + "' in " + what);
}

double number(const json& j, const std::string& what) {
    if (!j.is_number()) throw std::invalid_argument(what + " must be a number");
    double v = j.get<double>();
    if (!std::isfinite(v)) throw std::invalid_argument(what + " must be finite");
    return v;
}

std::vector<double> numbers(const json& j, const std::string& what) {
    if (!j.is_array()) throw std::invalid_argument(what + " must be an array");
    std::vector<double> r;
    for (const auto& e : j) r.push_back(number(e, what));
    return r;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json rational_terms(const Algebra& a, const ElemQ& x) {
    json t = json::array();
    for (std::size_t m = 0; m < a.dim; ++m)
        if (x.c[m] != 0)
            t.push_back({{"m", m}, {"num", x.c[m].get_num().get_str()}, {"den", x.c[m].get_den().get_str()}});
    return t;
}

}  // namespace

json to_json(const PointCoords& p) {
    return {{"alpha", {p.alpha[0], p.alpha[1]}},
            {"nu", {{"pp", p.nu_pp}, {"pm", p.nu_pm}, {"zp", p.nu_0p}, {"pz", p.nu_p0}}},
            {"x", p.x}};
}

PointCoords point_from_json(const json& j) {
    only_keys(j, {"alpha", "nu", "x"}, "point");
    PointCoords p;
    if (j.contains("alpha")) {
        auto al = numbers(j["alpha"], "alpha");
        if (al.size() != 2) throw std::invalid_argument("alpha needs two components");
        p.alpha = {al[0], al[1]};
    }
    if (j.contains("nu")) {
        const json& nu = j["nu"];
        only_keys(nu, {"pp", "pm", "zp", "pz"}, "nu");
        if (nu.contains("pp")) p.nu_pp = number(nu["pp"], "nu.pp");
        if (nu.contains("pm")) p.nu_pm = number(nu["pm"], "nu.pm");
        if (nu.contains("zp")) p.nu_0p = numbers(nu["zp"], "nu.zp");
        if (nu.contains("pz")) p.nu_p0 = numbers(nu["pz"], "nu.pz");
    }
    if (j.contains("x")) p.x = number(j["x"], "x");
    return p;
}

PointCoords parse_point(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("point is not valid JSON: ") + e.what());
    }
    return point_from_json(j);
}

json to_json(const CausalClass& c) {
    json j{{"class", to_string(c.kind)}, {"c", c.c}, {"witness_w2", optional_number(c.witness_w2)}};
    j["branch"] = c.branch ? json(to_string(*c.branch)) : json(nullptr);
    j["type"] = c.type ? json(*c.type == PointType::TypeI ? "I" : "II") : json(nullptr);
    return j;
}

CausalClass class_from_json(const json& j) {
    only_keys(j, {"class", "c", "witness_w2", "branch", "type"}, "classification");
    CausalClass c;
    c.kind = parse_kind(j.at("class").get<std::string>());
    c.c = number(j.at("c"), "c");
    if (j.contains("witness_w2") && !j["witness_w2"].is_null()) c.witness_w2 = number(j["witness_w2"], "witness_w2");
    if (j.contains("branch") && !j["branch"].is_null()) c.branch = parse_branch(j["branch"].get<std::string>());
    if (j.contains("type") && !j["type"].is_null()) {
        auto t = j["type"].get<std::string>();
        if (t == "I") c.type = PointType::TypeI;
        else if (t == "II") c.type = PointType::TypeII;
        else throw std::invalid_argument("unknown point type " + t);
    }
    return c;
}

json structure_dump(const Algebra& a) {
    json j;
    j["n"] = a.n;
    j["labels"] = json::array();
    for (const auto& l : a.labels) j["labels"].push_back(l.str());
    j["brackets"] = json::array();
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t k = i + 1; k < a.dim; ++k) {
            const auto& ts = a.terms(i, k);
            if (ts.empty()) continue;
            json terms = json::array();
            for (const auto& t : ts)
                terms.push_back({{"m", t.m}, {"num", t.v.get_num().get_str()}, {"den", t.v.get_den().get_str()}});
            j["brackets"].push_back({{"i", i}, {"j", k}, {"terms", terms}});
        }
    j["killing"] = json::array();
    for (std::size_t r = 0; r < a.dim; ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < a.dim; ++c) {
            Q v = a.killing(r, c);
            row.push_back(v.get_num().get_str() + "/" + v.get_den().get_str());
        }
        j["killing"].push_back(row);
    }
    j["b_basis"] = json::array();
    for (const auto& e : canonical_bases(a).b_basis)
        j["b_basis"].push_back({{"name", e.name}, {"terms", rational_terms(a, e.x)}});
    return j;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw std::runtime_error("number formatting failed");
    return std::string(buf, end);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        out << cells[i];
    }
    out << '\n';
}

}  // namespace adscausal
