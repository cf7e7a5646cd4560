#include "adscausal/cli.hpp"

#include "adscausal/io.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

namespace adscausal {

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Options {
    int n = 3;
    std::string point;
    int samples = 720;
    std::optional<double> tol;
    std::string format;
    std::string out;
    std::uint64_t seed = 0;
    double lo = M_PI / 4, hi = 3 * M_PI / 4;
};

double default_tolerance() {
    const char* env = std::getenv("ADSCAUSAL_TOL");
    if (!env || !*env) return ClassifyOptions{}.tol;
    std::string s(env);
    double v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size() || !(v > 0))
        throw UsageError("ADSCAUSAL_TOL must be a positive number, got '" + s + "'");
    return v;
}

ClassifyOptions classify_options(const Options& o) {
    ClassifyOptions c;
    c.tol = o.tol ? *o.tol : default_tolerance();
    c.seed = o.seed;
    return c;
}

// A point is inline JSON or the path of a file holding it.
PointCoords load_point(const std::string& arg) {
    if (arg.empty()) return {};
    std::size_t i = arg.find_first_not_of(" \t\r\n");
    if (i != std::string::npos && arg[i] == '{') return parse_point(arg);
    std::ifstream f(arg);
    if (!f) throw UsageError("cannot read point file " + arg);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_point(ss.str());
}

std::string cell(const std::vector<double>& roots, std::size_t i) {
    return i < roots.size() ? format_double(roots[i]) : std::string();
}

// Runs f(i) for i < count over hardware threads; results keep their index.
template <class R, class F>
std::vector<R> parallel_map(std::size_t count, F f) {
    std::vector<R> out(count);
    std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, std::max<std::size_t>(count, 1));
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += workers) out[i] = f(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

int run_verify(const Options& o, std::ostream& out) {
    json reports = json::array();
    std::size_t failures = 0;
    for (int n = 2; n <= o.n; ++n) {
        const Algebra& a = *algebra(n);
        Report r;
        r.append(verify_structure(a), "structure: ");
        r.append(verify_reductive(a, o.seed), "reductive: ");
        failures += r.failures();
        json j = r.to_json();
        j["n"] = n;
        reports.push_back(j);
    }
    out << json{{"reports", reports}, {"failures", failures}}.dump(2) << '\n';
    return failures ? 1 : 0;
}

int run_classify(const Options& o, std::ostream& out) {
    const Algebra& a = *algebra(o.n);
    CausalClass c = classify_coords(a, load_point(o.point), classify_options(o));
    json j = to_json(c);
    if (o.format == "csv") {
        CsvWriter w{out};
        w.row({"class", "c", "witness_w2", "branch", "type"});
        w.row({j["class"], format_double(c.c), c.witness_w2 ? format_double(*c.witness_w2) : "",
               j["branch"].is_null() ? "" : j["branch"].get<std::string>(),
               j["type"].is_null() ? "" : j["type"].get<std::string>()});
    } else {
        out << j.dump(2) << '\n';
    }
    return 0;
}

struct ScanRow {
    double x = 0;
    CausalClass cls;
    std::vector<double> roots;
};

int run_scan_circle(const Options& o, std::ostream& out) {
    const Algebra& a = *algebra(o.n);
    ClassifyOptions co = classify_options(o);
    std::vector<double> axis(std::size_t(a.n), 0.0);
    axis[0] = 1;
    auto rows = parallel_map<ScanRow>(std::size_t(o.samples), [&](std::size_t i) {
        ScanRow r;
        r.x = 2 * M_PI * double(i) / o.samples;
        PointCoords p;
        p.x = r.x;
        GroupWord w = point_word(a, p);
        r.cls = classify_point(w, co);
        r.roots = singular_times(QuadraticField(w).at(axis)).roots;
        return r;
    });
    if (o.format == "json") {
        json j = json::array();
        for (const auto& r : rows) {
            json e{{"x", r.x}, {"class", to_string(r.cls.kind)}, {"c", r.cls.c}};
            e["s_plus"] = r.roots.size() > 0 ? json(r.roots[0]) : json(nullptr);
            e["s_minus"] = r.roots.size() > 1 ? json(r.roots[1]) : json(nullptr);
            j.push_back(e);
        }
        out << j.dump(2) << '\n';
        return 0;
    }
    CsvWriter w{out};
    w.row({"x", "class", "s_plus", "s_minus", "c"});
    for (const auto& r : rows)
        w.row({format_double(r.x), to_string(r.cls.kind), cell(r.roots, 0), cell(r.roots, 1), format_double(r.cls.c)});
    return 0;
}

int run_curve(const Options& o, std::ostream& out) {
    const Algebra& a = *algebra(o.n);
    PointCoords p = load_point(o.point);
    ANCoefficients k = an_coefficients(a, p);
    json j = json::array();
    CsvWriter w{out};
    if (o.format != "json") w.row({"x", "n_P", "norm2"});
    for (int i = 0; i < o.samples; ++i) {
        p.x = 2 * M_PI * i / o.samples;
        double nP = curve_value(k.u(), k.v(), p.x);
        double n2 = singularity_norm2(point_word(a, p));
        if (o.format == "json") j.push_back({{"x", p.x}, {"n_P", nP}, {"norm2", n2}});
        else w.row({format_double(p.x), format_double(nP), format_double(n2)});
    }
    if (o.format == "json") out << j.dump(2) << '\n';
    return 0;
}

int run_horizon(const Options& o, std::ostream& out) {
    const Algebra& a = *algebra(o.n);
    PointCoords base = load_point(o.point);
    auto path = [&](double t) {
        PointCoords p = base;
        p.x = t;
        return point_word(a, p);
    };
    const double step = 1e-8;
    double t = horizon_bisect(path, o.lo, o.hi, step, classify_options(o));
    if (o.format == "csv") {
        CsvWriter w{out};
        w.row({"t", "lo", "hi"});
        w.row({format_double(t), format_double(o.lo), format_double(o.hi)});
    } else {
        out << json{{"t", t}, {"lo", o.lo}, {"hi", o.hi}, {"tol", step}}.dump(2) << '\n';
    }
    return 0;
}

int run_table(const Options& o, std::ostream& out) {
    const Algebra& a = *algebra(o.n);
    if (o.format == "csv") {
        CsvWriter w{out};
        w.row({"i", "j", "m", "num", "den"});
        for (std::size_t i = 0; i < a.dim; ++i)
            for (std::size_t k = i + 1; k < a.dim; ++k)
                for (const auto& t : a.terms(i, k))
                    w.row({a.labels[i].str(), a.labels[k].str(), a.labels[t.m].str(), t.v.get_num().get_str(),
                           t.v.get_den().get_str()});
        return 0;
    }
    out << structure_dump(a).dump() << '\n';
    return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Structure of so(2,n) and causal classification of AdS points", "adscausal"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* s, const std::string& fmt) {
        o.format = fmt;
        s->add_option("--n", o.n, "algebra so(2,n), n >= 2")->check(CLI::Range(2, 64));
        s->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
        s->add_option("--out", o.out, "output file (default stdout)");
        s->add_option("--seed", o.seed, "seed for randomized checks");
    };
    auto tol = [&](CLI::App* s) {
        s->add_option_function<double>("--tol", [&](double v) { o.tol = v; }, "singularity tolerance")
            ->check(CLI::PositiveNumber);
    };

    auto* verify = app.add_subcommand("verify", "exact structure and reductive suites for 2..n");
    auto* classify = app.add_subcommand("classify", "classify one point");
    auto* scan = app.add_subcommand("scan-circle", "classify the compact circle");
    auto* curve = app.add_subcommand("curve", "singularity curve n_P(x) of an AN point");
    auto* horizon = app.add_subcommand("horizon", "bisect the horizon along the compact angle");
    auto* table = app.add_subcommand("table", "structure constants, Killing matrix and canonical basis");

    // each subcommand owns its option objects; only the parsed one writes into o
    std::vector<std::pair<CLI::App*, std::string>> fmts{{verify, "json"}, {classify, "json"}, {scan, "csv"},
                                                        {curve, "csv"},   {horizon, "json"},  {table, "json"}};
    for (auto& [s, f] : fmts) common(s, f);
    for (auto* s : {classify, scan, horizon}) tol(s);
    classify->add_option("--point", o.point, "PointCoords JSON or file")->required();
    curve->add_option("--point", o.point, "PointCoords JSON or file");
    horizon->add_option("--point", o.point, "PointCoords JSON or file; its x is the path parameter");
    horizon->add_option("--lo", o.lo, "path start");
    horizon->add_option("--hi", o.hi, "path end");
    for (auto* s : {scan, curve}) s->add_option("--samples", o.samples, "samples on [0, 2pi)")->check(CLI::Range(1, 1000000));

    std::vector<std::string> full{"adscausal"};
    full.insert(full.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : full) argv.push_back(s.data());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }
    // defaults depend on the subcommand
    for (auto& [s, f] : fmts)
        if (s->parsed() && s->count("--format") == 0) o.format = f;

    std::ofstream file;
    if (!o.out.empty()) {
        file.open(o.out, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << o.out << " for writing\n";
            return 2;
        }
    }
    std::ostream& dst = o.out.empty() ? out : file;
    try {
        if (verify->parsed()) return run_verify(o, dst);
        if (classify->parsed()) return run_classify(o, dst);
        if (scan->parsed()) return run_scan_circle(o, dst);
        if (curve->parsed()) return run_curve(o, dst);
        if (horizon->parsed()) return run_horizon(o, dst);
        if (table->parsed()) return run_table(o, dst);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace adscausal
