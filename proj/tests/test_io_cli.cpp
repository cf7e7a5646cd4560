#include "adscausal/cli.hpp"
#include "adscausal/io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <sstream>

using namespace adscausal;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("point JSON round trip and validation") {
    PointCoords p = parse_point(R"({"alpha":[0.5,-1],"nu":{"pp":0.25,"pm":2,"zp":[1,2],"pz":[3]},"x":0.75})");
    CHECK(p.alpha[1] == -1);
    CHECK(p.nu_0p == std::vector<double>{1, 2});
    PointCoords q = point_from_json(to_json(p));
    CHECK(to_json(q) == to_json(p));
    CHECK_THROWS_AS(parse_point(R"({"alpha":[1]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_point(R"({"beta":1})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_point("{"), std::invalid_argument);
    CHECK_THROWS_AS(parse_point(R"({"x":"a"})"), std::invalid_argument);
}

TEST_CASE("classification JSON round trip") {
    CausalClass c;
    c.kind = CausalKind::Free;
    c.c = 3.25;
    c.witness_w2 = -0.125;
    c.type = PointType::TypeII;
    CausalClass d = class_from_json(json::parse(to_json(c).dump()));
    CHECK(to_json(d) == to_json(c));
    c.kind = CausalKind::Singular;
    c.witness_w2.reset();
    c.branch = Branch::AbarNktheta;
    CHECK(to_json(class_from_json(to_json(c))) == to_json(c));
    CHECK(to_json(c)["witness_w2"].is_null());
}

TEST_CASE("structure dump") {
    json j = structure_dump(*algebra(3));
    CHECK(j["n"] == 3);
    CHECK(j["labels"].size() == 10);
    CHECK(j["killing"].size() == 10);
    CHECK(j["b_basis"].size() == 10);
    CHECK(j["b_basis"][0]["name"] == "J1");
    CHECK(j["brackets"][0].contains("terms"));
}

TEST_CASE("number formatting is locale independent and round-trips") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(std::stod(format_double(M_PI)) == M_PI);
}

TEST_CASE("verify subcommand") {
    Run r = run({"verify", "--n", "4"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["failures"] == 0);
    CHECK(j["reports"].size() == 3);
}

TEST_CASE("classify subcommand") {
    Run r = run({"classify", "--n", "4", "--point",
                 R"({"alpha":[0,0],"nu":{"pp":0,"pm":0,"zp":[0],"pz":[0]},"x":0.7853981633974483})"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["class"] == "black_hole");
    CHECK(to_json(class_from_json(j)) == j);
}

TEST_CASE("scan-circle subcommand") {
    Run r = run({"scan-circle", "--n", "3", "--samples", "8"});
    CHECK(r.code == 0);
    CHECK(r.out.find('\r') == std::string::npos);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,class,s_plus,s_minus,c");
    std::vector<std::string> classes;
    while (std::getline(in, line)) classes.push_back(line.substr(line.find(',') + 1, line.find(',', line.find(',') + 1) - line.find(',') - 1));
    CHECK(classes == std::vector<std::string>{"singular", "black_hole", "free", "free", "singular", "black_hole", "free", "free"});
}

TEST_CASE("curve, horizon and table subcommands") {
    Run c = run({"curve", "--n", "3", "--point", R"({"nu":{"pp":0.7}})", "--samples", "16"});
    CHECK(c.code == 0);
    CHECK(std::count(c.out.begin(), c.out.end(), '\n') == 17);
    Run h = run({"horizon", "--n", "3"});
    CHECK(h.code == 0);
    CHECK(json::parse(h.out)["t"].get<double>() == doctest::Approx(M_PI / 2).epsilon(1e-6));
    Run t = run({"table", "--n", "2"});
    CHECK(t.code == 0);
    CHECK(json::parse(t.out)["n"] == 2);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"verify", "--bogus"}).code == 2);
    CHECK(run({"verify", "--n", "1"}).code == 2);
    CHECK(run({"classify", "--n", "3"}).code == 2);
    CHECK(run({"classify", "--point", "{"}).code == 2);
    CHECK(run({"classify", "--point", "/nonexistent/point.json"}).code == 2);
    CHECK(run({"scan-circle", "--format", "xml"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"horizon", "--lo", "0.3", "--hi", "1.0"}).code == 1);
}

TEST_CASE("tolerance from the environment") {
    setenv("ADSCAUSAL_TOL", "oops", 1);
    CHECK(run({"classify", "--point", "{}"}).code == 2);
    setenv("ADSCAUSAL_TOL", "1e-6", 1);
    CHECK(run({"classify", "--point", R"({"x":1e-4})"}).code == 0);
    CHECK(json::parse(run({"classify", "--point", R"({"x":1e-4})"}).out)["class"] == "singular");
    unsetenv("ADSCAUSAL_TOL");
    CHECK(json::parse(run({"classify", "--point", R"({"x":1e-4})"}).out)["class"] == "black_hole");
}
