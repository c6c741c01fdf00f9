#include "lrp/io.hpp"
#include "lrp/suites.hpp"
#include "lrp/systems.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace lrp;

namespace {

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

bool has_line(const std::string& csv, const std::string& l) {
    for (const auto& x : lines(csv))
        if (x == l) return true;
    return false;
}

// every {"decimal": ...} object must say how exact it is
void check_tags(const io::json& j, const std::string& path) {
    if (j.is_object()) {
        if (j.contains("decimal")) {
            INFO(path);
            CHECK(j.contains("tol"));
        }
        for (const auto& [k, v] : j.items()) check_tags(v, path + "/" + k);
    } else if (j.is_array()) {
        for (size_t i = 0; i < j.size(); ++i) check_tags(j[i], path + "/" + std::to_string(i));
    }
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("heaviside export has a right-limit row at the jump") {
    std::string csv = io::csv_function(examples::heaviside(), 4);
    auto ls = lines(csv);
    REQUIRE(!ls.empty());
    CHECK(ls[0] == "t,value");
    CHECK(has_line(csv, "0,0"));
    CHECK(has_line(csv, "0+,1"));
    CHECK(has_line(csv, "-1,0"));
    CHECK(has_line(csv, "1,1"));
    CHECK(csv.find("-0,") == std::string::npos);
}

TEST_CASE("step functions survive a text round trip") {
    std::mt19937 rng(17);
    for (int cs = 0; cs < 100; ++cs) {
        StepFn s = suites::random_step(rng, Rat(-3, 7), Rat(5, 2), 8, 9);
        std::string text = io::step_to_text(s);
        CHECK(io::step_from_text(text) == s);
        CHECK(io::step_to_text(io::step_from_text(text)) == text);
    }
}

TEST_CASE("malformed step text is rejected") {
    CHECK_THROWS_AS(io::step_from_text("base_point: \"0\"\n"), ConfigError);
    CHECK_THROWS_AS(io::step_from_text("base_point: \"0\"\nbase_value: \"1\"\npieces:\n  - {x: \"1\", y: \"0\", v: \"1\"}\n"),
                    Error);
}

TEST_CASE("system configuration parsing") {
    io::SystemSpec s = io::SystemSpec::parse("run: higher_order\nparams:\n  m: 2\n  k: 3\n  c: [0, 0]\n  grid: 256\n"
                                             "chain:\n  verify_tol: 1e-9\n");
    CHECK(s.run == "higher_order");
    CHECK(s.m == 2);
    CHECK(s.k == 3);
    CHECK(s.grid == 256);
    REQUIRE(s.verify_tol);
    CHECK(*s.verify_tol == 1e-9);
    s.check();
    CHECK_THROWS_AS(io::SystemSpec::parse("run: osc2\nparams:\n  bogus: 1\n"), ConfigError);
    CHECK_THROWS_AS(io::SystemSpec::parse("run: nope\n").check(), ConfigError);
    CHECK_THROWS_AS(io::SystemSpec::parse("run: quadstep\nparams:\n  T: .inf\n").check(), ConfigError);

    io::RunOutput r = io::run_spec(s);
    CHECK(r.report.ok);
    check_tags(r.report.to_json(), "");
}

TEST_CASE("example builders") {
    examples::Params p;
    p.m = 3;
    auto G = std::get<RegulatedFn>(systems::build_example("cospi_G", p));
    const double pi = std::acos(-1.0);
    CHECK(G(0.5) == doctest::Approx(-1 + pi / 8 - 1.0 / 9).epsilon(1e-13));

    auto H = std::get<RegulatedFn>(systems::build_example("heaviside", examples::Params{}));
    Limits l = H.limits(0);
    CHECK(*l.left == 0);
    CHECK(l.value == 0);
    CHECK(*l.right == 1);

    examples::Params q;
    q.T = 5;
    auto y = std::get<RegulatedFn>(systems::build_example("quadstep_closed_form", q));
    CHECK(y(1.0) == -1);
    CHECK(y(1.5) == 0);
    CHECK(y(5.0) == -1 + 10);
    CHECK_THROWS_AS(systems::build_example("nope", p), ConfigError);

    // builders are left continuous at their declared breaks
    for (const std::string& name : examples::function_names()) {
        RegulatedFn f = examples::build_function(name, p);
        const Interval& d = f.domain();
        auto br = f.break_points(d.lo, d.hi);
        size_t n = 0;
        for (double t : br) {
            if (t == d.lo) continue;
            Limits lt = f.limits(t);
            if (!lt.left || !std::isfinite(*lt.left)) continue;
            INFO(name << " at " << t);
            CHECK(*lt.left == doctest::Approx(lt.value).epsilon(1e-9));
            if (++n == 100) break;
        }
    }
}

TEST_CASE("Osc2 report and trace") {
    systems::Osc2Report r = systems::run_osc2();
    CHECK(r.upper1 == "arctan(2569/2500)");
    CHECK(r.upper2 == "tanh(12419/10000)");
    CHECK(r.lower1 == "-arctan(5139/5000)");
    CHECK(r.lower2 == "-tanh(12421/10000)");
    CHECK(r.paths_agree);
    CHECK(r.up.stages.size() == 17);
    CHECK(r.down.stages.size() == 17);
    CHECK(r.down.stabilization_index == 16);

    std::string csv = r.down.csv();
    auto ls = lines(csv);
    CHECK(ls[0] == "stage,t,x1,x2");
    // stage labels 0..16
    CHECK(csv.find("\n16,") != std::string::npos);
    CHECK(csv.find("\n17,") == std::string::npos);

    io::Report rep = io::report_osc2(r, systems::Osc2Params{}, ChainOptions{});
    check_tags(rep.to_json(), "");
    std::string dump = rep.dump();
    CHECK(dump.find("\"arctan(2569/2500)\"") != std::string::npos);
    CHECK(dump.find("0.799009475054") != std::string::npos);   // 12 digits
}

TEST_CASE("identical specs give byte-identical CSV") {
    io::SystemSpec s = io::SystemSpec::parse("run: weighted\nparams:\n  seed: 4\n  grid: 128\n");
    io::RunOutput a = io::run_spec(s), b = io::run_spec(s);
    REQUIRE(!a.traces.empty());
    for (size_t i = 0; i < a.traces.size(); ++i) CHECK(a.traces[i].second.csv() == b.traces[i].second.csv());
    auto fa = io::csv_functions(a.solutions.front().second, a.grid);
    auto fb = io::csv_functions(b.solutions.front().second, b.grid);
    CHECK(fa == fb);
}

TEST_CASE("number formatting") {
    CHECK(io::num17(-0.0) == "0");
    CHECK(io::num17(0.1) == "0.10000000000000001");
    CHECK(io::dec12(std::atan(2569.0 / 2500)) == "0.799009475054");
    io::json e = io::exact_num(Rat(3, 4));
    CHECK(e["exact"] == "3/4");
    CHECK(e["tol"] == "exact");
}

TEST_CASE("files") {
    CHECK_THROWS_AS(io::write_file("/nonexistent-dir/x.csv", "a"), IoError);
    CHECK_THROWS_AS(io::read_file("/nonexistent-dir/x.csv"), IoError);
}

}
