#pragma once
#include "lrp/solver.hpp"
#include "lrp/systems.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace lrp::io {

using json = nlohmann::ordered_json;

// "%.17g" with a '.' separator regardless of the process locale
std::string num17(double x);
// 12 significant digits, for reports
std::string dec12(double x);

// CSV "t,value": one row per grid node, plus a "t+" row carrying the right
// limit wherever it differs from the value (declared break nodes).
std::string csv_function(const RegulatedFn& f, const GridP& grid);
std::string csv_function(const RegulatedFn& f, double ppu);
std::string csv_functions(const FnVec& fs, const GridP& grid);   // t,x1,...,xm

// StepFn as YAML text: base_point, base_value, pieces [{x, y, v}] with "p/q" strings
std::string step_to_text(const StepFn& s);
StepFn step_from_text(const std::string& text);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

// report numbers: every value carries "tol" (a number) or "tol": "exact"
json exact_num(const std::string& expr, double value);
json exact_num(const Rat& r);
json exact_int(long long v);
json approx_num(double value, double tol);

struct Report {
    std::string id;
    json params = json::object();
    json outputs = json::object();
    bool ok = true;
    std::vector<std::string> failures;

    json to_json() const;
    std::string dump() const;
};

json trace_summary(const IterationTrace& t, double tol);

Report report_osc2(const systems::Osc2Report& r, const systems::Osc2Params& p, const ChainOptions& opt);

// A run described in YAML:
//   run: osc2 | quadstep | uniqueness | l1minmax | weighted | higher_order | constant
//   params: {quad_tol, grid, T, a, m, k, seed, c: [...], H: ["p/q", ...], lo, hi}
//   chain: {tol, max_steps, max_omega, verify_tol}
struct SystemSpec {
    std::string run;
    double quad_tol = 1e-10;
    double grid = 0;                 // points per unit; 0: the run's default
    double a = 0;
    double T = 0;                    // 0: the run's default
    int m = 0;
    double k = 0;
    unsigned seed = 1;
    std::vector<double> c;
    std::vector<Rat> H;              // polynomial coefficients, ascending
    double lo = 0, hi = 0;           // order bounds for higher_order
    bool has_bounds = false;
    std::optional<double> tol;
    std::optional<int> max_steps, max_omega;
    std::optional<double> verify_tol;

    static SystemSpec parse(const std::string& yaml_text);
    static SystemSpec load(const std::string& path);
    void check() const;              // known run, finite T, sizes
};

std::vector<std::string> run_names();

struct RunOutput {
    Report report;
    std::vector<std::pair<std::string, IterationTrace>> traces;   // name -> trace
    std::vector<std::pair<std::string, FnVec>> solutions;
    GridP grid;
};
RunOutput run_spec(const SystemSpec& spec);

} // namespace lrp::io
