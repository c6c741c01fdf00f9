#pragma once
#include "lrp/io.hpp"

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace lrp::suites {

struct SuiteResult {
    std::string name;
    unsigned seed = 0;
    size_t count = 0;
    size_t cases = 0, checks = 0, violations = 0;
    std::vector<std::string> counterexamples;   // first few violations
    std::map<std::string, double> metrics;      // worst errors and margins
    double seconds = 0;

    bool ok() const { return violations == 0 && cases > 0; }
    // records one check; `what` is only built on failure
    bool expect(bool cond, const std::function<std::string()>& what);
    void worst(const std::string& key, double v);   // keeps the max
};

// norms, lattice, parts, gauge, solver, approx, ftc
std::vector<std::string> suite_names();
size_t default_count(const std::string& name);
SuiteResult run_suite(const std::string& name, unsigned seed, size_t count = 0);
io::Report to_report(const SuiteResult& r);

SuiteResult norms(unsigned seed, size_t count);     // n = 1..count identities, Alexiewicz equivalence, metric
SuiteResult lattice(unsigned seed, size_t count);   // exact step pairs
SuiteResult parts(unsigned seed, size_t count);     // polynomial primitives, step densities
SuiteResult gauge(unsigned seed, size_t count);     // measure-sum oracle, bilinearity, bound, additivity
SuiteResult solver(unsigned seed, size_t count);    // weighted comparison pairs
SuiteResult approx(unsigned seed, size_t count);    // step approximation levels 2..64
SuiteResult ftc(unsigned seed, size_t count);       // Hake limit and finite-difference checks

// random exact data
Rat random_rat(std::mt19937& rng, long range, long max_den);
// cells with rational ends in (a, b) and values p/q, |value| <= range
StepFn random_step(std::mt19937& rng, const Rat& a, const Rat& b, int max_cells, long range);
PiecewisePoly random_piecewise_poly(std::mt19937& rng, const Rat& a, const Rat& b, int max_cells, int max_degree);

} // namespace lrp::suites
