#include "lrp/examples.hpp"
#include "lrp/error.hpp"

#include <functional>
#include <numbers>
#include <mutex>

namespace lrp::examples {

using namespace sym;

namespace {

constexpr double kPi = std::numbers::pi;

Expr frac_right() { return n() * t() - floor_right(n() * t()); }

Expr cospi_g_term() {
    Expr u = frac_right();
    Expr q = Expr(kPi / 2) * recip(u);
    return recip(pow(n(), 2)) * (Expr(2.0) * u * cos(q) + Expr(kPi / 2) * sin(q));
}

Expr cospi_f_term() {
    Expr u = frac_right();
    return pow(u, 2) * recip(pow(n(), 3)) * cos(Expr(kPi / 2) * recip(u));
}

Expr sqrt_g_extra() { return Expr(0.5) * recip(sqrt(frac_right())); }
Expr sqrt_f_extra() { return (floor_right(n() * t()) + sqrt(frac_right())) * recip(n()); }

Expr lin_g_extra() {
    Expr u = frac_right();
    Expr q = Expr(kPi / 2) * recip(u);
    return cos(q) + Expr(kPi / 2) * sin(q) * recip(u);
}
Expr lin_f_extra() {
    Expr u = frac_right();
    return recip(n()) * u * cos(Expr(kPi / 2) * recip(u));
}

Expr cospi_G_expr(int m) { return series(cospi_g_term(), m); }
Expr cospi_F_expr(int m) { return series(cospi_f_term(), m); }
Expr cospi_sqrt_G_expr(int m) { return series(cospi_g_term() + sqrt_g_extra(), m); }
Expr cospi_sqrt_F_expr(int m) { return series(cospi_f_term() + sqrt_f_extra(), m); }
Expr cospi_lin_G_expr(int m) { return series(cospi_g_term() + lin_g_extra(), m); }
Expr cospi_lin_F_expr(int m) { return series(cospi_f_term() + lin_f_extra(), m); }

void ensure_registry() {
    static std::once_flag once;
    std::call_once(once, [] {
        registry_add({"cospi", cospi_G_expr, cospi_F_expr});
        registry_add({"cospi_sqrt", cospi_sqrt_G_expr, cospi_sqrt_F_expr});
        registry_add({"cospi_lin", cospi_lin_G_expr, cospi_lin_F_expr});
    });
}

Interval dom(const Params& p) {
    if (!(p.T > p.a)) throw ConfigError("empty domain [" + std::to_string(p.a) + ", " + std::to_string(p.T) + "]");
    return Interval::closed(p.a, p.T);
}

void need_m(const Params& p) {
    if (p.m < 1) throw ConfigError("series depth m must be at least 1");
}

std::string mtag(const std::string& base, const Params& p) { return base + "[m=" + std::to_string(p.m) + "]"; }

} // namespace

RegulatedFn cospi_G(const Params& p) {
    need_m(p);
    ensure_registry();
    return RegulatedFn::symbolic(cospi_G_expr(p.m), dom(p), mtag("cospi_G", p), "cospi", p.m);
}

RegulatedFn cospi_F(const Params& p) {
    need_m(p);
    return RegulatedFn::symbolic(cospi_F_expr(p.m), dom(p), mtag("cospi_F", p));
}

RegulatedFn cospi_sqrt_G(const Params& p) {
    need_m(p);
    ensure_registry();
    return RegulatedFn::symbolic(cospi_sqrt_G_expr(p.m), dom(p), mtag("cospi_sqrt_G", p), "cospi_sqrt", p.m);
}

RegulatedFn cospi_sqrt_F(const Params& p) {
    need_m(p);
    return RegulatedFn::symbolic(cospi_sqrt_F_expr(p.m), dom(p), mtag("cospi_sqrt_F", p));
}

RegulatedFn cospi_lin_G(const Params& p) {
    need_m(p);
    ensure_registry();
    return RegulatedFn::symbolic(cospi_lin_G_expr(p.m), dom(p), mtag("cospi_lin_G", p), "cospi_lin", p.m);
}

RegulatedFn cospi_lin_F(const Params& p) {
    need_m(p);
    return RegulatedFn::symbolic(cospi_lin_F_expr(p.m), dom(p), mtag("cospi_lin_F", p));
}

RegulatedFn sawtooth_F(const Params& p) {
    need_m(p);
    if (!(p.p > 1)) throw ConfigError("sawtooth exponent p must exceed 1");
    // n^-p for non-integer p: expand the sum with numeric coefficients
    Expr sum(0.0);
    for (int k = 1; k <= p.m; ++k) {
        Expr kt = Expr(double(k)) * t();
        sum = sum + Expr(std::pow(double(k), -p.p)) * (Expr(1.0) + kt - floor_left(kt));
    }
    return RegulatedFn::symbolic(sum, dom(p), mtag("sawtooth_F", p) + "[p=" + std::to_string(p.p) + "]");
}

RegulatedFn t_times_G(const Params& p) {
    need_m(p);
    return RegulatedFn::symbolic(t() * cospi_G_expr(p.m), dom(p), mtag("t*cospi_G", p));
}

RegulatedFn t_times_Gm(const Params& p) {
    need_m(p);
    return RegulatedFn::symbolic(t() * cospi_sqrt_G_expr(p.m), dom(p), mtag("t*cospi_sqrt_G", p));
}

RegulatedFn t2_times_Gm(const Params& p) {
    need_m(p);
    return RegulatedFn::symbolic(pow(t(), 2) * cospi_lin_G_expr(p.m), dom(p), mtag("t^2*cospi_lin_G", p));
}

RegulatedFn heaviside(double a, double b) {
    return RegulatedFn::symbolic(sym::heaviside(t()), Interval::closed(a, b), "H1");
}

RegulatedFn shape_a(double T) {
    return RegulatedFn::symbolic(t() * (Expr(1.0) + cos(recip(t()))), Interval::closed(0, T), "t(1+cos(1/t))");
}

RegulatedFn shape_b(double T) {
    return RegulatedFn::symbolic(t() * (Expr(1.0) - sin(recip(t()))), Interval::closed(0, T), "t(1-sin(1/t))");
}

RegulatedFn density_a(double T) {
    const RegistryEntry* e = registry_lookup("osc2_shape_a");
    return RegulatedFn::symbolic(e->density(0), Interval::closed(0, T), "(1/t)sin(1/t)+cos(1/t)+1", "osc2_shape_a");
}

RegulatedFn density_b(double T) {
    const RegistryEntry* e = registry_lookup("osc2_shape_b");
    return RegulatedFn::symbolic(e->density(0), Interval::closed(0, T), "(1/t)cos(1/t)-sin(1/t)+1", "osc2_shape_b");
}

RegulatedFn t_sin_inv(double T) {
    return RegulatedFn::symbolic(t() * sin(recip(t())), Interval::closed(0, T), "t sin(1/t)");
}

CountableStep alternating_blocks() {
    CountableStep f;
    f.a = Rat(-1);
    f.b = Rat(0);
    f.head = StepFn(Rat(-1), Rat(-1, 2), Rat(0));
    f.m0 = 2;
    f.cell = [](long m) {
        return StepPiece{Rat(-1, m), Rat(-1, m + 1), Rat(m % 2 == 0 ? 1 : -1)};
    };
    f.alternating_decreasing = true;
    f.abs_value = Rat(1);
    return f;
}

StepFn alternating_blocks_partial(long n) {
    std::vector<StepPiece> pieces;
    pieces.push_back({Rat(-1), Rat(-1, 2), Rat(0)});
    for (long m = 2; m <= n; ++m) pieces.push_back({Rat(-1, m), Rat(-1, m + 1), Rat(m % 2 == 0 ? 1 : -1)});
    Rat last = n >= 2 ? Rat(-1, n + 1) : Rat(-1, 2);
    pieces.push_back({last, Rat(0), Rat(0)});
    return StepFn(Rat(-1), Rat(0), pieces);
}

std::vector<std::string> function_names() {
    return {"cospi_G", "cospi_F", "cospi_sqrt_G", "cospi_sqrt_F", "cospi_lin_G", "cospi_lin_F", "sawtooth_F", "t_cospi_G", "t_cospi_sqrt_G",
            "t2_cospi_lin_G", "heaviside", "osc2_shape_a", "osc2_shape_b", "osc2_density_a", "osc2_density_b",
            "t_sin_inv"};
}

RegulatedFn build_function(const std::string& name, const Params& p) {
    if (name == "cospi_G") return cospi_G(p);
    if (name == "cospi_F") return cospi_F(p);
    if (name == "cospi_sqrt_G") return cospi_sqrt_G(p);
    if (name == "cospi_sqrt_F") return cospi_sqrt_F(p);
    if (name == "cospi_lin_G") return cospi_lin_G(p);
    if (name == "cospi_lin_F") return cospi_lin_F(p);
    if (name == "sawtooth_F") return sawtooth_F(p);
    if (name == "t_cospi_G") return t_times_G(p);
    if (name == "t_cospi_sqrt_G") return t_times_Gm(p);
    if (name == "t2_cospi_lin_G") return t2_times_Gm(p);
    if (name == "heaviside") return heaviside(p.a == 0 && p.T == 1 ? -1 : p.a, p.T);
    if (name == "osc2_shape_a") return shape_a(p.T);
    if (name == "osc2_shape_b") return shape_b(p.T);
    if (name == "osc2_density_a") return density_a(p.T);
    if (name == "osc2_density_b") return density_b(p.T);
    if (name == "t_sin_inv") return t_sin_inv(p.T);
    throw ConfigError("unknown example function '" + name + "'");
}

} // namespace lrp::examples
