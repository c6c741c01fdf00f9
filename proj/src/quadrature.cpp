#include "lrp/quadrature.hpp"
#include "lrp/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

namespace lrp {

namespace {

const double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                       0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                       0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                       0.207784955007898467600689403773245, 0.0};
const double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                       0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                       0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                       0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
const double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Seg {
    double a, b, val, err;
    bool operator<(const Seg& o) const { return err < o.err; }
};

Seg gk15(const std::function<double(double)>& f, double a, double b) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fc = f(c);
    double resk = fc * wgk[7], resg = fc * wg[3], resabs = std::fabs(resk);
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        double x = h * xgk[j];
        fv1[j] = f(c - x);
        fv2[j] = f(c + x);
        double s = fv1[j] + fv2[j];
        resk += wgk[j] * s;
        resabs += wgk[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
        if (j % 2 == 1) resg += wg[j / 2] * s;
    }
    double mean = 0.5 * resk;
    double resasc = wgk[7] * std::fabs(fc - mean);
    for (int j = 0; j < 7; ++j) resasc += wgk[j] * (std::fabs(fv1[j] - mean) + std::fabs(fv2[j] - mean));
    double val = resk * h;
    double err = std::fabs((resk - resg) * h);
    resasc *= std::fabs(h);
    resabs *= std::fabs(h);
    if (resasc != 0 && err != 0) err = resasc * std::min(1.0, std::pow(200 * err / resasc, 1.5));
    double floor_err = 50 * std::numeric_limits<double>::epsilon() * resabs;
    err = std::max(err, floor_err);
    if (!std::isfinite(val)) err = INFINITY;
    return {a, b, val, err};
}

}  // namespace

QuadResult gauss_kronrod(const std::function<double(double)>& f, double a, double b, double tol,
                         size_t max_intervals) {
    QuadResult r;
    r.method = "gauss-kronrod";
    if (a == b) return r;
    std::priority_queue<Seg> q;
    Seg s = gk15(f, a, b);
    q.push(s);
    double total = s.val, err = s.err;
    size_t n = 1;
    while (err > tol && n < max_intervals) {
        Seg w = q.top();
        q.pop();
        double m = 0.5 * (w.a + w.b);
        if (m <= w.a || m >= w.b) {   // cannot split further
            q.push(w);
            break;
        }
        Seg l = gk15(f, w.a, m), rr = gk15(f, m, w.b);
        total += l.val + rr.val - w.val;
        err += l.err + rr.err - w.err;
        q.push(l);
        q.push(rr);
        ++n;
    }
    // re-sum to remove drift
    total = 0;
    err = 0;
    while (!q.empty()) {
        total += q.top().val;
        err += q.top().err;
        q.pop();
    }
    r.value = total;
    r.error = err;
    r.evals = 15 * (2 * n - 1);
    r.certified = false;
    return r;
}

QuadResult tanh_sinh(const std::function<double(double)>& f, double a, double b, double tol) {
    QuadResult r;
    r.method = "tanh-sinh";
    r.certified = false;
    const double hp = 0.5 * std::numbers::pi;
    double half = 0.5 * (b - a);
    auto point = [&](double tau, double& w) -> std::optional<double> {
        double y = hp * std::sinh(tau);
        double ey = std::exp(2 * y);
        double cy = std::cosh(y);
        w = hp * std::cosh(tau) / (cy * cy) * half;
        if (!std::isfinite(w) || w == 0) return std::nullopt;
        if (tau < 0) {
            double s = half * 2.0 / (1.0 + 1.0 / ey);   // offset from a
            double t = a + s;
            if (!(t > a) || !(t < b)) return std::nullopt;
            return t;
        }
        double s = half * 2.0 / (1.0 + ey);   // offset from b
        double t = b - s;
        if (!(t < b) || !(t > a)) return std::nullopt;
        return t;
    };
    double h = 0.5, prev = NAN, cur = 0;
    const double tmax = 3.5;
    // level 0
    double sum = 0;
    for (double tau = -tmax; tau <= tmax + 1e-12; tau += h) {
        double w;
        if (auto t = point(tau, w)) { sum += w * f(*t); ++r.evals; }
    }
    cur = sum * h;
    for (int lev = 1; lev <= 8; ++lev) {
        h *= 0.5;
        double add = 0;
        for (double tau = -tmax + h; tau < tmax; tau += 2 * h) {
            double w;
            if (auto t = point(tau, w)) { add += w * f(*t); ++r.evals; }
        }
        sum += add;
        prev = cur;
        cur = sum * h;
        if (lev >= 3 && std::fabs(cur - prev) < 0.1 * tol) break;
    }
    r.value = cur;
    r.error = std::fabs(cur - prev);
    return r;
}

namespace {

void collect_symbolic(const RegulatedFn& f, std::vector<const SymbolicFn*>& out) {
    using Kind = RegulatedFn::Kind;
    switch (f.kind()) {
    case Kind::Symbolic: out.push_back(f.as_symbolic()); break;
    case Kind::LinComb:
        for (auto& [c, g] : *f.as_lincomb()) collect_symbolic(g, out);
        break;
    case Kind::Product:
        collect_symbolic(f.as_product()->first, out);
        collect_symbolic(f.as_product()->second, out);
        break;
    case Kind::Pointwise:
        for (auto& g : f.pointwise_args()) collect_symbolic(g, out);
        break;
    default: break;
    }
}

// Oscillation frequency in w = 1/|t - x0| shared by all trig arguments that
// grow linearly in w near x0; 0 when none grows, -1 when growth is not linear
// or frequencies are incommensurable.
double tail_frequency(const RegulatedFn& f, double x0, double sigma, double w_base) {
    std::vector<const SymbolicFn*> syms;
    collect_symbolic(f, syms);
    std::vector<double> kappas;
    for (auto* s : syms) {
        for (auto& ta : sym::trig_args(s->expr)) {
            double w[3] = {w_base, 2 * w_base, 4 * w_base};
            double v[3];
            bool ok = true;
            for (int i = 0; i < 3; ++i) v[i] = sym::eval_node(ta.arg, x0 + sigma / w[i], ta.n, ok);
            if (!ok) return -1;
            double k1 = (v[1] - v[0]) / (w[1] - w[0]), k2 = (v[2] - v[1]) / (w[2] - w[1]);
            if (std::fabs(v[2] - v[0]) < 1e-3) continue;   // bounded argument
            if (std::fabs(k1 - k2) > 1e-6 * std::max(std::fabs(k1), std::fabs(k2))) return -1;
            kappas.push_back(std::fabs(k2));
        }
    }
    if (kappas.empty()) return 0;
    double kmin = *std::min_element(kappas.begin(), kappas.end());
    for (int q = 1; q <= 12; ++q) {
        double base = kmin / q;
        bool all = true;
        for (double k : kappas) {
            double r = k / base;
            if (std::fabs(r - std::nearbyint(r)) > 1e-7 * r) { all = false; break; }
        }
        if (all) return base;
    }
    return -1;
}

struct Evaluator {
    const RegulatedFn& f;
    double operator()(double t) const {
        if (const SymbolicFn* s = f.as_symbolic()) {
            if (auto v = sym::eval_fast(s->expr, t)) return *v;
        }
        return f.value(t);
    }
};

// integral over the region between x0 (singular) and x0 + sigma*delta
// (bounded: the integrand is known to be bounded there, so it cannot diverge)
QuadResult singular_end(const RegulatedFn& f, double x0, double sigma, double delta, double tol, bool bounded = false) {
    Evaluator ev{f};
    if (!bounded) {
        Shells sh = shell_integrals(f, x0, x0 + sigma * delta, 8);
        if (!shells_decay(sh.signed_))
            throw IntegrabilityError("integral diverges next to t=" + std::to_string(x0));
    }
    double W0 = 1.0 / delta;
    double kappa = tail_frequency(f, x0, sigma, 1e6 * W0);
    QuadResult r;
    r.certified = false;
    if (kappa > 0) {
        // w-substitution, blocks of one full period, Richardson in the block count
        double P = 2 * std::numbers::pi / kappa;
        auto g = [&](double w) { return ev(x0 + sigma / w) / (w * w); };
        const int J = 8, K0 = 4;
        int Kmax = K0 << J;
        double btol = tol * 1e-2 / Kmax;
        std::vector<double> S;
        double acc = 0, qerr = 0;
        int next = K0;
        for (int k = 0; k < Kmax; ++k) {
            // never ask for more than rounding allows on a block
            if (k == 1) btol = std::max(btol, 1e-15 * std::fabs(acc));
            QuadResult b = gauss_kronrod(g, W0 + k * P, W0 + (k + 1) * P, btol, 2000);
            acc += b.value;
            qerr += b.error;
            r.evals += b.evals;
            if (k + 1 == next) { S.push_back(acc); next *= 2; }
        }
        int L = int(S.size());
        std::vector<std::vector<double>> R(L, std::vector<double>(L));
        for (int j = 0; j < L; ++j) {
            R[j][0] = S[j];
            for (int i = 1; i <= j; ++i) R[j][i] = R[j][i - 1] + (R[j][i - 1] - R[j - 1][i - 1]) / (std::ldexp(1.0, i) - 1);
        }
        double best = R[L - 1][0], berr = INFINITY;
        for (int j = 2; j < L; ++j) {
            double e = std::fabs(R[j][j] - R[j - 1][j - 1]);
            if (e < berr) { berr = e; best = R[j][j]; }
        }
        r.value = best;
        r.error = berr + qerr;
        r.method = "w-substitution + block Richardson";
        // orientation: for sigma = -1 the region is (x0 - delta, x0) and dt = dw / w^2 keeps the sign
        return r;
    }
    if (kappa < 0) throw UnsupportedError("cannot bound the oscillatory tail next to t=" + std::to_string(x0));
    double lo = sigma > 0 ? x0 : x0 - delta, hi = sigma > 0 ? x0 + delta : x0;
    r = tanh_sinh(ev, lo, hi, tol);
    return r;
}

// find eps with sup |f| on the open end cell times eps <= budget; nullopt if unbounded
std::optional<std::pair<double, double>> trim(const RegulatedFn& f, double x0, double sigma, double len, double budget) {
    double eps = 0.25 * len;
    for (int i = 0; i < 200; ++i) {
        double lo = sigma > 0 ? x0 : x0 - eps, hi = sigma > 0 ? x0 + eps : x0;
        Iv e = f.enclose(lo, hi);
        if (e.bounded()) {
            double m = e.mag();
            if (m * eps <= budget) return std::pair{eps, m * eps};
            if (m > 0 && std::isfinite(m)) {
                double want = budget / m;
                eps = std::max(std::min(0.5 * eps, want), 0.125 * eps);
                continue;
            }
        }
        eps *= 0.5;
        if (eps < 1e-300) break;
    }
    return std::nullopt;
}

QuadResult integrate_piece(const RegulatedFn& f, double x0, double x1, double tol, int depth) {
    Evaluator ev{f};
    double len = x1 - x0;
    QuadResult r;
    if (len <= 0) return r;
    auto lt = trim(f, x0, 1, len, tol / 8);
    auto rt = trim(f, x1, -1, len, tol / 8);
    // a bounded end that needs a very short trim is a non-decaying oscillation;
    // it goes to the w-substitution when its frequency is linear in 1/|t - x0|
    auto oscillatory = [&](const std::optional<std::pair<double, double>>& tr, double x, double sigma) {
        if (!tr || tr->first >= 1e-7 * len) return false;
        return tail_frequency(f, x, sigma, 1e6 / len) > 0;
    };
    bool lhard = !lt || oscillatory(lt, x0, 1), rhard = !rt || oscillatory(rt, x1, -1);
    if ((lhard || rhard) && depth < 2) {
        double mid = x0 + 0.5 * len;
        QuadResult a, b;
        if (lhard) a = singular_end(f, x0, 1, 0.5 * len, tol / 2, lt.has_value());
        else a = integrate_piece(f, x0, mid, tol / 2, depth + 1);
        if (rhard) b = singular_end(f, x1, -1, 0.5 * len, tol / 2, rt.has_value());
        else b = integrate_piece(f, mid, x1, tol / 2, depth + 1);
        r.value = a.value + b.value;
        r.error = a.error + b.error;
        r.certified = a.certified && b.certified;
        r.evals = a.evals + b.evals;
        r.method = a.method == b.method ? a.method : a.method + "; " + b.method;
        return r;
    }
    if (!lt || !rt) throw IntegrabilityError("unbounded integrand on a short piece");
    double a = x0 + lt->first, b = x1 - rt->first;
    QuadResult m = gauss_kronrod(ev, a, b, 0.75 * tol);
    r.value = m.value;
    r.error = m.error + lt->second + rt->second;
    r.certified = m.error <= 0.75 * tol;
    r.evals = m.evals;
    r.method = "gauss-kronrod + enclosure tails";
    return r;
}

double sampled_integral(const SampledFn& s, double a, double b) {
    const Grid& g = *s.grid;
    auto val_at = [&](double t) {
        RegulatedFn tmp;   // unused, kept simple below
        (void)tmp;
        size_t k = g.locate(t);
        if (t == g.t[0]) return s.val[0];
        if (t == g.t[k + 1]) return s.val[k + 1];
        double w = (t - g.t[k]) / (g.t[k + 1] - g.t[k]);
        return s.right[k] + (s.val[k + 1] - s.right[k]) * w;
    };
    double total = 0;
    size_t k = g.locate(a);
    double cur = a;
    while (cur < b) {
        double nxt = std::min(b, g.t[k + 1]);
        // linear on (t[k], t[k+1]): right value at cur
        double w0 = (cur - g.t[k]) / (g.t[k + 1] - g.t[k]);
        double vl = s.right[k] + (s.val[k + 1] - s.right[k]) * w0;
        double vr = val_at(nxt);
        if (nxt == g.t[k + 1]) vr = s.val[k + 1];
        total += 0.5 * (vl + vr) * (nxt - cur);
        cur = nxt;
        ++k;
    }
    return total;
}

}  // namespace

QuadResult integrate_fn(const RegulatedFn& f, double a, double b, double tol) {
    if (a == b) return QuadResult{0, 0, true, 0, "empty"};
    if (a > b) {
        QuadResult r = integrate_fn(f, b, a, tol);
        r.value = -r.value;
        return r;
    }
    const Interval& d = f.domain();
    if (!d.contains(a) || !d.contains(b)) throw DomainError("integration limits outside the domain");
    if (f.exact()) {
        PiecewisePoly p = *f.to_poly();
        Rat v = p.integral(Rat::from_double(a), Rat::from_double(b));
        return QuadResult{v.to_double(), 0, true, 0, "exact"};
    }
    if (const SampledFn* s = f.as_sampled()) return QuadResult{sampled_integral(*s, a, b), 0, true, 0, "piecewise linear"};
    std::vector<double> pts{a};
    for (double x : f.break_points(a, b))
        if (x > a && x < b) pts.push_back(x);
    pts.push_back(b);
    size_t np = pts.size() - 1;
    QuadResult r;
    r.method.clear();
    for (size_t i = 0; i < np; ++i) {
        QuadResult p = integrate_piece(f, pts[i], pts[i + 1], tol / double(np), 0);
        r.value += p.value;
        r.error += p.error;
        r.certified = r.certified && p.certified;
        r.evals += p.evals;
        if (r.method.find(p.method) == std::string::npos) r.method += (r.method.empty() ? "" : "; ") + p.method;
    }
    return r;
}

Shells shell_integrals(const RegulatedFn& f, double x0, double x1, int count) {
    Shells s;
    double sigma = x1 > x0 ? 1.0 : -1.0;
    double d = std::fabs(x1 - x0);
    Evaluator ev{f};
    auto absf = [&](double t) { return std::fabs(ev(t)); };
    for (int k = 0; k < count; ++k) {
        double hi_off = d * std::ldexp(1.0, -k), lo_off = 0.5 * hi_off;
        double p = x0 + sigma * lo_off, q = x0 + sigma * hi_off;
        double lo = std::min(p, q), hi = std::max(p, q);
        QuadResult a = gauss_kronrod(ev, lo, hi, 1e-7 * hi_off, 20000);
        QuadResult b = gauss_kronrod(absf, lo, hi, 1e-7 * hi_off, 20000);
        if (a.error > 1e-6 * std::max(1.0, std::fabs(b.value))) s.complete = false;
        s.signed_.push_back(a.value);
        s.absolute.push_back(b.value);
    }
    return s;
}

bool shells_decay(const std::vector<double>& s) {
    size_t n = s.size();
    if (n < 4) return true;
    double early = 0, late = 0;
    for (size_t k = 0; k < n / 2; ++k) early = std::max(early, std::fabs(s[k]));
    for (size_t k = n / 2; k < n; ++k) late = std::max(late, std::fabs(s[k]));
    if (early == 0) return late == 0;
    return late <= 0.3 * early;
}

}  // namespace lrp
