#include "lrp/rational.hpp"
#include "lrp/error.hpp"

#include <cmath>

namespace lrp {

Rat::Rat(long n, long d) {
    if (d == 0) throw DomainError("rational with zero denominator");
    q_ = mpq_class(n, d);
    q_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw DomainError("rational division by zero");
    q_ /= o.q_;
    return *this;
}

Rat Rat::from_double(double x) {
    if (!std::isfinite(x)) throw DomainError("non-finite value has no rational form");
    mpq_class q(x);   // exact
    return Rat(q);
}

Rat Rat::parse(std::string_view s) {
    std::string t(s);
    while (!t.empty() && (t.back() == ' ' || t.back() == '\t')) t.pop_back();
    size_t b = t.find_first_not_of(" \t");
    if (b == std::string::npos) throw ConfigError("empty rational literal");
    t = t.substr(b);
    if (!t.empty() && t[0] == '+') t = t.substr(1);
    auto dot = t.find('.');
    if (dot != std::string::npos) {
        if (t.find('/') != std::string::npos || t.find_first_of("eE") != std::string::npos)
            throw ConfigError("bad rational literal: " + t);
        bool neg = !t.empty() && t[0] == '-';
        std::string ip = t.substr(neg ? 1 : 0, dot - (neg ? 1 : 0));
        std::string fp = t.substr(dot + 1);
        std::string digits = (ip.empty() ? "0" : ip) + fp;
        for (char c : digits)
            if (c < '0' || c > '9') throw ConfigError("bad rational literal: " + t);
        mpz_class n(digits), d;
        mpz_ui_pow_ui(d.get_mpz_t(), 10, fp.size());
        mpq_class q(n, d);
        q.canonicalize();
        if (neg) q = -q;
        return Rat(q);
    }
    mpq_class q;
    if (q.set_str(t, 10) != 0) throw ConfigError("bad rational literal: " + t);
    if (q.get_den() == 0) throw ConfigError("zero denominator in literal: " + t);
    q.canonicalize();
    return Rat(q);
}

std::string Rat::str() const { return q_.get_str(); }

Rat floor_rat(const Rat& a) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), a.q().get_num_mpz_t(), a.q().get_den_mpz_t());
    return Rat(mpq_class(f));
}

Rat pow(const Rat& a, int k) {
    if (k < 0) return Rat(1) / pow(a, -k);
    Rat r(1), b = a;
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

} // namespace lrp
