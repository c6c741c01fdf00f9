#pragma once
#include <gmpxx.h>
#include <string>
#include <string_view>

namespace lrp {

// Exact rational, always canonical (mpq_class keeps den > 0 and reduced form).
class Rat {
public:
    Rat() = default;
    Rat(long n) : q_(n) {}
    Rat(int n) : q_(n) {}
    Rat(long n, long d);
    explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }
    // exact binary value of a double
    static Rat from_double(double x);
    // "p/q", "p", or a finite decimal like "-0.125"
    static Rat parse(std::string_view s);

    const mpq_class& q() const { return q_; }
    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }
    double to_double() const { return q_.get_d(); }
    std::string str() const;   // "p/q" or "p"
    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    Rat operator-() const { return Rat(mpq_class(-q_)); }
    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.q_ >= b.q_; }

private:
    mpq_class q_;
};

inline Rat abs(const Rat& a) { return a.sign() < 0 ? -a : a; }
inline const Rat& max(const Rat& a, const Rat& b) { return a < b ? b : a; }
inline const Rat& min(const Rat& a, const Rat& b) { return b < a ? b : a; }
Rat floor_rat(const Rat& a);   // greatest integer <= a
Rat pow(const Rat& a, int k);

} // namespace lrp
