#ifndef TWW_BOUNDS_HPP
#define TWW_BOUNDS_HPP

#include <map>
#include <string>

#include "tww/errors.hpp"

namespace tww::bounds {

// Closed-form width bounds. Every synthesizer asserts its output against
// one of these evaluators.
enum class Name {
    f_of_a,
    thm1,
    thm2_upper,
    thm3,
    thm4_hat,
    thm4_torso,
    thm5_hat,
    thm5_torso,
    thm6,
    cor_apex_iter,
    lemma_width_adhesion,
    simpler_gadgets,
    torso_version,
    sperner,
    cor_red_degree,
};

Name name_from_string(const std::string& s);
std::string to_string(Name name);

// Exact rational on 64-bit numerator/denominator; intermediate products run
// through 128 bits and overflow raises a domain error.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long value) : num(value) {}
    Rational(long long n, long long d);

    Rational operator+(const Rational&) const;
    Rational operator-(const Rational&) const;
    Rational operator*(const Rational&) const;
    bool operator<(const Rational&) const;
    bool operator==(const Rational&) const;
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }

    long long floor() const;
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;
};

struct Params {
    std::map<std::string, long long> values;
    long long get(const std::string& key) const;
    bool has(const std::string& key) const { return values.count(key) != 0; }
};

struct Value {
    bool exact = true;   // rational formula; lo == hi == rational
    Rational rational;   // meaningful when exact
    double lo = 0;       // outward enclosure, always filled
    double hi = 0;
    long long width_cap = 0;  // greatest integer width passing the bound
    std::string formula;
};

// Evaluates the named bound. Required parameters per name:
//   f_of_a: a >= 1            thm1: k >= 1         thm2_upper: w >= 0
//   thm3/thm4_hat/thm4_torso: t >= 0
//   thm5_hat: k >= 1, t       thm5_torso: k >= 3, t
//   thm6/lemma_width_adhesion: k >= 1, w >= 0
//   cor_apex_iter: a >= 0, d >= 0
//   simpler_gadgets: k >= 1, t >= 0
//   torso_version: k >= 1, t >= 0
//   sperner: n >= 1, 1 <= k <= n
//   cor_red_degree: delta >= 0, k >= 2
Value evaluate(Name name, const Params& params);

// Exact comparison width <= bound; for the square-root/log bounds the
// comparison is decided on an outward interval whose precision grows until
// the answer is unambiguous.
bool width_within(long long width, Name name, const Params& params);

// C(n, r) with C(n, 0) = 1 (n may be negative), 0 when r < 0 or 0 <= n < r.
long long binomial(long long n, long long r);

}  // namespace tww::bounds

#endif
