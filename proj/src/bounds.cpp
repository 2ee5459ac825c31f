#include "tww/bounds.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace tww::bounds {

namespace {

[[noreturn]] void domain(const std::string& msg) { throw Error(ErrorKind::domain, msg); }

long long checked(__int128 v, const char* what) {
    if (v > INT64_MAX || v < INT64_MIN) domain(std::string(what) + " overflows");
    return static_cast<long long>(v);
}

long long ipow(long long base, long long exp) {
    if (exp < 0) domain("negative exponent");
    __int128 r = 1;
    for (long long i = 0; i < exp; ++i) {
        r *= base;
        if (r > INT64_MAX) domain("power overflows");
    }
    return static_cast<long long>(r);
}

}  // namespace

long long binomial(long long n, long long r) {
    if (r < 0) return 0;
    if (r == 0) return 1;
    if (n < 0 || n < r) return 0;
    __int128 num = 1;
    for (long long i = 0; i < r; ++i) {
        num *= (n - i);
        num /= (i + 1);  // exact: product of i+1 consecutive integers
        if (num > INT64_MAX) domain("binomial overflows");
    }
    return static_cast<long long>(num);
}

Rational::Rational(long long n, long long d) {
    if (d == 0) domain("zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num = n;
    den = d;
}

Rational Rational::operator+(const Rational& o) const {
    __int128 n = static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den;
    __int128 d = static_cast<__int128>(den) * o.den;
    return Rational(checked(n, "rational add"), checked(d, "rational add"));
}

Rational Rational::operator-(const Rational& o) const { return *this + Rational(-o.num, o.den); }

Rational Rational::operator*(const Rational& o) const {
    __int128 n = static_cast<__int128>(num) * o.num;
    __int128 d = static_cast<__int128>(den) * o.den;
    return Rational(checked(n, "rational mul"), checked(d, "rational mul"));
}

bool Rational::operator<(const Rational& o) const {
    return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
}

bool Rational::operator==(const Rational& o) const { return num == o.num && den == o.den; }

long long Rational::floor() const {
    long long q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

long long Params::get(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) domain("missing bound parameter '" + key + "'");
    return it->second;
}

Name name_from_string(const std::string& s) {
    static const std::map<std::string, Name> table = {
        {"f_of_a", Name::f_of_a},
        {"thm1", Name::thm1},
        {"thm2_upper", Name::thm2_upper},
        {"thm3", Name::thm3},
        {"thm4_hat", Name::thm4_hat},
        {"thm4_torso", Name::thm4_torso},
        {"thm5_hat", Name::thm5_hat},
        {"thm5_torso", Name::thm5_torso},
        {"thm6", Name::thm6},
        {"cor_apex_iter", Name::cor_apex_iter},
        {"lemma_width_adhesion", Name::lemma_width_adhesion},
        {"simpler_gadgets", Name::simpler_gadgets},
        {"torso_version", Name::torso_version},
        {"sperner", Name::sperner},
        {"cor_red_degree", Name::cor_red_degree},
    };
    auto it = table.find(s);
    if (it == table.end()) domain("unknown bound name '" + s + "'");
    return it->second;
}

std::string to_string(Name name) {
    switch (name) {
        case Name::f_of_a: return "f_of_a";
        case Name::thm1: return "thm1";
        case Name::thm2_upper: return "thm2_upper";
        case Name::thm3: return "thm3";
        case Name::thm4_hat: return "thm4_hat";
        case Name::thm4_torso: return "thm4_torso";
        case Name::thm5_hat: return "thm5_hat";
        case Name::thm5_torso: return "thm5_torso";
        case Name::thm6: return "thm6";
        case Name::cor_apex_iter: return "cor_apex_iter";
        case Name::lemma_width_adhesion: return "lemma_width_adhesion";
        case Name::simpler_gadgets: return "simpler_gadgets";
        case Name::torso_version: return "torso_version";
        case Name::sperner: return "sperner";
        case Name::cor_red_degree: return "cor_red_degree";
    }
    return "?";
}

namespace {

Value exact_value(Rational r, std::string formula) {
    Value v;
    v.exact = true;
    v.rational = r;
    v.lo = v.hi = r.to_double();
    v.width_cap = r.floor();
    v.formula = std::move(formula);
    return v;
}

// f(a) = (a + sqrt(a + ln a) + sqrt(a) + 2 ln a) / 2 as an outward interval
// at the given precision; endpoints rounded outward to double.
void eval_f(long long a, mpfr_prec_t prec, double& lo, double& hi) {
    auto once = [a, prec](mpfr_rnd_t rnd) {
        mpfr_t x, lna, s1, s2, acc;
        mpfr_inits2(prec, x, lna, s1, s2, acc, static_cast<mpfr_ptr>(nullptr));
        mpfr_set_si(x, a, rnd);
        mpfr_log(lna, x, rnd);      // ln a
        mpfr_add(s1, x, lna, rnd);  // a + ln a
        mpfr_sqrt(s1, s1, rnd);     // sqrt(a + ln a)
        mpfr_sqrt(s2, x, rnd);      // sqrt(a)
        mpfr_set_si(acc, a, rnd);
        mpfr_add(acc, acc, s1, rnd);
        mpfr_add(acc, acc, s2, rnd);
        mpfr_mul_si(lna, lna, 2, rnd);
        mpfr_add(acc, acc, lna, rnd);
        mpfr_div_si(acc, acc, 2, rnd);
        double out = mpfr_get_d(acc, rnd);
        mpfr_clears(x, lna, s1, s2, acc, static_cast<mpfr_ptr>(nullptr));
        return out;
    };
    lo = once(MPFR_RNDD);
    hi = once(MPFR_RNDU);
}

// thm1(k) = 3k/2 + 1 + (sqrt(k + ln k) + sqrt(k) + 2 ln k)/2 = k + 1 + f(k)
void eval_thm1(long long k, mpfr_prec_t prec, double& lo, double& hi) {
    double flo, fhi;
    eval_f(k, prec, flo, fhi);
    lo = std::nextafter(static_cast<double>(k) + 1 + flo, -1e300);
    hi = std::nextafter(static_cast<double>(k) + 1 + fhi, 1e300);
}

Value interval_value(long long param, bool thm1_form, std::string formula) {
    Value v;
    v.exact = false;
    if (thm1_form)
        eval_thm1(param, 128, v.lo, v.hi);
    else
        eval_f(param, 128, v.lo, v.hi);
    v.width_cap = static_cast<long long>(std::floor(v.lo));
    if (v.width_cap != static_cast<long long>(std::floor(v.hi)))
        domain("bound enclosure straddles an integer at default precision");
    v.formula = std::move(formula);
    return v;
}

// D_k = max(2^k C(2k-3,k-1) + 2^(k+1) - 2, 4^k + 2^k - 2); dominates every
// constant term of both gadget chains.
long long d_k_constant(long long k) {
    long long t1 = checked(static_cast<__int128>(ipow(2, k)) * binomial(2 * k - 3, k - 1) +
                               ipow(2, k + 1) - 2,
                           "D_k");
    long long t2 = checked(static_cast<__int128>(ipow(4, k)) + ipow(2, k) - 2, "D_k");
    return std::max(t1, t2);
}

}  // namespace

Value evaluate(Name name, const Params& p) {
    switch (name) {
        case Name::f_of_a: {
            long long a = p.get("a");
            if (a < 1) domain("f_of_a needs a >= 1");
            if (a == 1)  // sqrt(1) and ln(1) are exact
                return exact_value(Rational(3, 2), "(a + sqrt(a + ln a) + sqrt(a) + 2 ln a)/2");
            return interval_value(a, false, "(a + sqrt(a + ln a) + sqrt(a) + 2 ln a)/2");
        }
        case Name::thm1: {
            long long k = p.get("k");
            if (k < 1) domain("thm1 needs k >= 1");
            if (k == 1)
                return exact_value(Rational(7, 2),
                                   "3k/2 + 1 + (sqrt(k + ln k) + sqrt(k) + 2 ln k)/2");
            return interval_value(k, true, "3k/2 + 1 + (sqrt(k + ln k) + sqrt(k) + 2 ln k)/2");
        }
        case Name::thm2_upper: {
            long long w = p.get("w");
            if (w < 0) domain("thm2_upper needs w >= 0");
            return exact_value(Rational(w + 2), "w + 2");
        }
        case Name::thm3: {
            long long t = p.get("t");
            if (t < 0) domain("thm3 needs t >= 0");
            return exact_value(Rational(std::max(8 * t + 6, 18ll)), "max(8t + 6, 18)");
        }
        case Name::thm4_hat: {
            long long t = p.get("t");
            if (t < 0) domain("thm4_hat needs t >= 0");
            return exact_value(Rational(std::max(8 * t + 14, 70ll)), "max(8t + 14, 70)");
        }
        case Name::thm4_torso: {
            long long t = p.get("t");
            if (t < 0) domain("thm4_torso needs t >= 0");
            long long q = checked(4 * (static_cast<__int128>(t) * t + t) + 14, "thm4_torso");
            return exact_value(Rational(std::max(q, 70ll)), "max(4(t^2 + t) + 14, 70)");
        }
        case Name::thm5_hat: {
            long long k = p.get("k"), t = p.get("t");
            if (k < 1 || t < 0) domain("thm5_hat needs k >= 1, t >= 0");
            long long v =
                checked(static_cast<__int128>(ipow(2, k)) * t + d_k_constant(k), "thm5_hat");
            return exact_value(Rational(v), "2^k t + D_k");
        }
        case Name::thm5_torso: {
            // The leading coefficient 2^k C(t,k-1) <= 2^k/(k-1)! t^(k-1);
            // the linear torso term rides along explicitly since no
            // constant can absorb it.
            long long k = p.get("k"), t = p.get("t");
            if (k < 3 || t < 0) domain("thm5_torso needs k >= 3, t >= 0");
            long long v = checked(static_cast<__int128>(ipow(2, k)) * (t + binomial(t, k - 1)) +
                                      d_k_constant(k),
                                  "thm5_torso");
            return exact_value(Rational(v), "2^k (t + C(t,k-1)) + D'_k");
        }
        case Name::thm6:
        case Name::lemma_width_adhesion: {
            long long k = p.get("k"), w = p.get("w");
            if (k < 1 || w < 0) domain("width/adhesion bound needs k >= 1, w >= 0");
            long long v = 3 * ipow(2, k - 1) + std::max(w - k - 2, 0ll);
            return exact_value(Rational(v), "3*2^(k-1) + max(w - k - 2, 0)");
        }
        case Name::cor_apex_iter: {
            long long a = p.get("a"), d = p.get("d");
            if (a < 0 || d < 0) domain("cor_apex_iter needs a, d >= 0");
            long long v = checked(static_cast<__int128>(ipow(2, a)) * d + ipow(2, a + 1) - 2,
                                  "cor_apex_iter");
            return exact_value(Rational(v), "2^|A| d + 2^(|A|+1) - 2");
        }
        case Name::simpler_gadgets: {
            long long k = p.get("k"), t = p.get("t");
            if (k < 1 || t < 0) domain("simpler_gadgets needs k >= 1, t >= 0");
            long long a = checked(static_cast<__int128>(ipow(2, k)) * t + ipow(2, k + 1) - 2,
                                  "simpler_gadgets");
            long long b =
                checked(static_cast<__int128>(ipow(4, k)) + ipow(2, k) - 2, "simpler_gadgets");
            return exact_value(Rational(std::max(a, b)),
                               "max(2^k t + 2^(k+1) - 2, 4^k + 2^k - 2)");
        }
        case Name::torso_version: {
            long long k = p.get("k"), t = p.get("t");
            if (k < 1 || t < 0) domain("torso_version needs k >= 1, t >= 0");
            long long v = std::max({k + 1, t + binomial(t, k - 1), t + binomial(2 * k - 3, k - 1)});
            return exact_value(Rational(v), "max(k+1, t + C(t,k-1), t + C(2k-3,k-1))");
        }
        case Name::sperner: {
            long long n = p.get("n"), k = p.get("k");
            if (n < 1 || k < 1 || k > n) domain("sperner needs 1 <= k <= n");
            long long v = k <= n / 2 ? binomial(n, k) : binomial(n, n / 2);
            return exact_value(Rational(v), "C(n, min(k, floor(n/2)))");
        }
        case Name::cor_red_degree: {
            long long delta = p.get("delta"), k = p.get("k");
            if (delta < 0 || k < 2) domain("cor_red_degree needs delta >= 0, k >= 2");
            long long v = std::max(binomial(delta, k - 1), binomial(2 * k - 3, k - 1));
            return exact_value(Rational(v), "max(C(delta,k-1), C(2k-3,k-1))");
        }
    }
    domain("unhandled bound");
}

bool width_within(long long width, Name name, const Params& params) {
    Value v = evaluate(name, params);
    if (v.exact) return Rational(width) <= v.rational;
    long long param = name == Name::thm1 ? params.get("k") : params.get("a");
    for (mpfr_prec_t prec = 128; prec <= 4096; prec *= 2) {
        double lo, hi;
        if (name == Name::thm1)
            eval_thm1(param, prec, lo, hi);
        else
            eval_f(param, prec, lo, hi);
        if (static_cast<double>(width) <= lo) return true;
        if (static_cast<double>(width) > hi) return false;
    }
    throw Error(ErrorKind::internal, "interval comparison did not converge");
}

}  // namespace tww::bounds
