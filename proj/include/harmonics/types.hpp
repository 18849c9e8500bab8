#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace harmonics {

/// Exact rational scalar used by every group-measure computation.
/// GMP-backed; always kept in canonical (reduced, positive-denominator) form.
using Rational = mpq_class;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two elements/measures from different groups were combined.
class GroupMismatchError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw ValidationError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p/q" or "p" (optionally signed). Rejects everything else.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw ParseError("empty rational literal");
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && (i == 0 || s[i - 1] == '/'));
        if (!ok) throw ParseError("bad rational literal: " + s);
    }
    Rational r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw ParseError("bad rational literal: " + s);
    if (mpz_sgn(mpq_denref(r.get_mpq_t())) == 0)
        throw ParseError("rational with zero denominator: " + s);
    r.canonicalize();
    return r;
}

inline std::string rational_to_string(const Rational& r) {
    return r.get_str();
}

inline double to_double(const Rational& r) {
    return r.get_d();
}

inline Rational rational_abs(const Rational& r) {
    return r < 0 ? Rational(-r) : r;
}

/// Fixed-point decimal rendering (round toward zero), deterministic across
/// platforms. Used for CSV output so byte-identical reruns are guaranteed.
inline std::string format_decimal(const Rational& r, int digits = 12) {
    mpz_class num = r.get_num();
    mpz_class den = r.get_den();
    bool neg = num < 0;
    if (neg) num = -num;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpz_class shifted = num * scale / den;
    mpz_class ip = shifted / scale;
    mpz_class fp = shifted % scale;
    std::string frac = fp.get_str();
    frac.insert(frac.begin(), static_cast<std::size_t>(digits) - frac.size(), '0');
    std::string out = (neg && shifted != 0 ? "-" : "") + ip.get_str() + "." + frac;
    return out;
}

}  // namespace harmonics
