#ifndef DIOPH_INTEGER_HPP
#define DIOPH_INTEGER_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dioph
{

// Every coefficient, solution coordinate and measure is an exact integer.
using Integer = mpz_class;

inline std::string to_string(const Integer &v)
{
    return v.get_str(10);
}

// Accepts an optional sign followed by decimal digits.
inline Integer parse_integer(std::string_view text)
{
    std::string s(text);
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) {
        throw std::invalid_argument("not an integer: '" + s + "'");
    }
    for (std::size_t j = i; j < s.size(); ++j) {
        if (s[j] < '0' || s[j] > '9') {
            throw std::invalid_argument("not an integer: '" + s + "'");
        }
    }
    if (s[0] == '+') {
        s.erase(0, 1);
    }
    return Integer(s, 10);
}

inline Integer pow2(unsigned long exponent)
{
    Integer r;
    mpz_setbit(r.get_mpz_t(), exponent);
    return r;
}

inline Integer ipow(const Integer &base, unsigned long exponent)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

inline Integer gcd(const Integer &a, const Integer &b)
{
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline int sign(const Integer &v)
{
    return sgn(v);
}

// Sign of |a| - |b|.
inline int cmpabs(const Integer &a, const Integer &b)
{
    return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

inline bool fits_int64(const Integer &v)
{
    return mpz_fits_slong_p(v.get_mpz_t()) != 0 && sizeof(long) == sizeof(std::int64_t);
}

inline std::int64_t to_int64(const Integer &v)
{
    if (!fits_int64(v)) {
        throw std::overflow_error("integer does not fit in 64 bits: " + to_string(v));
    }
    return static_cast<std::int64_t>(v.get_si());
}

// Non-negative residue of v modulo m (m > 0).
inline std::uint64_t mod_u64(const Integer &v, std::uint64_t m)
{
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(m));
    return static_cast<std::uint64_t>(r.get_ui());
}

// Exact integer square root when v is a perfect square.
inline bool exact_sqrt(const Integer &v, Integer &root)
{
    if (v < 0 || mpz_perfect_square_p(v.get_mpz_t()) == 0) {
        return false;
    }
    mpz_sqrt(root.get_mpz_t(), v.get_mpz_t());
    return true;
}

} // namespace dioph

#endif
