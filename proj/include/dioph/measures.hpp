#ifndef DIOPH_MEASURES_HPP
#define DIOPH_MEASURES_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <dioph/integer.hpp>
#include <dioph/polynomial.hpp>

namespace dioph
{

// log2 of L(P) held exactly: the sum of the monomial degrees plus
// log2 of each coefficient magnitude greater than one.
struct ExactLength {
    std::uint64_t degree_sum = 0;
    std::vector<Integer> log2_arguments;

    double approx() const
    {
        double v = static_cast<double>(degree_sum);
        for (const auto &a : log2_arguments) {
            long exp = 0;
            const double mant = mpz_get_d_2exp(&exp, a.get_mpz_t());
            v += std::log2(mant) + static_cast<double>(exp);
        }
        return v;
    }
};

struct Measures {
    Integer size_h;
    Integer length_big_l;
    ExactLength length_l;
    unsigned degree = 0;
    std::size_t num_monomials = 0;
};

// H(P) = sum |a_i| 2^{d_i}.
inline Integer compute_size(const Polynomial &p)
{
    Integer h = 0;
    for (const auto &m : p.monomials()) {
        h += abs(m.coeff) * pow2(m.degree());
    }
    return h;
}

inline Integer compute_big_length(const Polynomial &p)
{
    Integer l = 1;
    for (const auto &m : p.monomials()) {
        l *= abs(m.coeff) * pow2(m.degree());
    }
    return l;
}

// round(10 * log2(big_l)) with halves rounded up, decided exactly:
// the result m satisfies 2^(2m-1) <= big_l^20 < 2^(2m+1).
inline std::int64_t length_tenths(const Integer &big_l)
{
    if (big_l <= 0) {
        throw std::domain_error("length is defined for positive L only");
    }
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, big_l.get_mpz_t());
    const double approx = 10.0 * (std::log2(mant) + static_cast<double>(exp));
    std::int64_t m = static_cast<std::int64_t>(std::floor(approx + 0.5));
    const Integer l20 = ipow(big_l, 20);
    auto lower_ok = [&](std::int64_t c) { return 2 * c - 1 < 0 || pow2(static_cast<unsigned long>(2 * c - 1)) <= l20; };
    auto upper_ok = [&](std::int64_t c) { return l20 < pow2(static_cast<unsigned long>(2 * c + 1)); };
    while (!lower_ok(m)) {
        --m;
    }
    while (!upper_ok(m)) {
        ++m;
    }
    return m;
}

inline Measures compute_length(const Polynomial &p)
{
    Measures out;
    out.size_h = compute_size(p);
    out.length_big_l = compute_big_length(p);
    for (const auto &m : p.monomials()) {
        out.length_l.degree_sum += m.degree();
        const Integer mag = abs(m.coeff);
        if (mag > 1) {
            out.length_l.log2_arguments.push_back(mag);
        }
    }
    out.degree = p.degree();
    out.num_monomials = p.size();
    return out;
}

// One-decimal rendering of l(P), e.g. "8", "10.6".
inline std::string format_tenths(std::int64_t tenths)
{
    std::string s = std::to_string(tenths / 10);
    if (tenths % 10 != 0) {
        s += '.' + std::to_string(tenths % 10);
    }
    return s;
}

} // namespace dioph

#endif
