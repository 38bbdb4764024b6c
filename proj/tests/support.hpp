#ifndef DIOPH_TESTS_SUPPORT_HPP
#define DIOPH_TESTS_SUPPORT_HPP

// Random generators and brute-force oracles shared by the test suites. The
// oracles work on raw monomial data and avoid the library code they check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <dioph/dioph.hpp>

namespace testing_support
{

using dioph::Exponents;
using dioph::Integer;
using dioph::Monomial;
using dioph::Polynomial;
using Rng = std::mt19937_64;

inline long uniform(Rng &rng, long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

// Nonconstant, uses every one of its nvars variables.
inline Polynomial random_polynomial(Rng &rng, std::size_t nvars, std::size_t max_terms, unsigned max_degree,
                                    long max_coeff)
{
    for (;;) {
        std::vector<Monomial> terms;
        const auto count = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(max_terms)));
        for (std::size_t i = 0; i < count; ++i) {
            Exponents e(nvars, 0);
            const auto deg = static_cast<unsigned>(uniform(rng, 0, max_degree));
            for (unsigned d = 0; d < deg; ++d) {
                ++e[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(nvars) - 1))];
            }
            long c = 0;
            while (c == 0) {
                c = uniform(rng, -max_coeff, max_coeff);
            }
            terms.push_back({Integer(c), e});
        }
        auto p = Polynomial::from_terms(nvars, terms);
        if (p.has_nonconstant() && p.uses_all_variables()) {
            return p;
        }
    }
}

// x_v -> -x_v, done on the raw monomials.
inline Polynomial flip_sign(const Polynomial &p, std::size_t v)
{
    std::vector<Monomial> terms;
    for (const auto &m : p.monomials()) {
        terms.push_back({m.exponents[v] % 2 == 1 ? Integer(-m.coeff) : m.coeff, m.exponents});
    }
    return Polynomial::from_terms(p.nvars(), terms);
}

// Variable i becomes variable perm[i].
inline Polynomial rename(const Polynomial &p, const std::vector<std::size_t> &perm)
{
    std::vector<Monomial> terms;
    for (const auto &m : p.monomials()) {
        Exponents e(p.nvars(), 0);
        for (std::size_t i = 0; i < p.nvars(); ++i) {
            e[perm[i]] = m.exponents[i];
        }
        terms.push_back({m.coeff, e});
    }
    return Polynomial::from_terms(p.nvars(), terms);
}

inline Polynomial scale(const Polynomial &p, long c)
{
    std::vector<Monomial> terms;
    for (const auto &m : p.monomials()) {
        terms.push_back({m.coeff * c, m.exponents});
    }
    return Polynomial::from_terms(p.nvars(), terms);
}

// A random sequence of the three equivalence operations.
inline Polynomial random_equivalent(Rng &rng, Polynomial p, std::size_t steps)
{
    for (std::size_t s = 0; s < steps; ++s) {
        switch (uniform(rng, 0, 2)) {
        case 0: {
            long c = 0;
            while (c == 0) {
                c = uniform(rng, -4, 4);
            }
            p = scale(p, c);
            break;
        }
        case 1:
            p = flip_sign(p, static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(p.nvars()) - 1)));
            break;
        default: {
            std::vector<std::size_t> perm(p.nvars());
            std::iota(perm.begin(), perm.end(), std::size_t{0});
            std::shuffle(perm.begin(), perm.end(), rng);
            p = rename(p, perm);
        }
        }
    }
    return p;
}

// Orbit key: the smallest sorted (exponents, coefficient) list over every
// signed permutation and both signs, after dividing out the content.
inline std::vector<std::pair<Exponents, long>> orbit_key(const Polynomial &p)
{
    long g = 0;
    for (const auto &m : p.monomials()) {
        g = std::gcd(g, std::abs(m.coeff.get_si()));
    }
    const std::size_t n = p.nvars();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<std::pair<Exponents, long>> best;
    bool have = false;
    do {
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            for (int global : {1, -1}) {
                std::vector<std::pair<Exponents, long>> key;
                for (const auto &m : p.monomials()) {
                    Exponents e(n, 0);
                    long c = global * m.coeff.get_si() / g;
                    for (std::size_t i = 0; i < n; ++i) {
                        e[perm[i]] = m.exponents[i];
                        if ((mask >> i) & 1u && m.exponents[i] % 2 == 1) {
                            c = -c;
                        }
                    }
                    key.emplace_back(e, c);
                }
                std::sort(key.begin(), key.end());
                if (!have || key < best) {
                    best = key;
                    have = true;
                }
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Every class with content-1 size <= h_max, by exhaustive generation of
// monomial sets in up to h_max/2 variables and orbit-key deduplication.
// Returns one member per class with its size.
inline std::vector<std::pair<std::uint64_t, Polynomial>> brute_force_classes(std::uint64_t h_max)
{
    std::vector<std::pair<std::uint64_t, Polynomial>> out;
    std::set<std::vector<std::pair<Exponents, long>>> seen;
    for (std::size_t n = 1; n <= h_max / 2; ++n) {
        // All exponent vectors with 2^deg <= h_max.
        std::vector<Exponents> shapes;
        Exponents e(n, 0);
        std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned budget) {
            if (i == n) {
                shapes.push_back(e);
                return;
            }
            for (unsigned k = 0; k <= budget; ++k) {
                e[i] = k;
                rec(i + 1, budget - k);
            }
            e[i] = 0;
        };
        unsigned max_deg = 0;
        while ((std::uint64_t{2} << max_deg) <= h_max) {
            ++max_deg;
        }
        rec(0, max_deg);
        std::vector<Monomial> chosen;
        std::function<void(std::size_t, std::uint64_t)> pick = [&](std::size_t next, std::uint64_t h) {
            if (!chosen.empty()) {
                auto p = Polynomial::from_terms(n, chosen);
                long g = 0;
                for (const auto &m : p.monomials()) {
                    g = std::gcd(g, std::abs(m.coeff.get_si()));
                }
                if (g == 1 && p.has_nonconstant() && p.uses_all_variables() && seen.insert(orbit_key(p)).second) {
                    out.emplace_back(h, p);
                }
            }
            for (std::size_t s = next; s < shapes.size(); ++s) {
                const std::uint64_t w = std::uint64_t{1} << dioph::total_degree(shapes[s]);
                for (long a = 1; h + static_cast<std::uint64_t>(a) * w <= h_max; ++a) {
                    for (long sign : {1, -1}) {
                        chosen.push_back({Integer(sign * a), shapes[s]});
                        pick(s + 1, h + static_cast<std::uint64_t>(a) * w);
                        chosen.pop_back();
                    }
                }
            }
        };
        pick(0, 0);
    }
    return out;
}

// All solutions in [-B, B]^n by plain nested iteration; values fit in
// 128 bits for the small inputs used here.
inline std::vector<std::vector<long>> naive_solutions(const Polynomial &p, long box)
{
    const std::size_t n = p.nvars();
    std::vector<std::vector<long>> out;
    std::vector<long> x(n, -box);
    for (;;) {
        __int128 total = 0;
        for (const auto &m : p.monomials()) {
            __int128 term = m.coeff.get_si();
            for (std::size_t i = 0; i < n; ++i) {
                for (std::uint32_t k = 0; k < m.exponents[i]; ++k) {
                    term *= x[i];
                }
            }
            total += term;
        }
        if (total == 0) {
            out.push_back(x);
        }
        std::size_t i = n;
        for (;;) {
            if (i == 0) {
                return out;
            }
            --i;
            if (++x[i] <= box) {
                break;
            }
            x[i] = -box;
        }
    }
}

inline std::vector<std::vector<long>> as_longs(const std::vector<dioph::SolutionTuple> &sols)
{
    std::vector<std::vector<long>> out;
    for (const auto &s : sols) {
        std::vector<long> v;
        for (const auto &x : s.values) {
            v.push_back(x.get_si());
        }
        out.push_back(v);
    }
    return out;
}

} // namespace testing_support

#endif
