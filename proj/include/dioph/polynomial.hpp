#ifndef DIOPH_POLYNOMIAL_HPP
#define DIOPH_POLYNOMIAL_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <dioph/errors.hpp>
#include <dioph/integer.hpp>

namespace dioph
{

using Exponents = std::vector<std::uint32_t>;

inline unsigned total_degree(const Exponents &e)
{
    return std::accumulate(e.begin(), e.end(), 0u);
}

// Graded-lex descending: higher total degree first, then the exponent
// vector compared lexicographically with larger entries first.
inline bool graded_lex_before(const Exponents &a, const Exponents &b)
{
    const unsigned da = total_degree(a);
    const unsigned db = total_degree(b);
    if (da != db) {
        return da > db;
    }
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

struct Monomial {
    Integer coeff;
    Exponents exponents;

    unsigned degree() const
    {
        return total_degree(exponents);
    }
    bool is_constant() const
    {
        return std::all_of(exponents.begin(), exponents.end(), [](std::uint32_t k) { return k == 0; });
    }

    friend bool operator==(const Monomial &a, const Monomial &b)
    {
        return a.coeff == b.coeff && a.exponents == b.exponents;
    }
};

// A multivariate polynomial with integer coefficients held in reduced form:
// no two monomials share an exponent vector, no zero coefficients, and the
// monomials are kept in graded-lex descending order. nvars is the ambient
// variable count; use compacted() to drop variables that do not occur.
class Polynomial
{
public:
    Polynomial() = default;

    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    // Merges similar monomials, drops zeros and sorts.
    static Polynomial from_terms(std::size_t nvars, std::vector<Monomial> terms)
    {
        for (const auto &m : terms) {
            if (m.exponents.size() != nvars) {
                throw ArityError("monomial exponent vector does not match variable count");
            }
        }
        std::sort(terms.begin(), terms.end(),
                  [](const Monomial &a, const Monomial &b) { return graded_lex_before(a.exponents, b.exponents); });
        Polynomial p(nvars);
        for (auto &m : terms) {
            if (!p.terms_.empty() && p.terms_.back().exponents == m.exponents) {
                p.terms_.back().coeff += m.coeff;
            } else {
                p.terms_.push_back(std::move(m));
            }
        }
        std::erase_if(p.terms_, [](const Monomial &m) { return m.coeff == 0; });
        return p;
    }

    static Polynomial constant(const Integer &c, std::size_t nvars)
    {
        Polynomial p(nvars);
        if (c != 0) {
            p.terms_.push_back({c, Exponents(nvars, 0)});
        }
        return p;
    }

    static Polynomial variable(std::size_t index, std::size_t nvars)
    {
        if (index >= nvars) {
            throw ArityError("variable index out of range");
        }
        Exponents e(nvars, 0);
        e[index] = 1;
        Polynomial p(nvars);
        p.terms_.push_back({Integer(1), std::move(e)});
        return p;
    }

    std::size_t nvars() const
    {
        return nvars_;
    }
    std::span<const Monomial> monomials() const
    {
        return terms_;
    }
    std::size_t size() const
    {
        return terms_.size();
    }
    bool is_zero() const
    {
        return terms_.empty();
    }

    unsigned degree() const
    {
        return terms_.empty() ? 0 : terms_.front().degree();
    }

    unsigned degree_in(std::size_t var) const
    {
        unsigned d = 0;
        for (const auto &m : terms_) {
            d = std::max<unsigned>(d, m.exponents[var]);
        }
        return d;
    }

    bool has_nonconstant() const
    {
        return !terms_.empty() && !terms_.front().is_constant();
    }

    bool uses_variable(std::size_t var) const
    {
        return std::any_of(terms_.begin(), terms_.end(), [var](const Monomial &m) { return m.exponents[var] > 0; });
    }

    bool uses_all_variables() const
    {
        for (std::size_t v = 0; v < nvars_; ++v) {
            if (!uses_variable(v)) {
                return false;
            }
        }
        return true;
    }

    // Content: gcd of the absolute values of the coefficients (0 for the zero polynomial).
    Integer content() const
    {
        Integer g = 0;
        for (const auto &m : terms_) {
            g = gcd(g, m.coeff);
        }
        return g;
    }

    // Removes variables that do not occur, keeping the relative order of the rest.
    Polynomial compacted() const
    {
        std::vector<std::size_t> keep;
        for (std::size_t v = 0; v < nvars_; ++v) {
            if (uses_variable(v)) {
                keep.push_back(v);
            }
        }
        if (keep.size() == nvars_) {
            return *this;
        }
        std::vector<Monomial> terms;
        terms.reserve(terms_.size());
        for (const auto &m : terms_) {
            Exponents e;
            e.reserve(keep.size());
            for (auto v : keep) {
                e.push_back(m.exponents[v]);
            }
            terms.push_back({m.coeff, std::move(e)});
        }
        return from_terms(keep.size(), std::move(terms));
    }

    // Embeds into a larger variable space; new variables are appended.
    Polynomial widened(std::size_t nvars) const
    {
        if (nvars < nvars_) {
            throw ArityError("cannot narrow a polynomial");
        }
        Polynomial p(nvars);
        for (const auto &m : terms_) {
            Exponents e = m.exponents;
            e.resize(nvars, 0);
            p.terms_.push_back({m.coeff, std::move(e)});
        }
        return p;
    }

    Polynomial operator-() const
    {
        Polynomial p = *this;
        for (auto &m : p.terms_) {
            m.coeff = -m.coeff;
        }
        return p;
    }

    friend Polynomial operator+(const Polynomial &a, const Polynomial &b)
    {
        require_same_space(a, b);
        std::vector<Monomial> terms(a.terms_);
        terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
        return from_terms(a.nvars_, std::move(terms));
    }

    friend Polynomial operator-(const Polynomial &a, const Polynomial &b)
    {
        return a + (-b);
    }

    friend Polynomial operator*(const Polynomial &a, const Polynomial &b)
    {
        require_same_space(a, b);
        std::map<Exponents, Integer> acc;
        Exponents e(a.nvars_);
        for (const auto &ma : a.terms_) {
            for (const auto &mb : b.terms_) {
                for (std::size_t v = 0; v < a.nvars_; ++v) {
                    e[v] = ma.exponents[v] + mb.exponents[v];
                }
                acc[e] += ma.coeff * mb.coeff;
            }
        }
        std::vector<Monomial> terms;
        terms.reserve(acc.size());
        for (auto &[exps, c] : acc) {
            terms.push_back({std::move(c), exps});
        }
        return from_terms(a.nvars_, std::move(terms));
    }

    friend Polynomial operator*(const Integer &c, const Polynomial &p)
    {
        if (c == 0) {
            return Polynomial(p.nvars_);
        }
        Polynomial r = p;
        for (auto &m : r.terms_) {
            m.coeff *= c;
        }
        return r;
    }

    Polynomial pow(unsigned exponent) const
    {
        Polynomial result = constant(Integer(1), nvars_);
        Polynomial base = *this;
        while (exponent > 0) {
            if (exponent & 1u) {
                result = result * base;
            }
            exponent >>= 1;
            if (exponent > 0) {
                base = base * base;
            }
        }
        return result;
    }

    friend bool operator==(const Polynomial &a, const Polynomial &b)
    {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

private:
    static void require_same_space(const Polynomial &a, const Polynomial &b)
    {
        if (a.nvars_ != b.nvars_) {
            throw ArityError("polynomials live in different variable spaces");
        }
    }

    std::size_t nvars_ = 0;
    std::vector<Monomial> terms_;
};

// Exact value of p at the given point.
inline Integer evaluate(const Polynomial &p, std::span<const Integer> values)
{
    if (values.size() != p.nvars()) {
        throw ArityError("expected " + std::to_string(p.nvars()) + " values, got " + std::to_string(values.size()));
    }
    std::vector<std::vector<Integer>> powers(p.nvars());
    for (std::size_t v = 0; v < p.nvars(); ++v) {
        const unsigned d = p.degree_in(v);
        powers[v].resize(d + 1);
        powers[v][0] = 1;
        for (unsigned k = 1; k <= d; ++k) {
            powers[v][k] = powers[v][k - 1] * values[v];
        }
    }
    Integer total = 0;
    Integer term;
    for (const auto &m : p.monomials()) {
        term = m.coeff;
        for (std::size_t v = 0; v < p.nvars(); ++v) {
            if (m.exponents[v] != 0) {
                term *= powers[v][m.exponents[v]];
            }
        }
        total += term;
    }
    return total;
}

// Composes p with images[i] in place of variable i. All images share one
// parameter space, which becomes the variable space of the result.
inline Polynomial substitute(const Polynomial &p, std::span<const Polynomial> images)
{
    if (images.size() != p.nvars()) {
        throw ArityError("substitution must cover all " + std::to_string(p.nvars()) + " variables");
    }
    const std::size_t k = images.empty() ? 0 : images.front().nvars();
    for (const auto &img : images) {
        if (img.nvars() != k) {
            throw ArityError("substitution images use different parameter spaces");
        }
    }
    std::vector<std::vector<Polynomial>> powers(p.nvars());
    for (std::size_t v = 0; v < p.nvars(); ++v) {
        powers[v].push_back(Polynomial::constant(Integer(1), k));
        for (unsigned e = 1; e <= p.degree_in(v); ++e) {
            powers[v].push_back(powers[v].back() * images[v]);
        }
    }
    Polynomial result(k);
    for (const auto &m : p.monomials()) {
        Polynomial term = Polynomial::constant(m.coeff, k);
        for (std::size_t v = 0; v < p.nvars(); ++v) {
            if (m.exponents[v] != 0) {
                term = term * powers[v][m.exponents[v]];
            }
        }
        result = result + term;
    }
    return result;
}

} // namespace dioph

#endif
