#ifndef DIOPH_EQUIVALENCE_HPP
#define DIOPH_EQUIVALENCE_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <dioph/errors.hpp>
#include <dioph/integer.hpp>
#include <dioph/polynomial.hpp>

namespace dioph
{

// Maps an input P to Q(y) = global_sign / divisor * P(x), where original
// variable i is replaced by signs[i] * y[permutation[i]].
struct Transform {
    Integer divisor = 1;
    int global_sign = 1;
    std::vector<int> signs;
    std::vector<std::size_t> permutation;

    static Transform identity(std::size_t nvars)
    {
        Transform t;
        t.signs.assign(nvars, 1);
        t.permutation.resize(nvars);
        std::iota(t.permutation.begin(), t.permutation.end(), std::size_t{0});
        return t;
    }
};

struct CanonicalForm {
    Polynomial rep;
    Transform transform;
};

struct CanonicalizeOptions {
    std::size_t max_vars = 8;
};

inline Polynomial apply_transform(const Polynomial &p, const Transform &t)
{
    const std::size_t n = p.nvars();
    if (t.signs.size() != n || t.permutation.size() != n) {
        throw ArityError("transform does not match variable count");
    }
    std::vector<Monomial> terms;
    terms.reserve(p.size());
    for (const auto &m : p.monomials()) {
        Integer c = m.coeff;
        if (t.divisor != 1) {
            if (!mpz_divisible_p(c.get_mpz_t(), t.divisor.get_mpz_t())) {
                throw std::invalid_argument("transform divisor does not divide every coefficient");
            }
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), t.divisor.get_mpz_t());
        }
        int s = t.global_sign;
        Exponents e(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            e[t.permutation[i]] = m.exponents[i];
            if (t.signs[i] < 0 && (m.exponents[i] & 1u)) {
                s = -s;
            }
        }
        if (s < 0) {
            c = -c;
        }
        terms.push_back({std::move(c), std::move(e)});
    }
    return Polynomial::from_terms(n, std::move(terms));
}

inline Polynomial apply_signed_permutation(const Polynomial &p, const std::vector<std::size_t> &permutation,
                                           const std::vector<int> &signs)
{
    Transform t;
    t.signs = signs;
    t.permutation = permutation;
    return apply_transform(p, t);
}

// Operation (i) restricted to the class representative's scaling: divide by
// the content and make the leading monomial's coefficient positive.
inline Polynomial normalize_content(const Polynomial &p)
{
    if (p.is_zero()) {
        return p;
    }
    Transform t = Transform::identity(p.nvars());
    t.divisor = p.content();
    t.global_sign = p.monomials().front().coeff < 0 ? -1 : 1;
    return apply_transform(p, t);
}

// Total order used to pick class representatives; negative when a is preferred.
// Compares, in turn: the exponent vectors in monomial order (larger first),
// the coefficient magnitudes (larger first), then signs (positive first).
inline int compare_representatives(const Polynomial &a, const Polynomial &b)
{
    if (a.nvars() != b.nvars()) {
        return a.nvars() < b.nvars() ? -1 : 1;
    }
    if (a.size() != b.size()) {
        return a.size() < b.size() ? -1 : 1;
    }
    const auto ma = a.monomials();
    const auto mb = b.monomials();
    for (std::size_t j = 0; j < ma.size(); ++j) {
        if (ma[j].exponents != mb[j].exponents) {
            return graded_lex_before(ma[j].exponents, mb[j].exponents) ? -1 : 1;
        }
    }
    for (std::size_t j = 0; j < ma.size(); ++j) {
        const int c = cmpabs(ma[j].coeff, mb[j].coeff);
        if (c != 0) {
            return c > 0 ? -1 : 1;
        }
    }
    for (std::size_t j = 0; j < ma.size(); ++j) {
        const bool na = ma[j].coeff < 0;
        const bool nb = mb[j].coeff < 0;
        if (na != nb) {
            return na ? 1 : -1;
        }
    }
    return 0;
}

// Finds the preferred member of P's class under constant multiples, sign
// flips of variables and permutations of variables, by exhaustive search
// over the 2^n * n! signed permutations (n <= options.max_vars).
inline CanonicalForm canonicalize(const Polynomial &p, const CanonicalizeOptions &options = {})
{
    if (!p.has_nonconstant()) {
        throw std::invalid_argument("canonicalize needs at least one non-constant monomial");
    }
    if (!p.uses_all_variables()) {
        throw std::invalid_argument("canonicalize needs a polynomial without unused variables");
    }
    const std::size_t n = p.nvars();
    if (n > options.max_vars) {
        throw LimitError("canonicalization of " + std::to_string(n) + " variables exceeds the limit of " +
                         std::to_string(options.max_vars));
    }
    if (n > 20) {
        throw LimitError("sign vectors beyond 20 variables are not supported");
    }
    const auto mons = p.monomials();
    const std::size_t k = mons.size();
    std::vector<unsigned> degrees(k);
    for (std::size_t j = 0; j < k; ++j) {
        degrees[j] = mons[j].degree();
    }

    // Phase 1: permutations giving the preferred exponent pattern.
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<std::uint32_t> rows(k * n);
    std::vector<std::size_t> order(k);
    std::vector<std::uint32_t> flat(k * n);
    std::vector<std::uint32_t> best_flat;
    struct Candidate {
        std::vector<std::size_t> perm;
        std::vector<std::size_t> order;
    };
    std::vector<Candidate> ties;
    do {
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                rows[j * n + perm[i]] = mons[j].exponents[i];
            }
        }
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (degrees[a] != degrees[b]) {
                return degrees[a] > degrees[b];
            }
            return std::lexicographical_compare(rows.begin() + static_cast<std::ptrdiff_t>(b * n),
                                                rows.begin() + static_cast<std::ptrdiff_t>((b + 1) * n),
                                                rows.begin() + static_cast<std::ptrdiff_t>(a * n),
                                                rows.begin() + static_cast<std::ptrdiff_t>((a + 1) * n));
        });
        for (std::size_t j = 0; j < k; ++j) {
            std::copy_n(rows.begin() + static_cast<std::ptrdiff_t>(order[j] * n), n,
                        flat.begin() + static_cast<std::ptrdiff_t>(j * n));
        }
        if (best_flat.empty() || flat > best_flat) {
            best_flat = flat;
            ties.clear();
            ties.push_back({perm, order});
        } else if (flat == best_flat) {
            ties.push_back({perm, order});
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    // Phase 2: preferred coefficient magnitudes; collapse ties that present
    // the same signed coefficient sequence, since phase 3 sees nothing else.
    const Integer content = p.content();
    auto magnitude_cmp = [&](const Candidate &a, const Candidate &b) {
        for (std::size_t j = 0; j < k; ++j) {
            const int c = cmpabs(mons[a.order[j]].coeff, mons[b.order[j]].coeff);
            if (c != 0) {
                return c;
            }
        }
        return 0;
    };
    std::vector<Candidate> finalists;
    std::vector<std::vector<bool>> seen_signs;
    for (auto &cand : ties) {
        if (!finalists.empty()) {
            const int c = magnitude_cmp(cand, finalists.front());
            if (c < 0) {
                continue;
            }
            if (c > 0) {
                finalists.clear();
                seen_signs.clear();
            }
        }
        std::vector<bool> signs(k);
        for (std::size_t j = 0; j < k; ++j) {
            signs[j] = mons[cand.order[j]].coeff < 0;
        }
        if (std::find(seen_signs.begin(), seen_signs.end(), signs) != seen_signs.end()) {
            continue;
        }
        seen_signs.push_back(std::move(signs));
        finalists.push_back(std::move(cand));
    }

    // Phase 3: sign vectors over the representative's variables.
    std::vector<std::uint32_t> odd_mask(k, 0);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t v = 0; v < n; ++v) {
            if (best_flat[j * n + v] & 1u) {
                odd_mask[j] |= 1u << v;
            }
        }
    }
    std::vector<bool> best_neg;
    std::size_t best_candidate = 0;
    std::uint32_t best_mask = 0;
    int best_global = 1;
    std::vector<bool> neg(k);
    for (std::size_t ci = 0; ci < finalists.size(); ++ci) {
        const auto &cand = finalists[ci];
        for (std::uint32_t s = 0; s < (1u << n); ++s) {
            for (std::size_t j = 0; j < k; ++j) {
                bool negative = mons[cand.order[j]].coeff < 0;
                if (std::popcount(odd_mask[j] & s) & 1) {
                    negative = !negative;
                }
                neg[j] = negative;
            }
            const int global = neg[0] ? -1 : 1;
            if (global < 0) {
                neg.flip();
            }
            if (best_neg.empty() || neg < best_neg) {
                best_neg = neg;
                best_candidate = ci;
                best_mask = s;
                best_global = global;
            }
        }
    }

    CanonicalForm out;
    out.transform.divisor = content;
    out.transform.global_sign = best_global;
    out.transform.permutation = finalists[best_candidate].perm;
    out.transform.signs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.transform.signs[i] = (best_mask >> out.transform.permutation[i]) & 1u ? -1 : 1;
    }
    out.rep = apply_transform(p, out.transform);
    return out;
}

inline bool are_equivalent(const Polynomial &p, const Polynomial &q, const CanonicalizeOptions &options = {})
{
    const Polynomial pc = p.compacted();
    const Polynomial qc = q.compacted();
    if (pc.nvars() != qc.nvars() || pc.size() != qc.size() || pc.degree() != qc.degree()) {
        return false;
    }
    return canonicalize(pc, options).rep == canonicalize(qc, options).rep;
}

} // namespace dioph

#endif
