#ifndef DIOPH_CLASSIFY_HPP
#define DIOPH_CLASSIFY_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include <dioph/equivalence.hpp>
#include <dioph/integer.hpp>
#include <dioph/polynomial.hpp>

namespace dioph
{

struct CategoryFlags {
    bool homogeneous = false;
    bool symmetric = false;
    bool cyclic = false;
    bool independent_monomials = false;
    std::size_t nvars = 0;
    unsigned degree = 0;
    std::size_t num_monomials = 0;

    friend bool operator==(const CategoryFlags &, const CategoryFlags &) = default;
};

inline bool is_homogeneous(const Polynomial &p)
{
    const auto mons = p.monomials();
    return std::all_of(mons.begin(), mons.end(), [&](const Monomial &m) { return m.degree() == p.degree(); });
}

// No two monomials share a variable.
inline bool has_independent_monomials(const Polynomial &p)
{
    std::vector<bool> used(p.nvars(), false);
    for (const auto &m : p.monomials()) {
        for (std::size_t v = 0; v < p.nvars(); ++v) {
            if (m.exponents[v] > 0) {
                if (used[v]) {
                    return false;
                }
            }
        }
        for (std::size_t v = 0; v < p.nvars(); ++v) {
            if (m.exponents[v] > 0) {
                used[v] = true;
            }
        }
    }
    return true;
}

inline bool is_fixed_by(const Polynomial &p, const std::vector<std::size_t> &permutation)
{
    return apply_signed_permutation(p, permutation, std::vector<int>(p.nvars(), 1)) == p;
}

// Invariant under every permutation of the variables, as written.
inline bool is_symmetric_as_written(const Polynomial &p)
{
    const std::size_t n = p.nvars();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::swap(perm[i], perm[i + 1]);
        if (!is_fixed_by(p, perm)) {
            return false;
        }
    }
    return true;
}

// Invariant under (x1, ..., xn) -> (x2, ..., xn, x1), as written.
inline bool is_cyclic_as_written(const Polynomial &p)
{
    const std::size_t n = p.nvars();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) {
        perm[i] = (i + 1) % n;
    }
    return is_fixed_by(p, perm);
}

namespace detail
{

inline Polynomial with_sign_mask(const Polynomial &p, std::uint32_t mask)
{
    std::vector<std::size_t> id(p.nvars());
    std::iota(id.begin(), id.end(), std::size_t{0});
    std::vector<int> signs(p.nvars());
    for (std::size_t v = 0; v < p.nvars(); ++v) {
        signs[v] = (mask >> v) & 1u ? -1 : 1;
    }
    return apply_signed_permutation(p, id, signs);
}

} // namespace detail

// Symmetric for some member of the class. Permutations cannot create
// symmetry, so only sign flips need to be tried.
inline bool class_is_symmetric(const Polynomial &p)
{
    const std::size_t n = p.nvars();
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        if (is_symmetric_as_written(detail::with_sign_mask(p, s))) {
            return true;
        }
    }
    return false;
}

// Cyclic for some member of the class: some sign-flipped image is fixed by
// some n-cycle (every n-cycle is conjugate to the standard shift).
inline bool class_is_cyclic(const Polynomial &p)
{
    const std::size_t n = p.nvars();
    if (n <= 1) {
        return true;
    }
    std::vector<std::size_t> tail(n - 1);
    std::iota(tail.begin(), tail.end(), std::size_t{1});
    std::vector<std::vector<std::size_t>> cycles;
    do {
        // Cycle 0 -> tail[0] -> tail[1] -> ... -> 0.
        std::vector<std::size_t> perm(n);
        std::size_t from = 0;
        for (auto to : tail) {
            perm[from] = to;
            from = to;
        }
        perm[from] = 0;
        cycles.push_back(std::move(perm));
    } while (std::next_permutation(tail.begin(), tail.end()));
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        const Polynomial q = detail::with_sign_mask(p, s);
        for (const auto &c : cycles) {
            if (is_fixed_by(q, c)) {
                return true;
            }
        }
    }
    return false;
}

// Flags of the equation's class. Unused variables are dropped first.
inline CategoryFlags classify(const Polynomial &input)
{
    const Polynomial p = input.compacted();
    CategoryFlags f;
    f.nvars = p.nvars();
    f.degree = p.degree();
    f.num_monomials = p.size();
    f.homogeneous = is_homogeneous(p);
    f.independent_monomials = has_independent_monomials(p);
    f.symmetric = class_is_symmetric(p);
    f.cyclic = f.symmetric || class_is_cyclic(p);
    return f;
}

enum class SpecialKind { generalized_fermat, diagonal };

// a x^p + b y^q + c z^r (generalized Fermat) or a_1 x_1^d + ... + a_n x_n^d.
struct SpecialForm {
    SpecialKind kind;
    std::vector<unsigned> exponents;
    std::vector<Integer> coefficients;
    // 1/p + 1/q + 1/r < 1; only meaningful for generalized_fermat.
    bool hyperbolic = false;
    // Set when every exponent is equal (the three-term diagonal form).
    std::optional<unsigned> uniform_degree;
};

// Recognizes the forms on the class representative so the result does not
// depend on which member of the class is passed.
inline std::optional<SpecialForm> detect_special_form(const Polynomial &input, const CanonicalizeOptions &options = {})
{
    const Polynomial p = input.compacted();
    if (!p.has_nonconstant()) {
        return std::nullopt;
    }
    if (p.size() != p.nvars()) {
        return std::nullopt;
    }
    for (const auto &m : p.monomials()) {
        const auto nonzero = std::count_if(m.exponents.begin(), m.exponents.end(), [](std::uint32_t e) { return e > 0; });
        if (nonzero != 1) {
            return std::nullopt;
        }
    }
    // Each monomial is a pure power and the count equals nvars, so every
    // variable appears in exactly one monomial.
    const Polynomial rep = canonicalize(p, options).rep;
    SpecialForm out;
    for (const auto &m : rep.monomials()) {
        out.exponents.push_back(m.degree());
        out.coefficients.push_back(m.coeff);
    }
    const bool uniform = std::all_of(out.exponents.begin(), out.exponents.end(),
                                     [&](unsigned e) { return e == out.exponents.front(); });
    if (uniform) {
        out.uniform_degree = out.exponents.front();
    }
    if (rep.size() == 3) {
        out.kind = SpecialKind::generalized_fermat;
        const Integer a = out.exponents[0];
        const Integer b = out.exponents[1];
        const Integer c = out.exponents[2];
        out.hyperbolic = b * c + a * c + a * b < a * b * c;
        return out;
    }
    if (uniform) {
        out.kind = SpecialKind::diagonal;
        return out;
    }
    return std::nullopt;
}

} // namespace dioph

#endif
