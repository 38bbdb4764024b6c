#ifndef DIOPH_FAMILIES_HPP
#define DIOPH_FAMILIES_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <dioph/errors.hpp>
#include <dioph/integer.hpp>
#include <dioph/parse.hpp>
#include <dioph/polynomial.hpp>
#include <dioph/search.hpp>

namespace dioph
{

// x_i = components[i](u_1, ..., u_k) for integer parameters u.
struct ParametricFamily {
    std::size_t k = 0;
    std::vector<Polynomial> components;

    // Components are written in u1..uk, e.g. {"1-6*u1^3", "-6*u1^2", "1+6*u1^3"}.
    static ParametricFamily parse(std::size_t k, const std::vector<std::string> &components)
    {
        ParametricFamily f;
        f.k = k;
        for (const auto &c : components) {
            f.components.push_back(parse_polynomial(c, k));
        }
        return f;
    }

    std::vector<std::string> formatted() const
    {
        std::vector<std::string> out;
        for (const auto &c : components) {
            out.push_back(format_parametric(c));
        }
        return out;
    }

    friend bool operator==(const ParametricFamily &, const ParametricFamily &) = default;
};

// P(F(u)) is identically zero as a polynomial in u. Exact expansion only.
inline bool verify_family(const Polynomial &p, const ParametricFamily &f)
{
    if (f.components.size() != p.nvars()) {
        throw ArityError("family has " + std::to_string(f.components.size()) + " components for " +
                         std::to_string(p.nvars()) + " variables");
    }
    return substitute(p, f.components).is_zero();
}

inline SolutionTuple family_member(const ParametricFamily &f, std::span<const Integer> params)
{
    if (params.size() != f.k) {
        throw ArityError("family takes " + std::to_string(f.k) + " parameters");
    }
    SolutionTuple s;
    for (const auto &c : f.components) {
        s.values.push_back(evaluate(c, params));
    }
    return s;
}

// The family with its components permuted.
inline ParametricFamily permuted(const ParametricFamily &f, const std::vector<std::size_t> &order)
{
    ParametricFamily out;
    out.k = f.k;
    for (auto i : order) {
        out.components.push_back(f.components.at(i));
    }
    return out;
}

struct CoverOptions {
    std::uint64_t u_box = 10;
    std::uint64_t budget = 10'000'000;
    // Also try every permutation of each family's components.
    bool include_permutations = false;
};

namespace detail
{

inline bool attains_in_box(const ParametricFamily &f, const SolutionTuple &s, long bound, std::uint64_t &budget)
{
    std::vector<Integer> u(f.k);
    std::vector<long> idx(f.k, -bound);
    for (;;) {
        if (budget == 0) {
            throw LimitError("witness coverage budget exhausted");
        }
        --budget;
        for (std::size_t i = 0; i < f.k; ++i) {
            u[i] = idx[i];
        }
        if (family_member(f, u) == s) {
            return true;
        }
        std::size_t i = f.k;
        for (;;) {
            if (i == 0) {
                return false;
            }
            --i;
            if (++idx[i] <= bound) {
                break;
            }
            idx[i] = -bound;
        }
    }
}

} // namespace detail

// Whether some family hits `s` at a parameter tuple in [-u_box, u_box]^k.
// A false answer only means "not covered within the box".
inline bool covers_witness(std::span<const ParametricFamily> families, const SolutionTuple &s,
                           const CoverOptions &options = {})
{
    std::uint64_t budget = options.budget;
    const auto bound = static_cast<long>(options.u_box);
    for (const auto &base : families) {
        if (base.components.size() != s.values.size()) {
            throw ArityError("family and witness have different arity");
        }
        std::vector<std::size_t> order(base.components.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            order[i] = i;
        }
        do {
            if (detail::attains_in_box(permuted(base, order), s, bound, budget)) {
                return true;
            }
        } while (options.include_permutations && std::next_permutation(order.begin(), order.end()));
    }
    return false;
}

} // namespace dioph

#endif
