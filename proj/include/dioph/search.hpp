#ifndef DIOPH_SEARCH_HPP
#define DIOPH_SEARCH_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <dioph/errors.hpp>
#include <dioph/integer.hpp>
#include <dioph/polynomial.hpp>

namespace dioph
{

struct SolutionTuple {
    std::vector<Integer> values;

    // gcd of all coordinates is 1.
    bool is_primitive() const
    {
        Integer g = 0;
        for (const auto &v : values) {
            g = gcd(g, v);
        }
        return g == 1;
    }
    bool is_positive() const
    {
        return std::all_of(values.begin(), values.end(), [](const Integer &v) { return v >= 1; });
    }
    bool is_nonzero() const
    {
        return std::all_of(values.begin(), values.end(), [](const Integer &v) { return v != 0; });
    }
    Integer min_abs() const
    {
        if (values.empty()) {
            return 0;
        }
        Integer m = abs(values.front());
        for (const auto &v : values) {
            if (abs(v) < m) {
                m = abs(v);
            }
        }
        return m;
    }

    friend bool operator==(const SolutionTuple &, const SolutionTuple &) = default;
    friend bool operator<(const SolutionTuple &a, const SolutionTuple &b)
    {
        return std::lexicographical_compare(a.values.begin(), a.values.end(), b.values.begin(), b.values.end());
    }
};

inline std::string format_tuple(const SolutionTuple &s)
{
    std::string out = "(";
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        if (i != 0) {
            out += ", ";
        }
        out += to_string(s.values[i]);
    }
    return out + ")";
}

inline bool verify_solution(const Polynomial &p, const SolutionTuple &s)
{
    return evaluate(p, s.values) == 0;
}

enum class SearchMode { all, positive, min_abs, primitive, nonzero };

struct SearchSpec {
    SearchMode mode = SearchMode::all;
    std::uint64_t box = 10;
    // Lower bound on every |x_i| in min_abs mode.
    std::uint64_t k = 0;
    std::size_t limit = std::numeric_limits<std::size_t>::max();
    std::uint64_t budget = std::numeric_limits<std::uint64_t>::max();
    unsigned threads = 1;
    // Solve for the innermost variable when it occurs with degree <= 2.
    bool accelerate = true;
};

struct SearchResult {
    std::vector<SolutionTuple> solutions;
    // The whole box was scanned; an empty complete result means "no
    // solutions in the box", never "no solutions".
    bool complete = true;
    bool truncated = false;
    bool budget_exceeded = false;
    std::uint64_t candidates = 0;
};

// Integer roots of a univariate polynomial of degree <= 2, or every integer
// when the polynomial vanishes identically.
struct RootSet {
    bool all_integers = false;
    std::vector<Integer> roots;
};

// Roots of c[0] + c[1] t + c[2] t^2 (trailing entries may be absent).
inline RootSet integer_roots_upto_quadratic(std::span<const Integer> c)
{
    RootSet out;
    std::size_t deg = c.size();
    while (deg > 0 && c[deg - 1] == 0) {
        --deg;
    }
    if (deg == 0) {
        out.all_integers = true;
        return out;
    }
    if (deg == 1) {
        return out;
    }
    if (deg == 2) {
        if (mpz_divisible_p(c[0].get_mpz_t(), c[1].get_mpz_t()) != 0) {
            Integer r;
            mpz_divexact(r.get_mpz_t(), c[0].get_mpz_t(), c[1].get_mpz_t());
            out.roots.push_back(-r);
        }
        return out;
    }
    if (deg > 3) {
        throw std::invalid_argument("degree exceeds 2");
    }
    const Integer &a = c[2];
    const Integer &b = c[1];
    const Integer disc = b * b - 4 * a * c[0];
    Integer s;
    if (!exact_sqrt(disc, s)) {
        return out;
    }
    const Integer den = 2 * a;
    for (const Integer &num : {Integer(-b - s), Integer(-b + s)}) {
        if (mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()) != 0) {
            Integer r;
            mpz_divexact(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            if (std::find(out.roots.begin(), out.roots.end(), r) == out.roots.end()) {
                out.roots.push_back(r);
            }
        }
    }
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

namespace detail
{

// Coefficients of P viewed as a polynomial in `var` once every other
// variable is fixed. `values[var]` is ignored.
inline std::vector<Integer> univariate_coefficients(const Polynomial &p, std::size_t var, std::span<const Integer> values)
{
    std::vector<Integer> c(p.degree_in(var) + 1, 0);
    Integer term;
    for (const auto &m : p.monomials()) {
        term = m.coeff;
        for (std::size_t v = 0; v < p.nvars(); ++v) {
            if (v != var && m.exponents[v] != 0) {
                term *= ipow(values[v], m.exponents[v]);
            }
        }
        c[m.exponents[var]] += term;
    }
    return c;
}

} // namespace detail

// Integer values of variable `var` solving P = 0 when every other variable
// takes its value from `values` (values[var] is ignored). Throws
// std::invalid_argument when the result has degree > 2 in `var`.
inline RootSet solve_for_variable(const Polynomial &p, std::size_t var, std::span<const Integer> values)
{
    if (values.size() != p.nvars() || var >= p.nvars()) {
        throw ArityError("assignment does not match variable count");
    }
    const auto c = detail::univariate_coefficients(p, var, values);
    std::size_t deg = c.size();
    while (deg > 0 && c[deg - 1] == 0) {
        --deg;
    }
    if (deg > 3) {
        throw std::invalid_argument("degree " + std::to_string(deg - 1) + " in the remaining variable exceeds 2");
    }
    return integer_roots_upto_quadratic(std::span<const Integer>(c.data(), deg));
}

// The remaining variable is the last one; `partial` holds the other n-1 values.
inline RootSet solve_for_last_variable(const Polynomial &p, std::span<const Integer> partial)
{
    if (p.nvars() == 0 || partial.size() + 1 != p.nvars()) {
        throw ArityError("partial assignment must fix all but the last variable");
    }
    std::vector<Integer> values(partial.begin(), partial.end());
    values.emplace_back(0);
    return solve_for_variable(p, p.nvars() - 1, values);
}

namespace detail
{

inline bool value_allowed(const Integer &v, const SearchSpec &spec)
{
    if (abs(v) > spec.box) {
        return false;
    }
    switch (spec.mode) {
    case SearchMode::positive:
        return v >= 1;
    case SearchMode::nonzero:
        return v != 0;
    case SearchMode::min_abs:
        return abs(v) >= spec.k;
    default:
        return true;
    }
}

inline std::vector<Integer> coordinate_range(const SearchSpec &spec)
{
    std::vector<Integer> out;
    const auto b = static_cast<long>(spec.box);
    for (long v = -b; v <= b; ++v) {
        Integer iv(v);
        if (value_allowed(iv, spec)) {
            out.push_back(iv);
        }
    }
    return out;
}

// Inner variable: the highest degree among variables of degree <= 2 so the
// direct solver applies; otherwise the highest-degree variable.
inline std::size_t choose_inner_variable(const Polynomial &p, bool accelerate)
{
    std::size_t best = p.nvars() - 1;
    int best_score = -1;
    for (std::size_t v = 0; v < p.nvars(); ++v) {
        const unsigned d = p.degree_in(v);
        const int score = (accelerate && d <= 2) ? 1000 + static_cast<int>(d) : static_cast<int>(d);
        if (score >= best_score) {
            best_score = score;
            best = v;
        }
    }
    return best;
}

struct Found {
    SolutionTuple tuple;
    std::uint64_t at; // candidate index within its partition
};

struct PartitionOutcome {
    std::vector<Found> found;
    std::uint64_t cost = 0;
    bool stopped = false; // hit the per-partition budget cap
};

} // namespace detail

// All solutions of P = 0 in [-B, B]^n that satisfy the mode, sorted
// lexicographically. Partitions along the outermost variable may run on
// several threads; the merged result does not depend on scheduling.
inline SearchResult box_search(const Polynomial &p, const SearchSpec &spec)
{
    const std::size_t n = p.nvars();
    SearchResult result;
    if (n == 0) {
        return result;
    }
    const std::size_t inner = detail::choose_inner_variable(p, spec.accelerate);
    const bool solve_inner = spec.accelerate && p.degree_in(inner) <= 2;
    std::vector<std::size_t> outer;
    for (std::size_t v = 0; v < n; ++v) {
        if (v != inner) {
            outer.push_back(v);
        }
    }
    const std::vector<Integer> range = detail::coordinate_range(spec);
    if (range.empty()) {
        return result;
    }
    const std::size_t partitions = outer.empty() ? 1 : range.size();
    std::vector<detail::PartitionOutcome> outcomes(partitions);

    auto run_partition = [&](std::size_t part) {
        auto &out = outcomes[part];
        std::vector<Integer> values(n, 0);
        std::vector<std::size_t> idx(outer.size(), 0);
        if (!outer.empty()) {
            idx[0] = part;
        }
        for (;;) {
            for (std::size_t i = 0; i < outer.size(); ++i) {
                values[outer[i]] = range[idx[i]];
            }
            const auto c = detail::univariate_coefficients(p, inner, values);
            auto record = [&](const Integer &v) {
                values[inner] = v;
                SolutionTuple s{values};
                if (spec.mode == SearchMode::primitive && !s.is_primitive()) {
                    return;
                }
                out.found.push_back({std::move(s), out.cost});
            };
            if (solve_inner) {
                if (out.cost >= spec.budget) {
                    out.stopped = true;
                    return;
                }
                ++out.cost;
                const RootSet roots = integer_roots_upto_quadratic(c);
                if (roots.all_integers) {
                    for (const auto &v : range) {
                        record(v);
                    }
                } else {
                    for (const auto &v : roots.roots) {
                        if (detail::value_allowed(v, spec)) {
                            record(v);
                        }
                    }
                }
            } else {
                for (const auto &v : range) {
                    if (out.cost >= spec.budget) {
                        out.stopped = true;
                        return;
                    }
                    ++out.cost;
                    Integer acc = 0;
                    for (std::size_t e = c.size(); e-- > 0;) {
                        acc = acc * v + c[e];
                    }
                    if (acc == 0) {
                        record(v);
                    }
                }
            }
            if (out.found.size() >= spec.limit) {
                return;
            }
            // Advance the outer odometer, leaving idx[0] fixed to the partition.
            std::size_t i = outer.size();
            for (;;) {
                if (i <= 1) {
                    return;
                }
                --i;
                if (++idx[i] < range.size()) {
                    break;
                }
                idx[i] = 0;
            }
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(spec.threads, static_cast<unsigned>(partitions)));
    if (threads == 1) {
        for (std::size_t part = 0; part < partitions; ++part) {
            run_partition(part);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t part = next++; part < partitions; part = next++) {
                    run_partition(part);
                }
            });
        }
        for (auto &th : pool) {
            th.join();
        }
    }

    // Merge as if the partitions had run one after another.
    std::uint64_t spent = 0;
    for (std::size_t part = 0; part < partitions; ++part) {
        const auto &out = outcomes[part];
        const std::uint64_t remaining = spec.budget - spent;
        for (const auto &f : out.found) {
            if (f.at > remaining) {
                break;
            }
            if (result.solutions.size() >= spec.limit) {
                break;
            }
            result.solutions.push_back(f.tuple);
        }
        if (result.solutions.size() >= spec.limit) {
            result.truncated = true;
            result.complete = false;
            break;
        }
        if (out.cost > remaining || (out.stopped && out.cost >= remaining)) {
            spent = spec.budget;
            result.budget_exceeded = true;
            result.complete = false;
            break;
        }
        spent += out.cost;
    }
    result.candidates = spent;
    std::sort(result.solutions.begin(), result.solutions.end());
    return result;
}

// Prime powers p^e <= bound, ascending.
inline std::vector<std::uint64_t> prime_power_moduli(std::uint64_t bound = 729)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t m = 2; m <= bound; ++m) {
        std::uint64_t q = m;
        std::uint64_t p = 2;
        while (q % p != 0) {
            ++p;
        }
        while (q % p == 0) {
            q /= p;
        }
        if (q == 1) {
            out.push_back(m);
        }
    }
    return out;
}

// Whether P = 0 has a solution modulo m, scanning residues exhaustively and
// stopping at the first hit. `budget` is decremented per residue tuple.
inline bool solvable_mod(const Polynomial &p, std::uint64_t m, std::uint64_t &budget)
{
    if (m == 0) {
        throw std::invalid_argument("modulus must be positive");
    }
    if (m > (1u << 20)) {
        throw LimitError("modulus too large for residue scanning");
    }
    const std::size_t n = p.nvars();
    if (m == 1) {
        return true;
    }
    if (n == 0) {
        return p.is_zero() || mod_u64(p.monomials().front().coeff, m) == 0;
    }
    const std::size_t inner = n - 1;
    struct Term {
        std::uint64_t coeff;
        std::vector<std::uint32_t> exps;
    };
    std::vector<Term> terms;
    for (const auto &mono : p.monomials()) {
        const std::uint64_t c = mod_u64(mono.coeff, m);
        if (c != 0) {
            terms.push_back({c, mono.exponents});
        }
    }
    const unsigned max_e = p.degree();
    // powers[r][e] = r^e mod m
    std::vector<std::vector<std::uint64_t>> powers(m, std::vector<std::uint64_t>(max_e + 1));
    for (std::uint64_t r = 0; r < m; ++r) {
        powers[r][0] = 1 % m;
        for (unsigned e = 1; e <= max_e; ++e) {
            powers[r][e] = powers[r][e - 1] * r % m;
        }
    }
    const unsigned inner_deg = p.degree_in(inner);
    std::vector<std::uint64_t> c(inner_deg + 1);
    std::vector<std::uint64_t> res(n, 0);
    for (;;) {
        std::fill(c.begin(), c.end(), 0);
        for (const auto &t : terms) {
            std::uint64_t v = t.coeff;
            for (std::size_t i = 0; i < inner; ++i) {
                v = v * powers[res[i]][t.exps[i]] % m;
            }
            c[t.exps[inner]] = (c[t.exps[inner]] + v) % m;
        }
        for (std::uint64_t r = 0; r < m; ++r) {
            if (budget == 0) {
                throw LimitError("residue scanning budget exhausted at modulus " + std::to_string(m));
            }
            --budget;
            std::uint64_t acc = 0;
            for (std::size_t e = c.size(); e-- > 0;) {
                acc = (acc * r + c[e]) % m;
            }
            if (acc == 0) {
                return true;
            }
        }
        std::size_t i = inner;
        for (;;) {
            if (i == 0) {
                return false;
            }
            --i;
            if (++res[i] < m) {
                break;
            }
            res[i] = 0;
        }
    }
}

// First modulus in `moduli` for which P = 0 has no solution, if any. Such a
// modulus certifies that P = 0 has no integer solutions.
inline std::optional<std::uint64_t> modular_obstruction(const Polynomial &p, std::span<const std::uint64_t> moduli,
                                                        std::uint64_t budget = 200'000'000)
{
    for (const auto m : moduli) {
        if (!solvable_mod(p, m, budget)) {
            return m;
        }
    }
    return std::nullopt;
}

} // namespace dioph

#endif
