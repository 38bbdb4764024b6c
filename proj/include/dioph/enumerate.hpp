#ifndef DIOPH_ENUMERATE_HPP
#define DIOPH_ENUMERATE_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <dioph/classify.hpp>
#include <dioph/equivalence.hpp>
#include <dioph/errors.hpp>
#include <dioph/integer.hpp>
#include <dioph/measures.hpp>
#include <dioph/parse.hpp>
#include <dioph/polynomial.hpp>

namespace dioph
{

struct EnumerationQuery {
    std::uint64_t h_max = 2;
    std::optional<std::size_t> min_nvars;
    std::optional<std::size_t> max_nvars;
    std::optional<unsigned> max_degree;
    std::optional<std::size_t> max_monomials;
    std::optional<bool> homogeneous;
    std::optional<bool> symmetric;
    std::optional<bool> cyclic;
    std::optional<bool> independent_monomials;
    unsigned threads = 1;
    // Refuse bounds beyond this; the class count grows very quickly with H.
    std::uint64_t h_limit = 16;
};

struct EnumeratedClass {
    std::uint64_t h = 0;
    std::string canonical;
    Polynomial rep;
};

enum class EnumerationStrategy {
    // Multisets of (degree, |coefficient|) rows filled with variable columns
    // in non-increasing order, so most variable relabelings never arise.
    monomial_multiset,
    // Recursion over explicit monomials in a fixed variable space, charging
    // each monomial against the remaining H budget.
    degree_budget,
};

namespace detail
{

inline unsigned max_degree_for(std::uint64_t h)
{
    unsigned d = 0;
    while ((std::uint64_t{1} << (d + 1)) <= h) {
        ++d;
    }
    return d;
}

inline bool needs_flags(const EnumerationQuery &q)
{
    return q.homogeneous || q.symmetric || q.cyclic || q.independent_monomials;
}

inline bool passes_filters(const EnumerationQuery &q, const Polynomial &rep)
{
    if (q.min_nvars && rep.nvars() < *q.min_nvars) {
        return false;
    }
    if (q.max_nvars && rep.nvars() > *q.max_nvars) {
        return false;
    }
    if (q.max_degree && rep.degree() > *q.max_degree) {
        return false;
    }
    if (q.max_monomials && rep.size() > *q.max_monomials) {
        return false;
    }
    if (!needs_flags(q)) {
        return true;
    }
    const CategoryFlags f = classify(rep);
    return (!q.homogeneous || f.homogeneous == *q.homogeneous) && (!q.symmetric || f.symmetric == *q.symmetric) &&
           (!q.cyclic || f.cyclic == *q.cyclic) &&
           (!q.independent_monomials || f.independent_monomials == *q.independent_monomials);
}

// Deduplicating sink shared by both strategies.
class ClassSink
{
public:
    explicit ClassSink(const EnumerationQuery &q) : query_(q) {}

    void offer(const Polynomial &candidate)
    {
        CanonicalForm cf = canonicalize(candidate, {std::max<std::size_t>(8, candidate.nvars())});
        std::string key = format_equation(cf.rep, FormatStyle::canonical);
        {
            std::lock_guard<std::mutex> lock(mutex_);
            if (seen_.count(key) != 0) {
                return;
            }
            seen_.insert(key);
        }
        if (!passes_filters(query_, cf.rep)) {
            return;
        }
        EnumeratedClass c;
        c.h = compute_size(cf.rep).get_ui();
        c.canonical = std::move(key);
        c.rep = std::move(cf.rep);
        std::lock_guard<std::mutex> lock(mutex_);
        out_.push_back(std::move(c));
    }

    std::vector<EnumeratedClass> take()
    {
        std::sort(out_.begin(), out_.end(), [](const EnumeratedClass &a, const EnumeratedClass &b) {
            return a.h != b.h ? a.h < b.h : a.canonical < b.canonical;
        });
        return std::move(out_);
    }

private:
    const EnumerationQuery &query_;
    std::mutex mutex_;
    std::set<std::string> seen_;
    std::vector<EnumeratedClass> out_;
};

struct Row {
    unsigned degree;
    std::uint64_t magnitude;
};

class MultisetGenerator
{
public:
    MultisetGenerator(const EnumerationQuery &q, ClassSink &sink) : q_(q), sink_(sink) {}

    // All row multisets whose first row is `lead`.
    void run_from(Row lead)
    {
        std::vector<Row> rows{lead};
        extend_rows(rows, q_.h_max - lead.magnitude * (std::uint64_t{1} << lead.degree));
    }

    std::vector<Row> leading_rows() const
    {
        std::vector<Row> out;
        for (unsigned d = max_degree_for(q_.h_max); d >= 1; --d) {
            if (q_.max_degree && d > *q_.max_degree) {
                continue;
            }
            for (std::uint64_t a = q_.h_max >> d; a >= 1; --a) {
                out.push_back({d, a});
            }
        }
        return out;
    }

private:
    void extend_rows(std::vector<Row> &rows, std::uint64_t remaining)
    {
        try_rows(rows);
        if (q_.max_monomials && rows.size() >= *q_.max_monomials) {
            return;
        }
        const Row last = rows.back();
        if (last.degree == 0) {
            return;
        }
        for (unsigned d = last.degree + 1; d-- > 0;) {
            const std::uint64_t cap = remaining >> d;
            const std::uint64_t start = d == last.degree ? std::min(cap, last.magnitude) : cap;
            for (std::uint64_t a = start; a >= 1; --a) {
                rows.push_back({d, a});
                extend_rows(rows, remaining - a * (std::uint64_t{1} << d));
                rows.pop_back();
            }
        }
    }

    void try_rows(const std::vector<Row> &rows)
    {
        std::uint64_t g = 0;
        for (const auto &r : rows) {
            g = std::gcd(g, r.magnitude);
        }
        if (g != 1) {
            return;
        }
        rows_ = rows;
        remaining_.assign(rows.size(), 0);
        for (std::size_t j = 0; j < rows.size(); ++j) {
            remaining_[j] = rows[j].degree;
        }
        columns_.clear();
        fill_columns();
    }

    // Adds columns (one per variable) in non-increasing lexicographic order
    // until every row has reached its degree.
    void fill_columns()
    {
        const bool done = std::all_of(remaining_.begin(), remaining_.end(), [](unsigned r) { return r == 0; });
        if (done) {
            emit();
            return;
        }
        const std::size_t var_cap = q_.max_nvars ? *q_.max_nvars : std::numeric_limits<std::size_t>::max();
        if (columns_.size() >= var_cap) {
            return;
        }
        std::vector<unsigned> col(rows_.size(), 0);
        choose_column(col, 0, columns_.size(), true);
    }

    // Enumerates column entries position by position, staying <= the
    // previous column (columns_[count - 1]) when there is one.
    void choose_column(std::vector<unsigned> &col, std::size_t j, std::size_t count, bool tight)
    {
        if (j == col.size()) {
            if (std::all_of(col.begin(), col.end(), [](unsigned c) { return c == 0; })) {
                return;
            }
            for (std::size_t i = 0; i < col.size(); ++i) {
                remaining_[i] -= col[i];
            }
            columns_.push_back(col);
            fill_columns();
            columns_.pop_back();
            for (std::size_t i = 0; i < col.size(); ++i) {
                remaining_[i] += col[i];
            }
            return;
        }
        const bool bounded = count > 0 && tight;
        unsigned hi = remaining_[j];
        if (bounded) {
            hi = std::min(hi, columns_[count - 1][j]);
        }
        for (unsigned v = hi + 1; v-- > 0;) {
            col[j] = v;
            choose_column(col, j + 1, count, bounded && v == columns_[count - 1][j]);
        }
        col[j] = 0;
    }

    void emit()
    {
        const std::size_t k = rows_.size();
        const std::size_t n = columns_.size();
        std::vector<Exponents> exps(k, Exponents(n, 0));
        for (std::size_t v = 0; v < n; ++v) {
            for (std::size_t j = 0; j < k; ++j) {
                exps[j][v] = columns_[v][j];
            }
        }
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = a + 1; b < k; ++b) {
                if (exps[a] == exps[b]) {
                    return;
                }
            }
        }
        if (q_.min_nvars && n < *q_.min_nvars) {
            return;
        }
        for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << (k - 1)); ++signs) {
            std::vector<Monomial> terms;
            terms.reserve(k);
            for (std::size_t j = 0; j < k; ++j) {
                Integer c(static_cast<unsigned long>(rows_[j].magnitude));
                if (j > 0 && ((signs >> (j - 1)) & 1u)) {
                    c = -c;
                }
                terms.push_back({std::move(c), exps[j]});
            }
            sink_.offer(Polynomial::from_terms(n, std::move(terms)));
        }
    }

    const EnumerationQuery &q_;
    ClassSink &sink_;
    std::vector<Row> rows_;
    std::vector<unsigned> remaining_;
    std::vector<std::vector<unsigned>> columns_;
};

class DegreeBudgetGenerator
{
public:
    DegreeBudgetGenerator(const EnumerationQuery &q, ClassSink &sink) : q_(q), sink_(sink) {}

    void run(std::size_t nvars)
    {
        n_ = nvars;
        monomials_.clear();
        const unsigned dmax = max_degree_for(q_.h_max);
        Exponents e(n_, 0);
        collect(e, 0, dmax);
        std::sort(monomials_.begin(), monomials_.end(), graded_lex_before);
        chosen_.clear();
        recurse(0, q_.h_max);
    }

private:
    void collect(Exponents &e, std::size_t v, unsigned left)
    {
        if (v == n_) {
            if (!q_.max_degree || total_degree(e) <= *q_.max_degree) {
                monomials_.push_back(e);
            }
            return;
        }
        for (unsigned k = 0; k <= left; ++k) {
            e[v] = k;
            collect(e, v + 1, left - k);
        }
        e[v] = 0;
    }

    std::size_t unused_variables() const
    {
        std::size_t unused = 0;
        for (std::size_t v = 0; v < n_; ++v) {
            const bool used =
                std::any_of(chosen_.begin(), chosen_.end(), [v](const Monomial &m) { return m.exponents[v] > 0; });
            unused += used ? 0 : 1;
        }
        return unused;
    }

    void recurse(std::size_t from, std::uint64_t remaining)
    {
        const std::size_t unused = unused_variables();
        if (!chosen_.empty() && unused == 0) {
            Integer g = 0;
            for (const auto &m : chosen_) {
                g = gcd(g, m.coeff);
            }
            if (g == 1 && chosen_.front().degree() > 0) {
                sink_.offer(Polynomial::from_terms(n_, chosen_));
            }
        }
        if (q_.max_monomials && chosen_.size() >= *q_.max_monomials) {
            return;
        }
        // A monomial of degree d covers at most d new variables at cost 2^d >= 2d.
        if (remaining < 2 * unused) {
            return;
        }
        for (std::size_t i = from; i < monomials_.size(); ++i) {
            const unsigned d = total_degree(monomials_[i]);
            const std::uint64_t unit = std::uint64_t{1} << d;
            for (std::uint64_t a = 1; a * unit <= remaining; ++a) {
                for (int s : {1, -1}) {
                    if (chosen_.empty() && s < 0) {
                        continue;
                    }
                    Integer c(static_cast<unsigned long>(a));
                    if (s < 0) {
                        c = -c;
                    }
                    chosen_.push_back({std::move(c), monomials_[i]});
                    recurse(i + 1, remaining - a * unit);
                    chosen_.pop_back();
                }
            }
        }
    }

    const EnumerationQuery &q_;
    ClassSink &sink_;
    std::size_t n_ = 0;
    std::vector<Exponents> monomials_;
    std::vector<Monomial> chosen_;
};

} // namespace detail

// One representative per equivalence class with H <= h_max (content 1,
// at least one non-constant monomial), sorted by (H, canonical string).
inline std::vector<EnumeratedClass> enumerate_classes(const EnumerationQuery &q,
                                                      EnumerationStrategy strategy = EnumerationStrategy::monomial_multiset)
{
    if (q.h_max < 2) {
        throw std::invalid_argument("h_max must be at least 2");
    }
    if (q.h_max > q.h_limit) {
        throw LimitError("h_max " + std::to_string(q.h_max) + " exceeds the enumeration limit " +
                         std::to_string(q.h_limit));
    }
    detail::ClassSink sink(q);
    if (strategy == EnumerationStrategy::monomial_multiset) {
        detail::MultisetGenerator probe(q, sink);
        const auto leads = probe.leading_rows();
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            detail::MultisetGenerator gen(q, sink);
            for (std::size_t i = next++; i < leads.size(); i = next++) {
                gen.run_from(leads[i]);
            }
        };
        const unsigned threads = std::max(1u, std::min<unsigned>(q.threads, static_cast<unsigned>(leads.size())));
        if (threads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t) {
                pool.emplace_back(worker);
            }
            for (auto &t : pool) {
                t.join();
            }
        }
    } else {
        detail::DegreeBudgetGenerator gen(q, sink);
        const std::size_t nmax = q.max_nvars ? std::min<std::size_t>(*q.max_nvars, q.h_max / 2) : q.h_max / 2;
        for (std::size_t n = 1; n <= nmax; ++n) {
            gen.run(n);
        }
    }
    return sink.take();
}

// Number of classes at each H <= h_max.
inline std::map<std::uint64_t, std::uint64_t> count_classes(std::uint64_t h_max,
                                                            EnumerationStrategy strategy = EnumerationStrategy::monomial_multiset,
                                                            unsigned threads = 1)
{
    EnumerationQuery q;
    q.h_max = h_max;
    q.threads = threads;
    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::uint64_t h = 2; h <= h_max; ++h) {
        counts[h] = 0;
    }
    for (const auto &c : enumerate_classes(q, strategy)) {
        ++counts[c.h];
    }
    return counts;
}

} // namespace dioph

#endif
