#include <gtest/gtest.h>

#include <map>

#include "support.hpp"

using namespace dioph;
using namespace testing_support;

namespace
{

Polynomial P(const char *text)
{
    return parse_equation(text);
}

std::string canon(const Polynomial &p)
{
    return format_equation(canonicalize(p).rep, FormatStyle::canonical);
}

std::vector<EnumeratedClass> run(std::uint64_t h, EnumerationStrategy s = EnumerationStrategy::monomial_multiset)
{
    EnumerationQuery q;
    q.h_max = h;
    return enumerate_classes(q, s);
}

std::set<std::string> canonical_set(const std::vector<EnumeratedClass> &classes)
{
    std::set<std::string> out;
    for (const auto &c : classes) {
        out.insert(c.canonical);
    }
    return out;
}

} // namespace

TEST(Enumerate, SmallBounds)
{
    const auto two = run(2);
    ASSERT_EQ(two.size(), 1u);
    EXPECT_EQ(two[0].canonical, canon(P("x")));

    const auto three = run(3);
    ASSERT_EQ(three.size(), 2u);
    EXPECT_EQ(three[1].canonical, canon(P("x+1")));
    EXPECT_EQ(three[1].h, 3u);

    std::set<std::string> at_four;
    for (const auto &c : run(4)) {
        if (c.h == 4) {
            at_four.insert(c.canonical);
        }
    }
    EXPECT_EQ(at_four, (std::set<std::string>{canon(P("x^2")), canon(P("xy")), canon(P("x+y")), canon(P("x+2"))}));
}

TEST(Enumerate, ContainsTableOneRows)
{
    const auto all = canonical_set(run(13));
    for (const char *row : {"x^2+y^2+zt+1=0", "xyz+t^2+1=0", "x^2y+z^2+1=0", "x^2+y^2+zt-1=0", "xyz+t^2-1=0",
                            "x^2y+z^2-1=0", "x^3+yz+1=0", "x^2y+zt+1=0", "x1x2x3+x4x5+1=0"}) {
        EXPECT_TRUE(all.count(canon(P(row)))) << row;
    }
}

// Matches an exhaustive generator that deduplicates by brute-force orbit keys.
TEST(Enumerate, AgreesWithBruteForce)
{
    constexpr std::uint64_t h_max = 10;
    const auto oracle = brute_force_classes(h_max);
    const auto classes = run(h_max);
    ASSERT_EQ(classes.size(), oracle.size());
    std::map<std::vector<std::pair<Exponents, long>>, std::uint64_t> expected;
    for (const auto &[h, p] : oracle) {
        expected[orbit_key(p)] = h;
    }
    for (const auto &c : classes) {
        const auto it = expected.find(orbit_key(c.rep));
        ASSERT_NE(it, expected.end()) << c.canonical;
        EXPECT_EQ(it->second, c.h) << c.canonical;
        EXPECT_EQ(compute_size(c.rep), c.h);
        expected.erase(it);
    }
    EXPECT_TRUE(expected.empty());
}

TEST(Enumerate, StrategiesAgree)
{
    const auto a = count_classes(10, EnumerationStrategy::monomial_multiset);
    const auto b = count_classes(10, EnumerationStrategy::degree_budget);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.at(2), 1u);
    EXPECT_EQ(a.at(3), 1u);
    EXPECT_EQ(canonical_set(run(9)), canonical_set(run(9, EnumerationStrategy::degree_budget)));
}

TEST(Enumerate, SortedNonRedundantCanonical)
{
    const auto classes = run(11);
    std::set<std::string> seen;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto &c = classes[i];
        EXPECT_TRUE(seen.insert(c.canonical).second) << c.canonical;
        EXPECT_EQ(canon(c.rep), c.canonical);
        EXPECT_EQ(c.rep.content(), 1);
        if (i > 0) {
            const auto &prev = classes[i - 1];
            EXPECT_TRUE(prev.h < c.h || (prev.h == c.h && prev.canonical < c.canonical));
        }
    }
}

TEST(Enumerate, CompleteOnRandomInputs)
{
    const auto all = canonical_set(run(12));
    Rng rng(31);
    int checked = 0;
    while (checked < 300) {
        const auto n = static_cast<std::size_t>(uniform(rng, 1, 4));
        const auto p = random_polynomial(rng, n, 4, 3, 3);
        if (compute_size(normalize_content(p)) > 12) {
            continue;
        }
        ++checked;
        EXPECT_TRUE(all.count(canon(p))) << format_equation(p);
    }
}

TEST(Enumerate, DeterministicAcrossThreads)
{
    EnumerationQuery q;
    q.h_max = 12;
    const auto one = enumerate_classes(q);
    q.threads = 4;
    const auto four = enumerate_classes(q);
    ASSERT_EQ(one.size(), four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        EXPECT_EQ(one[i].canonical, four[i].canonical);
        EXPECT_EQ(one[i].h, four[i].h);
    }
}

TEST(Enumerate, Filters)
{
    const auto all = run(12);
    EnumerationQuery q;
    q.h_max = 12;
    q.symmetric = true;
    q.max_nvars = 2;
    std::set<std::string> expected;
    for (const auto &c : all) {
        const auto f = classify(c.rep);
        if (f.symmetric && f.nvars <= 2) {
            expected.insert(c.canonical);
        }
    }
    EXPECT_FALSE(expected.empty());
    EXPECT_EQ(canonical_set(enumerate_classes(q)), expected);

    EnumerationQuery h;
    h.h_max = 12;
    h.homogeneous = false;
    h.min_nvars = 2;
    h.max_monomials = 3;
    expected.clear();
    for (const auto &c : all) {
        const auto f = classify(c.rep);
        if (!f.homogeneous && f.nvars >= 2 && f.num_monomials <= 3) {
            expected.insert(c.canonical);
        }
    }
    EXPECT_EQ(canonical_set(enumerate_classes(h)), expected);
}

TEST(Enumerate, Limits)
{
    EnumerationQuery q;
    q.h_max = 40;
    EXPECT_THROW(enumerate_classes(q), LimitError);
    q.h_max = 1;
    EXPECT_THROW(enumerate_classes(q), std::invalid_argument);
}
