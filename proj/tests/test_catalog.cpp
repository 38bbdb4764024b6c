#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "support.hpp"

using namespace dioph;
using namespace testing_support;

namespace fs = std::filesystem;

namespace
{

const fs::path data_dir{DIOPH_DATA_DIR};
const fs::path tables = data_dir / "tables";
const fs::path history = data_dir / "history";

fs::path scratch(const std::string &name, const std::string &content)
{
    const auto dir = fs::temp_directory_path() / "dioph_catalog_tests";
    fs::create_directories(dir);
    const auto path = dir / name;
    std::ofstream(path) << content;
    return path;
}

std::string row(const std::string &id, const std::string &equation, const std::string &status = "open")
{
    CatalogRecord r;
    r.id = id;
    r.equation = equation;
    r.status[Problem::P6_existence] = *parse_status(status);
    complete_record(r);
    return record_to_json(r).dump() + "\n";
}

const CatalogRecord *find_equation(const std::vector<CatalogRecord> &records, const char *text)
{
    const auto key = canonicalize(parse_equation(text)).rep;
    for (const auto &r : records) {
        if (parse_equation(r.canonical) == key) {
            return &r;
        }
    }
    return nullptr;
}

std::set<std::string> canonicals(const std::vector<CatalogRecord> &records)
{
    std::set<std::string> out;
    for (const auto &r : records) {
        out.insert(r.canonical);
    }
    return out;
}

} // namespace

TEST(Load, TableOne)
{
    const auto records = load_catalog(tables / "h13.jsonl");
    ASSERT_EQ(records.size(), 9u);
    for (const auto &r : records) {
        EXPECT_EQ(r.h, 13u);
        EXPECT_EQ(r.status.at(Problem::P1_parametrization), Status::open);
    }
}

TEST(Load, EmptyFile)
{
    EXPECT_TRUE(load_catalog(scratch("empty.jsonl", "")).empty());
}

TEST(Load, DuplicateClassRejected)
{
    const auto path = scratch("dup.jsonl", row("a", "x^3+yz+1=0") + row("b", "y^3-xz-1=0"));
    try {
        load_catalog(path);
        FAIL();
    } catch (const CatalogError &e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    }
}

TEST(Load, SchemaAndParseErrorsCarryLines)
{
    EXPECT_THROW(load_catalog(scratch("bad_json.jsonl", row("a", "x^3+yz+1=0") + "{not json\n")), CatalogError);
    auto wrong_version = row("a", "x^3+yz+1=0");
    wrong_version.replace(wrong_version.find("\"schema_version\":1"), 18, "\"schema_version\":9");
    EXPECT_THROW(load_catalog(scratch("version.jsonl", wrong_version)), CatalogError);
    auto bad_equation = row("a", "x^3+yz+1=0");
    bad_equation.replace(bad_equation.find("x^3+yz+1=0"), 10, "x^3+yz+=0");
    EXPECT_THROW(load_catalog(scratch("parse.jsonl", bad_equation)), CatalogError);
}

TEST(Load, RoundTripThroughWriter)
{
    const auto records = load_catalog(tables);
    std::ostringstream os;
    write_catalog(os, records);
    const auto again = load_catalog(scratch("roundtrip.jsonl", os.str()));
    ASSERT_EQ(again.size(), records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        EXPECT_EQ(record_to_json(again[i]), record_to_json(records[i]));
    }
}

TEST(Verify, ShippedCatalogHasNoMismatches)
{
    const auto records = load_catalog(tables);
    const auto report = verify_catalog(records);
    for (const auto &m : report.mismatches) {
        ADD_FAILURE() << m.id << " " << m.field << ": " << m.stored << " vs " << m.recomputed;
    }
    EXPECT_GT(report.witnesses, 0u);
    EXPECT_GT(report.families, 0u);
}

TEST(Verify, RecomputedMeasures)
{
    const auto records = load_catalog(tables);
    const auto *a = find_equation(records, "y^2+x^2y+z^2x+1=0");
    ASSERT_TRUE(a);
    EXPECT_EQ(a->h, 21u);
    const auto *b = find_equation(records, "y^2z+yz^2=x^3+x^2+3x-1");
    ASSERT_TRUE(b);
    EXPECT_EQ(b->l_times_10, 136);
}

TEST(Verify, TamperingIsReported)
{
    auto records = load_catalog(tables / "h13.jsonl");
    records[0].h += 1;
    records[1].flags.symmetric = !records[1].flags.symmetric;
    SolutionTuple bogus;
    bogus.values = {Integer(1), Integer(1), Integer(1)};
    records[2].witnesses.push_back(bogus);
    const auto report = verify_catalog(records);
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto &m : report.mismatches) {
        seen.insert({m.id, m.field});
    }
    EXPECT_TRUE(seen.count({records[0].id, "h"}));
    EXPECT_TRUE(seen.count({records[1].id, "flags"}));
    EXPECT_EQ(report.mismatches.size(), 3u);
}

TEST(SmallestOpen, Examples)
{
    const auto records = load_catalog(tables);
    SmallestOpenOptions two_var;
    two_var.filter = parse_filter("nvars=2");
    const auto p6 = smallest_open(records, Problem::P6_existence, two_var);
    ASSERT_EQ(p6.size(), 4u);
    for (const auto &r : p6) {
        EXPECT_EQ(r.h, 32u);
    }

    SmallestOpenOptions three_mon;
    three_mon.filter = parse_filter("monomials=3");
    const auto p4 = smallest_open(records, Problem::P4_finiteness, three_mon);
    ASSERT_EQ(p4.size(), 1u);
    EXPECT_EQ(parse_equation(p4[0].canonical), canonicalize(parse_equation("x^3y^2 = z^3+2")).rep);

    const auto p7 = smallest_open(records, Problem::P7_positive);
    std::set<std::string> expected;
    for (const char *e : {"y(x^3-z^2)=z", "y(x^3-z^2)=x", "x^2y^2+x=z^3"}) {
        expected.insert(format_equation(canonicalize(parse_equation(e)).rep, FormatStyle::canonical));
    }
    EXPECT_EQ(canonicals(p7), expected);
    EXPECT_EQ(p7.size(), 3u);
    for (const auto &r : p7) {
        EXPECT_EQ(r.h, 26u);
    }
    EXPECT_FALSE(parse_problem("P99"));
    EXPECT_THROW(parse_filter("colour=red"), std::invalid_argument);
}

TEST(SmallestOpen, OrderingAndDebatable)
{
    // H: 138, 29, 27.
    const auto path = scratch("order.jsonl", row("a", "x^3+y^3+z^3-114") + row("b", "x^2y+y^2z+z^2x-5") +
                                                 row("c", "x^2y+y^2z+z^2x-3", "debatable"));
    const auto records = load_catalog(path);
    const auto by_h = smallest_open(records, Problem::P6_existence);
    ASSERT_EQ(by_h.size(), 1u);
    EXPECT_EQ(by_h[0].id, "b");
    SmallestOpenOptions deb;
    deb.include_debatable = true;
    const auto with_deb = smallest_open(records, Problem::P6_existence, deb);
    ASSERT_EQ(with_deb.size(), 1u);
    EXPECT_EQ(with_deb[0].id, "c");

    // H 19 vs 17 but L 32 vs 256, so the two orderings disagree.
    const auto both = load_catalog(scratch("length.jsonl", row("short", "x^4+y-1") + row("small", "x^2+y^2+z^2+t^2+1")));
    EXPECT_EQ(smallest_open(both, Problem::P6_existence)[0].id, "small");
    SmallestOpenOptions by_len;
    by_len.ordering = Ordering::length;
    EXPECT_EQ(smallest_open(both, Problem::P6_existence, by_len)[0].id, "short");
}

// Below the reported minimum, no enumerated class is open for existence in
// the catalog, and every catalogued class under that bound is enumerated.
TEST(SmallestOpen, ConsistentWithEnumeration)
{
    const auto records = load_catalog(tables);
    const auto open = smallest_open(records, Problem::P6_existence);
    ASSERT_FALSE(open.empty());
    const std::uint64_t minimum = open.front().h;
    EXPECT_EQ(minimum, 32u);

    std::map<std::string, const CatalogRecord *> by_class;
    for (const auto &r : records) {
        by_class[r.canonical] = &r;
    }
    auto check = [&](const std::vector<EnumeratedClass> &classes) {
        std::size_t hits = 0;
        for (const auto &c : classes) {
            const auto it = by_class.find(c.canonical);
            if (it == by_class.end()) {
                continue;
            }
            ++hits;
            const auto s = it->second->status.find(Problem::P6_existence);
            if (s != it->second->status.end()) {
                EXPECT_NE(s->second, Status::open) << c.canonical;
            }
        }
        return hits;
    };
    EnumerationQuery all;
    all.h_max = 16;
    check(enumerate_classes(all));

    EnumerationQuery two;
    two.h_max = 31;
    two.h_limit = 31;
    two.min_nvars = 2;
    two.max_nvars = 2;
    const auto classes = enumerate_classes(two);
    check(classes);
    std::set<std::string> enumerated;
    for (const auto &c : classes) {
        enumerated.insert(c.canonical);
    }
    for (const auto &r : records) {
        if (r.flags.nvars == 2 && r.h <= 31) {
            EXPECT_TRUE(enumerated.count(r.canonical)) << r.id;
        }
        if (r.status.count(Problem::P6_existence) && r.status.at(Problem::P6_existence) == Status::open) {
            EXPECT_GE(r.h, minimum);
        }
    }
}

TEST(Tables, RowsPairwiseInequivalentUnlessLinked)
{
    for (const auto &entry : fs::directory_iterator(tables)) {
        const auto records = load_catalog(entry.path());
        for (std::size_t i = 0; i < records.size(); ++i) {
            for (std::size_t j = i + 1; j < records.size(); ++j) {
                const auto &a = records[i];
                const auto &b = records[j];
                const bool linked =
                    std::any_of(a.links.begin(), a.links.end(), [&](const Link &l) { return l.id == b.id; }) ||
                    std::any_of(b.links.begin(), b.links.end(), [&](const Link &l) { return l.id == a.id; });
                if (!linked) {
                    EXPECT_FALSE(are_equivalent(parse_equation(a.equation), parse_equation(b.equation)))
                        << entry.path().filename() << ": " << a.id << " " << b.id;
                }
            }
        }
    }
}

TEST(Diff, IdenticalIsEmpty)
{
    const auto a = load_catalog(history / "v4.jsonl");
    EXPECT_TRUE(diff_catalogs(a, a).empty());
    const auto records = load_catalog(tables);
    EXPECT_TRUE(diff_catalogs(records, records).empty());
}

TEST(Diff, ChangeLogVersions)
{
    const auto v3 = load_catalog(history / "v3.jsonl");
    const auto v4 = load_catalog(history / "v4.jsonl");
    const auto v5 = load_catalog(history / "v5.jsonl");
    const auto d34 = diff_catalogs(v3, v4);
    const auto target = canonicalize(parse_equation("7x^4-7y^4=25z^4")).rep;
    bool found = false;
    for (const auto &c : d34.status_changed) {
        if (parse_equation(c.record.canonical) == target) {
            found = true;
            EXPECT_EQ(c.problem, Problem::P3_nonzero_hom);
            EXPECT_EQ(c.before, Status::open);
            EXPECT_EQ(c.after, Status::solved);
            EXPECT_FALSE(c.record.provenance.empty());
        }
    }
    EXPECT_TRUE(found);

    const auto d45 = diff_catalogs(v4, v5);
    const auto z = canonicalize(parse_equation("z^2+y^2z-z+x^3+2=0")).rep;
    EXPECT_TRUE(std::any_of(d45.status_changed.begin(), d45.status_changed.end(), [&](const StatusChange &c) {
        return parse_equation(c.record.canonical) == z && c.after == Status::solved;
    }));
}

TEST(Diff, ApplyRoundTrips)
{
    std::vector<std::vector<CatalogRecord>> versions;
    for (int v = 1; v <= 6; ++v) {
        versions.push_back(load_catalog(history / ("v" + std::to_string(v) + ".jsonl")));
    }
    for (std::size_t i = 0; i < versions.size(); ++i) {
        for (std::size_t j = 0; j < versions.size(); ++j) {
            const auto d = diff_catalogs(versions[i], versions[j]);
            const auto applied = apply_diff(versions[i], d);
            EXPECT_TRUE(diff_catalogs(applied, versions[j]).empty()) << i << "->" << j;
            EXPECT_EQ(d.empty(), i == j || diff_catalogs(versions[j], versions[i]).empty());
        }
    }
}
