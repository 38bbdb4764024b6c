#ifndef DIOPH_CATALOG_HPP
#define DIOPH_CATALOG_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include <dioph/classify.hpp>
#include <dioph/equivalence.hpp>
#include <dioph/errors.hpp>
#include <dioph/families.hpp>
#include <dioph/integer.hpp>
#include <dioph/measures.hpp>
#include <dioph/parse.hpp>
#include <dioph/polynomial.hpp>
#include <dioph/search.hpp>

namespace dioph
{

inline constexpr int catalog_schema_version = 1;

enum class Problem {
    P1_parametrization,
    P_describe_integer,
    P_describe_rational,
    P2_large,
    P3_nonzero_hom,
    P4_finiteness,
    P5_nontrivial_hom,
    P6_existence,
    P7_positive,
};

inline constexpr std::array<std::pair<Problem, std::string_view>, 9> problem_names{{
    {Problem::P1_parametrization, "P1_parametrization"},
    {Problem::P_describe_integer, "P_describe_integer"},
    {Problem::P_describe_rational, "P_describe_rational"},
    {Problem::P2_large, "P2_large"},
    {Problem::P3_nonzero_hom, "P3_nonzero_hom"},
    {Problem::P4_finiteness, "P4_finiteness"},
    {Problem::P5_nontrivial_hom, "P5_nontrivial_hom"},
    {Problem::P6_existence, "P6_existence"},
    {Problem::P7_positive, "P7_positive"},
}};

inline std::string problem_name(Problem p)
{
    for (const auto &[id, name] : problem_names) {
        if (id == p) {
            return std::string(name);
        }
    }
    return "?";
}

// Accepts the full id ("P6_existence"), its short form ("P6") or the part
// after the underscore ("existence", "describe_integer").
inline std::optional<Problem> parse_problem(std::string_view text)
{
    for (const auto &[id, name] : problem_names) {
        const auto us = name.find('_');
        if (text == name || (text == name.substr(0, us) && name.substr(0, us) != "P") ||
            text == name.substr(us + 1)) {
            return id;
        }
    }
    return std::nullopt;
}

enum class Status { open, solved, debatable, not_applicable };

inline std::string status_name(Status s)
{
    switch (s) {
    case Status::open:
        return "open";
    case Status::solved:
        return "solved";
    case Status::debatable:
        return "debatable";
    default:
        return "not_applicable";
    }
}

inline std::optional<Status> parse_status(std::string_view s)
{
    if (s == "open") {
        return Status::open;
    }
    if (s == "solved") {
        return Status::solved;
    }
    if (s == "debatable") {
        return Status::debatable;
    }
    if (s == "not_applicable") {
        return Status::not_applicable;
    }
    return std::nullopt;
}

// An informal equivalence asserted by the source (solution sets correspond)
// that is not an instance of the formal relation.
struct Link {
    std::string id;
    std::string note;
    friend bool operator==(const Link &, const Link &) = default;
};

// One catalogued equation. `equation` is the form printed in the source
// table; witnesses and families use its variables in x, y, z, t, s order.
struct CatalogRecord {
    std::string id;
    std::string equation;
    std::string canonical;
    std::uint64_t h = 0;
    std::int64_t l_times_10 = 0;
    CategoryFlags flags;
    std::optional<SpecialForm> special;
    std::map<Problem, Status> status;
    std::vector<std::string> provenance;
    std::vector<SolutionTuple> witnesses;
    std::vector<ParametricFamily> families;
    std::vector<Link> links;

    std::string source; // file the record was read from
    std::size_t line = 0;
};

using json = nlohmann::ordered_json;

namespace detail
{

inline std::string special_kind_name(SpecialKind k)
{
    return k == SpecialKind::generalized_fermat ? "generalized_fermat" : "diagonal";
}

inline json flags_to_json(const CategoryFlags &f)
{
    return json{{"homogeneous", f.homogeneous},
                {"symmetric", f.symmetric},
                {"cyclic", f.cyclic},
                {"independent_monomials", f.independent_monomials},
                {"nvars", f.nvars},
                {"degree", f.degree},
                {"num_monomials", f.num_monomials}};
}

inline json special_to_json(const std::optional<SpecialForm> &s)
{
    if (!s) {
        return nullptr;
    }
    json coeffs = json::array();
    for (const auto &c : s->coefficients) {
        coeffs.push_back(to_string(c));
    }
    json j{{"kind", special_kind_name(s->kind)},
           {"exponents", s->exponents},
           {"coefficients", coeffs},
           {"hyperbolic", s->hyperbolic}};
    j["uniform_degree"] = s->uniform_degree ? json(*s->uniform_degree) : json(nullptr);
    return j;
}

inline json tuple_to_json(const SolutionTuple &t)
{
    json a = json::array();
    for (const auto &v : t.values) {
        a.push_back(to_string(v));
    }
    return a;
}

} // namespace detail

inline json record_to_json(const CatalogRecord &r)
{
    json status = json::object();
    for (const auto &[p, s] : r.status) {
        status[problem_name(p)] = status_name(s);
    }
    json witnesses = json::array();
    for (const auto &w : r.witnesses) {
        witnesses.push_back(detail::tuple_to_json(w));
    }
    json families = json::array();
    for (const auto &f : r.families) {
        families.push_back(json{{"k", f.k}, {"components", f.formatted()}});
    }
    json links = json::array();
    for (const auto &l : r.links) {
        links.push_back(json{{"id", l.id}, {"note", l.note}});
    }
    return json{{"schema_version", catalog_schema_version},
                {"id", r.id},
                {"equation", r.equation},
                {"canonical", r.canonical},
                {"h", r.h},
                {"l_times_10", r.l_times_10},
                {"flags", detail::flags_to_json(r.flags)},
                {"special", detail::special_to_json(r.special)},
                {"status", status},
                {"provenance", r.provenance},
                {"witnesses", witnesses},
                {"families", families},
                {"links", links}};
}

namespace detail
{

template <typename T>
T require(const json &j, const char *key, std::size_t line)
{
    if (!j.contains(key)) {
        throw CatalogError(line, std::string("missing field '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &) {
        throw CatalogError(line, std::string("field '") + key + "' has the wrong type");
    }
}

inline SolutionTuple tuple_from_json(const json &j, std::size_t line)
{
    if (!j.is_array()) {
        throw CatalogError(line, "witness must be an array");
    }
    SolutionTuple t;
    for (const auto &v : j) {
        try {
            if (v.is_string()) {
                t.values.push_back(parse_integer(v.get<std::string>()));
            } else if (v.is_number_integer()) {
                t.values.emplace_back(std::to_string(v.get<long long>()), 10);
            } else {
                throw CatalogError(line, "witness coordinates must be integers or decimal strings");
            }
        } catch (const std::invalid_argument &e) {
            throw CatalogError(line, e.what());
        }
    }
    return t;
}

inline std::optional<SpecialForm> special_from_json(const json &j, std::size_t line)
{
    if (j.is_null()) {
        return std::nullopt;
    }
    SpecialForm s;
    const auto kind = require<std::string>(j, "kind", line);
    if (kind == "generalized_fermat") {
        s.kind = SpecialKind::generalized_fermat;
    } else if (kind == "diagonal") {
        s.kind = SpecialKind::diagonal;
    } else {
        throw CatalogError(line, "unknown special form kind '" + kind + "'");
    }
    s.exponents = require<std::vector<unsigned>>(j, "exponents", line);
    for (const auto &c : require<std::vector<std::string>>(j, "coefficients", line)) {
        s.coefficients.push_back(parse_integer(c));
    }
    s.hyperbolic = require<bool>(j, "hyperbolic", line);
    if (j.contains("uniform_degree") && !j["uniform_degree"].is_null()) {
        s.uniform_degree = require<unsigned>(j, "uniform_degree", line);
    }
    return s;
}

} // namespace detail

inline CatalogRecord record_from_json(const json &j, std::size_t line = 0)
{
    using detail::require;
    if (!j.is_object()) {
        throw CatalogError(line, "record must be a JSON object");
    }
    const int version = require<int>(j, "schema_version", line);
    if (version != catalog_schema_version) {
        throw CatalogError(line, "unsupported schema_version " + std::to_string(version));
    }
    CatalogRecord r;
    r.line = line;
    r.id = require<std::string>(j, "id", line);
    r.equation = require<std::string>(j, "equation", line);
    r.canonical = require<std::string>(j, "canonical", line);
    for (const auto *text : {&r.equation, &r.canonical}) {
        try {
            parse_equation(*text);
        } catch (const ParseError &e) {
            throw CatalogError(line, "cannot parse '" + *text + "': " + e.what());
        }
    }
    r.h =require<std::uint64_t>(j, "h", line);
    r.l_times_10 = require<std::int64_t>(j, "l_times_10", line);
    const json &flags = j.contains("flags") ? j["flags"] : throw CatalogError(line, "missing field 'flags'");
    r.flags.homogeneous = require<bool>(flags, "homogeneous", line);
    r.flags.symmetric = require<bool>(flags, "symmetric", line);
    r.flags.cyclic = require<bool>(flags, "cyclic", line);
    r.flags.independent_monomials = require<bool>(flags, "independent_monomials", line);
    r.flags.nvars = require<std::size_t>(flags, "nvars", line);
    r.flags.degree = require<unsigned>(flags, "degree", line);
    r.flags.num_monomials = require<std::size_t>(flags, "num_monomials", line);
    r.special = detail::special_from_json(j.value("special", json(nullptr)), line);
    const auto status = require<json>(j, "status", line);
    for (const auto &[key, value] : status.items()) {
        const auto p = parse_problem(key);
        if (!p || problem_name(*p) != key) {
            throw CatalogError(line, "unknown problem id '" + key + "'");
        }
        const auto s = value.is_string() ? parse_status(value.get<std::string>()) : std::nullopt;
        if (!s) {
            throw CatalogError(line, "unknown status for " + key);
        }
        r.status[*p] = *s;
    }
    r.provenance = require<std::vector<std::string>>(j, "provenance", line);
    const auto witnesses = require<json>(j, "witnesses", line);
    for (const auto &w : witnesses) {
        r.witnesses.push_back(detail::tuple_from_json(w, line));
    }
    const auto families = require<json>(j, "families", line);
    for (const auto &f : families) {
        try {
            r.families.push_back(ParametricFamily::parse(require<std::size_t>(f, "k", line),
                                                         require<std::vector<std::string>>(f, "components", line)));
        } catch (const ParseError &e) {
            throw CatalogError(line, std::string("family: ") + e.what());
        }
    }
    const auto links = require<json>(j, "links", line);
    for (const auto &l : links) {
        r.links.push_back({require<std::string>(l, "id", line), require<std::string>(l, "note", line)});
    }
    return r;
}

namespace detail
{

// Canonical string of the record's class, recomputed from `canonical`.
inline std::string class_key(const CatalogRecord &r)
{
    try {
        return format_equation(canonicalize(parse_equation(r.canonical)).rep, FormatStyle::canonical);
    } catch (const ParseError &e) {
        throw CatalogError(r.line, "cannot parse canonical form '" + r.canonical + "': " + e.what());
    }
}

template <typename T>
void append_unique(std::vector<T> &into, const std::vector<T> &from)
{
    for (const auto &x : from) {
        if (std::find(into.begin(), into.end(), x) == into.end()) {
            into.push_back(x);
        }
    }
}

// Folds `extra` (the same class, listed in another table) into `base`.
inline void merge_into(CatalogRecord &base, const CatalogRecord &extra)
{
    for (const auto &[p, s] : extra.status) {
        const auto it = base.status.find(p);
        if (it != base.status.end() && it->second != s) {
            throw CatalogError(extra.line, extra.source + ": status of " + problem_name(p) + " for '" + extra.equation +
                                               "' conflicts with " + base.source);
        }
        base.status[p] = s;
    }
    append_unique(base.provenance, extra.provenance);
    append_unique(base.witnesses, extra.witnesses);
    append_unique(base.families, extra.families);
    append_unique(base.links, extra.links);
}

inline std::vector<CatalogRecord> load_file(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw CatalogError(0, "cannot open catalog file " + path.string());
    }
    std::vector<CatalogRecord> out;
    std::map<std::string, std::size_t> classes;
    std::set<std::string> ids;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (text.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error &e) {
            throw CatalogError(line, path.filename().string() + ": invalid JSON: " + e.what());
        }
        CatalogRecord r = record_from_json(j, line);
        r.source = path.filename().string();
        const std::string key = class_key(r);
        if (const auto it = classes.find(key); it != classes.end()) {
            throw CatalogError(line, path.filename().string() + ": duplicate class, equivalent to line " +
                                         std::to_string(out[it->second].line));
        }
        if (!ids.insert(r.id).second) {
            throw CatalogError(line, path.filename().string() + ": duplicate id '" + r.id + "'");
        }
        classes[key] = out.size();
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace detail

// Loads one JSONL file, or every *.jsonl file of a directory in name order.
// Within a file equivalent rows are an error; across files rows of the same
// class are merged (the same equation can appear in several tables).
inline std::vector<CatalogRecord> load_catalog(const std::filesystem::path &path)
{
    if (!std::filesystem::is_directory(path)) {
        return detail::load_file(path);
    }
    std::vector<std::filesystem::path> files;
    for (const auto &entry : std::filesystem::directory_iterator(path)) {
        if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<CatalogRecord> out;
    std::map<std::string, std::size_t> classes;
    std::set<std::string> ids;
    for (const auto &f : files) {
        for (auto &r : detail::load_file(f)) {
            const std::string key = detail::class_key(r);
            if (const auto it = classes.find(key); it != classes.end()) {
                detail::merge_into(out[it->second], r);
                continue;
            }
            if (!ids.insert(r.id).second) {
                throw CatalogError(r.line, f.filename().string() + ": id '" + r.id + "' already used in another file");
            }
            classes[key] = out.size();
            out.push_back(std::move(r));
        }
    }
    return out;
}

inline void write_catalog(std::ostream &os, const std::vector<CatalogRecord> &records)
{
    for (const auto &r : records) {
        os << record_to_json(r).dump() << '\n';
    }
}

// Fills every computable field of a record from its `equation`.
inline void complete_record(CatalogRecord &r)
{
    const Polynomial p = parse_equation(r.equation);
    const CanonicalForm cf = canonicalize(p);
    r.canonical = format_equation(cf.rep, FormatStyle::canonical);
    r.h = compute_size(cf.rep).get_ui();
    r.l_times_10 = length_tenths(compute_big_length(cf.rep));
    r.flags = classify(cf.rep);
    r.special = detect_special_form(cf.rep);
}

struct Mismatch {
    std::string id;
    std::string field;
    std::string stored;
    std::string recomputed;
};

struct VerificationReport {
    std::size_t records = 0;
    std::size_t witnesses = 0;
    std::size_t families = 0;
    std::vector<Mismatch> mismatches;

    bool ok() const
    {
        return mismatches.empty();
    }
};

namespace detail
{

inline std::string special_text(const std::optional<SpecialForm> &s)
{
    return special_to_json(s).dump();
}

} // namespace detail

// Recomputes everything computable about each record and reports every
// disagreement with what is stored.
inline VerificationReport verify_catalog(const std::vector<CatalogRecord> &records)
{
    VerificationReport report;
    std::set<std::string> ids;
    for (const auto &r : records) {
        ids.insert(r.id);
    }
    for (const auto &r : records) {
        ++report.records;
        auto mismatch = [&](std::string field, std::string stored, std::string recomputed) {
            report.mismatches.push_back({r.id, std::move(field), std::move(stored), std::move(recomputed)});
        };
        Polynomial canonical_poly;
        Polynomial equation_poly;
        try {
            canonical_poly = parse_equation(r.canonical);
            equation_poly = parse_equation(r.equation);
        } catch (const ParseError &e) {
            mismatch("parse", r.canonical + " / " + r.equation, e.what());
            continue;
        }
        const CanonicalForm cf = canonicalize(canonical_poly);
        const std::string recanon = format_equation(cf.rep, FormatStyle::canonical);
        if (recanon != r.canonical) {
            mismatch("canonical", r.canonical, recanon);
        }
        const std::string from_equation = format_equation(canonicalize(equation_poly).rep, FormatStyle::canonical);
        if (from_equation != recanon) {
            mismatch("equation", r.equation, from_equation);
        }
        const Integer h = compute_size(cf.rep);
        if (h != r.h) {
            mismatch("h", std::to_string(r.h), to_string(h));
        }
        const auto tenths = length_tenths(compute_big_length(cf.rep));
        if (tenths != r.l_times_10) {
            mismatch("l_times_10", std::to_string(r.l_times_10), std::to_string(tenths));
        }
        const CategoryFlags flags = classify(cf.rep);
        if (!(flags == r.flags)) {
            mismatch("flags", detail::flags_to_json(r.flags).dump(), detail::flags_to_json(flags).dump());
        }
        const auto special = detect_special_form(cf.rep);
        if (detail::special_text(special) != detail::special_text(r.special)) {
            mismatch("special", detail::special_text(r.special), detail::special_text(special));
        }
        for (const auto &w : r.witnesses) {
            ++report.witnesses;
            if (w.values.size() != equation_poly.nvars()) {
                mismatch("witness", format_tuple(w), "arity mismatch");
            } else if (!verify_solution(equation_poly, w)) {
                mismatch("witness", format_tuple(w), "P = " + to_string(evaluate(equation_poly, w.values)));
            }
        }
        for (const auto &f : r.families) {
            ++report.families;
            if (f.components.size() != equation_poly.nvars() || !verify_family(equation_poly, f)) {
                std::string comps;
                for (const auto &c : f.formatted()) {
                    comps += (comps.empty() ? "" : ", ") + c;
                }
                mismatch("family", "(" + comps + ")", "not an identity");
            }
        }
        for (const auto &l : r.links) {
            if (ids.count(l.id) == 0) {
                mismatch("link", l.id, "no such record");
            }
        }
    }
    return report;
}

struct RecordFilter {
    std::optional<std::size_t> nvars;
    std::optional<unsigned> degree;
    std::optional<std::size_t> num_monomials;
    std::optional<bool> homogeneous;
    std::optional<bool> symmetric;
    std::optional<bool> cyclic;
    std::optional<bool> independent_monomials;

    bool matches(const CatalogRecord &r) const
    {
        const auto &f = r.flags;
        return (!nvars || f.nvars == *nvars) && (!degree || f.degree == *degree) &&
               (!num_monomials || f.num_monomials == *num_monomials) &&
               (!homogeneous || f.homogeneous == *homogeneous) && (!symmetric || f.symmetric == *symmetric) &&
               (!cyclic || f.cyclic == *cyclic) &&
               (!independent_monomials || f.independent_monomials == *independent_monomials);
    }
};

// "nvars=2,degree=3,symmetric,homogeneous=false"
inline RecordFilter parse_filter(std::string_view text)
{
    RecordFilter f;
    std::string s(text);
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        const auto eq = item.find('=');
        const std::string key = item.substr(0, eq);
        const std::string value = eq == std::string::npos ? "true" : item.substr(eq + 1);
        auto as_bool = [&]() {
            if (value == "true" || value == "1" || value == "yes") {
                return true;
            }
            if (value == "false" || value == "0" || value == "no") {
                return false;
            }
            throw std::invalid_argument("filter '" + key + "' expects a boolean");
        };
        auto as_count = [&]() -> std::size_t {
            try {
                return static_cast<std::size_t>(std::stoul(value));
            } catch (const std::exception &) {
                throw std::invalid_argument("filter '" + key + "' expects a number");
            }
        };
        if (key == "nvars") {
            f.nvars = as_count();
        } else if (key == "degree") {
            f.degree = static_cast<unsigned>(as_count());
        } else if (key == "monomials" || key == "num_monomials") {
            f.num_monomials = as_count();
        } else if (key == "homogeneous") {
            f.homogeneous = as_bool();
        } else if (key == "symmetric") {
            f.symmetric = as_bool();
        } else if (key == "cyclic") {
            f.cyclic = as_bool();
        } else if (key == "independent" || key == "independent_monomials") {
            f.independent_monomials = as_bool();
        } else {
            throw std::invalid_argument("unknown filter '" + key + "'");
        }
    }
    return f;
}

enum class Ordering { size, length };

struct SmallestOpenOptions {
    RecordFilter filter;
    bool include_debatable = false;
    Ordering ordering = Ordering::size;
};

// Records open for `problem` that pass the filter and minimize H (or L),
// ties included, sorted by canonical string.
inline std::vector<CatalogRecord> smallest_open(const std::vector<CatalogRecord> &records, Problem problem,
                                                const SmallestOpenOptions &options = {})
{
    std::vector<std::pair<Integer, const CatalogRecord *>> candidates;
    for (const auto &r : records) {
        const auto it = r.status.find(problem);
        if (it == r.status.end()) {
            continue;
        }
        const bool open = it->second == Status::open || (options.include_debatable && it->second == Status::debatable);
        if (!open || !options.filter.matches(r)) {
            continue;
        }
        const Integer key =
            options.ordering == Ordering::size ? Integer(static_cast<unsigned long>(r.h))
                                               : compute_big_length(parse_equation(r.canonical));
        candidates.emplace_back(key, &r);
    }
    std::vector<CatalogRecord> out;
    if (candidates.empty()) {
        return out;
    }
    Integer best = candidates.front().first;
    for (const auto &c : candidates) {
        if (c.first < best) {
            best = c.first;
        }
    }
    for (const auto &c : candidates) {
        if (c.first == best) {
            out.push_back(*c.second);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const CatalogRecord &a, const CatalogRecord &b) { return a.canonical < b.canonical; });
    return out;
}

struct StatusChange {
    CatalogRecord record; // as in the newer catalog
    Problem problem;
    std::optional<Status> before;
    std::optional<Status> after;
};

struct CatalogDiff {
    std::vector<CatalogRecord> added;
    std::vector<CatalogRecord> removed;
    std::vector<StatusChange> status_changed;

    bool empty() const
    {
        return added.empty() && removed.empty() && status_changed.empty();
    }
};

// Matches records by class; reports additions, removals and per-problem
// status changes, carrying the newer file's provenance.
inline CatalogDiff diff_catalogs(const std::vector<CatalogRecord> &before, const std::vector<CatalogRecord> &after)
{
    std::map<std::string, const CatalogRecord *> old_by_class;
    std::map<std::string, const CatalogRecord *> new_by_class;
    for (const auto &r : before) {
        old_by_class[detail::class_key(r)] = &r;
    }
    for (const auto &r : after) {
        new_by_class[detail::class_key(r)] = &r;
    }
    CatalogDiff d;
    for (const auto &[key, r] : new_by_class) {
        const auto it = old_by_class.find(key);
        if (it == old_by_class.end()) {
            d.added.push_back(*r);
            continue;
        }
        std::set<Problem> problems;
        for (const auto &[p, s] : r->status) {
            problems.insert(p);
        }
        for (const auto &[p, s] : it->second->status) {
            problems.insert(p);
        }
        for (const auto p : problems) {
            std::optional<Status> was;
            std::optional<Status> now;
            if (const auto o = it->second->status.find(p); o != it->second->status.end()) {
                was = o->second;
            }
            if (const auto n = r->status.find(p); n != r->status.end()) {
                now = n->second;
            }
            if (was != now) {
                d.status_changed.push_back({*r, p, was, now});
            }
        }
    }
    for (const auto &[key, r] : old_by_class) {
        if (new_by_class.count(key) == 0) {
            d.removed.push_back(*r);
        }
    }
    return d;
}

// Applies a diff computed against `before`; statuses are the only record
// content a diff carries besides whole added records.
inline std::vector<CatalogRecord> apply_diff(const std::vector<CatalogRecord> &before, const CatalogDiff &d)
{
    std::set<std::string> removed;
    for (const auto &r : d.removed) {
        removed.insert(detail::class_key(r));
    }
    std::vector<CatalogRecord> out;
    for (const auto &r : before) {
        if (removed.count(detail::class_key(r)) == 0) {
            out.push_back(r);
        }
    }
    for (const auto &c : d.status_changed) {
        const std::string key = detail::class_key(c.record);
        for (auto &r : out) {
            if (detail::class_key(r) == key) {
                if (c.after) {
                    r.status[c.problem] = *c.after;
                } else {
                    r.status.erase(c.problem);
                }
            }
        }
    }
    out.insert(out.end(), d.added.begin(), d.added.end());
    return out;
}

} // namespace dioph

#endif
