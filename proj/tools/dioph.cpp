#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <dioph/dioph.hpp>

using namespace dioph;
using json = nlohmann::ordered_json;

namespace
{

enum Exit { ok = 0, negative = 1, usage = 2, limit = 3 };

struct Globals {
    bool json = false;
    unsigned threads = 1;
};

// Equations from the command line, or one per line from stdin for "-".
// Blank lines and lines starting with '#' are skipped.
std::vector<std::string> expand_inputs(const std::vector<std::string> &args)
{
    std::vector<std::string> out;
    for (const auto &a : args) {
        if (a != "-") {
            out.push_back(a);
            continue;
        }
        std::string line;
        while (std::getline(std::cin, line)) {
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') {
                continue;
            }
            out.push_back(line);
        }
    }
    return out;
}

void emit(const Globals &g, const json &j, const std::string &text)
{
    if (g.json) {
        std::cout << j.dump() << '\n';
    } else {
        std::cout << text << '\n';
    }
}

json tuple_json(const SolutionTuple &t)
{
    json a = json::array();
    for (const auto &v : t.values) {
        a.push_back(to_string(v));
    }
    return a;
}

SolutionTuple parse_tuple(const std::string &text)
{
    std::string s;
    for (char c : text) {
        if (c != '(' && c != ')' && c != '[' && c != ']') {
            s += c == ',' ? ' ' : c;
        }
    }
    std::istringstream in(s);
    SolutionTuple t;
    std::string v;
    while (in >> v) {
        t.values.push_back(parse_integer(v));
    }
    return t;
}

std::filesystem::path catalog_root(const std::string &given)
{
    if (!given.empty()) {
        return given;
    }
    if (const char *env = std::getenv("DIOPH_CATALOG")) {
        return env;
    }
    throw CLI::ValidationError("catalog", "no catalog path given and DIOPH_CATALOG is unset");
}

json transform_json(const Transform &t)
{
    return json{{"divisor", to_string(t.divisor)},
                {"global_sign", t.global_sign},
                {"signs", t.signs},
                {"permutation", t.permutation}};
}

std::string flags_text(const CategoryFlags &f)
{
    std::ostringstream os;
    os << "nvars=" << f.nvars << " degree=" << f.degree << " monomials=" << f.num_monomials
       << " homogeneous=" << f.homogeneous << " symmetric=" << f.symmetric << " cyclic=" << f.cyclic
       << " independent_monomials=" << f.independent_monomials;
    return os.str();
}

std::string status_text(const CatalogRecord &r)
{
    std::string s;
    for (const auto &[p, st] : r.status) {
        s += (s.empty() ? "" : " ") + problem_name(p) + ":" + status_name(st);
    }
    return s;
}

json record_summary(const CatalogRecord &r)
{
    json status = json::object();
    for (const auto &[p, s] : r.status) {
        status[problem_name(p)] = status_name(s);
    }
    return json{{"id", r.id},
                {"equation", r.equation},
                {"canonical", r.canonical},
                {"h", r.h},
                {"l", format_tenths(r.l_times_10)},
                {"status", status}};
}

std::optional<bool> tri_state(const std::string &s)
{
    if (s.empty()) {
        return std::nullopt;
    }
    if (s == "true" || s == "yes" || s == "1") {
        return true;
    }
    if (s == "false" || s == "no" || s == "0") {
        return false;
    }
    throw CLI::ValidationError("filter", "expected true or false, got '" + s + "'");
}

} // namespace

int main(int argc, char **argv)
{
    Globals g;
    CLI::App app{"Size, length, equivalence, enumeration, search and catalog tools for polynomial Diophantine "
                 "equations.\nExit codes: 0 success/true, 1 false/negative, 2 usage or input error, 3 resource "
                 "limit."};
    app.require_subcommand(1);
    app.add_flag("--json", g.json, "Machine-readable output, one JSON object per line");
    app.add_option("--threads", g.threads, "Cap on parallel partitions")->check(CLI::PositiveNumber);

    int code = ok;

    // size / length / canon / classify: one line per equation
    std::vector<std::string> eqs;

    auto *size = app.add_subcommand("size", "Print H(P)");
    size->add_option("equations", eqs, "Equations, or - for stdin")->required();
    size->callback([&] {
        for (const auto &e : expand_inputs(eqs)) {
            const auto h = compute_size(parse_equation(e));
            emit(g, json{{"command", "size"}, {"equation", e}, {"h", to_string(h)}}, to_string(h));
        }
    });

    auto *length = app.add_subcommand("length", "Print l(P) rounded to one decimal, and L(P)");
    length->add_option("equations", eqs, "Equations, or - for stdin")->required();
    length->callback([&] {
        for (const auto &e : expand_inputs(eqs)) {
            const auto big_l = compute_big_length(parse_equation(e));
            const auto tenths = length_tenths(big_l);
            emit(g,
                 json{{"command", "length"},
                      {"equation", e},
                      {"l", format_tenths(tenths)},
                      {"l_times_10", tenths},
                      {"big_l", to_string(big_l)}},
                 format_tenths(tenths) + " (L=" + to_string(big_l) + ")");
        }
    });

    bool display = false;
    std::size_t max_vars = 8;
    auto *canon = app.add_subcommand("canon", "Print the class representative");
    canon->add_option("equations", eqs, "Equations, or - for stdin")->required();
    canon->add_flag("--display", display, "Name variables x, y, z, t, s where possible");
    canon->add_option("--max-vars", max_vars, "Refuse inputs with more variables")->capture_default_str();
    canon->callback([&] {
        for (const auto &e : expand_inputs(eqs)) {
            const auto cf = canonicalize(parse_equation(e), {std::max(max_vars, std::size_t{1})});
            const auto text = format_equation(cf.rep, display ? FormatStyle::display : FormatStyle::canonical);
            emit(g,
                 json{{"command", "canon"},
                      {"equation", e},
                      {"canonical", text},
                      {"h", to_string(compute_size(cf.rep))},
                      {"transform", transform_json(cf.transform)}},
                 text);
        }
    });

    std::string lhs, rhs;
    auto *equiv = app.add_subcommand("equiv", "Exit 0 when two equations are equivalent, 1 otherwise");
    equiv->add_option("first", lhs)->required();
    equiv->add_option("second", rhs)->required();
    equiv->callback([&] {
        const bool same = are_equivalent(parse_equation(lhs), parse_equation(rhs));
        emit(g, json{{"command", "equiv"}, {"first", lhs}, {"second", rhs}, {"equivalent", same}},
             same ? "equivalent" : "not equivalent");
        code = same ? ok : negative;
    });

    auto *classify_cmd = app.add_subcommand("classify", "Print category flags and any special form");
    classify_cmd->add_option("equations", eqs, "Equations, or - for stdin")->required();
    classify_cmd->callback([&] {
        for (const auto &e : expand_inputs(eqs)) {
            const auto p = parse_equation(e);
            const auto f = classify(p);
            const auto special = detect_special_form(p);
            std::string text = flags_text(f);
            if (special) {
                text += " special=" + detail::special_kind_name(special->kind);
                if (special->kind == SpecialKind::generalized_fermat) {
                    text += special->hyperbolic ? " (hyperbolic)" : " (not hyperbolic)";
                }
            }
            emit(g,
                 json{{"command", "classify"},
                      {"equation", e},
                      {"flags", detail::flags_to_json(f)},
                      {"special", detail::special_to_json(special)}},
                 text);
        }
    });

    EnumerationQuery query;
    std::string strategy = "multiset";
    std::size_t nvars_exact = 0;
    std::string f_hom, f_sym, f_cyc, f_ind;
    auto *enumerate = app.add_subcommand("enumerate", "List one equation per class with H <= h-max, by (H, canonical)");
    enumerate->add_option("--h-max", query.h_max, "Size bound")->required();
    enumerate->add_option("--nvars", nvars_exact, "Exactly this many variables");
    enumerate->add_option("--max-degree", query.max_degree, "Degree bound");
    enumerate->add_option("--max-monomials", query.max_monomials, "Monomial count bound");
    enumerate->add_option("--homogeneous", f_hom, "true or false");
    enumerate->add_option("--symmetric", f_sym, "true or false");
    enumerate->add_option("--cyclic", f_cyc, "true or false");
    enumerate->add_option("--independent", f_ind, "true or false");
    enumerate->add_option("--strategy", strategy, "multiset or budget")->capture_default_str()
        ->check(CLI::IsMember({"multiset", "budget"}));
    enumerate->add_option("--h-limit", query.h_limit, "Refuse h-max above this")->capture_default_str();
    enumerate->callback([&] {
        if (nvars_exact != 0) {
            query.min_nvars = nvars_exact;
            query.max_nvars = nvars_exact;
        }
        query.homogeneous = tri_state(f_hom);
        query.symmetric = tri_state(f_sym);
        query.cyclic = tri_state(f_cyc);
        query.independent_monomials = tri_state(f_ind);
        query.threads = g.threads;
        const auto classes = enumerate_classes(query, strategy == "budget" ? EnumerationStrategy::degree_budget
                                                                          : EnumerationStrategy::monomial_multiset);
        for (const auto &c : classes) {
            json j{{"command", "enumerate"}, {"h", c.h}, {"canonical", c.canonical}};
            if (g.json) {
                j["flags"] = detail::flags_to_json(classify(c.rep));
            }
            emit(g, j, std::to_string(c.h) + " " + c.canonical);
        }
    });

    SearchSpec spec;
    std::string mode = "all";
    std::string eq_text;
    auto *search = app.add_subcommand("search", "List solutions in the box [-B, B]^n");
    search->add_option("equation", eq_text)->required();
    search->add_option("--box", spec.box, "Bound B on every |x_i|")->capture_default_str();
    search->add_option("--mode", mode, "all, positive, min_abs, primitive or nonzero")->capture_default_str()
        ->check(CLI::IsMember({"all", "positive", "min_abs", "primitive", "nonzero"}));
    search->add_option("--k", spec.k, "Lower bound on |x_i| in min_abs mode")->capture_default_str();
    search->add_option("--limit", spec.limit, "Stop after this many solutions");
    search->add_option("--budget", spec.budget, "Maximum candidate evaluations");
    search->add_flag("!--no-accelerate", spec.accelerate, "Iterate every variable instead of solving for one");
    search->callback([&] {
        const std::map<std::string, SearchMode> modes{{"all", SearchMode::all},
                                                      {"positive", SearchMode::positive},
                                                      {"min_abs", SearchMode::min_abs},
                                                      {"primitive", SearchMode::primitive},
                                                      {"nonzero", SearchMode::nonzero}};
        spec.mode = modes.at(mode);
        spec.threads = g.threads;
        const auto result = box_search(parse_equation(eq_text), spec);
        for (const auto &s : result.solutions) {
            emit(g, json{{"command", "search"}, {"solution", tuple_json(s)}}, format_tuple(s));
        }
        std::string summary = result.complete ? "complete" : result.truncated ? "truncated at limit" : "budget exceeded";
        if (result.complete && result.solutions.empty()) {
            summary = "no solutions in box";
        }
        const json status{{"command", "search"},
                          {"equation", eq_text},
                          {"box", spec.box},
                          {"count", result.solutions.size()},
                          {"complete", result.complete},
                          {"truncated", result.truncated},
                          {"budget_exceeded", result.budget_exceeded},
                          {"candidates", result.candidates}};
        if (g.json) {
            std::cout << status.dump() << '\n';
        } else {
            std::cerr << summary << " (" << result.solutions.size() << " solutions, " << result.candidates
                      << " candidates)\n";
        }
        code = result.budget_exceeded ? limit : result.solutions.empty() ? negative : ok;
    });

    std::string tuple_text;
    auto *verify = app.add_subcommand("verify", "Exit 0 when the tuple solves the equation");
    verify->add_option("equation", eq_text)->required();
    verify->add_option("tuple", tuple_text, "Comma-separated integers, e.g. \"(9,10,-12)\"")->required();
    verify->callback([&] {
        const auto p = parse_equation(eq_text);
        const auto t = parse_tuple(tuple_text);
        const auto value = evaluate(p, t.values);
        const bool solved = value == 0;
        emit(g,
             json{{"command", "verify"},
                  {"equation", eq_text},
                  {"tuple", tuple_json(t)},
                  {"value", to_string(value)},
                  {"solution", solved}},
             solved ? "solution" : "not a solution (P = " + to_string(value) + ")");
        code = solved ? ok : negative;
    });

    std::size_t k = 1;
    std::vector<std::string> components;
    std::vector<std::string> members;
    std::string cover;
    CoverOptions cover_opts;
    auto *family = app.add_subcommand("family", "Check that a polynomial family solves the equation identically");
    family->add_option("equation", eq_text)->required();
    family->add_option("components", components, "One polynomial in u1..uk per variable")->required();
    family->add_option("--k", k, "Number of parameters")->capture_default_str();
    family->add_option("--member", members, "Print the member at this parameter tuple");
    family->add_option("--cover", cover, "Check whether this tuple is attained with |u_i| <= --u-box");
    family->add_option("--u-box", cover_opts.u_box, "Parameter bound for --cover")->capture_default_str();
    family->add_flag("--permutations", cover_opts.include_permutations, "Also try permuted components for --cover");
    family->callback([&] {
        const auto p = parse_equation(eq_text);
        const auto f = ParametricFamily::parse(k, components);
        const bool identity = verify_family(p, f);
        json j{{"command", "family"}, {"equation", eq_text}, {"components", f.formatted()}, {"identity", identity}};
        std::string text = identity ? "identity holds" : "not an identity";
        json member_list = json::array();
        for (const auto &m : members) {
            const auto u = parse_tuple(m);
            const auto s = family_member(f, u.values);
            member_list.push_back(tuple_json(s));
            text += "\n" + format_tuple(u) + " -> " + format_tuple(s);
        }
        if (!members.empty()) {
            j["members"] = member_list;
        }
        bool covered = true;
        if (!cover.empty()) {
            const std::vector<ParametricFamily> fams{f};
            covered = covers_witness(fams, parse_tuple(cover), cover_opts);
            j["covered"] = covered;
            text += covered ? "\ncovered" : "\nnot covered within the parameter box";
        }
        emit(g, j, text);
        code = identity && covered ? ok : negative;
    });

    std::vector<std::uint64_t> moduli;
    std::uint64_t modulus_bound = 729;
    std::uint64_t obstruct_budget = 200'000'000;
    auto *obstruct = app.add_subcommand("obstruct", "Find a modulus m with no solution of P = 0 mod m");
    obstruct->add_option("equation", eq_text)->required();
    obstruct->add_option("--moduli", moduli, "Moduli to try, in order (default: prime powers up to --bound)");
    obstruct->add_option("--bound", modulus_bound, "Largest default prime power")->capture_default_str();
    obstruct->add_option("--budget", obstruct_budget, "Maximum residue evaluations")->capture_default_str();
    obstruct->callback([&] {
        if (moduli.empty()) {
            moduli = prime_power_moduli(modulus_bound);
        }
        const auto m = modular_obstruction(parse_equation(eq_text), moduli, obstruct_budget);
        emit(g, json{{"command", "obstruct"}, {"equation", eq_text}, {"modulus", m ? json(*m) : json(nullptr)}},
             m ? "no solutions mod " + std::to_string(*m) : "no obstruction found");
        code = m ? ok : negative;
    });

    std::string path;
    auto *cverify = app.add_subcommand("catalog-verify", "Recompute every derivable field of a catalog");
    cverify->add_option("path", path, "JSONL file or directory (default: $DIOPH_CATALOG)");
    cverify->callback([&] {
        const auto records = load_catalog(catalog_root(path));
        const auto report = verify_catalog(records);
        json mismatches = json::array();
        std::ostringstream text;
        for (const auto &m : report.mismatches) {
            mismatches.push_back(
                json{{"id", m.id}, {"field", m.field}, {"stored", m.stored}, {"recomputed", m.recomputed}});
            text << "MISMATCH " << m.id << " " << m.field << ": stored " << m.stored << ", recomputed "
                 << m.recomputed << "\n";
        }
        text << report.records << " records, " << report.witnesses << " witnesses, " << report.families
             << " families, " << report.mismatches.size() << " mismatches";
        emit(g,
             json{{"command", "catalog-verify"},
                  {"records", report.records},
                  {"witnesses", report.witnesses},
                  {"families", report.families},
                  {"mismatches", mismatches}},
             text.str());
        code = report.ok() ? ok : negative;
    });

    std::string problem_text, filter_text, order = "h", source;
    bool debatable = false;
    auto *creport = app.add_subcommand(
        "catalog-report", "With --problem, the smallest open records; otherwise every record in (H, canonical) order");
    creport->add_option("path", path, "JSONL file or directory (default: $DIOPH_CATALOG)");
    creport->add_option("--problem", problem_text, "Problem id, e.g. P6 or P6_existence");
    creport->add_option("--filter", filter_text, "e.g. nvars=2,degree=3,symmetric");
    creport->add_option("--order", order, "h or length")->capture_default_str()->check(CLI::IsMember({"h", "length"}));
    creport->add_option("--source", source, "Only records whose provenance starts with this table name, e.g. h13");
    creport->add_flag("--debatable", debatable, "Count debatable records as open");
    creport->callback([&] {
        std::vector<CatalogRecord> records;
        for (auto &r : load_catalog(catalog_root(path))) {
            const bool listed = source.empty() || std::any_of(r.provenance.begin(), r.provenance.end(),
                                                              [&](const std::string &p) { return p.rfind(source, 0) == 0; });
            if (listed) {
                records.push_back(std::move(r));
            }
        }
        const auto filter = parse_filter(filter_text);
        std::vector<CatalogRecord> shown;
        if (!problem_text.empty()) {
            const auto problem = parse_problem(problem_text);
            if (!problem) {
                throw CLI::ValidationError("--problem", "unknown problem id '" + problem_text + "'");
            }
            shown = smallest_open(records, *problem,
                                  {filter, debatable, order == "length" ? Ordering::length : Ordering::size});
        } else {
            std::copy_if(records.begin(), records.end(), std::back_inserter(shown),
                         [&](const CatalogRecord &r) { return filter.matches(r); });
            std::stable_sort(shown.begin(), shown.end(), [&](const CatalogRecord &a, const CatalogRecord &b) {
                if (order == "length" && a.l_times_10 != b.l_times_10) {
                    return a.l_times_10 < b.l_times_10;
                }
                return a.h != b.h ? a.h < b.h : a.canonical < b.canonical;
            });
        }
        for (const auto &r : shown) {
            json j = record_summary(r);
            j["command"] = "catalog-report";
            emit(g, j, std::to_string(r.h) + "\t" + format_tenths(r.l_times_10) + "\t" + r.equation + "\t" +
                           status_text(r));
        }
        code = shown.empty() ? negative : ok;
    });

    std::string old_path, new_path;
    auto *cdiff = app.add_subcommand("catalog-diff", "Added, removed and status-changed classes between two catalogs");
    cdiff->add_option("old", old_path)->required();
    cdiff->add_option("new", new_path)->required();
    cdiff->callback([&] {
        const auto d = diff_catalogs(load_catalog(old_path), load_catalog(new_path));
        for (const auto &r : d.removed) {
            json j{{"command", "catalog-diff"}, {"change", "removed"}, {"record", record_summary(r)}};
            emit(g, j, "- " + r.equation);
        }
        for (const auto &r : d.added) {
            json j{{"command", "catalog-diff"}, {"change", "added"}, {"record", record_summary(r)}};
            j["provenance"] = r.provenance;
            emit(g, j, "+ " + r.equation);
        }
        for (const auto &c : d.status_changed) {
            const std::string before = c.before ? status_name(*c.before) : "none";
            const std::string after = c.after ? status_name(*c.after) : "none";
            json j{{"command", "catalog-diff"},
                   {"change", "status_changed"},
                   {"record", record_summary(c.record)},
                   {"problem", problem_name(c.problem)},
                   {"old", before},
                   {"new", after},
                   {"provenance", c.record.provenance}};
            emit(g, j, "~ " + c.record.equation + " " + problem_name(c.problem) + ": " + before + " -> " + after);
        }
        code = d.empty() ? ok : negative;
    });

    bool in_place = false;
    auto *cfill = app.add_subcommand("catalog-fill", "Recompute canonical, h, l_times_10, flags and special from equation");
    cfill->add_option("path", path, "JSONL file")->required()->check(CLI::ExistingFile);
    cfill->add_flag("--in-place", in_place, "Rewrite the file instead of printing");
    cfill->callback([&] {
        std::ifstream in(path);
        std::vector<CatalogRecord> records;
        std::string line;
        std::size_t n = 0;
        while (std::getline(in, line)) {
            ++n;
            if (line.find_first_not_of(" \t\r") == std::string::npos) {
                continue;
            }
            json j = json::parse(line);
            // Transcribed rows may omit everything that is recomputed here.
            const json defaults{{"schema_version", catalog_schema_version},
                                {"canonical", j.value("equation", std::string())},
                                {"h", 0},
                                {"l_times_10", 0},
                                {"flags", detail::flags_to_json({})},
                                {"special", nullptr},
                                {"status", json::object()},
                                {"provenance", json::array()},
                                {"witnesses", json::array()},
                                {"families", json::array()},
                                {"links", json::array()}};
            for (const auto &[key, value] : defaults.items()) {
                if (!j.contains(key)) {
                    j[key] = value;
                }
            }
            auto r = record_from_json(j, n);
            complete_record(r);
            records.push_back(std::move(r));
        }
        in.close();
        if (in_place) {
            std::ofstream out(path);
            write_catalog(out, records);
        } else {
            write_catalog(std::cout, records);
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    } catch (const LimitError &e) {
        std::cerr << "limit: " << e.what() << '\n';
        return limit;
    } catch (const ParseError &e) {
        std::cerr << "parse error at " << e.position() << ": " << e.what() << '\n';
        return usage;
    } catch (const CatalogError &e) {
        std::cerr << "catalog: " << e.what() << '\n';
        return usage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const json::exception &e) {
        std::cerr << "json: " << e.what() << '\n';
        return usage;
    }
    return code;
}
