// Command-line front end: classification, Jacquet modules, duality, Jord,
// multiplicities, GL unitarity and the identity suites.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "unirank3/classifier.hpp"
#include "unirank3/jacquet.hpp"
#include "unirank3/oracle.hpp"

using namespace unirank3;
using nlohmann::json;

namespace {

/// Input errors that reach the user as exit code 2.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Line {
    std::string name;
    Rational alpha{0};
    std::vector<Rational> exps;
    bool selfcontragredient = true;
};

struct Query {
    std::string command;
    std::optional<Rational> alpha;
    std::vector<Rational> exps;
    std::optional<std::string> label;
    std::vector<Line> lines;
    bool json_out = false;
    bool pretty = false;
    std::string suite = "all";
    std::optional<long long> bound;
};

std::vector<Rational> parse_exps(const std::string& text) {
    std::vector<Rational> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (!item.empty()) v.push_back(check_range(parse_rational(item)));
    }
    return v;
}

/// Reads a string or integer JSON value as a rational.
Rational json_rational(const json& j, const std::string& what) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    throw SchemaError(what + ": expected a rational string or an integer");
}

std::vector<Rational> json_exps(const json& j, const std::string& what) {
    if (j.is_string()) return parse_exps(j.get<std::string>());
    if (!j.is_array()) throw SchemaError(what + ": expected a list");
    std::vector<Rational> v;
    for (const auto& x : j) v.push_back(check_range(json_rational(x, what)));
    return v;
}

void only_fields(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw SchemaError(where + ": expected an object");
    for (const auto& [k, v] : j.items())
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }) == allowed.end())
            throw SchemaError(where + ": unknown field '" + k + "'");
}

std::vector<Line> parse_lines(const json& j) {
    const json* arr = &j;
    if (j.is_object()) {
        only_fields(j, {"lines"}, "lines file");
        if (!j.contains("lines")) throw SchemaError("lines file: missing 'lines'");
        arr = &j.at("lines");
    }
    if (!arr->is_array()) throw SchemaError("lines: expected a list");
    std::vector<Line> out;
    for (const auto& l : *arr) {
        only_fields(l, {"name", "alpha", "exps", "selfcontragredient"}, "line");
        if (!l.contains("alpha")) throw SchemaError("line: missing 'alpha'");
        Line line;
        line.name = l.value("name", "rho" + std::to_string(out.size() + 1));
        line.alpha = json_rational(l.at("alpha"), "alpha");
        if (l.contains("exps")) line.exps = json_exps(l.at("exps"), "exps");
        if (l.contains("selfcontragredient")) {
            if (!l.at("selfcontragredient").is_boolean()) throw SchemaError("selfcontragredient: expected a boolean");
            line.selfcontragredient = l.at("selfcontragredient").get<bool>();
        }
        out.push_back(std::move(line));
    }
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream in;
    std::istream* src = &std::cin;
    if (path != "-") {
        in.open(path);
        if (!in) throw SchemaError("cannot open " + path);
        src = &in;
    }
    try {
        return json::parse(*src);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
}

/// A query document: {command, alpha, exponents, label, lines, options}.
Query parse_document(const json& j) {
    only_fields(j, {"command", "alpha", "exponents", "label", "lines", "options"}, "query");
    if (!j.contains("command") || !j.at("command").is_string()) throw SchemaError("query: missing 'command'");
    Query q;
    q.command = j.at("command").get<std::string>();
    if (j.contains("alpha")) q.alpha = json_rational(j.at("alpha"), "alpha");
    if (j.contains("exponents")) q.exps = json_exps(j.at("exponents"), "exponents");
    if (j.contains("label")) {
        if (!j.at("label").is_string()) throw SchemaError("label: expected a string");
        q.label = j.at("label").get<std::string>();
    }
    if (j.contains("lines")) q.lines = parse_lines(j.at("lines"));
    if (j.contains("options")) {
        const json& o = j.at("options");
        only_fields(o, {"format", "pretty", "suite", "bound"}, "options");
        if (o.contains("format")) {
            auto f = o.at("format").get<std::string>();
            if (f != "json" && f != "text") throw SchemaError("format must be json or text");
            q.json_out = f == "json";
        }
        if (o.contains("pretty")) q.pretty = o.at("pretty").get<bool>();
        if (o.contains("suite")) q.suite = o.at("suite").get<std::string>();
        if (o.contains("bound")) q.bound = o.at("bound").get<long long>();
    }
    return q;
}

// ---------------------------------------------------------------------------
// Output

std::string opt_bound(const std::optional<long long>& b) { return b ? std::to_string(*b) : "inf"; }

json report_json(const ClassificationReport& r, Style st) {
    json subs = json::array();
    for (const auto& e : r.subquotients) {
        json x = {{"label", render(e.label, st)}, {"multiplicity", e.multiplicity}, {"unitarizable", e.unitarizable}};
        x["dual"] = e.dual_of ? json(render(r.subquotients[*e.dual_of].label, st)) : json(render(e.label, st));
        x["provenance"] = e.provenance;
        subs.push_back(std::move(x));
    }
    json out = {{"subquotients", subs},
                {"verdict", verdict_name(r.verdict)},
                {"length", r.total_length},
                {"length_complete", r.length_complete},
                {"provenance", r.provenance}};
    if (!r.components.empty()) {
        out["components"] = json::array();
        for (const auto& c : r.components) out["components"].push_back(report_json(c, st));
    }
    return out;
}

void report_text(std::ostream& os, const ClassificationReport& r, Style st, const std::string& indent = "") {
    os << indent << "verdict: " << verdict_name(r.verdict) << "\n";
    os << indent << "length: " << r.total_length << (r.length_complete ? "" : " (catalogued classes)") << "\n";
    os << indent << "provenance: " << r.provenance << "\n";
    for (std::size_t i = 0; i < r.subquotients.size(); ++i) {
        const auto& e = r.subquotients[i];
        os << indent << "  " << (e.unitarizable ? "U " : "- ") << render(e.label, st);
        if (e.multiplicity != 1) os << "  x" << e.multiplicity;
        if (e.dual_of) os << "  dual: " << render(r.subquotients[*e.dual_of].label, st);
        else os << "  dual: self";
        os << "\n";
    }
    for (std::size_t i = 0; i < r.components.size(); ++i) {
        os << indent << "component " << i + 1 << ":\n";
        report_text(os, r.components[i], st, indent + "  ");
    }
}

void emit(const Query& q, const json& j, const std::string& text) {
    if (q.json_out) std::cout << j.dump() << "\n";
    else std::cout << text;
}

LineConfig need_alpha(const Query& q) {
    if (!q.alpha) throw SchemaError(q.command + ": --alpha is required");
    return LineConfig::at(*q.alpha);
}

std::string need_label(const Query& q) {
    if (!q.label) throw SchemaError(q.command + ": --label is required");
    return *q.label;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_classify(const Query& q, bool full) {
    Style st = q.pretty ? Style::Pretty : Style::Ascii;
    ClassificationReport r;
    if (!q.lines.empty()) {
        if (full) throw SchemaError("enumerate takes a single line");
        ExponentQuery eq;
        for (const auto& l : q.lines) {
            LineConfig cfg = LineConfig::at(l.alpha);
            cfg.line_name = l.name;
            cfg.selfcontragredient = l.selfcontragredient;
            eq.lines.push_back(LineQuery{cfg, l.exps});
        }
        if (!weakly_real_check(eq))
            fail(ErrorKind::NoFormulaAvailable, "non-selfcontragredient line; the weak-reality reduction applies first");
        r = jantzen_classify(eq);
    } else {
        LineConfig cfg = need_alpha(q);
        r = full ? enumerate_case(cfg.alpha, q.exps) : classify_region(LineQuery{cfg, q.exps});
    }
    std::ostringstream os;
    report_text(os, r, st);
    emit(q, report_json(r, st), os.str());
    return 0;
}

int cmd_jacquet(const Query& q) {
    LineConfig cfg = need_alpha(q);
    Style st = q.pretty ? Style::Pretty : Style::Ascii;
    ClassicalLabel l = parse_label(need_label(q), cfg, cfg.alpha);
    RSElement m = mu_star(l, cfg);
    json terms = json::array();
    for (const auto& [k, c] : m.terms)
        terms.push_back({{"gl", render_key(k.first, st)}, {"part", render(k.second, st)}, {"coefficient", c}});
    json j = {{"label", render(l, st)}, {"mu_star", terms}, {"s_gl", render(s_gl(m), st)}};
    emit(q, j, render(m, st) + "\n");
    return 0;
}

int cmd_dual(const Query& q) {
    LineConfig cfg = need_alpha(q);
    Style st = q.pretty ? Style::Pretty : Style::Ascii;
    ClassicalLabel l = parse_label(need_label(q), cfg, cfg.alpha);
    ClassicalLabel d = ass_dual(l, cfg);
    json j = {{"label", render(l, st)}, {"dual", render(d, st)}};
    if (auto e = catalogue_entry(l, cfg)) j["unitarizable"] = e->unitarizable;
    emit(q, j, render(d, st) + "\n");
    return 0;
}

int cmd_jord(const Query& q) {
    LineConfig cfg = need_alpha(q);
    ClassicalLabel l = parse_label(need_label(q), cfg, cfg.alpha);
    if (!l.is_tempered()) fail(ErrorKind::NoFormulaAvailable, "Jord is defined for tempered labels");
    auto v = tempered_blocks(l.t, cfg);
    std::string text = "{";
    for (std::size_t i = 0; i < v.size(); ++i) text += (i ? "," : "") + std::to_string(v[i]);
    emit(q, json{{"label", render(l)}, {"jord", v}}, text + "}\n");
    return 0;
}

/// mult --label "u (x) pi": multiplicity of u (x) pi in mu*(u x| pi).
int cmd_mult(const Query& q) {
    LineConfig cfg = need_alpha(q);
    RSElement t = parse_rs(need_label(q), cfg, cfg.alpha);
    if (t.terms.size() != 1) throw SchemaError("mult: expected a single term u (x) pi");
    const auto& [k, c] = *t.terms.begin();
    if (c != 1 || k.first.labels.size() != 1 || !k.second.gl.is_unit())
        fail(ErrorKind::NotStandardBasis, "mult: expected one GL label tensor one classical label");
    const GLIrrLabel& u = k.first.labels[0];
    const ClassicalLabel& pi = k.second.base;
    auto e = induced_jacquet(u, pi, cfg);
    if (!e) fail(ErrorKind::NoFormulaAvailable, "no Jacquet module for the induced representation");
    Bounds b = multiplicity(u, pi, *e, cfg);
    json j = {{"target", render(t)}, {"lower", b.lo}, {"upper", b.hi ? json(*b.hi) : json(nullptr)}, {"exact", b.exact()}};
    std::string text = "[" + std::to_string(b.lo) + "," + opt_bound(b.hi) + "]\n";
    if (q.bound) {
        bool cert = nonunit_certificate(u, pi, *q.bound, cfg);
        j["length_lower_bound"] = *q.bound;
        j["nonunitarizable_certificate"] = cert;
        text += std::string("certificate: ") + (cert ? "true" : "false") + "\n";
    }
    emit(q, j, text);
    return 0;
}

int cmd_gl_unitary(const Query& q) {
    GLElement x = parse_gl(need_label(q));
    if (x.terms.size() != 1 || x.terms.begin()->second != 1 || x.terms.begin()->first.labels.size() != 1)
        fail(ErrorKind::NotStandardBasis, "gl-unitary: expected one irreducible label");
    const Multisegment& a = x.terms.begin()->first.labels[0].a;
    bool u = gl_is_unitarizable(a);
    emit(q, json{{"label", render_multisegment(a)}, {"unitarizable", u}}, std::string(u ? "unitarizable" : "not unitarizable") + "\n");
    return 0;
}

int cmd_verify(const Query& q) {
    long long bound = q.bound.value_or(4);
    std::vector<std::string> names = q.suite == "all" ? suite_names() : std::vector<std::string>{q.suite};
    json arr = json::array();
    std::string text;
    bool ok = true;
    for (const auto& n : names) {
        SuiteReport r = verify_suite(n, bound);
        ok = ok && r.passed;
        arr.push_back({{"suite", r.name}, {"passed", r.passed}, {"checked", r.checked}, {"counterexample", r.counterexample}});
        text += std::string(r.passed ? "PASS " : "FAIL ") + r.name + " (" + std::to_string(r.checked) + " checks)";
        if (!r.passed) text += ": " + r.counterexample;
        text += "\n";
    }
    emit(q, json{{"bound", bound}, {"suites", arr}, {"passed", ok}}, text);
    return ok ? 0 : 1;
}

int dispatch(const Query& q) {
    if (q.command == "classify") return cmd_classify(q, false);
    if (q.command == "enumerate") return cmd_classify(q, true);
    if (q.command == "jacquet") return cmd_jacquet(q);
    if (q.command == "dual") return cmd_dual(q);
    if (q.command == "jord") return cmd_jord(q);
    if (q.command == "mult") return cmd_mult(q);
    if (q.command == "gl-unitary") return cmd_gl_unitary(q);
    if (q.command == "verify") return cmd_verify(q);
    throw SchemaError("unknown command '" + q.command + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unitarizability of rank <= 3 induced representations on one cuspidal line"};
    app.require_subcommand(0, 1);
    std::string query_file;
    app.add_option("--query", query_file, "JSON query document ('-' reads stdin)");

    std::string alpha, exps, label, lines_file, format = "text", suite = "all";
    bool pretty = false;
    long long bound = 0;
    std::vector<CLI::App*> subs;
    const std::vector<std::pair<const char*, const char*>> commands = {
        {"classify", "region verdict for exponents on one line, or a Jantzen query via --lines"},
        {"enumerate", "full composition series of a catalogued case"},
        {"jacquet", "mu* of a classical label"},
        {"dual", "ASS dual of a classical label"},
        {"jord", "Jordan blocks of a tempered label"},
        {"mult", "multiplicity bounds of u (x) pi in mu*(u x| pi)"},
        {"gl-unitary", "unitarizability of an irreducible GL label"},
        {"verify", "run identity suites"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* s = app.add_subcommand(name, help);
        s->add_option("--alpha", alpha, "reducibility exponent");
        s->add_option("--exps", exps, "comma-separated exponents");
        s->add_option("--label", label, "label in the ASCII grammar");
        s->add_option("--lines", lines_file, "JSON file of lines for Jantzen queries");
        s->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
        s->add_flag("--pretty", pretty, "Unicode rendering");
        s->add_option("--suite", suite, "identity suite name, or all");
        s->add_option("--bound", bound, "size bound (verify) or length lower bound (mult)");
        subs.push_back(s);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        Query q;
        if (!query_file.empty()) {
            if (app.get_subcommands().size()) throw SchemaError("--query excludes a subcommand");
            q = parse_document(read_json_file(query_file));
        } else {
            if (app.get_subcommands().empty()) throw SchemaError("a subcommand is required");
            CLI::App* s = app.get_subcommands().front();
            q.command = s->get_name();
            if (s->count("--alpha")) q.alpha = parse_rational(alpha);
            if (s->count("--exps")) q.exps = parse_exps(exps);
            if (s->count("--label")) q.label = label;
            if (s->count("--lines")) q.lines = parse_lines(read_json_file(lines_file));
            if (s->count("--bound")) q.bound = bound;
            q.json_out = format == "json";
            q.pretty = pretty;
            q.suite = suite;
        }
        return dispatch(q);
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return e.kind() == ErrorKind::ParseError ? 2 : 1;
    }
}
