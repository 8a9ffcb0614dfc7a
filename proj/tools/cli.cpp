#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ineq/analysis.hpp"
#include "ineq/corpus.hpp"
#include "ineq/error.hpp"
#include "ineq/means.hpp"
#include "ineq/report.hpp"

namespace ineq::cli {

namespace {

constexpr double kDefaultVerifyTol = 1e-9;
constexpr double kDefaultNumericTol = 1e-10;

bool is_usage_error(ErrorCode c) {
    switch (c) {
        case ErrorCode::Syntax:
        case ErrorCode::ParamOutOfDomain:
        case ErrorCode::EqualArguments:
        case ErrorCode::UnsupportedOrder:
        case ErrorCode::Io: return true;
        default: return false;
    }
}

// Errors raised while building inputs are usage errors whatever their code.
int report_error(const Error& e, bool computing, std::ostream& err) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return computing && !is_usage_error(e.code()) ? kNumeric : kUsage;
}

void flatten(const Json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, rows);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", rows);
        if (j.empty()) rows.emplace_back(path, "[]");
    } else if (j.is_string()) {
        rows.emplace_back(path, j.get<std::string>());
    } else if (j.is_number_float()) {
        rows.emplace_back(path, format_double(j.get<double>()));
    } else {
        rows.emplace_back(path, j.dump());
    }
}

void emit(std::ostream& out, const Json& j, bool pretty) {
    if (!pretty) {
        out << j.dump() << '\n';
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(j, "", rows);
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.first.size());
    for (const auto& [k, v] : rows) out << k << std::string(width - k.size() + 2, ' ') << v << '\n';
}

struct Shared {
    bool pretty = false;
};

void add_shared(CLI::App* cmd, Shared& s) {
    cmd->add_flag("--pretty", s.pretty, "Human-readable table instead of JSON");
}

void add_config(CLI::App* cmd, const std::string& names = "--config") {
    cmd->add_option(names, "key=value file; command-line flags override its values");
}

bool is_config_flag(std::string_view arg, std::string_view name) {
    return arg == name || (arg.size() > name.size() && arg.substr(0, name.size()) == name && arg[name.size()] == '=');
}

// Turns `key = value` lines of every --config/--spec file into `--key=value`
// arguments placed right after the subcommand, skipping keys the command
// line already sets. Unknown keys then fail parsing like unknown flags.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    if (args.size() < 2) return args;
    std::vector<std::string> files;
    std::vector<std::string> rest;
    for (std::size_t i = 2; i < args.size(); ++i) {
        const std::string& a = args[i];
        bool matched = false;
        for (std::string_view name : {"--config", "--spec"}) {
            if (!is_config_flag(a, name)) continue;
            matched = true;
            if (a.size() > name.size()) {
                files.push_back(a.substr(name.size() + 1));
            } else if (i + 1 < args.size()) {
                files.push_back(args[++i]);
            } else {
                throw CLI::ArgumentMismatch(std::string(name) + " needs a file");
            }
        }
        if (!matched) rest.push_back(a);
    }
    if (files.empty()) return args;

    auto given = [&](const std::string& key) {
        const std::string flag = "--" + key;
        return std::any_of(rest.begin(), rest.end(), [&](const std::string& a) { return is_config_flag(a, flag); });
    };
    std::vector<std::string> out = {args[0], args[1]};
    std::vector<std::string> seen;
    for (const std::string& file : files) {
        std::ifstream in(file);
        if (!in) throw CLI::FileError::Missing(file);
        for (const CLI::ConfigItem& item : CLI::ConfigINI().from_config(in)) {
            if (!item.parents.empty()) throw CLI::ConfigError("sections are not supported: " + item.fullname());
            const std::string& key = item.name;
            if (given(key) || std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
            seen.push_back(key);
            std::string value;
            for (std::size_t k = 0; k < item.inputs.size(); ++k) value += (k ? "," : "") + item.inputs[k];
            out.push_back("--" + key + "=" + value);
        }
    }
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

struct RulePoint {
    std::optional<double> x;
    bool midpoint = false;
    bool trapezoid = false;
};

void add_rule_point(CLI::App* cmd, RulePoint& rp) {
    auto* x = cmd->add_option("--x", rp.x, "Rule point in [a, b]");
    auto* m = cmd->add_flag("--midpoint", rp.midpoint, "Use x = (a + b) / 2");
    auto* t = cmd->add_flag("--trapezoid", rp.trapezoid, "Use the trapezoid form");
    x->excludes(m, t);
    m->excludes(t);
}

RuleForm to_form(const RulePoint& rp) {
    if (rp.trapezoid) return RuleForm::trapezoid();
    if (rp.midpoint) return RuleForm::midpoint();
    if (!rp.x) throw Error(ErrorCode::ParamOutOfDomain, "one of --x, --midpoint, --trapezoid is required");
    return RuleForm::point(*rp.x);
}

Variant to_variant(const std::string& text) {
    const auto v = parse_variant(text);
    if (!v) throw Error(ErrorCode::ParamOutOfDomain, "unknown variant '" + text + "' (corrected|paper)");
    return *v;
}

Family to_family(const std::string& text) {
    const auto f = parse_family(text);
    if (!f) {
        throw Error(ErrorCode::ParamOutOfDomain,
                    "unknown family '" + text + "' (classic|convex-direct|holder|alt-holder|power-mean)");
    }
    return *f;
}

Json input_json(const std::string& fn, const Interval& iv) {
    return Json{{"function", fn}, {"a", iv.a()}, {"b", iv.b()}};
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    Shared shared;
    std::string fn;
    double a = 0.0;
    double b = 0.0;
    int n = 1;
    RulePoint rp;
    double tol = kDefaultVerifyTol;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
    std::optional<ExprFunction> fn;
    std::optional<Interval> iv;
    RuleForm form = RuleForm::midpoint();
    try {
        fn = ExprFunction::parse(args.fn);
        iv = Interval(args.a, args.b);
        form = to_form(args.rp);
        form.validate(*iv);
        if (args.n < 1) throw Error(ErrorCode::ParamOutOfDomain, "order n must be >= 1");
        if (!(args.tol > 0.0)) throw Error(ErrorCode::ParamOutOfDomain, "tolerance must be positive");
    } catch (const Error& e) {
        return report_error(e, false, err);
    }
    try {
        const IdentityReport rep = verify_identity(*fn, args.n, *iv, form, args.tol);
        Json j = input_json(args.fn, *iv);
        j["n"] = args.n;
        j["form"] = form.label();
        j["tol"] = args.tol;
        j.update(to_json(rep));
        emit(out, j, args.shared.pretty);
        return rep.passed ? kOk : kFailed;
    } catch (const Error& e) {
        return report_error(e, true, err);
    }
}

// ---------------------------------------------------------------------------

struct BoundArgs {
    Shared shared;
    std::string family;
    std::string variant = "corrected";
    std::string fn;
    double a = 0.0;
    double b = 0.0;
    int n = 1;
    RulePoint rp;
    std::optional<double> p;
    std::optional<double> q;
    double tol = kDefaultNumericTol;
};

int cmd_bound(const BoundArgs& args, std::ostream& out, std::ostream& err) {
    std::optional<ExprFunction> fn;
    std::optional<Interval> iv;
    BoundRequest req;
    try {
        fn = ExprFunction::parse(args.fn);
        iv = Interval(args.a, args.b);
        req.family = to_family(args.family);
        req.variant = to_variant(args.variant);
        req.n = args.n;
        req.form = to_form(args.rp);
        req.form.validate(*iv);
        const bool wants_p = req.family == Family::Holder || req.family == Family::AltHolder;
        const bool wants_q = req.family == Family::PowerMean;
        if (wants_p && !args.p) throw Error(ErrorCode::ParamOutOfDomain, "--p is required for this family");
        if (wants_q && !args.q) throw Error(ErrorCode::ParamOutOfDomain, "--q is required for this family");
        if (!wants_p && args.p) throw Error(ErrorCode::ParamOutOfDomain, "--p applies to holder and alt-holder only");
        if (!wants_q && args.q) throw Error(ErrorCode::ParamOutOfDomain, "--q applies to power-mean only");
        if (args.p) req.p = *args.p;
        if (args.q) req.q = *args.q;
        if (!(args.tol >= 0.0)) throw Error(ErrorCode::ParamOutOfDomain, "tolerance must be non-negative");
        validate(req);
    } catch (const Error& e) {
        return report_error(e, false, err);
    }
    try {
        EvalOptions opts;
        opts.numeric_tol = args.tol;
        const BoundReport rep = evaluate(req, *fn, *iv, opts);
        Json j = input_json(args.fn, *iv);
        j["request"] = to_json(req, *iv);
        j.update(to_json(rep));
        emit(out, j, args.shared.pretty);
        if (!rep.convexity.convex) {
            err << "convexity hypothesis fails: worst second difference " << rep.convexity.worst_violation << '\n';
            return kNotConvex;
        }
        return rep.valid ? kOk : kFailed;
    } catch (const Error& e) {
        return report_error(e, true, err);
    }
}

// ---------------------------------------------------------------------------

struct SweepArgs {
    Shared shared;
    std::string fn;
    std::string label;
    std::optional<double> a;
    std::optional<double> b;
    std::vector<int> n = {1, 2, 3, 4};
    int x_grid = 9;
    std::vector<double> x;
    bool midpoint = false;
    bool trapezoid = false;
    std::vector<std::string> families = {"classic", "convex-direct", "holder", "alt-holder", "power-mean"};
    std::vector<double> q = {1.0, 1.5, 2.0, 3.0};
    std::vector<double> p = {1.5, 2.0, 4.0};
    std::vector<std::string> variants = {"corrected"};
    bool include_controls = false;
    unsigned threads = 1;
    std::string out;
    std::string format = "csv";
    std::string errata;
    std::string best;
    double tol = kDefaultNumericTol;
};

std::vector<RuleForm> sweep_forms(const SweepArgs& args, const Interval& iv) {
    std::vector<RuleForm> forms;
    if (!args.x.empty()) {
        for (double x : args.x) forms.push_back(RuleForm::point(x));
    } else if (args.x_grid > 0) {
        forms = SweepSpec::uniform_points(iv, args.x_grid);
    }
    if (args.midpoint) forms.push_back(RuleForm::midpoint());
    if (args.trapezoid) forms.push_back(RuleForm::trapezoid());
    if (forms.empty()) throw Error(ErrorCode::ParamOutOfDomain, "sweep has no rule points");
    return forms;
}

bool write_text(const std::string& path, const std::string& body, std::ostream& err) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        err << "error: IoError: cannot open " << path << " for writing\n";
        return false;
    }
    f << body;
    return static_cast<bool>(f);
}

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
    std::vector<SweepSpec> specs;
    std::vector<Variant> variants;
    try {
        std::vector<Family> families;
        for (const auto& f : args.families) families.push_back(to_family(f));
        for (const auto& v : args.variants) variants.push_back(to_variant(v));
        if (args.threads < 1) throw Error(ErrorCode::ParamOutOfDomain, "--threads must be >= 1");
        if (args.x_grid < 0) throw Error(ErrorCode::ParamOutOfDomain, "--x-grid must be >= 0");

        auto fill = [&](SweepSpec& s, int max_n) {
            for (int n : args.n) {
                if (n <= max_n) s.n_values.push_back(n);
            }
            s.forms = sweep_forms(args, s.iv);
            s.families = families;
            s.q_values = args.q;
            s.p_values = args.p;
            s.variants = variants;
            s.options.numeric_tol = args.tol;
        };
        if (!args.fn.empty()) {
            if (!args.a || !args.b) throw Error(ErrorCode::ParamOutOfDomain, "--fn needs --a and --b");
            SweepSpec s(ExprFunction::parse(args.fn), Interval(*args.a, *args.b));
            if (!args.label.empty()) s.label = args.label;
            fill(s, kDefaultOrderCap);
            specs.push_back(std::move(s));
        } else {
            if (args.a || args.b) throw Error(ErrorCode::ParamOutOfDomain, "--a/--b need --fn");
            for (const CorpusEntry& e : corpus()) {
                if (e.control && !args.include_controls) continue;
                SweepSpec s(e.function(), e.interval);
                s.label = e.name;
                fill(s, e.max_n);
                specs.push_back(std::move(s));
            }
        }
    } catch (const Error& e) {
        return report_error(e, false, err);
    }

    const SweepResult result = sweep(std::span<const SweepSpec>(specs), args.threads);
    for (const SweepSkip& s : result.skips) {
        err << "skip: " << s.function << " family=" << to_string(s.request.family) << " n=" << s.request.n
            << " form=" << s.request.form.label() << " p=" << format_double(s.request.p)
            << " q=" << format_double(s.request.q) << ": " << s.reason << '\n';
    }

    std::string payload;
    if (args.format == "json") {
        payload = records_to_json(result.records).dump(2) + "\n";
    } else {
        std::ostringstream csv;
        write_csv(csv, result.records);
        payload = csv.str();
    }

    std::size_t invalid = 0;
    std::size_t errors = 0;
    for (const SweepRecord& r : result.records) {
        invalid += r.report.valid ? 0 : 1;
        errors += r.error.empty() ? 0 : 1;
    }
    Json summary{
        {"records", result.records.size()},
        {"skips", result.skips.size()},
        {"invalid", invalid},
        {"errors", errors},
        {"out", args.out.empty() ? Json(nullptr) : Json(args.out)},
        {"errata", nullptr},
        {"best", nullptr},
    };

    const bool both_variants = std::find(variants.begin(), variants.end(), Variant::Corrected) != variants.end() &&
                               std::find(variants.begin(), variants.end(), Variant::PaperStated) != variants.end();
    std::string errata_path = args.errata;
    if (errata_path.empty() && both_variants && !args.out.empty()) errata_path = args.out + ".errata.json";
    if (!errata_path.empty()) {
        const auto findings = errata_report(result.records, args.tol);
        if (!write_text(errata_path, findings_to_json(findings).dump(2) + "\n", err)) return kUsage;
        summary["errata"] = errata_path;
    }
    if (!args.best.empty()) {
        const auto best = best_bound(result.records);
        if (!write_text(args.best, best_to_json(best).dump(2) + "\n", err)) return kUsage;
        summary["best"] = args.best;
    }

    if (args.out.empty()) {
        out << payload;
        emit(err, summary, args.shared.pretty);
    } else {
        if (!write_text(args.out, payload, err)) return kUsage;
        emit(out, summary, args.shared.pretty);
    }
    return invalid == 0 ? kOk : kFailed;
}

// ---------------------------------------------------------------------------

struct MeansArgs {
    Shared shared;
    std::string op;
    double alpha = 0.0;
    double beta = 0.0;
    std::optional<int> n;
    std::optional<double> x;
    double q = 1.0;
    std::string variant = "corrected";
};

int cmd_means(const MeansArgs& args, std::ostream& out, std::ostream& err) {
    try {
        const MeanPair pair(args.alpha, args.beta);
        const Variant variant = to_variant(args.variant);
        Json j{{"op", args.op}, {"alpha", args.alpha}, {"beta", args.beta}};
        const bool prop = args.op == "prop1" || args.op == "prop2";
        if ((args.op == "ln" || prop) && !args.n) throw Error(ErrorCode::ParamOutOfDomain, "--n is required");
        if (prop && !args.x) throw Error(ErrorCode::ParamOutOfDomain, "--x is required");
        if (args.op == "a") {
            j["value"] = arithmetic_mean(pair);
        } else if (args.op == "l") {
            j["value"] = logarithmic_mean(pair);
        } else if (args.op == "ln") {
            j["n"] = *args.n;
            j["value"] = generalized_log_mean_pow(pair, *args.n);
        } else {
            const int which = args.op == "prop1" ? 1 : 2;
            const PropositionReport rep =
                evaluate_proposition(which, pair, *args.n, *args.x, which == 1 ? 1.0 : args.q, variant);
            j["n"] = *args.n;
            j["x"] = *args.x;
            if (which == 2) {
                j["q"] = args.q;
                j["variant"] = to_string(variant);
            }
            j.update(to_json(rep));
            emit(out, j, args.shared.pretty);
            return rep.valid ? kOk : kFailed;
        }
        emit(out, j, args.shared.pretty);
        return kOk;
    } catch (const Error& e) {
        return report_error(e, false, err);
    }
}

// ---------------------------------------------------------------------------

struct CorpusArgs {
    Shared shared;
    std::string file;
};

int cmd_corpus(const CorpusArgs& args, std::ostream& out, std::ostream& err) {
    try {
        const std::vector<CorpusEntry> entries = args.file.empty() ? corpus() : load_corpus_file(args.file);
        Json j = Json::array();
        for (const CorpusEntry& e : entries) j.push_back(to_json(e));
        emit(out, j, args.shared.pretty);
        return kOk;
    } catch (const Error& e) {
        return report_error(e, false, err);
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ostrowski-type remainder bounds for Taylor-like quadrature rules", "ineq"};
    app.require_subcommand(1);
    app.fallthrough(false);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Check the kernel identity for f on [a, b]");
    verify->add_option("--fn", va.fn, "Expression in t")->required();
    verify->add_option("--a", va.a, "Left endpoint")->required();
    verify->add_option("--b", va.b, "Right endpoint")->required();
    verify->add_option("--n", va.n, "Order n >= 1")->required();
    add_rule_point(verify, va.rp);
    verify->add_option("--tol", va.tol, "Residual tolerance")->envname("INEQ_TOL")->capture_default_str();
    add_shared(verify, va.shared);
    add_config(verify);

    BoundArgs ba;
    auto* bound = app.add_subcommand("bound", "Evaluate one bound against the true remainder");
    bound->add_option("--family", ba.family, "classic|convex-direct|holder|alt-holder|power-mean")->required();
    bound->add_option("--variant", ba.variant, "corrected|paper")->capture_default_str();
    bound->add_option("--fn", ba.fn, "Expression in t")->required();
    bound->add_option("--a", ba.a, "Left endpoint")->required();
    bound->add_option("--b", ba.b, "Right endpoint")->required();
    bound->add_option("--n", ba.n, "Order n >= 1")->required();
    add_rule_point(bound, ba.rp);
    bound->add_option("--p", ba.p, "Hölder exponent p > 1");
    bound->add_option("--q", ba.q, "Power-mean exponent q >= 1");
    bound->add_option("--tol", ba.tol, "Allowed slack deficit beyond the quadrature error")
        ->envname("INEQ_TOL")
        ->capture_default_str();
    add_shared(bound, ba.shared);
    add_config(bound);

    SweepArgs sa;
    auto* sw = app.add_subcommand("sweep", "Evaluate a parameter grid and write CSV or JSON records");
    sw->add_option("--fn", sa.fn, "Single expression (default: the built-in corpus)");
    sw->add_option("--label", sa.label, "Function label for --fn records");
    sw->add_option("--a", sa.a, "Left endpoint for --fn");
    sw->add_option("--b", sa.b, "Right endpoint for --fn");
    sw->add_option("--n", sa.n, "Orders")->delimiter(',')->capture_default_str();
    auto* xg = sw->add_option("--x-grid", sa.x_grid, "Equally spaced rule points, a and b included")
                   ->capture_default_str();
    sw->add_option("--x", sa.x, "Explicit rule points")->delimiter(',')->excludes(xg);
    sw->add_flag("--midpoint", sa.midpoint, "Add the midpoint form");
    sw->add_flag("--trapezoid", sa.trapezoid, "Add the trapezoid form");
    sw->add_option("--families", sa.families, "Bound families")->delimiter(',')->capture_default_str();
    sw->add_option("--q", sa.q, "Power-mean exponents")->delimiter(',')->capture_default_str();
    sw->add_option("--p", sa.p, "Hölder exponents")->delimiter(',')->capture_default_str();
    sw->add_option("--variants", sa.variants, "corrected,paper")->delimiter(',')->capture_default_str();
    sw->add_flag("--include-controls", sa.include_controls, "Include the negative-control corpus entries");
    sw->add_option("--threads", sa.threads, "Worker threads")->capture_default_str();
    sw->add_option("--out", sa.out, "Output file (default: stdout)");
    sw->add_option("--format", sa.format, "csv|json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sw->add_option("--errata", sa.errata, "Errata findings JSON (default <out>.errata.json with both variants)");
    sw->add_option("--best", sa.best, "Best-bound-per-group JSON");
    sw->add_option("--tol", sa.tol, "Allowed slack deficit beyond the quadrature error")
        ->envname("INEQ_TOL")
        ->capture_default_str();
    add_shared(sw, sa.shared);
    add_config(sw, "--spec,--config");

    MeansArgs ma;
    auto* means = app.add_subcommand("means", "Special means and the two mean inequalities");
    means->add_option("--op", ma.op, "a|l|ln|prop1|prop2")
        ->required()
        ->check(CLI::IsMember({"a", "l", "ln", "prop1", "prop2"}));
    means->add_option("--alpha", ma.alpha, "First argument > 0")->required();
    means->add_option("--beta", ma.beta, "Second argument > 0")->required();
    means->add_option("--n", ma.n, "Order of the generalized logarithmic mean");
    means->add_option("--x", ma.x, "Comparison point between alpha and beta");
    means->add_option("--q", ma.q, "Power-mean exponent for prop2")->capture_default_str();
    means->add_option("--variant", ma.variant, "corrected|paper (prop2)")->capture_default_str();
    add_shared(means, ma.shared);
    add_config(means);

    CorpusArgs ca;
    auto* corp = app.add_subcommand("corpus", "List corpus entries with their convexity table");
    corp->add_option("--file", ca.file, "Load `name; expression; a; b; max_n` lines instead");
    add_shared(corp, ca.shared);
    add_config(corp);

    try {
        std::vector<std::string> args(argv, argv + argc);
        args = expand_config(args);
        args.erase(args.begin());
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        const auto chosen = app.get_subcommands();
        out << (chosen.empty() ? app.help() : chosen.front()->help());
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    if (*verify) return cmd_verify(va, out, err);
    if (*bound) return cmd_bound(ba, out, err);
    if (*sw) return cmd_sweep(sa, out, err);
    if (*means) return cmd_means(ma, out, err);
    return cmd_corpus(ca, out, err);
}

}  // namespace ineq::cli
