#include "ineq/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <map>
#include <ostream>
#include <thread>
#include <tuple>

#include "ineq/error.hpp"

namespace ineq {

namespace {

// Absent parameters (NaN) sort first.
bool param_less(double x, double y) {
    const bool nx = std::isnan(x);
    const bool ny = std::isnan(y);
    if (nx || ny) return nx && !ny;
    return x < y;
}

int form_rank(const RuleForm& f) {
    switch (f.kind()) {
        case RuleForm::Kind::PointX: return 0;
        case RuleForm::Kind::Midpoint: return 1;
        case RuleForm::Kind::Trapezoid: return 2;
    }
    return 3;
}

bool form_less(const RuleForm& x, const RuleForm& y, const Interval& iv) {
    if (form_rank(x) != form_rank(y)) return form_rank(x) < form_rank(y);
    if (x.kind() == RuleForm::Kind::PointX) return x.anchor(iv) < y.anchor(iv);
    return false;
}

template <class T, class Less>
std::vector<T> sorted_unique(std::vector<T> values, Less less) {
    std::stable_sort(values.begin(), values.end(), less);
    std::vector<T> out;
    for (const T& v : values) {
        if (out.empty() || less(out.back(), v)) out.push_back(v);
    }
    return out;
}

struct Combination {
    const SweepSpec* spec;
    BoundRequest request;
};

std::vector<Combination> enumerate(const SweepSpec& spec) {
    const auto ns = sorted_unique(spec.n_values, std::less<int>{});
    const auto forms = sorted_unique(spec.forms, [&](const RuleForm& x, const RuleForm& y) {
        return form_less(x, y, spec.iv);
    });
    const auto families = sorted_unique(spec.families, std::less<Family>{});
    const auto qs = sorted_unique(spec.q_values, param_less);
    const auto ps = sorted_unique(spec.p_values, param_less);
    const auto variants = sorted_unique(spec.variants, std::less<Variant>{});
    constexpr double none = std::numeric_limits<double>::quiet_NaN();

    std::vector<Combination> out;
    for (int n : ns) {
        for (const RuleForm& form : forms) {
            for (Family family : families) {
                auto push = [&](double p, double q, Variant v) {
                    out.push_back({&spec, BoundRequest{family, n, form, p, q, v}});
                };
                switch (family) {
                    case Family::ClassicOstrowski:
                    case Family::ConvexDirect: push(none, none, Variant::Corrected); break;
                    case Family::PowerMean:
                        for (double q : qs) push(none, q, Variant::Corrected);
                        break;
                    case Family::Holder:
                    case Family::AltHolder:
                        for (double p : ps) {
                            // q listed for readability; the bound uses the conjugate of p
                            const double q = p > 1.0 ? p / (p - 1.0) : none;
                            for (Variant v : variants) push(p, q, v);
                        }
                        break;
                }
            }
        }
    }
    return out;
}

SweepRecord run_one(const Combination& c) {
    const SweepSpec& spec = *c.spec;
    SweepRecord rec;
    rec.function = spec.label;
    rec.a = spec.iv.a();
    rec.b = spec.iv.b();
    rec.request = c.request;
    try {
        rec.report = evaluate(c.request, spec.fn, spec.iv, spec.options);
    } catch (const Error& e) {
        rec.error = std::string(to_string(e.code())) + ": " + e.what();
        rec.report.valid = false;
    }
    return rec;
}

}  // namespace

std::vector<RuleForm> SweepSpec::uniform_points(const Interval& iv, int count) {
    if (count < 1) throw Error(ErrorCode::ParamOutOfDomain, "x grid needs at least one point");
    if (count == 1) return {RuleForm::point(iv.midpoint())};
    std::vector<RuleForm> forms;
    forms.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double x = i + 1 == count ? iv.b() : iv.a() + iv.length() * i / (count - 1);
        forms.push_back(RuleForm::point(x));
    }
    return forms;
}

std::size_t cartesian_size(const SweepSpec& spec) { return enumerate(spec).size(); }

SweepResult sweep(const SweepSpec& spec, unsigned threads) { return sweep(std::span(&spec, 1), threads); }

SweepResult sweep(std::span<const SweepSpec> specs, unsigned threads) {
    SweepResult result;
    std::vector<Combination> runnable;
    for (const SweepSpec& spec : specs) {
        for (Combination& c : enumerate(spec)) {
            try {
                validate(c.request);
                c.request.form.validate(spec.iv);
                runnable.push_back(std::move(c));
            } catch (const Error& e) {
                result.skips.push_back({spec.label, c.request, std::string(to_string(e.code())) + ": " + e.what()});
            }
        }
    }

    result.records.resize(runnable.size());
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(runnable.size())));
    if (workers <= 1) {
        for (std::size_t i = 0; i < runnable.size(); ++i) result.records[i] = run_one(runnable[i]);
        return result;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < runnable.size(); i = next++) result.records[i] = run_one(runnable[i]);
        });
    }
    for (std::thread& t : pool) t.join();
    return result;
}

const SweepRecord& best_in_group(std::span<const SweepRecord> group) {
    const SweepRecord* best = nullptr;
    auto better = [](const SweepRecord& x, const SweepRecord& y) {
        const double scale = std::max(std::abs(x.report.rhs), std::abs(y.report.rhs));
        if (std::abs(x.report.rhs - y.report.rhs) > 1e-12 * scale) return x.report.rhs < y.report.rhs;
        if (x.request.family != y.request.family) return x.request.family < y.request.family;
        if (param_less(x.request.q, y.request.q) || param_less(y.request.q, x.request.q)) {
            return param_less(x.request.q, y.request.q);
        }
        if (param_less(x.request.p, y.request.p) || param_less(y.request.p, x.request.p)) {
            return param_less(x.request.p, y.request.p);
        }
        return x.request.variant < y.request.variant;
    };
    for (const SweepRecord& r : group) {
        if (!r.report.valid) continue;
        if (best == nullptr || better(r, *best)) best = &r;
    }
    if (best == nullptr) throw Error(ErrorCode::EmptyGroup, "no valid record in group");
    return *best;
}

std::vector<BestBound> best_bound(std::span<const SweepRecord> records) {
    std::vector<GroupKey> keys;
    std::vector<std::vector<SweepRecord>> members;
    for (const SweepRecord& r : records) {
        GroupKey key{r.function, r.a, r.b, r.request.n, r.request.form.label()};
        auto it = std::find(keys.begin(), keys.end(), key);
        if (it == keys.end()) {
            keys.push_back(key);
            members.emplace_back();
            it = keys.end() - 1;
        }
        members[static_cast<std::size_t>(it - keys.begin())].push_back(r);
    }
    std::vector<BestBound> out;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        BestBound bb{keys[i], std::nullopt};
        try {
            bb.winner = best_in_group(members[i]);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::EmptyGroup) throw;
        }
        out.push_back(std::move(bb));
    }
    return out;
}

std::vector<ErrataFinding> errata_report(std::span<const SweepRecord> records, double numeric_tol) {
    using Key = std::tuple<std::string, double, double, int, std::string, int, double>;
    auto key_of = [](const SweepRecord& r) {
        return Key{r.function, r.a, r.b, r.request.n, r.request.form.label(), static_cast<int>(r.request.family),
                   r.request.p};
    };
    std::map<Key, const SweepRecord*> corrected;
    for (const SweepRecord& r : records) {
        const bool holder = r.request.family == Family::Holder || r.request.family == Family::AltHolder;
        if (holder && r.request.variant == Variant::Corrected && r.error.empty()) corrected[key_of(r)] = &r;
    }
    std::vector<ErrataFinding> findings;
    for (const SweepRecord& r : records) {
        const bool holder = r.request.family == Family::Holder || r.request.family == Family::AltHolder;
        if (!holder || r.request.variant != Variant::PaperStated || !r.error.empty()) continue;
        const auto it = corrected.find(key_of(r));
        if (it == corrected.end()) continue;
        const SweepRecord& c = *it->second;
        ErrataFinding f;
        f.function = r.function;
        f.a = r.a;
        f.b = r.b;
        f.request = r.request;
        f.lhs = r.report.lhs;
        f.corrected_rhs = c.report.rhs;
        f.paper_rhs = r.report.rhs;
        const double allowance = r.report.lhs_err + numeric_tol;
        f.corrected_valid = c.report.rhs >= c.report.lhs - allowance;
        f.paper_valid = r.report.rhs >= r.report.lhs - allowance;
        f.ratio = c.report.rhs != 0.0 ? r.report.rhs / c.report.rhs : std::numeric_limits<double>::quiet_NaN();
        findings.push_back(std::move(f));
    }
    return findings;
}

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> columns = {
        "function", "a",     "b",       "n",         "form",      "x",      "family",
        "variant",  "p",     "q",       "integral",  "taylor_sum", "lhs",   "lhs_err",
        "rhs",      "slack", "mag_a",   "mag_b",     "convex",    "worst_violation",
        "convexity_grid",    "valid",   "error",
    };
    return columns;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_csv(std::ostream& out, std::span<const SweepRecord> records) {
    const auto& cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\r\n";
    auto opt = [](double v) { return std::isnan(v) ? std::string() : format_double(v); };
    for (const SweepRecord& r : records) {
        const BoundRequest& q = r.request;
        const BoundReport& rep = r.report;
        const bool point = q.form.kind() == RuleForm::Kind::PointX;
        const bool ok = r.error.empty();
        const std::vector<std::string> fields = {
            r.function,
            format_double(r.a),
            format_double(r.b),
            std::to_string(q.n),
            point ? "point" : q.form.label(),
            point ? format_double(q.form.anchor(Interval(r.a, r.b))) : std::string(),
            std::string(to_string(q.family)),
            std::string(to_string(q.variant)),
            opt(q.p),
            opt(q.q),
            ok ? format_double(rep.integral) : "",
            ok ? format_double(rep.taylor_sum) : "",
            ok ? format_double(rep.lhs) : "",
            ok ? format_double(rep.lhs_err) : "",
            ok ? format_double(rep.rhs) : "",
            ok ? format_double(rep.slack) : "",
            ok ? format_double(rep.magnitudes.at_a) : "",
            ok ? format_double(rep.magnitudes.at_b) : "",
            rep.convexity.convex ? "true" : "false",
            format_double(rep.convexity.worst_violation),
            std::to_string(rep.convexity.grid_size),
            rep.valid ? "true" : "false",
            r.error,
        };
        for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csv_escape(fields[i]);
        out << "\r\n";
    }
}

}  // namespace ineq
