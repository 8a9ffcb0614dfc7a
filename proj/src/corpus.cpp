#include "ineq/corpus.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>

#include "ineq/error.hpp"

namespace ineq {

namespace {

constexpr int kGridMaxN = 5;

std::vector<ConvexityStatus> uniform_status(bool convex) {
    std::vector<ConvexityStatus> table;
    for (int n = 1; n <= kGridMaxN; ++n) {
        for (double q : corpus_q_grid()) table.push_back({n, q, convex});
    }
    return table;
}

CorpusEntry positive(std::string name, std::string expr, double a, double b, std::optional<double> integral) {
    return CorpusEntry{std::move(name), std::move(expr), Interval(a, b), kGridMaxN, false, uniform_status(true),
                       integral};
}

std::vector<CorpusEntry> build_corpus() {
    using std::numbers::e;
    std::vector<CorpusEntry> entries;
    entries.push_back(positive("exp[0,1]", "exp(t)", 0.0, 1.0, e - 1.0));
    entries.push_back(positive("exp[-1,2]", "exp(t)", -1.0, 2.0, e * e - 1.0 / e));
    for (int m = 2; m <= 5; ++m) {
        const std::string expr = "t^" + std::to_string(m);
        entries.push_back(positive(expr + "[0,1]", expr, 0.0, 1.0, 1.0 / (m + 1)));
        entries.push_back(positive(expr + "[1,2]", expr, 1.0, 2.0, (std::pow(2.0, m + 1) - 1.0) / (m + 1)));
    }
    entries.push_back(positive("cosh[-1,1]", "cosh(t)", -1.0, 1.0, 2.0 * std::sinh(1.0)));
    entries.push_back(positive("t^-2[1,2]", "t^(-2)", 1.0, 2.0, 0.5));
    entries.push_back(positive("1/(1+t)[0,1]", "1/(1+t)", 0.0, 1.0, std::numbers::ln2));

    // |cos| and |sin| are concave somewhere on [0,3] for every power q >= 1.
    entries.push_back(CorpusEntry{"sin[0,3]", "sin(t)", Interval(0.0, 3.0), kGridMaxN, true,
                                  uniform_status(false), 1.0 - std::cos(3.0)});

    // f' = ln t + 1 is positive and concave on [0.5, 2]; its cube is convex
    // there because ln t + 1 < 2. Higher derivatives are ±(k-2)!/t^(k-1).
    std::vector<ConvexityStatus> tlnt = uniform_status(true);
    for (ConvexityStatus& s : tlnt) {
        if (s.n == 1) s.convex = s.q >= 3.0;
    }
    entries.push_back(CorpusEntry{"tlnt[0.5,2]", "t*ln(t)", Interval(0.5, 2.0), kGridMaxN, true, std::move(tlnt),
                                  2.125 * std::numbers::ln2 - 0.9375});
    return entries;
}

std::string trim(std::string_view s) {
    std::size_t first = 0;
    std::size_t last = s.size();
    while (first < last && std::isspace(static_cast<unsigned char>(s[first]))) ++first;
    while (last > first && std::isspace(static_cast<unsigned char>(s[last - 1]))) --last;
    return std::string(s.substr(first, last - first));
}

double parse_double_field(const std::string& text, int line_no, const char* field) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) {
        throw Error(ErrorCode::Io, "corpus line " + std::to_string(line_no) + ": bad " + field + " '" + text + "'");
    }
    return value;
}

}  // namespace

const std::vector<double>& corpus_q_grid() {
    static const std::vector<double> grid = {1.0, 4.0 / 3.0, 1.5, 2.0, 3.0};
    return grid;
}

std::optional<bool> CorpusEntry::declared_convex(int n, double q) const {
    for (const ConvexityStatus& s : convexity) {
        if (s.n == n && std::abs(s.q - q) <= 1e-12 * q) return s.convex;
    }
    return std::nullopt;
}

const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> entries = build_corpus();
    return entries;
}

bool computed_convex(const ExprFunction& fn, const Interval& iv, int n, double q) {
    return check_convexity([&](double t) { return std::pow(std::abs(fn.deriv(t, n)), q); }, iv).convex;
}

std::vector<CorpusEntry> load_corpus(std::istream& in) {
    std::vector<CorpusEntry> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(stripped);
        std::string field;
        while (std::getline(ss, field, ';')) fields.push_back(trim(field));
        if (fields.size() != 5) {
            throw Error(ErrorCode::Io, "corpus line " + std::to_string(line_no) + ": expected 5 ';'-separated fields, got " +
                                           std::to_string(fields.size()));
        }
        const double a = parse_double_field(fields[2], line_no, "a");
        const double b = parse_double_field(fields[3], line_no, "b");
        const double max_n_value = parse_double_field(fields[4], line_no, "max_n");
        if (max_n_value < 1 || max_n_value != std::floor(max_n_value) || max_n_value > kDefaultOrderCap) {
            throw Error(ErrorCode::Io, "corpus line " + std::to_string(line_no) + ": max_n must be an integer in [1, " +
                                           std::to_string(kDefaultOrderCap) + "]");
        }
        const int max_n = static_cast<int>(max_n_value);
        try {
            CorpusEntry entry{fields[0], fields[1], Interval(a, b), max_n, false, {}, std::nullopt};
            const ExprFunction fn = entry.function();
            for (int n = 1; n <= max_n; ++n) {
                for (double q : corpus_q_grid()) {
                    const bool convex = computed_convex(fn, entry.interval, n, q);
                    entry.convexity.push_back({n, q, convex});
                    if (!convex) entry.control = true;
                }
            }
            entries.push_back(std::move(entry));
        } catch (const Error& e) {
            throw Error(ErrorCode::Io, "corpus line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return entries;
}

std::vector<CorpusEntry> load_corpus_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open corpus file '" + path + "'");
    return load_corpus(in);
}

}  // namespace ineq
