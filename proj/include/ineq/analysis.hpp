#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ineq/bounds.hpp"

namespace ineq {

/// One function on one interval, crossed with every listed parameter.
/// Variants expand only Holder and AltHolder; q expands only PowerMean;
/// p expands the two Hölder families.
struct SweepSpec {
    std::string label;  // defaults to the expression text
    ExprFunction fn;
    Interval iv;
    std::vector<int> n_values;
    std::vector<RuleForm> forms;
    std::vector<Family> families;
    std::vector<double> q_values;
    std::vector<double> p_values;
    std::vector<Variant> variants = {Variant::Corrected};
    EvalOptions options;

    SweepSpec(ExprFunction f, Interval i) : label(f.source()), fn(std::move(f)), iv(i) {}

    /// `count` equally spaced PointX forms from a to b inclusive.
    static std::vector<RuleForm> uniform_points(const Interval& iv, int count);
};

/// Request parameters plus the evaluated report, flattened.
struct SweepRecord {
    std::string function;
    double a = 0.0;
    double b = 0.0;
    BoundRequest request;
    BoundReport report;
    std::string error;  // set when evaluation threw; report.valid is then false
};

struct SweepSkip {
    std::string function;
    BoundRequest request;
    std::string reason;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    std::vector<SweepSkip> skips;
};

/// Number of parameter combinations a spec describes (records + skips).
std::size_t cartesian_size(const SweepSpec& spec);

/// Evaluates every combination, in lexicographic parameter order
/// (n, form, family, q, p, variant), independent of `threads`.
/// Invalid combinations become skips; evaluation failures become records
/// with `error` set. Never throws for per-record problems.
SweepResult sweep(const SweepSpec& spec, unsigned threads = 1);
SweepResult sweep(std::span<const SweepSpec> specs, unsigned threads = 1);

struct GroupKey {
    std::string function;
    double a = 0.0;
    double b = 0.0;
    int n = 1;
    std::string form;

    friend bool operator==(const GroupKey&, const GroupKey&) = default;
};

struct BestBound {
    GroupKey group;
    std::optional<SweepRecord> winner;  // empty when no record in the group is valid
};

/// Smallest rhs among valid records. Ties (1e-12 relative) go to the earlier
/// family, then smaller q, then smaller p. Throws Error(EmptyGroup) when no
/// record is valid.
const SweepRecord& best_in_group(std::span<const SweepRecord> group);

/// Groups by (function, interval, n, form), in first-appearance order.
std::vector<BestBound> best_bound(std::span<const SweepRecord> records);

struct ErrataFinding {
    std::string function;
    double a = 0.0;
    double b = 0.0;
    BoundRequest request;  // variant is irrelevant here
    double lhs = 0.0;
    double corrected_rhs = 0.0;
    double paper_rhs = 0.0;
    bool corrected_valid = false;
    bool paper_valid = false;
    double ratio = 0.0;  // paper / corrected
};

/// Pairs each PaperStated Holder/AltHolder record with its Corrected twin.
std::vector<ErrataFinding> errata_report(std::span<const SweepRecord> records, double numeric_tol = 1e-10);

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

/// Stable CSV column names, in order.
const std::vector<std::string>& csv_columns();

/// RFC 4180 CSV with a header row; doubles in shortest round-trip form.
void write_csv(std::ostream& out, std::span<const SweepRecord> records);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

/// Quotes a CSV field when it contains a comma, quote, CR or LF.
std::string csv_escape(const std::string& field);

}  // namespace ineq
