#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ineq/expr.hpp"
#include "ineq/quadrature.hpp"

namespace ineq {

/// Declared verdict for |f^(n)|^q on the entry's interval.
struct ConvexityStatus {
    int n = 1;
    double q = 1.0;
    bool convex = true;
};

/// Exponents at which every entry's convexity status is declared: the
/// power-mean grid plus the Hölder conjugates of p in {1.5, 2, 4}.
const std::vector<double>& corpus_q_grid();

struct CorpusEntry {
    std::string name;
    std::string expression;
    Interval interval;
    int max_n = 5;          // highest order exercised by the test grid
    bool control = false;   // negative control: hypotheses fail for some (n, q)
    std::vector<ConvexityStatus> convexity;
    std::optional<double> closed_form_integral;

    [[nodiscard]] ExprFunction function() const { return ExprFunction::parse(expression); }

    /// Declared status, or nullopt when (n, q) is not in the declared table.
    [[nodiscard]] std::optional<bool> declared_convex(int n, double q) const;
};

/// The built-in corpus.
const std::vector<CorpusEntry>& corpus();

/// Plain-text corpus: one entry per line, `name; expression; a; b; max_n`.
/// Blank lines and lines starting with `#` are skipped. Convexity statuses
/// are filled in by the grid checker for n <= max_n over corpus_q_grid().
/// Throws Error(Io) with the line number on malformed input.
std::vector<CorpusEntry> load_corpus(std::istream& in);
std::vector<CorpusEntry> load_corpus_file(const std::string& path);

/// Convexity of |f^(n)|^q via check_convexity.
bool computed_convex(const ExprFunction& fn, const Interval& iv, int n, double q);

}  // namespace ineq
