#pragma once

#include <span>

#include <json.hpp>

#include "ineq/analysis.hpp"
#include "ineq/corpus.hpp"
#include "ineq/means.hpp"

namespace ineq {

using Json = nlohmann::ordered_json;

/// Finite doubles pass through; NaN and infinities become null.
Json number_or_null(double v);

Json to_json(const IdentityReport& r);
Json to_json(const ConvexityVerdict& v);
Json to_json(const BoundRequest& req, const Interval& iv);
Json to_json(const BoundReport& r);
Json to_json(const PropositionReport& r);
Json to_json(const CorpusEntry& e);

/// Same field names as the CSV columns.
Json to_json(const SweepRecord& r);
Json records_to_json(std::span<const SweepRecord> records);
Json skips_to_json(std::span<const SweepSkip> skips);
Json best_to_json(std::span<const BestBound> best);

/// Array of {input, variant_values, valid_flags, ratio}.
Json findings_to_json(std::span<const ErrataFinding> findings);

}  // namespace ineq
