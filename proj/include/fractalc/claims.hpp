#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "fractalc/algebra.hpp"

namespace fractalc {

/// Claim outcomes. Divergent is reserved for limits that fail to exist.
enum class ClaimVerdict { Satisfied, Violated, Indeterminate, Divergent };

std::string_view to_string(ClaimVerdict v);
ClaimVerdict to_claim_verdict(Verdict v);

struct ClaimAnchor {
    std::string topic;
    std::string statement;
};

struct RunConfig {
    Resolution res{};
    std::uint64_t seed = 42;
};

struct ClaimReport {
    std::string id;
    ClaimAnchor anchor;
    nlohmann::json inputs = nlohmann::json::object();
    ClaimVerdict verdict = ClaimVerdict::Indeterminate;
    ClaimVerdict expected = ClaimVerdict::Satisfied;
    nlohmann::json metrics = nlohmann::json::object();
    double runtime_ms = 0.0;

    bool met() const { return verdict == expected; }
    /// One NDJSON line: schema, claim, anchor, inputs, verdict, expected,
    /// met, metrics, runtime_ms.
    nlohmann::json to_json() const;
};

struct ClaimSpec {
    std::string id;
    ClaimAnchor anchor;
    ClaimVerdict expected;
    std::function<ClaimReport(const RunConfig&)> run;
};

/// Registry in display order.
const std::vector<ClaimSpec>& claim_registry();
/// nullptr if unknown.
const ClaimSpec* find_claim(std::string_view id);

/// Runs one claim; exceptions become an Indeterminate report with the message
/// in metrics.error. Fills id, anchor, expected and runtime_ms.
ClaimReport run_claim(const ClaimSpec& spec, const RunConfig& cfg);

/// Runs the claims on a small worker pool; results keep the input order.
std::vector<ClaimReport> run_claims(const std::vector<const ClaimSpec*>& specs,
                                    const RunConfig& cfg);

/// Plain-text table for help output: "id  expected  topic", then the
/// statement on an indented line.
std::string claim_table();

/// FRACTALC_SEED if set (decimal uint64, else ArgumentError), otherwise 42.
std::uint64_t seed_from_environment();

/// n uniform points in [lo, hi] from a mt19937_64 stream; the mapping to
/// doubles uses the top 53 bits so results do not depend on the standard
/// library's distributions.
std::vector<double> seeded_points(std::uint64_t seed, int n, double lo, double hi);

}  // namespace fractalc
