#pragma once

// Test selection: capability filter, placebo filter, reference run,
// relaxation ladder and the final sanity re-run.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "divsub/script.hpp"

namespace divsub {

enum class CurationLabel { Removed, Placebo, Modified, Selected };
enum class RemovalReason { Capability, Nonstandard };

std::string_view to_string(CurationLabel l);
std::string_view to_string(RemovalReason r);

struct CuratedTest {
    TestScript original;
    /// The script that is executed downstream; differs from `original` only when MODIFIED.
    TestScript script;
    CurationLabel label = CurationLabel::Selected;
    std::optional<RemovalReason> reason;
    /// Names of the relaxations applied, e.g. "KEY_ORDER_TOLERANT" or "strip-error-payload".
    std::vector<std::string> relaxations;
    std::set<std::string> missing_ops;

    bool runnable() const noexcept {
        return label == CurationLabel::Selected || label == CurationLabel::Modified;
    }
};

struct PartitionCounts {
    std::size_t removed = 0;
    std::size_t placebo = 0;
    std::size_t modified = 0;
    std::size_t selected = 0;

    std::size_t total() const noexcept { return removed + placebo + modified + selected; }
    /// SELECTED plus MODIFIED.
    std::size_t runnable() const noexcept { return modified + selected; }
    friend bool operator==(const PartitionCounts&, const PartitionCounts&) = default;
};

struct CuratedSuite {
    std::string suite_id;
    std::string bridge_id;
    std::string reference_wrapper_id;
    std::vector<CuratedTest> tests;

    PartitionCounts counts() const;
    /// Scripts labeled SELECTED or MODIFIED, in suite order.
    std::vector<TestScript> runnable_scripts() const;
};

/// A relaxed variant of a script together with the names of what changed.
struct RelaxCandidate {
    TestScript script;
    std::vector<std::string> applied;
};

/// Candidates in fixed order: every assert_equals upgraded to
/// WHITESPACE_TOLERANT, KEY_ORDER_TOLERANT, NUMERIC_TOLERANT, FULL_RELAXED
/// (only where the new mode is laxer), then error payloads stripped from
/// assert_error. Candidates identical to the input are omitted; expect_reject
/// steps are never touched.
std::vector<RelaxCandidate> relax(const TestScript& script);

/// Throws SanityViolation if a SELECTED/MODIFIED test does not fail on the
/// placebo and pass on the reference wrapper after labeling.
CuratedSuite curate(const Suite& suite, std::string_view reference_wrapper_id, std::size_t parallelism = 1);

/// Curates against the bridge's native engine.
CuratedSuite curate(const Suite& suite, std::size_t parallelism = 1);

}  // namespace divsub
