#pragma once

// Cross-testing: every curated suite against every wrapper.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "divsub/curation.hpp"
#include "divsub/facade.hpp"
#include "divsub/runner.hpp"

namespace divsub {

enum class ColorClass { Green, Yellow, Red };

std::string_view to_string(ColorClass c);

/// GREEN without failures, RED when failures make up 10% or more of the
/// total, YELLOW otherwise. Exact integer arithmetic.
ColorClass color_for(std::size_t passed, std::size_t total);

enum class FailureCategory { StrictEquality, NumericType, ErrorBehavior, NonstandardStrictness, Other };

std::string_view to_string(FailureCategory c);

struct FailureRecord {
    std::string test_id;
    std::string wrapper_id;
    FailureCategory category = FailureCategory::Other;
    std::string detail;
    friend bool operator==(const FailureRecord&, const FailureRecord&) = default;
};

/// First matching rule wins:
///  STRICT_EQUALITY  failed assert_equals holds under KEY_ORDER_TOLERANT or WHITESPACE_TOLERANT;
///  NUMERIC_TYPE     it holds under NUMERIC_TOLERANT;
///  ERROR_BEHAVIOR   failed assert_error would hold without its position/message payload;
///  NONSTANDARD_STRICTNESS  failed expect_reject whose input the wrapper accepted;
///  OTHER            anything else.
FailureRecord classify_failure(const TestScript& script, const TestOutcome& outcome, std::string_view wrapper_id);

struct MatrixCell {
    std::string wrapper_id;
    std::string bridge_id;
    std::size_t passed = 0;
    std::size_t total = 0;
    ColorClass color = ColorClass::Green;
    std::vector<FailureRecord> failures;
};

struct BehaviorMatrix {
    std::vector<std::string> wrappers;  ///< rows
    std::vector<std::string> bridges;   ///< columns
    std::vector<MatrixCell> cells;      ///< row-major

    /// Throws UsageError when the pair is absent.
    const MatrixCell& cell(std::string_view wrapper_id, std::string_view bridge_id) const;
};

/// Runs each suite's SELECTED and MODIFIED scripts with every wrapper.
/// Throws UsageError if the placebo is among the wrappers.
BehaviorMatrix run_matrix(const std::vector<CuratedSuite>& suites, const std::vector<WrapperHandle>& wrappers,
                          std::size_t parallelism = 1);

/// wrapper,bridge,passed,total,color
std::string matrix_csv(const BehaviorMatrix& m);
/// One row per wrapper, one column per bridge, cells "passed / total COLOR".
std::string matrix_grid(const BehaviorMatrix& m);
/// JSON document with every cell and its failure records.
std::string matrix_structured(const BehaviorMatrix& m);

}  // namespace divsub
