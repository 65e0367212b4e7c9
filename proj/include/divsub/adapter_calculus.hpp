#pragma once

// Adapter-effort counts for a reservoir of libraries, and the four-part
// assessment report.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "divsub/crosstest.hpp"
#include "divsub/variants.hpp"

namespace divsub {

struct LibraryDesc {
    std::string name;
    std::uint64_t version_count = 1;
    std::uint64_t api_size = 0;
};

struct BridgedCount {
    std::string library;
    std::uint64_t adapted = 0;
};

struct ReservoirDescriptor {
    std::vector<LibraryDesc> libraries;
    std::uint64_t facade_size = 15;
    /// nullopt means no bridge data at all; an empty vector means zero bridges.
    std::optional<std::vector<BridgedCount>> bridged;

    /// Throws UsageError: version_count < 1, duplicate names, or a bridged
    /// entry that is not among the libraries.
    void validate() const;
    std::uint64_t total_api_size() const;
};

struct AdapterCounts {
    std::uint64_t naive = 0;
    std::uint64_t curated = 0;
    /// Per library: version_count * api_size * (n - 1).
    std::vector<std::pair<std::string, std::uint64_t>> naive_by_library;
    /// Per bridge: adapted elements.
    std::vector<std::pair<std::string, std::uint64_t>> adapted_by_bridge;
    /// n * facade_size, one facade implementation per wrapper.
    std::uint64_t wrapper_total = 0;
};

/// Sum over libraries of version_count * api_size * (n - 1).
std::uint64_t naive_count(const ReservoirDescriptor& r);
/// Sum of bridged adapted counts plus n * facade_size. Throws MissingBridgeData.
std::uint64_t curated_count(const ReservoirDescriptor& r);
AdapterCounts adapter_counts(const ReservoirDescriptor& r);

/// CSV with header name,version_count,api_size,bridge_adapted; an empty
/// bridge_adapted cell marks an unbridged library. Throws UsageError.
ReservoirDescriptor parse_table3(std::string_view csv, std::uint64_t facade_size = 15);
ReservoirDescriptor load_table3(const std::filesystem::path& path, std::uint64_t facade_size = 15);

/// This repository: the bundled engines, each with api size equal to its
/// bridge's surface size when it is a bridge's native engine and the facade
/// size otherwise; bridged counts are the adapted-op counts of the bridges.
ReservoirDescriptor repo_descriptor();

struct FrameworkState {
    ReservoirDescriptor descriptor;
    std::optional<BehaviorMatrix> matrix;
    std::optional<std::vector<VariantReport>> variants;
};

struct AssessmentReport {
    std::optional<std::uint64_t> adapted_elements;
    std::optional<std::uint64_t> naive;
    /// Cells by color.
    struct MatrixSummary {
        std::size_t cells = 0, green = 0, yellow = 0, red = 0, passed = 0, total = 0;
    };
    std::optional<MatrixSummary> matrix;
    struct ClientSummary {
        std::size_t clients = 0, compile_ok = 0, covered = 0;
    };
    std::optional<ClientSummary> clients;
    std::optional<DistributionSummary> distribution;
};

/// Aggregates whatever is present; missing inputs leave their sections empty.
AssessmentReport assess(const FrameworkState& state);
std::string assessment_text(const AssessmentReport& a);

}  // namespace divsub
