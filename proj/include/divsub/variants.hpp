#pragma once

// Client experiment: capability and coverage gating, one variant per
// wrapper, equivalence counting.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "divsub/bridges.hpp"
#include "divsub/crosstest.hpp"
#include "divsub/suite_io.hpp"
#include "divsub/wrappers.hpp"

namespace divsub {

struct ClientCheck {
    CapabilityResult capability;
    /// Absent when the capability check failed.
    std::optional<Coverage> coverage;

    bool eligible() const noexcept { return capability.ok() && coverage == Coverage::Covered; }
};

/// Throws TestDefect if the suite misbehaves on the placebo in any way other
/// than reaching it.
ClientCheck check_client(const ClientDescriptor& c);

struct VariantOutcome {
    std::string wrapper_id;
    bool passed = false;
    /// From the first failing repetition.
    std::vector<FailureRecord> failures;
};

struct VariantReport {
    std::string client_id;
    std::string bridge_id;
    std::string authored_against;
    ClientCheck check;
    std::vector<VariantOutcome> variants;
    /// Only set when the client is eligible.
    std::optional<std::size_t> equivalent_count;
};

constexpr std::size_t kDefaultRepetitions = 3;

/// Runs the check and, for eligible clients, the full suite against every
/// non-placebo wrapper `repetitions` times. A variant is equivalent only if
/// every repetition passes. Variants are reported sorted by wrapper id.
VariantReport build_variants(const ClientDescriptor& c, const std::vector<WrapperHandle>& wrappers,
                             std::size_t repetitions = kDefaultRepetitions, std::size_t parallelism = 1);

std::vector<VariantReport> build_all_variants(const std::vector<ClientDescriptor>& clients,
                                              const std::vector<WrapperHandle>& wrappers,
                                              std::size_t repetitions = kDefaultRepetitions,
                                              std::size_t parallelism = 1);

struct DistributionSummary {
    std::size_t reservoir_size = 0;
    /// bridge -> (equivalent count -> number of clients); every bin 0..reservoir_size present.
    std::map<std::string, std::map<std::size_t, std::size_t>> histogram;
    std::size_t clients = 0;
    std::size_t counted_clients = 0;
    std::size_t variants_produced = 0;
};

/// Bridges of the bundled registry always appear, with zero bins if unused.
DistributionSummary summarize(const std::vector<VariantReport>& reports, std::size_t reservoir_size);

/// client,wrapper,outcome,category
std::string variants_csv(const std::vector<VariantReport>& reports);
std::string variants_text(const std::vector<VariantReport>& reports, const DistributionSummary& summary);

}  // namespace divsub
