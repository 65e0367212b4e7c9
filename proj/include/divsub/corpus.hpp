#pragma once

// The bundled input corpus and the per-engine accept/reject survey over it.

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "divsub/reservoir.hpp"

namespace divsub {

struct CorpusEntry {
    std::string id;  ///< file name
    bool wellformed = true;
    std::string bytes;
};

/// Reads `dir`/wellformed/* and `dir`/illformed/*, each sorted by file name.
/// Throws UsageError when neither subdirectory exists.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir);

/// DIVSUB_CORPUS_DIR when set and non-empty, otherwise `fallback`.
std::filesystem::path corpus_dir(const std::filesystem::path& fallback);

struct CorpusRow {
    std::string id;
    bool wellformed = true;
    /// One flag per engine, reservoir order.
    std::vector<bool> accepted;
    /// Engines whose restrictions admit the input (well-formed entries only).
    std::vector<bool> admitted;
    /// Two engines disagree on accept/reject.
    bool divergent = false;
    /// Well-formed entry where admitting engines rejected it or produced
    /// values that differ under FULL_RELAXED.
    bool disagreement = false;
    std::string disagreement_detail;
};

struct CorpusReport {
    std::vector<std::string> engines;
    std::vector<CorpusRow> rows;

    std::size_t divergent_illformed() const;
    std::size_t wellformed_disagreements() const;
};

CorpusReport survey_corpus(const std::vector<CorpusEntry>& entries, const Reservoir& reservoir = Reservoir::bundled());

/// id,class,<engine>...,divergent with A/R per engine; a trailing '-' marks a
/// well-formed input outside the engine's restrictions.
std::string corpus_csv(const CorpusReport& r);

}  // namespace divsub
