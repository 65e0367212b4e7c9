#include "divsub/corpus.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "divsub/equivalence.hpp"
#include "divsub/errors.hpp"
#include "divsub/suite_io.hpp"

namespace divsub {

namespace fs = std::filesystem;

std::vector<CorpusEntry> load_corpus(const fs::path& dir) {
    std::vector<CorpusEntry> out;
    bool any = false;
    for (auto [sub, wellformed] : {std::pair{"wellformed", true}, std::pair{"illformed", false}}) {
        fs::path d = dir / sub;
        if (!fs::is_directory(d)) continue;
        any = true;
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(d)) {
            if (e.is_regular_file()) files.push_back(e.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) out.push_back({f.filename().string(), wellformed, read_file(f)});
    }
    if (!any) throw UsageError("no corpus under " + dir.string());
    return out;
}

fs::path corpus_dir(const fs::path& fallback) {
    const char* env = std::getenv("DIVSUB_CORPUS_DIR");
    if (env != nullptr && *env != '\0') return env;
    return fallback;
}

std::size_t CorpusReport::divergent_illformed() const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.wellformed && r.divergent; }));
}

std::size_t CorpusReport::wellformed_disagreements() const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.wellformed && r.disagreement; }));
}

CorpusReport survey_corpus(const std::vector<CorpusEntry>& entries, const Reservoir& reservoir) {
    CorpusReport report;
    report.engines = reservoir.ids();
    const auto relaxed = EquivalenceMode::full_relaxed();
    for (const auto& e : entries) {
        CorpusRow row{e.id, e.wellformed, {}, {}, false, false, {}};
        std::vector<EngineOutcome> outcomes;
        for (const auto& id : report.engines) {
            const Engine& engine = reservoir.engine(id);
            outcomes.push_back(engine.parse(e.bytes));
            row.accepted.push_back(outcomes.back().accepted());
            row.admitted.push_back(e.wellformed && admits(engine.profile(), e.bytes));
        }
        row.divergent = std::adjacent_find(row.accepted.begin(), row.accepted.end(), std::not_equal_to<>()) !=
                        row.accepted.end();
        if (e.wellformed) {
            const JsonValue* first = nullptr;
            std::string first_id;
            for (std::size_t i = 0; i < outcomes.size() && !row.disagreement; ++i) {
                if (!row.admitted[i]) continue;
                if (!outcomes[i].accepted()) {
                    row.disagreement = true;
                    row.disagreement_detail = report.engines[i] + " rejected it";
                } else if (first == nullptr) {
                    first = &outcomes[i].value();
                    first_id = report.engines[i];
                } else if (!json_equivalent(*first, outcomes[i].value(), relaxed)) {
                    row.disagreement = true;
                    row.disagreement_detail = first_id + " and " + report.engines[i] + " disagree";
                }
            }
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string corpus_csv(const CorpusReport& r) {
    std::ostringstream out;
    out << "id,class";
    for (const auto& e : r.engines) out << ',' << e;
    out << ",divergent\n";
    for (const auto& row : r.rows) {
        out << row.id << ',' << (row.wellformed ? "wellformed" : "illformed");
        for (std::size_t i = 0; i < row.accepted.size(); ++i) {
            out << ',' << (row.accepted[i] ? 'A' : 'R');
            if (row.wellformed && !row.admitted[i]) out << '-';
        }
        out << ',' << (row.divergent ? "yes" : "no") << '\n';
    }
    return out.str();
}

}  // namespace divsub
