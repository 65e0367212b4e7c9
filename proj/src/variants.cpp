#include "divsub/variants.hpp"

#include <algorithm>
#include <sstream>

#include "divsub/bridges.hpp"
#include "divsub/errors.hpp"
#include "divsub/parallel.hpp"
#include "divsub/runner.hpp"

namespace divsub {

ClientCheck check_client(const ClientDescriptor& c) {
    ClientCheck out{capability_check(c.bridge_id, c.tests), std::nullopt};
    if (!out.capability.ok()) return out;
    out.coverage = placebo_covered([&](const Wrapper& placebo) {
        for (const auto& t : c.tests) execute_script(t, c.bridge_id, placebo);
    });
    return out;
}

namespace {

VariantOutcome run_variant(const ClientDescriptor& c, const Wrapper& w, std::size_t repetitions) {
    VariantOutcome out{w.id(), true, {}};
    for (std::size_t r = 0; r < repetitions; ++r) {
        std::vector<FailureRecord> failures;
        for (const auto& t : c.tests) {
            TestOutcome o = run_script(t, c.bridge_id, w);
            if (!o.passed) failures.push_back(classify_failure(t, o, w.id()));
        }
        if (!failures.empty() && out.passed) {
            out.passed = false;
            out.failures = std::move(failures);
        }
    }
    return out;
}

}  // namespace

VariantReport build_variants(const ClientDescriptor& c, const std::vector<WrapperHandle>& wrappers,
                             std::size_t repetitions, std::size_t parallelism) {
    if (repetitions == 0) throw UsageError("repetitions must be at least 1");
    VariantReport report{c.id, c.bridge_id, c.authored_against, check_client(c), {}, std::nullopt};
    if (!report.check.eligible()) return report;

    std::vector<WrapperHandle> sorted;
    for (const auto& w : wrappers) {
        if (!w->is_placebo()) sorted.push_back(w);
    }
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a->id() < b->id(); });

    report.variants = parallel_map(sorted.size(), parallelism,
                                   [&](std::size_t i) { return run_variant(c, *sorted[i], repetitions); });
    report.equivalent_count = static_cast<std::size_t>(
        std::count_if(report.variants.begin(), report.variants.end(), [](const auto& v) { return v.passed; }));
    return report;
}

std::vector<VariantReport> build_all_variants(const std::vector<ClientDescriptor>& clients,
                                              const std::vector<WrapperHandle>& wrappers, std::size_t repetitions,
                                              std::size_t parallelism) {
    std::vector<VariantReport> out;
    for (const auto& c : clients) out.push_back(build_variants(c, wrappers, repetitions, parallelism));
    return out;
}

DistributionSummary summarize(const std::vector<VariantReport>& reports, std::size_t reservoir_size) {
    DistributionSummary s;
    s.reservoir_size = reservoir_size;
    auto empty_bins = [&] {
        std::map<std::size_t, std::size_t> bins;
        for (std::size_t k = 0; k <= reservoir_size; ++k) bins[k] = 0;
        return bins;
    };
    for (const auto& b : bridge_id_list()) s.histogram[b] = empty_bins();
    for (const auto& r : reports) {
        ++s.clients;
        if (!r.equivalent_count) continue;
        if (*r.equivalent_count > reservoir_size) throw UsageError(r.client_id + ": more equivalent variants than engines");
        if (!s.histogram.count(r.bridge_id)) s.histogram[r.bridge_id] = empty_bins();
        ++s.histogram[r.bridge_id][*r.equivalent_count];
        ++s.counted_clients;
        s.variants_produced += r.variants.size();
    }
    return s;
}

namespace {

std::string categories(const VariantOutcome& v) {
    std::set<FailureCategory> seen;
    for (const auto& f : v.failures) seen.insert(f.category);
    std::string out;
    for (auto c : seen) {
        if (!out.empty()) out += ';';
        out += to_string(c);
    }
    return out;
}

std::string join(const std::set<std::string>& items) {
    std::string out;
    for (const auto& s : items) {
        if (!out.empty()) out += ", ";
        out += s;
    }
    return out;
}

}  // namespace

std::string variants_csv(const std::vector<VariantReport>& reports) {
    std::ostringstream out;
    out << "client,wrapper,outcome,category\n";
    for (const auto& r : reports) {
        if (!r.check.capability.ok()) {
            out << r.client_id << ",-,EXCLUDED,MISSING_OPS\n";
            continue;
        }
        if (r.check.coverage != Coverage::Covered) {
            out << r.client_id << ",-,EXCLUDED,NOT_COVERED\n";
            continue;
        }
        for (const auto& v : r.variants) {
            out << r.client_id << ',' << v.wrapper_id << ',' << (v.passed ? "PASS" : "FAIL") << ',' << categories(v)
                << '\n';
        }
    }
    return out.str();
}

std::string variants_text(const std::vector<VariantReport>& reports, const DistributionSummary& summary) {
    std::ostringstream out;
    for (const auto& r : reports) {
        out << r.client_id << " [" << r.bridge_id << "]\n";
        if (!r.check.capability.ok()) {
            out << "  compile: missing " << join(r.check.capability.missing) << "\n";
            continue;
        }
        out << "  compile: ok\n  coverage: " << to_string(*r.check.coverage) << '\n';
        if (!r.equivalent_count) {
            out << "  excluded from variant counting\n";
            continue;
        }
        out << "  equivalent variants: " << *r.equivalent_count << " / " << r.variants.size() << '\n';
        for (const auto& v : r.variants) {
            if (v.passed) continue;
            out << "  " << v.wrapper_id << ": FAIL (" << categories(v) << ")\n";
            for (const auto& f : v.failures) out << "    " << f.detail << '\n';
        }
    }
    out << "\nclients: " << summary.clients << ", counted: " << summary.counted_clients
        << ", variants produced: " << summary.variants_produced << '\n';
    for (const auto& [bridge, bins] : summary.histogram) {
        out << bridge << ':';
        for (const auto& [k, n] : bins) out << ' ' << k << '=' << n;
        out << '\n';
    }
    return out.str();
}

}  // namespace divsub
