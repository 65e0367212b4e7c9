#include "divsub/curation.hpp"

#include "divsub/bridges.hpp"
#include "divsub/errors.hpp"
#include "divsub/parallel.hpp"
#include "divsub/runner.hpp"
#include "divsub/wrappers.hpp"

namespace divsub {

std::string_view to_string(CurationLabel l) {
    switch (l) {
        case CurationLabel::Removed: return "REMOVED";
        case CurationLabel::Placebo: return "PLACEBO";
        case CurationLabel::Modified: return "MODIFIED";
        case CurationLabel::Selected: return "SELECTED";
    }
    return "?";
}

std::string_view to_string(RemovalReason r) { return r == RemovalReason::Capability ? "CAPABILITY" : "NONSTANDARD"; }

PartitionCounts CuratedSuite::counts() const {
    PartitionCounts c;
    for (const auto& t : tests) {
        switch (t.label) {
            case CurationLabel::Removed: ++c.removed; break;
            case CurationLabel::Placebo: ++c.placebo; break;
            case CurationLabel::Modified: ++c.modified; break;
            case CurationLabel::Selected: ++c.selected; break;
        }
    }
    return c;
}

std::vector<TestScript> CuratedSuite::runnable_scripts() const {
    std::vector<TestScript> out;
    for (const auto& t : tests) {
        if (t.runnable()) out.push_back(t.script);
    }
    return out;
}

namespace {

EquivalenceMode upgraded(const EquivalenceMode& from, EquivalenceMode::Kind to) {
    double eps = from.tolerates_numbers() ? from.epsilon() : kDefaultEpsilon;
    switch (to) {
        case EquivalenceMode::Kind::WhitespaceTolerant: return EquivalenceMode::whitespace_tolerant();
        case EquivalenceMode::Kind::KeyOrderTolerant: return EquivalenceMode::key_order_tolerant();
        case EquivalenceMode::Kind::NumericTolerant: return EquivalenceMode::numeric_tolerant(eps);
        case EquivalenceMode::Kind::FullRelaxed: return EquivalenceMode::full_relaxed(eps);
        case EquivalenceMode::Kind::Strict: break;
    }
    return EquivalenceMode::strict();
}

}  // namespace

std::vector<RelaxCandidate> relax(const TestScript& script) {
    std::vector<RelaxCandidate> out;
    for (auto level : {EquivalenceMode::Kind::WhitespaceTolerant, EquivalenceMode::Kind::KeyOrderTolerant,
                       EquivalenceMode::Kind::NumericTolerant, EquivalenceMode::Kind::FullRelaxed}) {
        TestScript candidate = script;
        bool changed = false;
        for (auto& step : candidate.steps) {
            auto* eq = std::get_if<AssertEqualsStep>(&step);
            if (eq == nullptr) continue;
            EquivalenceMode next = upgraded(eq->mode, level);
            if (next.kind() != eq->mode.kind() && eq->mode.implies(next)) {
                eq->mode = next;
                changed = true;
            }
        }
        if (changed) out.push_back({std::move(candidate), {to_string(upgraded(EquivalenceMode::strict(), level))}});
    }

    TestScript stripped = script;
    bool changed = false;
    for (auto& step : stripped.steps) {
        auto* err = std::get_if<AssertErrorStep>(&step);
        if (err == nullptr || !err->has_payload()) continue;
        err->position.reset();
        err->message.reset();
        changed = true;
    }
    if (changed) out.push_back({std::move(stripped), {"strip-error-payload"}});
    return out;
}

namespace {

bool passes(const TestScript& s, std::string_view bridge_id, const Wrapper& w) {
    return run_script(s, bridge_id, w).passed;
}

CuratedTest label_one(const TestScript& t, std::string_view bridge_id, const Wrapper& reference, const Wrapper& placebo) {
    CuratedTest out;
    out.original = t;
    out.script = t;
    CapabilityResult cap = capability_check(bridge_id, t);
    if (!cap.ok()) {
        out.label = CurationLabel::Removed;
        out.reason = RemovalReason::Capability;
        out.missing_ops = std::move(cap.missing);
        return out;
    }
    if (passes(t, bridge_id, placebo)) {
        out.label = CurationLabel::Placebo;
        return out;
    }
    if (passes(t, bridge_id, reference)) {
        out.label = CurationLabel::Selected;
        return out;
    }
    for (auto& candidate : relax(t)) {
        if (passes(candidate.script, bridge_id, reference) && !passes(candidate.script, bridge_id, placebo)) {
            out.label = CurationLabel::Modified;
            out.script = std::move(candidate.script);
            out.relaxations = std::move(candidate.applied);
            return out;
        }
    }
    out.label = CurationLabel::Removed;
    out.reason = RemovalReason::Nonstandard;
    return out;
}

}  // namespace

CuratedSuite curate(const Suite& suite, std::string_view reference_wrapper_id, std::size_t parallelism) {
    validate_suite(suite);
    bridge(suite.bridge_id);
    WrapperHandle reference = wrap(reference_wrapper_id);
    if (reference->is_placebo()) throw UsageError("the reference wrapper must not be the placebo");
    WrapperHandle placebo = placebo_wrapper();

    CuratedSuite out{suite.id, suite.bridge_id, reference->id(), {}};
    out.tests = parallel_map(suite.tests.size(), parallelism, [&](std::size_t i) {
        return label_one(suite.tests[i], suite.bridge_id, *reference, *placebo);
    });

    for (const auto& t : out.tests) {
        if (!t.runnable()) continue;
        if (passes(t.script, suite.bridge_id, *placebo)) {
            throw SanityViolation(t.script.id + " passes on the placebo wrapper");
        }
        if (!passes(t.script, suite.bridge_id, *reference)) {
            throw SanityViolation(t.script.id + " fails on " + reference->id());
        }
    }
    return out;
}

CuratedSuite curate(const Suite& suite, std::size_t parallelism) {
    return curate(suite, bridge(suite.bridge_id).native_engine(), parallelism);
}

}  // namespace divsub
