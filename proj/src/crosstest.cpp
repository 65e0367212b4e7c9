#include "divsub/crosstest.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "divsub/errors.hpp"
#include "divsub/parallel.hpp"

namespace divsub {

std::string_view to_string(ColorClass c) {
    switch (c) {
        case ColorClass::Green: return "GREEN";
        case ColorClass::Yellow: return "YELLOW";
        case ColorClass::Red: return "RED";
    }
    return "?";
}

ColorClass color_for(std::size_t passed, std::size_t total) {
    if (passed > total) throw UsageError("passed exceeds total");
    std::size_t failures = total - passed;
    if (failures == 0) return ColorClass::Green;
    if (failures * 10 >= total) return ColorClass::Red;
    return ColorClass::Yellow;
}

std::string_view to_string(FailureCategory c) {
    switch (c) {
        case FailureCategory::StrictEquality: return "STRICT_EQUALITY";
        case FailureCategory::NumericType: return "NUMERIC_TYPE";
        case FailureCategory::ErrorBehavior: return "ERROR_BEHAVIOR";
        case FailureCategory::NonstandardStrictness: return "NONSTANDARD_STRICTNESS";
        case FailureCategory::Other: return "OTHER";
    }
    return "?";
}

namespace {

FailureCategory categorize(const TestScript& script, const TestOutcome& o) {
    if (o.reason != FailureReason::Assertion || !o.failed_step || *o.failed_step >= script.steps.size()) {
        return FailureCategory::Other;
    }
    const Step& step = script.steps[*o.failed_step];

    if (const auto* eq = std::get_if<AssertEqualsStep>(&step)) {
        if (!o.actual || !o.expected) return FailureCategory::Other;
        if (datum_equivalent(*o.actual, *o.expected, EquivalenceMode::key_order_tolerant()) ||
            datum_equivalent(*o.actual, *o.expected, EquivalenceMode::whitespace_tolerant())) {
            return FailureCategory::StrictEquality;
        }
        double eps = eq->mode.tolerates_numbers() ? eq->mode.epsilon() : kDefaultEpsilon;
        if (datum_equivalent(*o.actual, *o.expected, EquivalenceMode::numeric_tolerant(eps))) {
            return FailureCategory::NumericType;
        }
        return FailureCategory::Other;
    }
    if (const auto* ae = std::get_if<AssertErrorStep>(&step)) {
        if (!ae->has_payload() || !o.actual) return FailureCategory::Other;
        const auto* err = std::get_if<CapturedError>(&*o.actual);
        if (err != nullptr && (!ae->kind || *ae->kind == err->kind)) return FailureCategory::ErrorBehavior;
        return FailureCategory::Other;
    }
    if (std::holds_alternative<ExpectRejectStep>(step)) {
        // The wrapper accepted the input (o.actual holds what it produced).
        return o.actual ? FailureCategory::NonstandardStrictness : FailureCategory::Other;
    }
    return FailureCategory::Other;
}

}  // namespace

FailureRecord classify_failure(const TestScript& script, const TestOutcome& outcome, std::string_view wrapper_id) {
    if (outcome.passed) throw UsageError("classify_failure called on a passing outcome");
    return {script.id, std::string(wrapper_id), categorize(script, outcome), outcome.detail};
}

const MatrixCell& BehaviorMatrix::cell(std::string_view wrapper_id, std::string_view bridge_id) const {
    for (const auto& c : cells) {
        if (c.wrapper_id == wrapper_id && c.bridge_id == bridge_id) return c;
    }
    throw UsageError("no matrix cell for " + std::string(wrapper_id) + " x " + std::string(bridge_id));
}

BehaviorMatrix run_matrix(const std::vector<CuratedSuite>& suites, const std::vector<WrapperHandle>& wrappers,
                          std::size_t parallelism) {
    BehaviorMatrix m;
    for (const auto& w : wrappers) {
        if (w->is_placebo()) throw UsageError("the placebo wrapper cannot be cross-tested");
        m.wrappers.push_back(w->id());
    }
    // Several suites may target one bridge; their runnable tests are pooled per column.
    std::vector<std::vector<const TestScript*>> columns;
    for (const auto& s : suites) {
        auto it = std::find(m.bridges.begin(), m.bridges.end(), s.bridge_id);
        if (it == m.bridges.end()) {
            m.bridges.push_back(s.bridge_id);
            columns.emplace_back();
            it = m.bridges.end() - 1;
        }
        auto& col = columns[static_cast<std::size_t>(it - m.bridges.begin())];
        for (const auto& t : s.tests) {
            if (t.runnable()) col.push_back(&t.script);
        }
    }

    std::size_t ncols = m.bridges.size();
    m.cells = parallel_map(wrappers.size() * ncols, parallelism, [&](std::size_t k) {
        const Wrapper& w = *wrappers[k / ncols];
        const std::string& b = m.bridges[k % ncols];
        MatrixCell cell{w.id(), b, 0, columns[k % ncols].size(), ColorClass::Green, {}};
        for (const TestScript* script : columns[k % ncols]) {
            TestOutcome o = run_script(*script, b, w);
            if (o.passed) ++cell.passed;
            else cell.failures.push_back(classify_failure(*script, o, w.id()));
        }
        cell.color = color_for(cell.passed, cell.total);
        return cell;
    });
    return m;
}

std::string matrix_csv(const BehaviorMatrix& m) {
    std::ostringstream out;
    out << "wrapper,bridge,passed,total,color\n";
    for (const auto& c : m.cells) {
        out << c.wrapper_id << ',' << c.bridge_id << ',' << c.passed << ',' << c.total << ',' << to_string(c.color)
            << '\n';
    }
    return out.str();
}

std::string matrix_grid(const BehaviorMatrix& m) {
    auto text = [](const MatrixCell& c) {
        return std::to_string(c.passed) + " / " + std::to_string(c.total) + " " + std::string(to_string(c.color));
    };
    std::size_t first = std::string("wrapper").size();
    for (const auto& w : m.wrappers) first = std::max(first, w.size());
    std::vector<std::size_t> widths;
    for (const auto& b : m.bridges) {
        std::size_t width = b.size();
        for (const auto& w : m.wrappers) width = std::max(width, text(m.cell(w, b)).size());
        widths.push_back(width);
    }
    auto pad = [](std::string s, std::size_t n) {
        s.resize(std::max(n, s.size()), ' ');
        return s;
    };
    std::ostringstream out;
    out << pad("wrapper", first);
    for (std::size_t j = 0; j < m.bridges.size(); ++j) out << " | " << pad(m.bridges[j], widths[j]);
    out << '\n' << std::string(first, '-');
    for (auto w : widths) out << "-+-" << std::string(w, '-');
    out << '\n';
    for (const auto& w : m.wrappers) {
        out << pad(w, first);
        for (std::size_t j = 0; j < m.bridges.size(); ++j) out << " | " << pad(text(m.cell(w, m.bridges[j])), widths[j]);
        out << '\n';
    }
    return out.str();
}

std::string matrix_structured(const BehaviorMatrix& m) {
    using Json = nlohmann::ordered_json;
    Json cells = Json::array();
    for (const auto& c : m.cells) {
        Json failures = Json::array();
        for (const auto& f : c.failures) {
            failures.push_back({{"test", f.test_id}, {"category", to_string(f.category)}, {"detail", f.detail}});
        }
        cells.push_back({{"wrapper", c.wrapper_id},
                         {"bridge", c.bridge_id},
                         {"passed", c.passed},
                         {"total", c.total},
                         {"color", to_string(c.color)},
                         {"failures", failures}});
    }
    Json doc{{"wrappers", m.wrappers}, {"bridges", m.bridges}, {"cells", cells}};
    return doc.dump(2) + "\n";
}

}  // namespace divsub
