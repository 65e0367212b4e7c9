// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failing criteria.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "divsub/adapter_calculus.hpp"
#include "divsub/bridges.hpp"
#include "divsub/corpus.hpp"
#include "divsub/crosstest.hpp"
#include "divsub/curation.hpp"
#include "divsub/equivalence.hpp"
#include "divsub/errors.hpp"
#include "divsub/facade.hpp"
#include "divsub/reservoir.hpp"
#include "divsub/runner.hpp"
#include "divsub/suite_io.hpp"
#include "divsub/variants.hpp"
#include "divsub/wrappers.hpp"
#include "support/generators.hpp"

using namespace divsub;

namespace {

// Pinned limits.
constexpr double kAc1Seconds = 1.0;
constexpr double kAc3Seconds = 10.0;
constexpr double kAc7Seconds = 30.0;
constexpr int kAc7ValuesPerEngine = 1000;
constexpr std::uint64_t kNaive = 265202;
constexpr std::uint64_t kApiSizeTotal = 13958;
constexpr std::uint64_t kCurated = 636;
constexpr std::size_t kMinDivergentIllformed = 10;

std::string src(const std::string& rel) { return std::string(DIVSUB_SOURCE_DIR) + "/" + rel; }

class Check {
public:
    explicit Check(std::ostringstream& why) : why_(why) {}
    bool operator()(bool ok, const std::string& what) {
        if (!ok) {
            why_ << (failed_ ? "; " : "") << what;
            failed_ = true;
        }
        return ok;
    }
    bool passed() const { return !failed_; }

private:
    std::ostringstream& why_;
    bool failed_ = false;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string run_cli(const std::string& args, int& code) {
    std::string cmd = "cd '" DIVSUB_SOURCE_DIR "' && '" DIVSUB_CLI_PATH "' " + args + " 2>/dev/null";
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (p == nullptr) {
        code = -1;
        return out;
    }
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int status = pclose(p);
    code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

const VariantReport* find_report(const std::vector<VariantReport>& rs, const std::string& id) {
    for (const auto& r : rs) {
        if (r.client_id == id) return &r;
    }
    return nullptr;
}

void ac1(Check& ok) {
    auto t0 = std::chrono::steady_clock::now();
    ReservoirDescriptor r = load_table3(src("fixtures/table3.csv"));
    ok(r.libraries.size() == 20, "expected 20 libraries");
    ok(r.total_api_size() == kApiSizeTotal, "api-size total " + std::to_string(r.total_api_size()));
    ok(naive_count(r) == kNaive, "naive " + std::to_string(naive_count(r)));
    ok(curated_count(r) == kCurated, "curated " + std::to_string(curated_count(r)));
    double s = seconds_since(t0);
    ok(s < kAc1Seconds, "took " + std::to_string(s) + " s");
}

void ac2(Check& ok) {
    ok(kAllCapabilities.size() == 15, "capability count " + std::to_string(kAllCapabilities.size()));
    WrapperHandle p = placebo_wrapper();
    JsonValue obj = JsonValue::object();
    JsonValue arr = JsonValue::array();
    const std::vector<std::pair<FacadeCapability, std::function<void()>>> calls = {
        {FacadeCapability::Parse, [&] { p->parse("{}"); }},
        {FacadeCapability::Serialize, [&] { p->serialize(obj); }},
        {FacadeCapability::ObjGet, [&] { p->obj_get(obj, "k"); }},
        {FacadeCapability::ObjSet, [&] { p->obj_set(obj, "k", JsonValue()); }},
        {FacadeCapability::ObjRemove, [&] { p->obj_remove(obj, "k"); }},
        {FacadeCapability::ObjSize, [&] { p->obj_size(obj); }},
        {FacadeCapability::ObjKeys, [&] { p->obj_keys(obj); }},
        {FacadeCapability::ObjHas, [&] { p->obj_has(obj, "k"); }},
        {FacadeCapability::ArrGet, [&] { p->arr_get(arr, 0); }},
        {FacadeCapability::ArrAppend, [&] { p->arr_append(arr, JsonValue()); }},
        {FacadeCapability::ArrSet, [&] { p->arr_set(arr, 0, JsonValue()); }},
        {FacadeCapability::ArrRemove, [&] { p->arr_remove(arr, 0); }},
        {FacadeCapability::ArrSize, [&] { p->arr_size(arr); }},
        {FacadeCapability::TypeOf, [&] { p->type_of(obj); }},
        {FacadeCapability::DeepCopy, [&] { p->deep_copy(obj); }},
    };
    std::set<FacadeCapability> seen;
    for (const auto& [cap, call] : calls) {
        seen.insert(cap);
        bool raised = false;
        try {
            call();
        } catch (const PlaceboError&) {
            raised = true;
        } catch (...) {
        }
        ok(raised, "placebo did not raise on " + std::string(to_string(cap)));
    }
    ok(seen.size() == kAllCapabilities.size(), "not every capability exercised");
}

void ac3(Check& ok) {
    auto t0 = std::chrono::steady_clock::now();
    auto suites = load_suites(src("suites"));
    ok(!suites.empty(), "no suites");
    for (const auto& s : suites) {
        CuratedSuite c;
        try {
            c = curate(s);
        } catch (const SanityViolation& e) {
            ok(false, e.what());
            continue;
        }
        ok(c.counts().total() == s.tests.size(), s.id + ": labels do not partition the suite");
        WrapperHandle ref = wrap(c.reference_wrapper_id);
        for (const auto& t : c.tests) {
            if (!t.runnable()) continue;
            ok(!run_script(t.script, s.bridge_id, *placebo_wrapper()).passed, t.script.id + " passes on placebo");
            ok(run_script(t.script, s.bridge_id, *ref).passed, t.script.id + " fails on reference");
        }
    }
    double s = seconds_since(t0);
    ok(s < kAc3Seconds, "took " + std::to_string(s) + " s");
}

void ac4(Check& ok) {
    std::vector<CuratedSuite> curated;
    for (const auto& s : load_suites(src("suites"))) curated.push_back(curate(s));
    BehaviorMatrix m = run_matrix(curated, all_engine_wrappers());
    for (const auto& b : all_bridges()) {
        const MatrixCell& c = m.cell(b.native_engine(), b.id());
        ok(c.color == ColorClass::Green && c.passed == c.total,
           b.id() + " native cell " + std::to_string(c.passed) + "/" + std::to_string(c.total));
    }
    // Failure fractions 0, 0.05, 0.10, 0.31 over 100 tests.
    ok(color_for(100, 100) == ColorClass::Green, "fraction 0");
    ok(color_for(95, 100) == ColorClass::Yellow, "fraction 0.05");
    ok(color_for(90, 100) == ColorClass::Red, "fraction 0.10");
    ok(color_for(69, 100) == ColorClass::Red, "fraction 0.31");
    ok(color_for(133, 133) == ColorClass::Green, "133/133");
    ok(color_for(135, 141) == ColorClass::Yellow, "135/141");
    ok(color_for(61, 89) == ColorClass::Red, "61/89");
}

void ac5(Check& ok) {
    CorpusReport r = survey_corpus(load_corpus(src("corpus")));
    ok(r.divergent_illformed() >= kMinDivergentIllformed,
       "divergent ill-formed " + std::to_string(r.divergent_illformed()));
    ok(r.wellformed_disagreements() == 0, "well-formed disagreements " + std::to_string(r.wellformed_disagreements()));
}

void ac6(Check& ok) {
    const std::string text = "1512901875251";
    JsonValue exact = JsonValue::integer(1512901875251LL);
    JsonValue ff = wrap("float-first")->parse(text);
    JsonValue sr = wrap("strict-rfc")->parse(text);
    ok(!(ff == exact), "float-first kept the value");
    ok(!json_equivalent(ff, exact, EquivalenceMode::numeric_tolerant()), "float-first equal within epsilon");
    ok(sr == exact, "strict-rfc changed the value");

    ClientDescriptor c = load_client(src("clients/precision-coupled.json"));
    VariantReport r = build_variants(c, all_engine_wrappers());
    std::vector<std::string> failing;
    for (const auto& v : r.variants) {
        if (!v.passed) failing.push_back(v.wrapper_id);
    }
    ok(failing == std::vector<std::string>{"float-first"}, "precision-coupled fails on an unexpected set");
}

void ac7(Check& ok) {
    auto t0 = std::chrono::steady_clock::now();
    for (const auto& id : Reservoir::bundled().ids()) {
        const Engine& e = Reservoir::bundled().engine(id);
        testgen::Generator gen(0xac7 + id.size() * 131, testgen::limits_for(e.profile()));
        std::size_t bad = 0;
        for (int i = 0; i < kAc7ValuesPerEngine; ++i) {
            JsonValue v = gen.value();
            EngineOutcome o = e.parse(e.serialize(v));
            if (!o.accepted() || !json_equivalent(v, o.value(), EquivalenceMode::full_relaxed())) ++bad;
        }
        ok(bad == 0, id + ": " + std::to_string(bad) + " counterexamples");
    }
    double s = seconds_since(t0);
    ok(s < kAc7Seconds, "took " + std::to_string(s) + " s");
}

void ac8(Check& ok) {
    auto clients = load_clients(src("clients"));
    auto reports = build_all_variants(clients, all_engine_wrappers());
    const VariantReport* free = find_report(reports, "json-free");
    const VariantReport* covering = find_report(reports, "full-compat");
    if (!ok(free && covering, "bundled clients missing")) return;
    ok(free->check.coverage == Coverage::NotCovered, "json-free is not NOT_COVERED");
    ok(!free->equivalent_count && free->variants.empty(), "json-free produced variants");
    ok(covering->check.coverage == Coverage::Covered, "full-compat is not COVERED");
    DistributionSummary d = summarize(reports, Reservoir::bundled().size());
    std::size_t eligible = 0;
    for (const auto& r : reports) eligible += r.check.eligible() ? 1 : 0;
    ok(d.counted_clients == eligible, "distribution counts an ineligible client");
}

void ac9(Check& ok) {
    int c1 = 0, c2 = 0, c3 = 0;
    std::string a = run_cli("variants clients --no-timestamp -j 1", c1);
    std::string b = run_cli("variants clients --no-timestamp", c2);
    std::string c = run_cli("variants clients --no-timestamp", c3);
    ok(c1 == 0 && c2 == 0 && c3 == 0, "variants command failed");
    ok(!a.empty() && a == b && b == c, "reports differ between runs");
    VariantReport full = build_variants(load_client(src("clients/full-compat.json")), all_engine_wrappers());
    ok(full.equivalent_count == Reservoir::bundled().size(), "full-compat below reservoir size");
}

void ac10(Check& ok) {
    const std::vector<std::pair<std::string, FailureCategory>> fixtures = {
        {"strict-equality", FailureCategory::StrictEquality},
        {"numeric-type", FailureCategory::NumericType},
        {"nonstandard-strictness", FailureCategory::NonstandardStrictness},
    };
    for (const auto& [name, want] : fixtures) {
        ClientDescriptor c = load_client(src("tests/fixtures/taxonomy/" + name + ".json"));
        VariantReport r = build_variants(c, all_engine_wrappers());
        std::size_t n = 0;
        for (const auto& v : r.variants) {
            for (const auto& f : v.failures) {
                ++n;
                ok(f.category == want, name + " on " + v.wrapper_id + " classified " + std::string(to_string(f.category)));
            }
        }
        ok(n > 0, name + " produced no failure");
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, void (*)(Check&)>> criteria = {
        {"AC1 adapter calculus exactness", ac1}, {"AC2 facade cardinality", ac2},
        {"AC3 curation soundness", ac3},         {"AC4 matrix diagonal and colors", ac4},
        {"AC5 engine diversity", ac5},           {"AC6 precision coupling", ac6},
        {"AC7 round-trip property", ac7},        {"AC8 coverage gating", ac8},
        {"AC9 variant determinism", ac9},        {"AC10 failure taxonomy", ac10},
    };
    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        std::ostringstream why;
        Check ok(why);
        try {
            fn(ok);
        } catch (const std::exception& e) {
            ok(false, std::string("exception: ") + e.what());
        }
        if (ok.passed()) {
            std::cout << "PASS " << name << "\n";
        } else {
            std::cout << "FAIL " << name << ": " << why.str() << "\n";
            ++failures;
        }
    }
    return failures;
}
