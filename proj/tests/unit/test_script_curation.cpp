#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "divsub/bridges.hpp"
#include "divsub/curation.hpp"
#include "divsub/errors.hpp"
#include "divsub/runner.hpp"
#include "divsub/suite_io.hpp"
#include "divsub/wrappers.hpp"

using namespace divsub;

namespace {

Suite suite_of(const std::string& bridge_id, const std::string& tests_json) {
    return parse_suite(R"({"suite-id":"s","bridge-id":")" + bridge_id + R"(","tests":)" + tests_json + "}");
}

TestScript script_of(const std::string& bridge_id, const std::string& test_json) {
    return suite_of(bridge_id, "[" + test_json + "]").tests.at(0);
}

TestOutcome run_on(const std::string& engine, const std::string& bridge_id, const std::string& test_json) {
    return run_script(script_of(bridge_id, test_json), bridge_id, *wrap(engine));
}

std::string suites_dir() { return std::string(DIVSUB_SOURCE_DIR) + "/suites"; }

}  // namespace

TEST(Runner, PassingScript) {
    auto o = run_on("strict-rfc", "document-style", R"({"test-id":"t","steps":[
        {"op":"call","fn":"JSONObject.parse","args":[{"text":"{\"a\":[1,2]}"}],"into":"o"},
        {"op":"call","fn":"JSONObject.getJSONArray","args":[{"ref":"o"},"a"],"into":"a"},
        {"op":"call","fn":"JSONArray.length","args":[{"ref":"a"}],"into":"n"},
        {"op":"assert_equals","actual":"n","expected":2},
        {"op":"assert_type","slot":"a","type":"array"}]})");
    EXPECT_TRUE(o.passed) << o.detail;
}

TEST(Runner, MutationsWriteBackToTheReceiverSlot) {
    auto o = run_on("strict-rfc", "document-style", R"({"test-id":"t","steps":[
        {"op":"call","fn":"JSONObject.new","args":[],"into":"o"},
        {"op":"call","fn":"JSONObject.put","args":[{"ref":"o"},"k",1]},
        {"op":"call","fn":"JSONObject.toString","args":[{"ref":"o"}],"into":"s"},
        {"op":"assert_equals","actual":"s","expected":{"text":"{\"k\":1}"}}]})");
    EXPECT_TRUE(o.passed) << o.detail;
}

TEST(Runner, AssertionFailureRecordsStepAndData) {
    auto o = run_on("strict-rfc", "document-style", R"({"test-id":"t","steps":[
        {"op":"let","into":"x","value":1},
        {"op":"assert_equals","actual":"x","expected":2}]})");
    EXPECT_FALSE(o.passed);
    EXPECT_EQ(o.reason, FailureReason::Assertion);
    EXPECT_EQ(o.failed_step, 1u);
    ASSERT_TRUE(o.actual.has_value());
    EXPECT_EQ(std::get<JsonValue>(*o.actual), JsonValue::integer(1));
    EXPECT_EQ(std::get<JsonValue>(*o.expected), JsonValue::integer(2));
}

TEST(Runner, ErrorsAreCapturedOnlyWhenAsserted) {
    const std::string call = R"({"op":"call","fn":"JSONObject.parse","args":[{"text":"{\"a\":"}],"into":"e"})";
    auto asserted = run_on("strict-rfc", "document-style", R"({"test-id":"t","steps":[)" + call +
                           R"(,{"op":"assert_error","slot":"e","error":"parse","position":5}]})");
    EXPECT_TRUE(asserted.passed) << asserted.detail;

    auto unasserted = run_on("strict-rfc", "document-style", R"({"test-id":"t","steps":[)" + call + "]}");
    EXPECT_EQ(unasserted.reason, FailureReason::UncaughtError);

    auto overwritten = run_on("strict-rfc", "document-style", R"({"test-id":"t","steps":[)" + call +
                              R"(,{"op":"let","into":"e","value":1},{"op":"assert_error","slot":"e"}]})");
    EXPECT_EQ(overwritten.reason, FailureReason::UncaughtError);
    EXPECT_EQ(overwritten.failed_step, 0u);

    auto wrong_kind = run_on("strict-rfc", "document-style", R"({"test-id":"t","steps":[)" + call +
                             R"(,{"op":"assert_error","slot":"e","error":"access"}]})");
    EXPECT_EQ(wrong_kind.reason, FailureReason::Assertion);
}

TEST(Runner, ErrorPayloadDependsOnEngine) {
    const std::string test = R"({"test-id":"t","steps":[
        {"op":"call","fn":"JSONObject.parse","args":[{"text":"{\"a\":"}],"into":"e"},
        {"op":"assert_error","slot":"e","position":5}]})";
    EXPECT_TRUE(run_on("strict-rfc", "document-style", test).passed);
    EXPECT_FALSE(run_on("lenient", "document-style", test).passed);
}

TEST(Runner, ExpectReject) {
    const std::string test = R"({"test-id":"t","steps":[
        {"op":"expect_reject","fn":"JSONObject.parse","text":"{\"a\":1,}"}]})";
    EXPECT_TRUE(run_on("strict-rfc", "document-style", test).passed);
    auto o = run_on("lenient", "document-style", test);
    EXPECT_EQ(o.reason, FailureReason::Assertion);
    EXPECT_TRUE(o.actual.has_value());
}

TEST(Runner, UnsupportedAndPlacebo) {
    auto o = run_on("strict-rfc", "document-style", R"({"test-id":"t","steps":[
        {"op":"call","fn":"JSONTokener.nextValue","args":[{"text":"1"}],"into":"v"}]})");
    EXPECT_EQ(o.reason, FailureReason::Unsupported);

    TestScript s = script_of("document-style", R"({"test-id":"t","steps":[
        {"op":"call","fn":"JSONObject.new","args":[],"into":"o"}]})");
    auto p = run_script(s, "document-style", *placebo_wrapper());
    EXPECT_EQ(p.reason, FailureReason::Placebo);
    EXPECT_THROW(execute_script(s, "document-style", *placebo_wrapper()), PlaceboError);
}

TEST(Runner, AssertErrorNeverSwallowsPlacebo) {
    TestScript s = script_of("document-style", R"({"test-id":"t","steps":[
        {"op":"call","fn":"JSONObject.parse","args":[{"text":"{"}],"into":"e"},
        {"op":"assert_error","slot":"e"}]})");
    EXPECT_TRUE(run_script(s, "document-style", *wrap("strict-rfc")).passed);
    EXPECT_EQ(run_script(s, "document-style", *placebo_wrapper()).reason, FailureReason::Placebo);
}

TEST(Runner, DatumEquivalence) {
    JsonObject o;
    o.set("a", JsonValue::integer(1));
    EXPECT_TRUE(datum_equivalent(JsonText{"{\"a\":1}"}, JsonValue(o), EquivalenceMode::strict()));
    EXPECT_FALSE(datum_equivalent(CapturedError{}, CapturedError{}, EquivalenceMode::full_relaxed()));
    EXPECT_TRUE(datum_equivalent(JsonText{"[1, 2]"}, JsonText{"[1,2]"}, EquivalenceMode::whitespace_tolerant()));
    EXPECT_FALSE(datum_equivalent(JsonText{"[1, 2]"}, JsonText{"[1,2]"}, EquivalenceMode::strict()));
    EXPECT_FALSE(datum_equivalent(JsonText{"{"}, JsonText{"{"}, EquivalenceMode::key_order_tolerant()));
}

TEST(Script, Validation) {
    TestScript reads_unwritten{"t", {AssertEqualsStep{"x", JsonValue(), EquivalenceMode::strict()}}};
    EXPECT_THROW(validate_script(reads_unwritten), MalformedScript);
    TestScript empty_fn{"t", {CallStep{"", {}, std::nullopt}}};
    EXPECT_THROW(validate_script(empty_fn), MalformedScript);
    Suite dup{"s", "document-style", {TestScript{"a", {}}, TestScript{"a", {}}}};
    EXPECT_THROW(validate_suite(dup), MalformedScript);
    EXPECT_EQ(ops_used(TestScript{"t", {CallStep{"A.b", {}, std::nullopt}, ExpectRejectStep{"C.d", "x"}}}),
              (std::set<std::string>{"A.b", "C.d"}));
}

TEST(SuiteIo, MalformedInputsNameTheProblem) {
    const std::vector<std::string> bad = {
        "not json",
        R"({"suite-id":"s","bridge-id":"document-style"})",
        R"({"suite-id":"s","bridge-id":"nope","tests":[]})",
        R"({"suite-id":"s","bridge-id":"document-style","tests":[],"extra":1})",
        R"({"suite-id":"s","bridge-id":"document-style","tests":[{"test-id":"t","steps":[{"op":"dance"}]}]})",
        R"({"suite-id":"s","bridge-id":"document-style","tests":[{"test-id":"t","steps":[
            {"op":"let","into":"x","value":1},{"op":"assert_equals","actual":"x","expected":1,"mode":"LOOSE"}]}]})",
        R"({"suite-id":"s","bridge-id":"document-style","tests":[{"test-id":"t","steps":[
            {"op":"assert_type","slot":"x","type":"object"}]}]})",
    };
    for (const auto& text : bad) {
        try {
            parse_suite(text, "bad.json");
            ADD_FAILURE() << "accepted: " << text;
        } catch (const MalformedScript& e) {
            EXPECT_NE(std::string(e.what()).find("bad.json"), std::string::npos) << e.what();
        }
    }
}

TEST(SuiteIo, ClientDefaultsAuthoredAgainstToNativeEngine) {
    ClientDescriptor c = parse_client(R"({"client-id":"c","bridge-id":"databind-style","tests":[]})");
    EXPECT_EQ(c.authored_against, "strict-rfc");
    EXPECT_THROW(parse_client(R"({"client-id":"c","bridge-id":"gson","tests":[]})"), MalformedScript);
}

TEST(SuiteIo, BundledSuitesRoundTripThroughText) {
    for (const auto& s : load_suites(suites_dir())) {
        Suite again = parse_suite(suite_to_json(s));
        EXPECT_EQ(suite_to_json(again), suite_to_json(s)) << s.id;
        EXPECT_EQ(again.tests.size(), s.tests.size());
    }
}

TEST(SuiteIo, MissingFileIsAUsageError) {
    EXPECT_THROW(load_suite("/nonexistent/suite.json"), UsageError);
}

TEST(Relax, LadderOrderAndNames) {
    TestScript s = script_of("document-style", R"({"test-id":"t","steps":[
        {"op":"let","into":"x","value":1},
        {"op":"assert_equals","actual":"x","expected":1},
        {"op":"call","fn":"JSONObject.parse","args":[{"text":"{"}],"into":"e"},
        {"op":"assert_error","slot":"e","message":"m"},
        {"op":"expect_reject","fn":"JSONObject.parse","text":"[]"}]})");
    auto c = relax(s);
    std::vector<std::string> names;
    for (const auto& r : c) names.push_back(r.applied.at(0));
    EXPECT_EQ(names, (std::vector<std::string>{"WHITESPACE_TOLERANT", "KEY_ORDER_TOLERANT", "NUMERIC_TOLERANT",
                                               "FULL_RELAXED", "strip-error-payload"}));
    for (const auto& r : c) {
        ASSERT_EQ(r.script.steps.size(), s.steps.size());
        EXPECT_TRUE(std::holds_alternative<ExpectRejectStep>(r.script.steps[4]));
    }
    EXPECT_FALSE(std::get<AssertErrorStep>(c.back().script.steps[3]).message.has_value());
}

TEST(Relax, OnlyLaxerModesAndNoIdentity) {
    TestScript s = script_of("document-style", R"({"test-id":"t","steps":[
        {"op":"let","into":"x","value":1},
        {"op":"assert_equals","actual":"x","expected":1,"mode":"FULL_RELAXED"}]})");
    EXPECT_TRUE(relax(s).empty());

    TestScript k = script_of("document-style", R"({"test-id":"t","steps":[
        {"op":"let","into":"x","value":1},
        {"op":"assert_equals","actual":"x","expected":1,"mode":"KEY_ORDER_TOLERANT"}]})");
    auto c = relax(k);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0].applied.at(0), "FULL_RELAXED");
}

TEST(Curation, LabelsEachCase) {
    Suite s = suite_of("document-style", R"([
      {"test-id":"selected","steps":[
        {"op":"call","fn":"JSONObject.parse","args":[{"text":"{\"a\":1}"}],"into":"o"},
        {"op":"call","fn":"JSONObject.length","args":[{"ref":"o"}],"into":"n"},
        {"op":"assert_equals","actual":"n","expected":1}]},
      {"test-id":"capability","steps":[
        {"op":"call","fn":"JSONTokener.nextValue","args":[{"text":"1"}],"into":"v"}]},
      {"test-id":"placebo","steps":[
        {"op":"let","into":"x","value":1},
        {"op":"assert_equals","actual":"x","expected":1}]},
      {"test-id":"key-order","steps":[
        {"op":"call","fn":"JSONObject.parse","args":[{"text":"{\"b\":1,\"a\":2}"}],"into":"o"},
        {"op":"call","fn":"JSONObject.toString","args":[{"ref":"o"}],"into":"s"},
        {"op":"assert_equals","actual":"s","expected":{"text":"{\"b\":1,\"a\":2}"}}]},
      {"test-id":"nonstandard","steps":[
        {"op":"expect_reject","fn":"JSONObject.parse","text":"{\"a\":1,}"}]}
    ])");
    CuratedSuite c = curate(s);
    EXPECT_EQ(c.reference_wrapper_id, "lenient");
    ASSERT_EQ(c.tests.size(), 5u);
    EXPECT_EQ(c.tests[0].label, CurationLabel::Selected);
    EXPECT_EQ(c.tests[1].label, CurationLabel::Removed);
    EXPECT_EQ(c.tests[1].reason, RemovalReason::Capability);
    EXPECT_EQ(c.tests[1].missing_ops, (std::set<std::string>{"JSONTokener.nextValue"}));
    EXPECT_EQ(c.tests[2].label, CurationLabel::Placebo);
    EXPECT_EQ(c.tests[3].label, CurationLabel::Modified);
    EXPECT_EQ(c.tests[3].relaxations, (std::vector<std::string>{"KEY_ORDER_TOLERANT"}));
    EXPECT_EQ(c.tests[4].label, CurationLabel::Removed);
    EXPECT_EQ(c.tests[4].reason, RemovalReason::Nonstandard);
    EXPECT_EQ(c.counts(), (PartitionCounts{2, 1, 1, 1}));
    EXPECT_EQ(c.runnable_scripts().size(), 2u);

    // Against a strict reference the same suite labels differently.
    CuratedSuite strict = curate(s, "strict-rfc");
    EXPECT_EQ(strict.tests[3].label, CurationLabel::Selected);
    EXPECT_EQ(strict.tests[4].label, CurationLabel::Selected);
    EXPECT_THROW(curate(s, "PLACEBO"), UsageError);
}

TEST(CurationProperty, RunnableTestsFailOnPlaceboAndPassOnReference) {
    for (const auto& s : load_suites(suites_dir())) {
        for (const std::string& ref : {bridge(s.bridge_id).native_engine(), std::string("strict-rfc")}) {
            CuratedSuite c = curate(s, ref);
            EXPECT_EQ(c.counts().total(), s.tests.size());
            for (const auto& t : c.tests) {
                if (t.label != CurationLabel::Modified) EXPECT_EQ(suite_to_json({"", s.bridge_id, {t.script}}),
                                                                  suite_to_json({"", s.bridge_id, {t.original}}));
                if (!t.runnable()) continue;
                EXPECT_TRUE(run_script(t.script, s.bridge_id, *wrap(ref)).passed) << t.script.id;
                EXPECT_FALSE(run_script(t.script, s.bridge_id, *placebo_wrapper()).passed) << t.script.id;
            }
        }
    }
}

TEST(Curation, ParallelismDoesNotChangeLabels) {
    for (const auto& s : load_suites(suites_dir())) {
        CuratedSuite a = curate(s, 1);
        CuratedSuite b = curate(s, 8);
        ASSERT_EQ(a.tests.size(), b.tests.size());
        for (std::size_t i = 0; i < a.tests.size(); ++i) {
            EXPECT_EQ(a.tests[i].label, b.tests[i].label);
            EXPECT_EQ(a.tests[i].relaxations, b.tests[i].relaxations);
        }
    }
}

TEST(Curation, BundledSuitesPartitionAsRecorded) {
    std::map<std::string, PartitionCounts> expected = {
        {"document-style", {5, 2, 4, 25}},
        {"databind-style", {2, 1, 3, 27}},
        {"value-style", {2, 1, 3, 21}},
    };
    for (const auto& s : load_suites(suites_dir())) {
        EXPECT_EQ(curate(s).counts(), expected.at(s.bridge_id)) << s.bridge_id;
    }
}
