#include <gtest/gtest.h>

#include <map>

#include "divsub/canonical.hpp"
#include "divsub/corpus.hpp"
#include "divsub/equivalence.hpp"
#include "divsub/errors.hpp"
#include "divsub/reservoir.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace divsub;

namespace {

const Reservoir& R() { return Reservoir::bundled(); }

bool accepts(std::string_view engine, std::string_view text) { return engine_parse(engine, text).accepted(); }

std::vector<std::string> accepting(std::string_view text) {
    std::vector<std::string> out;
    for (const auto& id : R().ids()) {
        if (accepts(id, text)) out.push_back(id);
    }
    return out;
}

using V = std::vector<std::string>;

}  // namespace

TEST(Reservoir, BundledEnginesInOrder) {
    EXPECT_EQ(R().ids(), (V{"strict-rfc", "lenient", "ecma5ish", "no-unicode", "float-first", "reference"}));
    EXPECT_THROW(R().engine("gson"), UnknownEngine);
    for (const auto& id : R().ids()) EXPECT_NO_THROW(R().engine(id).profile().validate());
}

TEST(Reservoir, ProfilesDiffer) {
    std::set<std::string> signatures;
    for (const auto& id : R().ids()) {
        const auto& p = R().engine(id).profile();
        std::string sig;
        for (bool b : {p.accepts_trailing_commas, p.accepts_single_quotes, p.accepts_unquoted_keys,
                       p.rejects_digit_leading_keys, p.supports_unicode_escapes, p.reports_error_position}) {
            sig += b ? '1' : '0';
        }
        for (auto k : p.number_detection_order) sig += std::string(to_string(k));
        signatures.insert(sig + id);
    }
    EXPECT_EQ(signatures.size(), R().size());
    EXPECT_TRUE(R().engine("float-first").profile().precision_limited());
    EXPECT_FALSE(R().engine("strict-rfc").profile().precision_limited());
}

TEST(Reservoir, ProfileValidation) {
    EngineProfile p;
    p.engine_id = "x";
    p.number_detection_order = {};
    EXPECT_THROW(p.validate(), UsageError);
    p.number_detection_order = {NumberKind::Int64, NumberKind::Int64};
    EXPECT_THROW(p.validate(), UsageError);
}

TEST(Engines, ProfileFlagsAreObservable) {
    EXPECT_EQ(accepting(R"({"a":1,})"), (V{"lenient"}));
    EXPECT_EQ(accepting("[1,2,]"), (V{"lenient"}));
    EXPECT_EQ(accepting("{'a':1}"), (V{"lenient", "ecma5ish"}));
    EXPECT_EQ(accepting("{a:1}"), (V{"lenient", "ecma5ish"}));
    EXPECT_EQ(accepting(R"({"1abc":true})"), (V{"strict-rfc", "lenient", "no-unicode", "float-first", "reference"}));
    EXPECT_EQ(accepting(R"(["\u00e9"])"), (V{"strict-rfc", "lenient", "ecma5ish", "float-first", "reference"}));
    EXPECT_EQ(accepting(R"(["é"])").size(), R().size());
    EXPECT_EQ(accepting("[1] x"), (V{"float-first"}));
    EXPECT_TRUE(accepting("[1e400]").empty());
}

TEST(Engines, RejectionPositionOnlyWhenReported) {
    std::map<std::string, std::optional<std::size_t>> expected = {
        {"strict-rfc", 8}, {"lenient", std::nullopt}, {"ecma5ish", 9},
        {"no-unicode", std::nullopt}, {"float-first", std::nullopt}, {"reference", 8}};
    for (const auto& id : R().ids()) {
        EngineOutcome o = engine_parse(id, R"({"name":)");
        ASSERT_FALSE(o.accepted()) << id;
        EXPECT_EQ(o.rejection().position, expected[id]) << id;
        EXPECT_EQ(o.rejection().position.has_value(), R().engine(id).profile().reports_error_position) << id;
    }
}

TEST(Engines, DigitLeadingKeyRejectedAtKey) {
    EngineOutcome o = engine_parse("ecma5ish", R"({"1abc":true})");
    ASSERT_FALSE(o.accepted());
    EXPECT_EQ(o.rejection().position, 2u);
}

TEST(Engines, LoneSurrogateHandling) {
    for (const auto& id : R().ids()) {
        EngineOutcome o = engine_parse(id, R"("\ud800")");
        if (o.accepted()) EXPECT_EQ(o.value().as_string(), "\xEF\xBF\xBD") << id;
    }
    EXPECT_EQ(accepting(R"("\ud800")"), (V{"lenient", "ecma5ish", "reference"}));
}

TEST(Engines, NumberTyping) {
    EXPECT_EQ(engine_parse("strict-rfc", "[3]").value().as_array().at(0), JsonValue::integer(3));
    EXPECT_EQ(engine_parse("lenient", "[3]").value().as_array().at(0), JsonValue::real(3.0));
    EXPECT_EQ(engine_parse("float-first", "[3]").value().as_array().at(0), JsonValue::integer(3));
    EXPECT_EQ(engine_parse("float-first", "[0.5]").value().as_array().at(0).as_number().kind(),
              NumberRepr::Kind::Binary32);
    EXPECT_EQ(engine_parse("strict-rfc", "[0.5]").value().as_array().at(0), JsonValue::real(0.5));
}

TEST(Engines, FloatFirstRoundsToNearestBinary32) {
    const auto& p = R().engine("float-first").profile();
    NumberRepr n = detect_number(p, "1512901875251");
    EXPECT_EQ(n.kind(), NumberRepr::Kind::Binary32);
    EXPECT_EQ(n.as_double(), 1512901836800.0);
    EXPECT_EQ(oracle::round_to_binary32(1512901875251ULL), 1512901836800ULL);

    testgen::Generator gen(3, {});
    for (int i = 0; i < 2000; ++i) {
        auto v = static_cast<std::uint64_t>(gen.uniform64(2147483648LL, 1LL << 62));
        NumberRepr d = detect_number(p, std::to_string(v));
        EXPECT_EQ(static_cast<std::uint64_t>(d.as_double()), oracle::round_to_binary32(v)) << v;
    }
}

TEST(Engines, DetectNumberFollowsOrder) {
    EngineProfile p;
    p.engine_id = "t";
    p.number_detection_order = {NumberKind::Int32Range, NumberKind::Float64};
    EXPECT_EQ(detect_number(p, "2147483647").kind(), NumberRepr::Kind::ExactInt);
    EXPECT_EQ(detect_number(p, "2147483648").kind(), NumberRepr::Kind::Binary64);
    p.number_detection_order = {NumberKind::Int64};
    EXPECT_THROW(detect_number(p, "1.5"), OutOfRange);
    EXPECT_THROW(detect_number(p, "9223372036854775808"), OutOfRange);
    EXPECT_THROW(detect_number(p, "01"), UsageError);
    p.number_detection_order = {NumberKind::Float64};
    EXPECT_THROW(detect_number(p, "1e400"), OutOfRange);
    EXPECT_EQ(detect_number(p, "1e-400").as_double(), 0.0);
}

TEST(Engines, Admits) {
    const auto& ff = R().engine("float-first").profile();
    const auto& nu = R().engine("no-unicode").profile();
    const auto& ec = R().engine("ecma5ish").profile();
    EXPECT_FALSE(admits(ff, "[1512901875251]"));
    EXPECT_TRUE(admits(ff, "[0.5, 42]"));
    EXPECT_FALSE(admits(ff, "[0.1]"));
    EXPECT_FALSE(admits(nu, R"(["\u0041"])"));
    EXPECT_TRUE(admits(nu, R"(["A\n"])"));
    EXPECT_FALSE(admits(ec, R"({"9":1})"));
    EXPECT_TRUE(admits(ec, R"({"k9":"9"})"));
    EXPECT_EQ(number_literals(R"({"a":[1,-2.5e3],"b":"7"})"), (V{"1", "-2.5e3"}));
}

TEST(Engines, SerializerDialects) {
    JsonObject o;
    o.set("b", JsonValue::integer(1));
    o.set("a", "é/");
    JsonValue v(o);
    EXPECT_EQ(engine_serialize("strict-rfc", v), R"({"b":1,"a":"é/"})");
    EXPECT_EQ(engine_serialize("lenient", v), R"({"a":"é/","b":1})");
    EXPECT_EQ(engine_serialize("ecma5ish", v), R"({"b": 1, "a": "\u00e9/"})");
    EXPECT_EQ(engine_serialize("no-unicode", v), R"({"b":1,"a":"é\/"})");
    EXPECT_EQ(engine_serialize("reference", v), facade_serialize(v));
}

TEST(Engines, ParseNeverThrowsOnGarbage) {
    static const char kAlphabet[] = "{}[]\",:'0123456789.eE+-tfnul \\\t\x01\xff";
    testgen::Generator gen(17, {});
    for (int i = 0; i < 300; ++i) {
        std::string s;
        int n = gen.uniform(0, 24);
        for (int k = 0; k < n; ++k) s += kAlphabet[gen.uniform(0, sizeof kAlphabet - 2)];
        for (const auto& id : R().ids()) EXPECT_NO_THROW(engine_parse(id, s)) << id << ": " << s;
    }
}

// parse(serialize(v)) equals v under FULL_RELAXED for values inside each
// engine's limits.
TEST(EnginesProperty, RoundTrip) {
    for (const auto& id : R().ids()) {
        const Engine& e = R().engine(id);
        testgen::Generator gen(0x5eed + id.size(), testgen::limits_for(e.profile()));
        for (int i = 0; i < 250; ++i) {
            JsonValue v = gen.value();
            std::string text = e.serialize(v);
            EngineOutcome o = e.parse(text);
            ASSERT_TRUE(o.accepted()) << id << ": " << text;
            EXPECT_TRUE(json_equivalent(v, o.value(), EquivalenceMode::full_relaxed())) << id << ": " << text;
        }
    }
}

TEST(EnginesProperty, ReferenceAcceptanceImpliesWellformed) {
    testgen::Generator gen(41, {});
    for (int i = 0; i < 300; ++i) {
        std::string text = facade_serialize(gen.value());
        EXPECT_TRUE(accepts("reference", text));
        EXPECT_TRUE(accepts("strict-rfc", text)) << text;
    }
}

TEST(Corpus, BundledCorpusAgreesAndDiverges) {
    auto entries = load_corpus(std::string(DIVSUB_SOURCE_DIR) + "/corpus");
    CorpusReport r = survey_corpus(entries);
    EXPECT_GE(r.divergent_illformed(), 10u);
    EXPECT_EQ(r.wellformed_disagreements(), 0u);
    for (const auto& e : entries) {
        EXPECT_EQ(is_reference_wellformed(e.bytes), e.wellformed) << e.id;
    }
}

TEST(Corpus, MissingDirectoryIsAnError) {
    EXPECT_THROW(load_corpus("/nonexistent/corpus"), UsageError);
}
