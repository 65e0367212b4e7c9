#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "divsub/canonical.hpp"
#include "divsub/equivalence.hpp"
#include "divsub/errors.hpp"
#include "divsub/json_value.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace divsub;

TEST(JsonValue, NullIsAVariant) {
    JsonValue v;
    EXPECT_EQ(v.type(), JsonType::Null);
    EXPECT_TRUE(std::holds_alternative<JsonNull>(v.storage()));
    EXPECT_EQ(JsonValue::null(), JsonValue(JsonNull{}));
}

TEST(JsonValue, CheckedAccessorsThrowAccessError) {
    JsonValue v("text");
    EXPECT_THROW(v.as_number(), AccessError);
    EXPECT_THROW(v.as_object(), AccessError);
    EXPECT_EQ(v.as_string(), "text");
}

TEST(JsonValue, NumberKindMattersForStrictEquality) {
    EXPECT_NE(JsonValue::integer(1), JsonValue::real(1.0));
    EXPECT_EQ(JsonValue::real(0.5), JsonValue::real(0.5));
    EXPECT_NE(JsonValue(NumberRepr::binary32(0.1f)), JsonValue::real(0.1));
}

TEST(JsonValue, NonFiniteNumbersAreRejected) {
    EXPECT_THROW(NumberRepr::binary64(std::numeric_limits<double>::quiet_NaN()), UsageError);
    EXPECT_THROW(NumberRepr::binary64(std::numeric_limits<double>::infinity()), UsageError);
}

TEST(JsonObject, SetKeepsPositionAndSetSortedOrders) {
    JsonObject o;
    o.set("b", JsonValue::real(1.0));
    o.set("a", JsonValue::real(2.0));
    o.set("b", JsonValue::real(3.0));
    EXPECT_EQ(o.keys(), (std::vector<std::string>{"b", "a"}));
    EXPECT_EQ(o.find("b")->as_number().as_double(), 3.0);

    JsonObject s;
    s.set_sorted("m", true);
    s.set_sorted("c", true);
    s.set_sorted("x", true);
    EXPECT_EQ(s.keys(), (std::vector<std::string>{"c", "m", "x"}));
    EXPECT_TRUE(s.erase("m"));
    EXPECT_FALSE(s.erase("m"));
}

TEST(Canonical, SerializesMinimalText) {
    JsonObject o;
    o.set("a", JsonValue(JsonArray{JsonValue::integer(1), JsonValue::real(2.0), JsonValue::null()}));
    o.set("b", "x");
    EXPECT_EQ(facade_serialize(JsonValue(o)), R"({"a":[1,2.0,null],"b":"x"})");
}

TEST(Canonical, StringsMatchAnIndependentSerializer) {
    // nlohmann::json uses the same minimal escape set with lowercase hex.
    std::vector<std::string> samples = {"π", "plain", "tab\there", "quote\"back\\slash", "slash/ok",
                                        std::string("nul\0x", 5), "\x01\x1f", "世界 \xF0\x9F\x98\x80", "\x7f"};
    for (const auto& s : samples) {
        EXPECT_EQ(facade_serialize(JsonValue(s)), nlohmann::json(s).dump()) << s;
    }
}

TEST(Canonical, IntegersAndNestingMatchAnIndependentSerializer) {
    testgen::Limits l;
    l.narrow_numbers = true;
    testgen::Generator gen(7, l);
    for (int i = 0; i < 200; ++i) {
        std::int64_t n = gen.uniform64(std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max());
        EXPECT_EQ(facade_serialize(JsonValue::integer(n)), nlohmann::json(n).dump());
    }
    nlohmann::ordered_json j = {{"z", {1, 2, nullptr}}, {"a", true}, {"m", {{"k", "v"}}}};
    EXPECT_EQ(facade_serialize(parse_reference(j.dump())), j.dump());
}

TEST(Canonical, ShortestDecimalIsShortestAndExact) {
    testgen::Generator gen(11, {});
    std::vector<double> values = {0.1, 1.0 / 3, 1e21, 1e-7, 5e-324, 1.7976931348623157e308, 123456.789, 2.5};
    for (int i = 0; i < 500; ++i) values.push_back(gen.number().as_number().as_double());
    for (double v : values) {
        std::string s = shortest_decimal(v);
        EXPECT_EQ(std::strtod(s.c_str(), nullptr), v) << s;
        EXPECT_LE(s.size(), oracle::scientific_min(v).size()) << s;
        if (s.find('e') != std::string::npos) EXPECT_EQ(oracle::significant_digits(s), oracle::min_roundtrip_digits(v)) << s;
    }
}

TEST(Canonical, ShortestDecimalFloat) {
    for (float f : {0.1f, 1512901875251.0f, 3.4028235e38f, 1e-45f, 0.333333343f}) {
        std::string s = shortest_decimal(f);
        EXPECT_EQ(std::strtof(s.c_str(), nullptr), f) << s;
        EXPECT_LE(s.size(), oracle::scientific_min(f).size()) << s;
        if (s.find('e') != std::string::npos) EXPECT_EQ(oracle::significant_digits(s), oracle::min_roundtrip_digits(f)) << s;
    }
    EXPECT_EQ(shortest_decimal(0.1f), "0.1");
    // Ties between fixed and scientific length go to fixed, which prints
    // the integral value exactly.
    EXPECT_EQ(shortest_decimal(1512901875251.0f), "1512901836800");
    EXPECT_EQ(shortest_decimal(1e21), "1e+21");
}

TEST(Canonical, ReferenceReaderTypesNumbers) {
    EXPECT_EQ(parse_reference("9223372036854775807"), JsonValue::integer(9223372036854775807LL));
    EXPECT_EQ(parse_reference("9223372036854775808").as_number().kind(), NumberRepr::Kind::Binary64);
    EXPECT_EQ(parse_reference("1.0"), JsonValue::real(1.0));
    EXPECT_EQ(parse_reference("-0"), JsonValue::integer(0));
}

TEST(Canonical, ReferenceReaderRejectsWithPosition) {
    try {
        parse_reference(R"({"name":)");
        FAIL() << "accepted";
    } catch (const ParseError& e) {
        ASSERT_TRUE(e.position());
        EXPECT_EQ(*e.position(), 8u);
    }
    for (std::string bad : {"", "[1,]", "{'a':1}", "[01]", "[1] x", "[\"a\tb\"]", "[1e400]", "\"\xff\""}) {
        EXPECT_FALSE(is_reference_wellformed(bad)) << bad;
    }
    EXPECT_EQ(parse_reference(R"("\ud800")").as_string(), "\xEF\xBF\xBD");
}

TEST(Canonical, ReferenceReaderDepthLimit) {
    std::string ok(512, '['), deep(513, '[');
    ok += std::string(512, ']');
    deep += std::string(513, ']');
    EXPECT_TRUE(is_reference_wellformed(ok));
    EXPECT_FALSE(is_reference_wellformed(deep));
}

TEST(Equivalence, ModesOnTexts) {
    auto strict = EquivalenceMode::strict();
    auto ws = EquivalenceMode::whitespace_tolerant();
    auto ko = EquivalenceMode::key_order_tolerant();
    auto num = EquivalenceMode::numeric_tolerant();
    auto full = EquivalenceMode::full_relaxed();

    EXPECT_FALSE(json_equivalent(std::string_view(R"({"a": 1})"), R"({"a":1})", strict));
    EXPECT_TRUE(json_equivalent(std::string_view(R"({"a": 1})"), R"({"a":1})", ws));
    EXPECT_FALSE(json_equivalent(std::string_view(R"({"a":1,"b":2})"), R"({"b":2,"a":1})", ws));
    EXPECT_TRUE(json_equivalent(std::string_view(R"({"a":1,"b":2})"), R"({"b":2,"a":1})", ko));
    EXPECT_FALSE(json_equivalent(std::string_view("[1]"), "[1.0]", ko));
    EXPECT_TRUE(json_equivalent(std::string_view("[1]"), "[1.0]", num));
    EXPECT_FALSE(json_equivalent(std::string_view(R"({"a":1,"b":2})"), R"({"b":2.0,"a":1})", num));
    EXPECT_TRUE(json_equivalent(std::string_view(R"({"a":1,"b":2})"), R"({"b":2.0,"a":1})", full));
    EXPECT_THROW(json_equivalent(std::string_view("[1,]"), "[1]", full), ParseError);
}

TEST(Equivalence, EpsilonIsRelative) {
    auto m = EquivalenceMode::numeric_tolerant(1e-6);
    EXPECT_TRUE(numbers_close(NumberRepr::binary64(1e9), NumberRepr::binary64(1e9 + 999), 1e-6));
    EXPECT_FALSE(numbers_close(NumberRepr::binary64(1e9), NumberRepr::binary64(1e9 + 1001), 1e-6));
    EXPECT_TRUE(json_equivalent(JsonValue::integer(1512901875251), JsonValue::real(1512901836800.0), m));
    EXPECT_FALSE(json_equivalent(JsonValue::integer(1512901875251), JsonValue::real(1512901836800.0),
                                 EquivalenceMode::numeric_tolerant()));
    EXPECT_THROW(EquivalenceMode::numeric_tolerant(0), UsageError);
    EXPECT_THROW(EquivalenceMode::numeric_tolerant(-1), UsageError);
}

TEST(Equivalence, ImpliesLattice) {
    std::vector<EquivalenceMode> modes = {EquivalenceMode::strict(), EquivalenceMode::whitespace_tolerant(),
                                          EquivalenceMode::key_order_tolerant(), EquivalenceMode::numeric_tolerant(),
                                          EquivalenceMode::full_relaxed()};
    for (const auto& m : modes) {
        EXPECT_TRUE(m.implies(m));
        EXPECT_TRUE(m.implies(EquivalenceMode::full_relaxed()));
        EXPECT_TRUE(EquivalenceMode::strict().implies(m));
    }
    EXPECT_FALSE(EquivalenceMode::key_order_tolerant().implies(EquivalenceMode::numeric_tolerant()));
    EXPECT_FALSE(EquivalenceMode::numeric_tolerant().implies(EquivalenceMode::key_order_tolerant()));
    EXPECT_FALSE(EquivalenceMode::full_relaxed().implies(EquivalenceMode::strict()));
    EXPECT_TRUE(EquivalenceMode::numeric_tolerant(1e-9).implies(EquivalenceMode::numeric_tolerant(1e-6)));
    EXPECT_FALSE(EquivalenceMode::numeric_tolerant(1e-6).implies(EquivalenceMode::numeric_tolerant(1e-9)));
}

namespace {

// Same data with members reversed and integers widened at random.
JsonValue perturb(testgen::Generator& gen, const JsonValue& v) {
    switch (v.type()) {
        case JsonType::Number:
            if (v.as_number().kind() == NumberRepr::Kind::ExactInt && gen.uniform(0, 1)) {
                return JsonValue::real(static_cast<double>(v.as_number().as_int()));
            }
            return v;
        case JsonType::Array: {
            JsonArray a;
            for (const auto& x : v.as_array().items()) a.push_back(perturb(gen, x));
            return JsonValue(std::move(a));
        }
        case JsonType::Object: {
            auto members = v.as_object().members();
            if (gen.uniform(0, 1)) std::reverse(members.begin(), members.end());
            JsonObject o;
            for (auto& m : members) o.set(m.name, perturb(gen, m.value));
            return JsonValue(std::move(o));
        }
        default: return v;
    }
}

}  // namespace

// If a implies b, every pair equivalent under a is equivalent under b.
TEST(EquivalenceProperty, ImpliesIsSound) {
    std::vector<EquivalenceMode> modes = {EquivalenceMode::strict(), EquivalenceMode::whitespace_tolerant(),
                                          EquivalenceMode::key_order_tolerant(), EquivalenceMode::numeric_tolerant(),
                                          EquivalenceMode::full_relaxed()};
    testgen::Limits l;
    l.max_depth = 3;
    testgen::Generator gen(2024, l);
    int checked = 0;
    for (int i = 0; i < 400; ++i) {
        JsonValue a = gen.value();
        JsonValue b = i % 4 == 0 ? gen.value() : i % 4 == 1 ? a : perturb(gen, a);
        for (const auto& m1 : modes) {
            if (!json_equivalent(a, b, m1)) continue;
            for (const auto& m2 : modes) {
                if (!m1.implies(m2)) continue;
                EXPECT_TRUE(json_equivalent(a, b, m2)) << to_string(m1) << " -> " << to_string(m2);
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 0);
}

TEST(EquivalenceProperty, FullRelaxedContainsEveryRelaxation) {
    testgen::Generator gen(99, {});
    for (int i = 0; i < 300; ++i) {
        JsonValue a = gen.value();
        JsonValue b = i % 2 ? a : gen.value();
        for (auto m : {EquivalenceMode::whitespace_tolerant(), EquivalenceMode::key_order_tolerant(),
                       EquivalenceMode::numeric_tolerant()}) {
            if (json_equivalent(a, b, m)) EXPECT_TRUE(json_equivalent(a, b, EquivalenceMode::full_relaxed()));
        }
    }
}

TEST(EquivalenceProperty, CanonicalTextRoundTrips) {
    testgen::Generator gen(5, {});
    for (int i = 0; i < 500; ++i) {
        JsonValue v = gen.value();
        std::string text = facade_serialize(v);
        EXPECT_EQ(parse_reference(text), v) << text;
    }
}
