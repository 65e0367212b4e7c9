#include "divsub/suite_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "divsub/bridges.hpp"
#include "divsub/canonical.hpp"
#include "divsub/errors.hpp"
#include "divsub/reservoir.hpp"

namespace divsub {
namespace {

using Json = nlohmann::ordered_json;

class Reader {
public:
    explicit Reader(std::string_view source) : source_(source) {}

    [[noreturn]] void fail(const std::string& where, const std::string& what) const {
        throw MalformedScript(source_ + ": " + where + ": " + what);
    }

    Json document(std::string_view text) const {
        try {
            return Json::parse(text.begin(), text.end());
        } catch (const nlohmann::json::parse_error& e) {
            fail("document", e.what());
        }
    }

    void only_keys(const Json& obj, const std::string& where, std::initializer_list<std::string_view> allowed) const {
        for (const auto& [k, v] : obj.items()) {
            if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) fail(where, "unknown field \"" + k + "\"");
        }
    }

    const Json& field(const Json& obj, const std::string& where, const char* name) const {
        auto it = obj.find(name);
        if (it == obj.end()) fail(where, std::string("missing field \"") + name + "\"");
        return *it;
    }

    std::string text(const Json& obj, const std::string& where, const char* name) const {
        const Json& v = field(obj, where, name);
        if (!v.is_string()) fail(where, std::string("\"") + name + "\" must be a string");
        if (v.get_ref<const std::string&>().empty()) fail(where, std::string("\"") + name + "\" must not be empty");
        return v.get<std::string>();
    }

    std::optional<std::string> optional_text(const Json& obj, const std::string& where, const char* name) const {
        if (!obj.contains(name)) return std::nullopt;
        return text(obj, where, name);
    }

    JsonValue literal(const Json& v, const std::string& where) const {
        switch (v.type()) {
            case Json::value_t::null: return JsonValue::null();
            case Json::value_t::boolean: return JsonValue(v.get<bool>());
            case Json::value_t::number_integer: return JsonValue::integer(v.get<std::int64_t>());
            case Json::value_t::number_unsigned: {
                auto u = v.get<std::uint64_t>();
                if (u > static_cast<std::uint64_t>(INT64_MAX)) fail(where, "integer literal out of range");
                return JsonValue::integer(static_cast<std::int64_t>(u));
            }
            case Json::value_t::number_float: return JsonValue::real(v.get<double>());
            case Json::value_t::string: return JsonValue(v.get<std::string>());
            default: fail(where, "arrays and objects must be written as {\"json\": \"...\"}");
        }
    }

    Arg arg(const Json& v, const std::string& where) const {
        if (!v.is_object()) return literal(v, where);
        if (v.size() != 1) fail(where, "argument object must have exactly one of ref, text, json");
        if (v.contains("ref")) return SlotRef{text(v, where, "ref")};
        if (v.contains("text")) {
            if (!v["text"].is_string()) fail(where, "\"text\" must be a string");
            return JsonText{v["text"].get<std::string>()};
        }
        if (v.contains("json")) {
            if (!v["json"].is_string()) fail(where, "\"json\" must be a string");
            try {
                return parse_reference(v["json"].get<std::string>());
            } catch (const ParseError& e) {
                fail(where, std::string("\"json\" is not well-formed: ") + e.what());
            }
        }
        fail(where, "argument object must have exactly one of ref, text, json");
    }

    EquivalenceMode mode(const Json& v, const std::string& where) const {
        std::string name;
        double eps = kDefaultEpsilon;
        if (v.is_string()) {
            name = v.get<std::string>();
        } else if (v.is_object()) {
            only_keys(v, where, {"mode", "epsilon"});
            name = text(v, where, "mode");
            if (v.contains("epsilon")) {
                if (!v["epsilon"].is_number()) fail(where, "\"epsilon\" must be a number");
                eps = v["epsilon"].get<double>();
                if (!(eps > 0)) fail(where, "\"epsilon\" must be positive");
            }
        } else {
            fail(where, "\"mode\" must be a string or an object");
        }
        auto m = equivalence_mode_from_string(name, eps);
        if (!m) fail(where, "unknown equivalence mode \"" + name + "\"");
        return *m;
    }

    Step step(const Json& s, const std::string& where) const {
        if (!s.is_object()) fail(where, "step must be an object");
        std::string op = text(s, where, "op");
        if (op == "let") {
            only_keys(s, where, {"op", "into", "value"});
            return LetStep{text(s, where, "into"), arg(field(s, where, "value"), where)};
        }
        if (op == "call") {
            only_keys(s, where, {"op", "fn", "args", "into"});
            CallStep c{text(s, where, "fn"), {}, optional_text(s, where, "into")};
            if (s.contains("args")) {
                if (!s["args"].is_array()) fail(where, "\"args\" must be an array");
                for (const auto& a : s["args"]) c.args.push_back(arg(a, where));
            }
            return c;
        }
        if (op == "assert_equals") {
            only_keys(s, where, {"op", "actual", "expected", "mode"});
            AssertEqualsStep a{text(s, where, "actual"), arg(field(s, where, "expected"), where)};
            if (s.contains("mode")) a.mode = mode(s["mode"], where);
            return a;
        }
        if (op == "assert_error") {
            only_keys(s, where, {"op", "slot", "error", "position", "message"});
            AssertErrorStep a;
            a.slot = text(s, where, "slot");
            if (auto kind = optional_text(s, where, "error")) {
                if (*kind == "parse") a.kind = ErrorKind::Parse;
                else if (*kind == "access") a.kind = ErrorKind::Access;
                else fail(where, "\"error\" must be \"parse\" or \"access\"");
            }
            if (s.contains("position")) {
                if (!s["position"].is_number_unsigned()) fail(where, "\"position\" must be a non-negative integer");
                a.position = s["position"].get<std::size_t>();
            }
            if (s.contains("message")) {
                if (!s["message"].is_string()) fail(where, "\"message\" must be a string");
                a.message = s["message"].get<std::string>();
            }
            return a;
        }
        if (op == "assert_type") {
            only_keys(s, where, {"op", "slot", "type"});
            AssertTypeStep a{text(s, where, "slot")};
            auto t = json_type_from_string(text(s, where, "type"));
            if (!t) fail(where, "unknown type \"" + s["type"].get<std::string>() + "\"");
            a.type = *t;
            return a;
        }
        if (op == "expect_reject") {
            only_keys(s, where, {"op", "fn", "text"});
            if (!field(s, where, "text").is_string()) fail(where, "\"text\" must be a string");
            return ExpectRejectStep{text(s, where, "fn"), s["text"].get<std::string>()};
        }
        fail(where, "unknown op \"" + op + "\"");
    }

    std::vector<TestScript> tests(const Json& doc) const {
        const Json& arr = field(doc, "document", "tests");
        if (!arr.is_array()) fail("document", "\"tests\" must be an array");
        std::vector<TestScript> out;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string where = "tests[" + std::to_string(i) + "]";
            const Json& t = arr[i];
            if (!t.is_object()) fail(where, "test must be an object");
            only_keys(t, where, {"test-id", "steps", "note"});
            TestScript script{text(t, where, "test-id"), {}};
            where += " (" + script.id + ")";
            const Json& steps = field(t, where, "steps");
            if (!steps.is_array()) fail(where, "\"steps\" must be an array");
            for (std::size_t k = 0; k < steps.size(); ++k) {
                script.steps.push_back(step(steps[k], where + " steps[" + std::to_string(k) + "]"));
            }
            out.push_back(std::move(script));
        }
        return out;
    }

private:
    std::string source_;
};

Json arg_json(const Arg& a) {
    if (const auto* r = std::get_if<SlotRef>(&a)) return Json{{"ref", r->name}};
    if (const auto* t = std::get_if<JsonText>(&a)) return Json{{"text", t->text}};
    const JsonValue& v = std::get<JsonValue>(a);
    switch (v.type()) {
        case JsonType::Null: return nullptr;
        case JsonType::Boolean: return v.as_bool();
        case JsonType::String: return v.as_string();
        case JsonType::Number:
            if (v.as_number().kind() == NumberRepr::Kind::ExactInt) return v.as_number().as_int();
            if (v.as_number().kind() == NumberRepr::Kind::Binary64) return v.as_number().as_double();
            break;
        default: break;
    }
    return Json{{"json", facade_serialize(v)}};
}

Json mode_json(const EquivalenceMode& m) {
    if (m.tolerates_numbers() && m.epsilon() != kDefaultEpsilon) return Json{{"mode", to_string(m)}, {"epsilon", m.epsilon()}};
    return to_string(m);
}

Json step_json(const Step& step) {
    Json s;
    s["op"] = std::string(step_name(step));
    std::visit(
        [&](const auto& st) {
            using T = std::decay_t<decltype(st)>;
            if constexpr (std::is_same_v<T, LetStep>) {
                s["into"] = st.into;
                s["value"] = arg_json(st.value);
            } else if constexpr (std::is_same_v<T, CallStep>) {
                s["fn"] = st.fn;
                Json args = Json::array();
                for (const auto& a : st.args) args.push_back(arg_json(a));
                s["args"] = args;
                if (st.into) s["into"] = *st.into;
            } else if constexpr (std::is_same_v<T, AssertEqualsStep>) {
                s["actual"] = st.actual;
                s["expected"] = arg_json(st.expected);
                s["mode"] = mode_json(st.mode);
            } else if constexpr (std::is_same_v<T, AssertErrorStep>) {
                s["slot"] = st.slot;
                if (st.kind) s["error"] = *st.kind == ErrorKind::Parse ? "parse" : "access";
                if (st.position) s["position"] = *st.position;
                if (st.message) s["message"] = *st.message;
            } else if constexpr (std::is_same_v<T, AssertTypeStep>) {
                s["slot"] = st.slot;
                s["type"] = std::string(to_string(st.type));
            } else {
                s["fn"] = st.fn;
                s["text"] = st.text;
            }
        },
        step);
    return s;
}

Json tests_json(const std::vector<TestScript>& tests) {
    Json arr = Json::array();
    for (const auto& t : tests) {
        Json steps = Json::array();
        for (const auto& st : t.steps) steps.push_back(step_json(st));
        arr.push_back(Json{{"test-id", t.id}, {"steps", steps}});
    }
    return arr;
}

template <typename T, typename Load>
std::vector<T> load_dir(const std::filesystem::path& dir, Load load) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    std::error_code ec;
    if (fs::is_regular_file(dir, ec)) {
        files.push_back(dir);
    } else {
        if (!fs::is_directory(dir, ec)) throw UsageError("not a file or directory: " + dir.string());
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
    }
    std::vector<T> out;
    for (const auto& f : files) out.push_back(load(f));
    return out;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

const BridgeSurface* find_bridge(const std::string& id) {
    for (const auto& b : all_bridges()) {
        if (b.id() == id) return &b;
    }
    return nullptr;
}

void validate_from(const Reader& r, const Suite& s) {
    if (find_bridge(s.bridge_id) == nullptr) r.fail("document", "unknown bridge \"" + s.bridge_id + "\"");
    try {
        validate_suite(s);
    } catch (const MalformedScript& e) {
        std::string what = e.what();
        const std::string prefix = "malformed script: ";
        if (what.rfind(prefix, 0) == 0) what.erase(0, prefix.size());
        r.fail("tests", what);
    }
}

}  // namespace

Suite parse_suite(std::string_view json_text, std::string_view source) {
    Reader r(source);
    Json doc = r.document(json_text);
    if (!doc.is_object()) r.fail("document", "top level must be an object");
    r.only_keys(doc, "document", {"suite-id", "bridge-id", "tests", "note"});
    Suite s{r.text(doc, "document", "suite-id"), r.text(doc, "document", "bridge-id"), r.tests(doc)};
    validate_from(r, s);
    return s;
}

ClientDescriptor parse_client(std::string_view json_text, std::string_view source) {
    Reader r(source);
    Json doc = r.document(json_text);
    if (!doc.is_object()) r.fail("document", "top level must be an object");
    r.only_keys(doc, "document", {"client-id", "bridge-id", "authored-against", "tests", "note"});
    ClientDescriptor c{r.text(doc, "document", "client-id"), r.text(doc, "document", "bridge-id"),
                       r.optional_text(doc, "document", "authored-against").value_or(""), r.tests(doc)};
    validate_from(r, Suite{c.id, c.bridge_id, c.tests});
    if (c.authored_against.empty()) {
        c.authored_against = find_bridge(c.bridge_id)->native_engine();
    } else if (!Reservoir::bundled().contains(c.authored_against)) {
        r.fail("document", "unknown engine \"" + c.authored_against + "\"");
    }
    return c;
}

Suite load_suite(const std::filesystem::path& path) { return parse_suite(read_file(path), path.string()); }

ClientDescriptor load_client(const std::filesystem::path& path) { return parse_client(read_file(path), path.string()); }

std::vector<Suite> load_suites(const std::filesystem::path& dir) { return load_dir<Suite>(dir, load_suite); }

std::vector<ClientDescriptor> load_clients(const std::filesystem::path& dir) {
    return load_dir<ClientDescriptor>(dir, load_client);
}

std::string suite_to_json(const Suite& suite) {
    Json doc{{"suite-id", suite.id}, {"bridge-id", suite.bridge_id}, {"tests", tests_json(suite.tests)}};
    return doc.dump(2) + "\n";
}

std::string scripts_to_json(const std::vector<TestScript>& tests) { return tests_json(tests).dump(2) + "\n"; }

}  // namespace divsub
