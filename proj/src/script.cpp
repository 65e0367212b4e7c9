#include "divsub/script.hpp"


namespace divsub {

std::string describe(const Datum& d) {
    if (const auto* v = std::get_if<JsonValue>(&d)) return describe(*v);
    if (const auto* t = std::get_if<JsonText>(&d)) return "text " + t->text;
    const auto& e = std::get<CapturedError>(d);
    std::string out = e.kind == ErrorKind::Parse ? "parse error" : e.kind == ErrorKind::Access ? "access error" : "error";
    if (e.position) out += " at " + std::to_string(*e.position);
    return out + ": " + e.message;
}

std::string_view step_name(const Step& s) {
    static constexpr std::string_view names[] = {"let",          "call",        "assert_equals",
                                                 "assert_error", "assert_type", "expect_reject"};
    return names[s.index()];
}

std::set<std::string> ops_used(const TestScript& script) {
    std::set<std::string> out;
    for (const auto& step : script.steps) {
        if (const auto* c = std::get_if<CallStep>(&step)) out.insert(c->fn);
        else if (const auto* r = std::get_if<ExpectRejectStep>(&step)) out.insert(r->fn);
    }
    return out;
}

std::set<std::string> ops_used(const std::vector<TestScript>& scripts) {
    std::set<std::string> out;
    for (const auto& s : scripts) out.merge(ops_used(s));
    return out;
}

namespace {

struct SlotChecker {
    const TestScript& script;
    std::size_t index = 0;
    std::set<std::string> written;

    [[noreturn]] void fail(const std::string& what) const {
        throw MalformedScript(script.id + " step " + std::to_string(index) + ": " + what);
    }

    void read(const std::string& slot) const {
        if (slot.empty()) fail("empty slot name");
        if (!written.count(slot)) fail("slot '" + slot + "' is read before it is written");
    }

    void read(const Arg& a) const {
        if (const auto* r = std::get_if<SlotRef>(&a)) read(r->name);
    }

    void write(const std::string& slot) {
        if (slot.empty()) fail("empty slot name");
        written.insert(slot);
    }

    void operator()(const LetStep& s) {
        read(s.value);
        write(s.into);
    }
    void operator()(const CallStep& s) {
        if (s.fn.empty()) fail("call without a function name");
        for (const auto& a : s.args) read(a);
        if (s.into) write(*s.into);
    }
    void operator()(const AssertEqualsStep& s) const {
        read(s.actual);
        read(s.expected);
    }
    void operator()(const AssertErrorStep& s) const {
        read(s.slot);
        if (s.kind == ErrorKind::Usage) fail("assert_error cannot expect a usage error");
    }
    void operator()(const AssertTypeStep& s) const { read(s.slot); }
    void operator()(const ExpectRejectStep& s) const {
        if (s.fn.empty()) fail("expect_reject without a function name");
    }
};

}  // namespace

void validate_script(const TestScript& script) {
    if (script.id.empty()) throw MalformedScript("test without an id");
    SlotChecker checker{script, 0, {}};
    for (const auto& step : script.steps) {
        std::visit(checker, step);
        ++checker.index;
    }
}

void validate_suite(const Suite& suite) {
    std::set<std::string> ids;
    for (const auto& t : suite.tests) {
        validate_script(t);
        if (!ids.insert(t.id).second) throw MalformedScript("duplicate test id " + t.id);
    }
}

}  // namespace divsub
