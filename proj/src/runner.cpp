#include "divsub/runner.hpp"

#include <map>

#include "divsub/bridges.hpp"
#include "divsub/errors.hpp"

namespace divsub {

std::string_view to_string(FailureReason r) {
    switch (r) {
        case FailureReason::Assertion: return "assertion";
        case FailureReason::UncaughtError: return "uncaught-error";
        case FailureReason::Unsupported: return "unsupported";
        case FailureReason::Placebo: return "placebo";
    }
    return "?";
}

bool datum_equivalent(const Datum& actual, const Datum& expected, const EquivalenceMode& mode) {
    try {
        return std::visit(
            [&](const auto& a, const auto& b) -> bool {
                using A = std::decay_t<decltype(a)>;
                using B = std::decay_t<decltype(b)>;
                if constexpr (std::is_same_v<A, CapturedError> || std::is_same_v<B, CapturedError>) {
                    return false;
                } else {
                    return json_equivalent(a, b, mode);
                }
            },
            actual, expected);
    } catch (const ParseError&) {
        return false;
    }
}

namespace {

class Execution {
public:
    Execution(const TestScript& script, std::string_view bridge_id, const Wrapper& wrapper)
        : script_(script), bridge_(bridge(bridge_id)), wrapper_(wrapper) {}

    void run() {
        for (step_ = 0; step_ < script_.steps.size(); ++step_) {
            std::visit(*this, script_.steps[step_]);
        }
    }

    void operator()(const LetStep& s) { slots_[s.into] = resolve(s.value); }

    void operator()(const CallStep& s) {
        std::vector<Datum> args;
        args.reserve(s.args.size());
        for (const auto& a : s.args) args.push_back(resolve(a));
        try {
            Datum result = bridge_invoke(bridge_.id(), wrapper_, s.fn, args);
            const BridgeOp* op = bridge_.find(s.fn);
            if (op->category == OpCategory::Mutate && !s.args.empty()) {
                if (const auto* ref = std::get_if<SlotRef>(&s.args[0])) slots_[ref->name] = std::move(args[0]);
            }
            if (s.into) slots_[*s.into] = std::move(result);
        } catch (const UsageError& e) {
            fail(FailureReason::Unsupported, e.what());
        } catch (const Error& e) {
            if (s.into && error_expected(*s.into)) {
                CapturedError c{e.kind(), e.what(), std::nullopt};
                if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
                    c.message = pe->message();
                    c.position = pe->position();
                }
                slots_[*s.into] = std::move(c);
                return;
            }
            fail(FailureReason::UncaughtError, s.fn + ": " + e.what());
        }
    }

    void operator()(const AssertEqualsStep& s) {
        const Datum& actual = slot(s.actual);
        Datum expected = resolve(s.expected);
        if (!datum_equivalent(actual, expected, s.mode)) {
            fail(FailureReason::Assertion,
                 "expected " + describe(expected) + " but got " + describe(actual) + " (" + to_string(s.mode) + ")",
                 actual, expected);
        }
    }

    void operator()(const AssertErrorStep& s) {
        const Datum& actual = slot(s.slot);
        const auto* err = std::get_if<CapturedError>(&actual);
        if (err == nullptr) fail(FailureReason::Assertion, "expected an error but got " + describe(actual), actual);
        if (s.kind && *s.kind != err->kind) {
            fail(FailureReason::Assertion, "wrong error kind: " + describe(actual), actual);
        }
        if (s.position && err->position != s.position) {
            fail(FailureReason::Assertion,
                 "expected error position " + std::to_string(*s.position) + ": " + describe(actual), actual);
        }
        if (s.message && err->message != *s.message) {
            fail(FailureReason::Assertion, "expected error message \"" + *s.message + "\": " + describe(actual), actual);
        }
    }

    void operator()(const AssertTypeStep& s) {
        const Datum& actual = slot(s.slot);
        const auto* v = std::get_if<JsonValue>(&actual);
        if (v == nullptr || v->type() != s.type) {
            fail(FailureReason::Assertion,
                 "expected a " + std::string(to_string(s.type)) + " but got " + describe(actual), actual);
        }
    }

    void operator()(const ExpectRejectStep& s) {
        std::vector<Datum> args{JsonText{s.text}};
        try {
            Datum result = bridge_invoke(bridge_.id(), wrapper_, s.fn, args);
            fail(FailureReason::Assertion, "input was accepted: " + describe(result), result);
        } catch (const ParseError&) {
            // rejected, as expected
        } catch (const UsageError& e) {
            fail(FailureReason::Unsupported, e.what());
        } catch (const AccessError& e) {
            fail(FailureReason::UncaughtError, s.fn + ": " + e.what());
        }
    }

private:
    [[noreturn]] void fail(FailureReason reason, std::string detail, std::optional<Datum> actual = std::nullopt,
                           std::optional<Datum> expected = std::nullopt) const {
        TestOutcome o;
        o.passed = false;
        o.failed_step = step_;
        o.reason = reason;
        o.detail = script_.id + " step " + std::to_string(step_) + ": " + detail;
        o.actual = std::move(actual);
        o.expected = std::move(expected);
        throw ScriptFailure(std::move(o));
    }

    const Datum& slot(const std::string& name) const {
        auto it = slots_.find(name);
        if (it == slots_.end()) throw MalformedScript(script_.id + ": slot '" + name + "' was never written");
        return it->second;
    }

    Datum resolve(const Arg& a) const {
        if (const auto* r = std::get_if<SlotRef>(&a)) return slot(r->name);
        if (const auto* t = std::get_if<JsonText>(&a)) return *t;
        return std::get<JsonValue>(a);
    }

    // A later assert_error reads the slot before anything overwrites it.
    bool error_expected(const std::string& name) const {
        for (std::size_t i = step_ + 1; i < script_.steps.size(); ++i) {
            const Step& st = script_.steps[i];
            if (const auto* ae = std::get_if<AssertErrorStep>(&st); ae && ae->slot == name) return true;
            if (const auto* c = std::get_if<CallStep>(&st); c && c->into == name) return false;
            if (const auto* l = std::get_if<LetStep>(&st); l && l->into == name) return false;
        }
        return false;
    }

    const TestScript& script_;
    const BridgeSurface& bridge_;
    const Wrapper& wrapper_;
    std::map<std::string, Datum> slots_;
    std::size_t step_ = 0;
};

}  // namespace

void execute_script(const TestScript& script, std::string_view bridge_id, const Wrapper& wrapper) {
    Execution(script, bridge_id, wrapper).run();
}

TestOutcome run_script(const TestScript& script, std::string_view bridge_id, const Wrapper& wrapper) {
    try {
        execute_script(script, bridge_id, wrapper);
        return {};
    } catch (const ScriptFailure& f) {
        return f.outcome();
    } catch (const PlaceboError& e) {
        TestOutcome o;
        o.passed = false;
        o.reason = FailureReason::Placebo;
        o.detail = script.id + ": " + e.what();
        return o;
    }
}

}  // namespace divsub
