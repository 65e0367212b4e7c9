// divsub: curation, cross-testing, client variants, adapter counts and the
// corpus survey from the command line.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "divsub/adapter_calculus.hpp"
#include "divsub/corpus.hpp"
#include "divsub/crosstest.hpp"
#include "divsub/curation.hpp"
#include "divsub/errors.hpp"
#include "divsub/parallel.hpp"
#include "divsub/report_io.hpp"
#include "divsub/suite_io.hpp"
#include "divsub/variants.hpp"
#include "divsub/wrappers.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;
using namespace divsub;

namespace {

constexpr int kOk = 0;
constexpr int kStrictFailure = 1;
constexpr int kUsage = 2;

struct Options {
    std::string command;
    std::vector<std::string> inputs;
    std::string suites;
    std::string clients;
    std::string fixture = "fixtures/table3.csv";
    std::string corpus = "corpus";
    std::string reference;
    std::string out;
    std::string format;
    std::size_t repeat = kDefaultRepetitions;
    std::size_t parallelism = default_parallelism();
    bool strict = false;
    bool no_timestamp = false;
    bool repo = false;
};

bool structured(const Options& o) { return o.format == "structured-text"; }

void emit(const Options& o, std::string body) {
    if (!o.no_timestamp) {
        if (structured(o)) {
            Json doc = Json::parse(body);
            Json stamped{{"generated", timestamp_line().substr(12, 20)}};
            for (auto& [k, v] : doc.items()) stamped[k] = v;
            body = stamped.dump(2) + "\n";
        } else {
            body = timestamp_line() + body;
        }
    }
    if (o.out.empty()) {
        std::cout << body;
    } else {
        atomic_write(o.out, body);
    }
}

std::vector<CuratedSuite> curate_all(const Options& o) {
    std::vector<CuratedSuite> out;
    for (const auto& s : load_suites(o.suites)) {
        out.push_back(o.reference.empty() ? curate(s, o.parallelism) : curate(s, o.reference, o.parallelism));
    }
    return out;
}

std::string join(const std::vector<std::string>& items, char sep) {
    std::string out;
    for (const auto& s : items) {
        if (!out.empty()) out += sep;
        out += s;
    }
    return out;
}

std::string join(const std::set<std::string>& items, char sep) { return join(std::vector(items.begin(), items.end()), sep); }

int cmd_curate(const Options& o) {
    auto suites = curate_all(o);
    std::string body;
    if (o.format == "grid") {
        body = "suite\tbridge\treference\tremoved\tplacebo\tmodified\tselected\ttotal\n";
        for (const auto& s : suites) {
            auto c = s.counts();
            body += s.suite_id + '\t' + s.bridge_id + '\t' + s.reference_wrapper_id + '\t' + std::to_string(c.removed) +
                    '\t' + std::to_string(c.placebo) + '\t' + std::to_string(c.modified) + '\t' +
                    std::to_string(c.selected) + '\t' + std::to_string(c.total()) + '\n';
        }
    } else if (structured(o)) {
        Json doc{{"suites", Json::array()}};
        for (const auto& s : suites) {
            auto c = s.counts();
            Json tests = Json::array();
            for (const auto& t : s.tests) {
                Json j{{"test", t.original.id}, {"label", to_string(t.label)}};
                if (t.reason) j["reason"] = to_string(*t.reason);
                if (!t.relaxations.empty()) j["relaxations"] = t.relaxations;
                if (!t.missing_ops.empty()) j["missing"] = t.missing_ops;
                tests.push_back(j);
            }
            doc["suites"].push_back({{"suite", s.suite_id},
                                     {"bridge", s.bridge_id},
                                     {"reference", s.reference_wrapper_id},
                                     {"counts",
                                      {{"removed", c.removed},
                                       {"placebo", c.placebo},
                                       {"modified", c.modified},
                                       {"selected", c.selected}}},
                                     {"tests", tests}});
        }
        body = doc.dump(2) + "\n";
    } else {
        body = "suite,test,label,reason,relaxations,missing\n";
        for (const auto& s : suites) {
            for (const auto& t : s.tests) {
                body += s.suite_id + ',' + t.original.id + ',' + std::string(to_string(t.label)) + ',' +
                        (t.reason ? std::string(to_string(*t.reason)) : "") + ',' + join(t.relaxations, ';') + ',' +
                        join(t.missing_ops, ';') + '\n';
            }
        }
    }
    emit(o, body);
    return kOk;
}

int cmd_matrix(const Options& o) {
    auto suites = curate_all(o);
    BehaviorMatrix m = run_matrix(suites, all_engine_wrappers(), o.parallelism);
    if (o.format == "csv") emit(o, matrix_csv(m));
    else if (structured(o)) emit(o, matrix_structured(m));
    else emit(o, matrix_grid(m));
    for (const auto& c : m.cells) {
        if (o.strict && c.color == ColorClass::Red) return kStrictFailure;
    }
    return kOk;
}

std::vector<ClientDescriptor> clients_from(const Options& o) {
    std::vector<ClientDescriptor> out;
    std::vector<std::string> paths = o.inputs;
    if (!o.clients.empty()) paths.push_back(o.clients);
    if (paths.empty()) throw UsageError("no clients given");
    for (const auto& p : paths) {
        for (auto& c : load_clients(p)) out.push_back(std::move(c));
    }
    return out;
}

int cmd_check_client(const Options& o) {
    auto clients = clients_from(o);
    bool missing = false;
    std::string body;
    if (structured(o)) {
        Json doc{{"clients", Json::array()}};
        for (const auto& c : clients) {
            ClientCheck r = check_client(c);
            missing = missing || !r.capability.ok();
            Json j{{"client", c.id}, {"bridge", c.bridge_id}, {"compile", r.capability.ok()}};
            if (!r.capability.ok()) j["missing"] = r.capability.missing;
            if (r.coverage) j["coverage"] = to_string(*r.coverage);
            doc["clients"].push_back(j);
        }
        body = doc.dump(2) + "\n";
    } else {
        body = "client,bridge,compile,coverage,missing\n";
        for (const auto& c : clients) {
            ClientCheck r = check_client(c);
            missing = missing || !r.capability.ok();
            body += c.id + ',' + c.bridge_id + ',' + (r.capability.ok() ? "OK" : "MISSING") + ',' +
                    (r.coverage ? std::string(to_string(*r.coverage)) : "-") + ',' + join(r.capability.missing, ';') +
                    '\n';
        }
    }
    emit(o, body);
    return o.strict && missing ? kStrictFailure : kOk;
}

int cmd_variants(const Options& o) {
    if (o.repeat == 0) throw UsageError("--repeat must be at least 1");
    auto clients = clients_from(o);
    auto wrappers = all_engine_wrappers();
    auto reports = build_all_variants(clients, wrappers, o.repeat, o.parallelism);
    auto summary = summarize(reports, wrappers.size());
    if (o.format == "grid") {
        emit(o, variants_text(reports, summary));
    } else if (structured(o)) {
        Json doc{{"clients", Json::array()}};
        for (const auto& r : reports) {
            Json j{{"client", r.client_id},
                   {"bridge", r.bridge_id},
                   {"authored-against", r.authored_against},
                   {"compile", r.check.capability.ok()}};
            if (r.check.coverage) j["coverage"] = to_string(*r.check.coverage);
            if (r.equivalent_count) j["equivalent"] = *r.equivalent_count;
            Json vs = Json::array();
            for (const auto& v : r.variants) {
                Json fs = Json::array();
                for (const auto& f : v.failures) {
                    fs.push_back({{"test", f.test_id}, {"category", to_string(f.category)}, {"detail", f.detail}});
                }
                vs.push_back({{"wrapper", v.wrapper_id}, {"passed", v.passed}, {"failures", fs}});
            }
            j["variants"] = vs;
            doc["clients"].push_back(j);
        }
        Json hist = Json::object();
        for (const auto& [bridge, bins] : summary.histogram) {
            Json b = Json::object();
            for (const auto& [k, n] : bins) b[std::to_string(k)] = n;
            hist[bridge] = b;
        }
        doc["summary"] = {{"clients", summary.clients},
                          {"counted", summary.counted_clients},
                          {"variants", summary.variants_produced},
                          {"histogram", hist}};
        emit(o, doc.dump(2) + "\n");
    } else {
        emit(o, variants_csv(reports));
    }
    for (const auto& r : reports) {
        if (o.strict && !r.check.capability.ok()) return kStrictFailure;
        for (const auto& v : r.variants) {
            if (o.strict && !v.passed) return kStrictFailure;
        }
    }
    return kOk;
}

int cmd_adapters(const Options& o) {
    ReservoirDescriptor r = o.repo ? repo_descriptor() : load_table3(o.fixture);
    AdapterCounts counts = adapter_counts(r);
    std::string curated = r.bridged ? std::to_string(counts.curated) : "n/a";
    if (structured(o)) {
        Json doc{{"libraries", r.libraries.size()},
                 {"api_size_total", r.total_api_size()},
                 {"facade_size", r.facade_size},
                 {"naive", counts.naive}};
        if (r.bridged) doc["curated"] = counts.curated;
        Json bridged = Json::object();
        for (const auto& [name, n] : counts.adapted_by_bridge) bridged[name] = n;
        doc["adapted_by_bridge"] = bridged;
        doc["wrapper_total"] = counts.wrapper_total;
        emit(o, doc.dump(2) + "\n");
        return kOk;
    }
    std::string body = "naive=" + std::to_string(counts.naive) + " curated=" + curated + "\n";
    if (o.format == "grid") {
        body += "libraries=" + std::to_string(r.libraries.size()) + " api_size_total=" +
                std::to_string(r.total_api_size()) + " facade_size=" + std::to_string(r.facade_size) + "\n";
        for (const auto& [name, n] : counts.adapted_by_bridge) body += "bridge " + name + " " + std::to_string(n) + "\n";
        body += "wrappers " + std::to_string(counts.wrapper_total) + "\n";
    }
    emit(o, body);
    return kOk;
}

int cmd_assess(const Options& o) {
    FrameworkState state{o.repo || o.fixture.empty() ? repo_descriptor() : load_table3(o.fixture), {}, {}};
    if (!o.suites.empty()) state.matrix = run_matrix(curate_all(o), all_engine_wrappers(), o.parallelism);
    if (!o.clients.empty() || !o.inputs.empty()) {
        state.variants = build_all_variants(clients_from(o), all_engine_wrappers(), o.repeat, o.parallelism);
    }
    emit(o, assessment_text(assess(state)));
    return kOk;
}

int cmd_corpus(const Options& o) {
    CorpusReport r = survey_corpus(load_corpus(corpus_dir(o.corpus)));
    std::string body = corpus_csv(r);
    if (o.format == "grid") {
        body += "divergent illformed inputs: " + std::to_string(r.divergent_illformed()) +
                "\nwellformed disagreements: " + std::to_string(r.wellformed_disagreements()) + "\n";
        for (const auto& row : r.rows) {
            if (row.disagreement) body += "  " + row.id + ": " + row.disagreement_detail + "\n";
        }
    }
    emit(o, body);
    return o.strict && r.wellformed_disagreements() > 0 ? kStrictFailure : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"divsub: library substitution framework over a reservoir of JSON engines", "divsub"};
    app.require_subcommand(1);
    app.allow_extras(false);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--out,-o", o.out, "Write the report to this file (atomically) instead of stdout");
        sub->add_option("--format", o.format, "csv, grid or structured-text")
            ->check(CLI::IsMember({"csv", "grid", "structured-text"}));
        sub->add_option("--parallelism,-j", o.parallelism, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_flag("--no-timestamp", o.no_timestamp, "Omit the timestamp header");
        sub->add_flag("--strict", o.strict, "Exit 1 on RED cells, failed variants or missing ops");
    };

    auto* curate_cmd = app.add_subcommand("curate", "Label every test of the given suites");
    curate_cmd->add_option("--suites", o.suites, "Suite file or directory")->required();
    curate_cmd->add_option("--reference", o.reference, "Reference wrapper (default: the bridge's native engine)");
    common(curate_cmd);

    auto* matrix_cmd = app.add_subcommand("matrix", "Cross-test curated suites against every engine wrapper");
    matrix_cmd->add_option("--suites", o.suites, "Suite file or directory")->required();
    matrix_cmd->add_option("--reference", o.reference, "Reference wrapper used for curation");
    common(matrix_cmd);

    auto* check_cmd = app.add_subcommand("check-client", "Capability and placebo coverage check of clients");
    check_cmd->add_option("paths", o.inputs, "Client files or directories");
    check_cmd->add_option("--clients", o.clients, "Client file or directory");
    common(check_cmd);

    auto* variants_cmd = app.add_subcommand("variants", "Substitute every engine into every client");
    variants_cmd->add_option("paths", o.inputs, "Client files or directories");
    variants_cmd->add_option("--clients", o.clients, "Client file or directory");
    variants_cmd->add_option("--repeat", o.repeat, "Repetitions per variant")->check(CLI::PositiveNumber);
    common(variants_cmd);

    auto* adapters_cmd = app.add_subcommand("adapters", "Naive and curated adapter counts");
    adapters_cmd->add_option("--fixture", o.fixture, "Library table (CSV)");
    adapters_cmd->add_flag("--repo", o.repo, "Use this repository's own reservoir instead of a fixture");
    common(adapters_cmd);

    auto* assess_cmd = app.add_subcommand("assess", "Four-part assessment of the framework");
    assess_cmd->add_option("--suites", o.suites, "Suite file or directory");
    assess_cmd->add_option("--clients", o.clients, "Client file or directory");
    assess_cmd->add_option("--repeat", o.repeat, "Repetitions per variant")->check(CLI::PositiveNumber);
    assess_cmd->add_option("--fixture", o.fixture, "Library table for the adapter section (default: this repository)");
    common(assess_cmd);

    auto* corpus_cmd = app.add_subcommand("corpus", "Accept/reject survey of the input corpus");
    corpus_cmd->add_option("--corpus", o.corpus, "Corpus directory (DIVSUB_CORPUS_DIR overrides the default)");
    common(corpus_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "divsub: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    o.command = sub->get_name();
    if (o.command == "assess" && sub->count("--fixture") == 0) o.fixture.clear();
    if (o.format.empty()) o.format = o.command == "matrix" ? "grid" : "csv";

    try {
        if (o.command == "curate") return cmd_curate(o);
        if (o.command == "matrix") return cmd_matrix(o);
        if (o.command == "check-client") return cmd_check_client(o);
        if (o.command == "variants") return cmd_variants(o);
        if (o.command == "adapters") return cmd_adapters(o);
        if (o.command == "assess") return cmd_assess(o);
        if (o.command == "corpus") return cmd_corpus(o);
    } catch (const Error& e) {
        std::cerr << "divsub " << o.command << ": " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "divsub " << o.command << ": " << e.what() << '\n';
        return kUsage;
    }
    std::cerr << sub->help();
    return kUsage;
}
