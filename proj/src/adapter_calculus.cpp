#include "divsub/adapter_calculus.hpp"

#include <charconv>
#include <set>
#include <sstream>

#include "divsub/bridges.hpp"
#include "divsub/errors.hpp"
#include "divsub/facade.hpp"
#include "divsub/reservoir.hpp"
#include "divsub/suite_io.hpp"

namespace divsub {

void ReservoirDescriptor::validate() const {
    std::set<std::string> names;
    for (const auto& lib : libraries) {
        if (lib.name.empty()) throw UsageError("library with an empty name");
        if (lib.version_count < 1) throw UsageError(lib.name + ": version count must be at least 1");
        if (!names.insert(lib.name).second) throw UsageError("duplicate library " + lib.name);
    }
    if (!bridged) return;
    std::set<std::string> seen;
    for (const auto& b : *bridged) {
        if (!names.count(b.library)) throw UsageError("bridged library " + b.library + " is not in the reservoir");
        if (!seen.insert(b.library).second) throw UsageError("library " + b.library + " bridged twice");
    }
}

std::uint64_t ReservoirDescriptor::total_api_size() const {
    std::uint64_t sum = 0;
    for (const auto& lib : libraries) sum += lib.api_size;
    return sum;
}

AdapterCounts adapter_counts(const ReservoirDescriptor& r) {
    r.validate();
    AdapterCounts out;
    std::uint64_t others = r.libraries.empty() ? 0 : r.libraries.size() - 1;
    for (const auto& lib : r.libraries) {
        std::uint64_t n = lib.version_count * lib.api_size * others;
        out.naive_by_library.emplace_back(lib.name, n);
        out.naive += n;
    }
    if (r.bridged) {
        for (const auto& b : *r.bridged) {
            out.adapted_by_bridge.emplace_back(b.library, b.adapted);
            out.curated += b.adapted;
        }
        out.wrapper_total = r.libraries.size() * r.facade_size;
        out.curated += out.wrapper_total;
    }
    return out;
}

std::uint64_t naive_count(const ReservoirDescriptor& r) { return adapter_counts(r).naive; }

std::uint64_t curated_count(const ReservoirDescriptor& r) {
    if (!r.bridged) throw MissingBridgeData("the reservoir descriptor carries no bridge data");
    return adapter_counts(r).curated;
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string trim(std::string s) {
    auto not_space = [](unsigned char c) { return c != ' ' && c != '\t' && c != '\r'; };
    while (!s.empty() && !not_space(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && !not_space(static_cast<unsigned char>(s[i]))) ++i;
    return s.substr(i);
}

std::uint64_t parse_count(const std::string& cell, std::size_t line, const char* column) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || ec != std::errc() || p != cell.data() + cell.size()) {
        throw UsageError("line " + std::to_string(line) + ": bad " + column + " \"" + cell + "\"");
    }
    return v;
}

}  // namespace

ReservoirDescriptor parse_table3(std::string_view csv, std::uint64_t facade_size) {
    std::istringstream in{std::string(csv)};
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw UsageError("empty table");
    ++lineno;
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    std::vector<std::string> header;
    for (auto& h : split(line)) header.push_back(trim(h));
    if (header != std::vector<std::string>{"name", "version_count", "api_size", "bridge_adapted"}) {
        throw UsageError("expected header name,version_count,api_size,bridge_adapted");
    }

    ReservoirDescriptor r;
    r.facade_size = facade_size;
    r.bridged.emplace();
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto cells = split(line);
        if (cells.size() != 4) throw UsageError("line " + std::to_string(lineno) + ": expected 4 columns");
        for (auto& c : cells) c = trim(c);
        LibraryDesc lib{cells[0], parse_count(cells[1], lineno, "version_count"),
                        parse_count(cells[2], lineno, "api_size")};
        if (!cells[3].empty()) r.bridged->push_back({lib.name, parse_count(cells[3], lineno, "bridge_adapted")});
        r.libraries.push_back(std::move(lib));
    }
    r.validate();
    return r;
}

ReservoirDescriptor load_table3(const std::filesystem::path& path, std::uint64_t facade_size) {
    return parse_table3(read_file(path), facade_size);
}

ReservoirDescriptor repo_descriptor() {
    ReservoirDescriptor r;
    r.facade_size = kAllCapabilities.size();
    r.bridged.emplace();
    for (const auto& id : Reservoir::bundled().ids()) {
        LibraryDesc lib{id, 1, kAllCapabilities.size()};
        for (const auto& b : all_bridges()) {
            if (b.native_engine() == id) lib.api_size = b.surface().size();
        }
        r.libraries.push_back(lib);
    }
    for (const auto& b : all_bridges()) r.bridged->push_back({b.native_engine(), b.adapted_count()});
    r.validate();
    return r;
}

AssessmentReport assess(const FrameworkState& state) {
    AssessmentReport a;
    AdapterCounts counts = adapter_counts(state.descriptor);
    a.naive = counts.naive;
    if (state.descriptor.bridged) a.adapted_elements = counts.curated;

    if (state.matrix) {
        AssessmentReport::MatrixSummary m;
        for (const auto& c : state.matrix->cells) {
            ++m.cells;
            m.passed += c.passed;
            m.total += c.total;
            switch (c.color) {
                case ColorClass::Green: ++m.green; break;
                case ColorClass::Yellow: ++m.yellow; break;
                case ColorClass::Red: ++m.red; break;
            }
        }
        a.matrix = m;
    }
    if (state.variants) {
        AssessmentReport::ClientSummary c;
        for (const auto& r : *state.variants) {
            ++c.clients;
            if (r.check.capability.ok()) ++c.compile_ok;
            if (r.check.coverage == Coverage::Covered) ++c.covered;
        }
        a.clients = c;
        a.distribution = summarize(*state.variants, state.descriptor.libraries.size());
    }
    return a;
}

std::string assessment_text(const AssessmentReport& a) {
    std::ostringstream out;
    out << "[adapters]\n";
    if (a.adapted_elements) {
        out << "naive=" << a.naive.value_or(0) << " curated=" << *a.adapted_elements << '\n';
    } else {
        out << "naive=" << a.naive.value_or(0) << " curated=not available (no bridge data)\n";
    }

    out << "\n[matrix]\n";
    if (a.matrix) {
        const auto& m = *a.matrix;
        out << "cells=" << m.cells << " green=" << m.green << " yellow=" << m.yellow << " red=" << m.red
            << " passed=" << m.passed << " total=" << m.total << '\n';
    } else {
        out << "not yet run\n";
    }

    out << "\n[clients]\n";
    if (a.clients) {
        const auto& c = *a.clients;
        out << "clients=" << c.clients << " compile_ok=" << c.compile_ok << " covered=" << c.covered << '\n';
    } else {
        out << "not yet run\n";
    }

    out << "\n[variants]\n";
    if (a.distribution) {
        const auto& d = *a.distribution;
        out << "counted=" << d.counted_clients << " variants=" << d.variants_produced << '\n';
        for (const auto& [bridge, bins] : d.histogram) {
            out << bridge << ':';
            for (const auto& [k, n] : bins) out << ' ' << k << '=' << n;
            out << '\n';
        }
    } else {
        out << "not yet run\n";
    }
    return out.str();
}

}  // namespace divsub
