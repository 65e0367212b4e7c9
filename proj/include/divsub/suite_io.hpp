#pragma once

// Reading and writing suite and client files (format: docs/suite-format.md).

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "divsub/script.hpp"

namespace divsub {

/// A synthetic client: its own test suite written against one bridge.
struct ClientDescriptor {
    std::string id;
    std::string bridge_id;
    /// Engine whose behavior the client's expectations were written for.
    std::string authored_against;
    std::vector<TestScript> tests;

    /// Recomputed from the scripts every time.
    std::set<std::string> declared_ops() const { return ops_used(tests); }
};

/// Throws MalformedScript, naming the offending location, on malformed JSON
/// and on any schema violation.
Suite parse_suite(std::string_view json_text, std::string_view source = "<memory>");
ClientDescriptor parse_client(std::string_view json_text, std::string_view source = "<memory>");

/// Throws UsageError when the file cannot be read.
Suite load_suite(const std::filesystem::path& path);
ClientDescriptor load_client(const std::filesystem::path& path);

/// Every *.json file directly inside `dir`, sorted by file name. A path to a
/// single file is accepted as well.
std::vector<Suite> load_suites(const std::filesystem::path& dir);
std::vector<ClientDescriptor> load_clients(const std::filesystem::path& dir);

std::string suite_to_json(const Suite& suite);
std::string scripts_to_json(const std::vector<TestScript>& tests);

std::string read_file(const std::filesystem::path& path);

}  // namespace divsub
