#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace divsub {

/// Writes `content` to a temporary sibling of `path` and renames it into
/// place. Throws UsageError on IO failure.
void atomic_write(const std::filesystem::path& path, std::string_view content);

/// "# generated <UTC ISO-8601>\n"
std::string timestamp_line();

}  // namespace divsub
