#pragma once

#include <filesystem>
#include <string_view>

namespace svea::io {

// Writes content to a sibling temp file, then renames it over path.
void atomic_write(const std::filesystem::path& path, std::string_view content);

// Creates dir (and parents) and checks that a file can be created inside.
// Throws ConfigError otherwise.
void ensure_writable_dir(const std::filesystem::path& dir);

}  // namespace svea::io
