#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace forge::io {

// Throws NotFoundError when the file cannot be opened.
std::string read_file(const std::filesystem::path& path);

// Writes through a temporary sibling and renames it into place.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace forge::io
