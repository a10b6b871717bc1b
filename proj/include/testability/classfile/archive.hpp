#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace testability::classfile {

struct ArchiveEntry {
  std::string name;  // path inside the archive, e.g. "pkg/Outer$Inner.class"
  std::vector<std::uint8_t> bytes;
};

/// Entries of a zip/jar whose names end in ".class", in central-directory
/// order. Stored and deflated entries are supported; anything else throws
/// MalformedClassFile.
std::vector<ArchiveEntry> read_class_entries(std::span<const std::uint8_t> archive);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);

}  // namespace testability::classfile
