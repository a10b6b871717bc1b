#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace testability::classfile {

struct MethodSummary {
  std::string name;
  std::string descriptor;
  std::uint64_t instruction_count = 0;  // 0 for abstract/native methods
  std::uint32_t code_length = 0;        // bytes in the Code attribute
  std::uint32_t decoded_length = 0;     // bytes consumed decoding instructions
  bool has_code = false;
};

struct ClassFileSummary {
  std::string class_name;  // binary name with dots, e.g. "pkg.Outer$Inner"
  std::uint16_t major_version = 0;
  std::vector<MethodSummary> methods;
};

struct ReaderOptions {
  // Java 25. Newer versions are refused rather than guessed at.
  std::uint16_t max_major_version = 69;
};

/// Decodes the constant pool, method table and every Code attribute.
/// Throws MalformedClassFile (bad magic, truncation, inconsistent lengths,
/// unknown opcodes) or UnsupportedMajorVersion.
ClassFileSummary parse_classfile(std::span<const std::uint8_t> bytes,
                                 const ReaderOptions& options = {});

/// Byte length of the instruction starting at `offset` within `code`.
/// tableswitch/lookupswitch padding is aligned relative to the start of
/// `code`. Throws MalformedClassFile on an undefined or truncated opcode.
std::size_t instruction_length(std::span<const std::uint8_t> code, std::size_t offset);

/// Number of bytecode instructions over all methods, including
/// constructors and static initializers.
std::uint64_t count_nbi(const ClassFileSummary& summary);

/// Top-level class a binary name folds into: "pkg.Outer$Inner" -> "pkg.Outer".
std::string top_level_name(const std::string& binary_name);

}  // namespace testability::classfile
