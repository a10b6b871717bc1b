#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "testability/classfile/classfile.hpp"
#include "testability/core/record.hpp"
#include "testability/java/corpus.hpp"

namespace testability::java {

struct ExtractOptions {
  std::vector<std::filesystem::path> source_dirs;
  std::vector<std::filesystem::path> class_dirs;  // .class trees and/or .jar files
  std::optional<std::filesystem::path> pairs_file;
  classfile::ReaderOptions reader;
};

/// (production class id, test class id).
using TestPair = std::pair<std::string, std::string>;

/// Pairing file lines "prod,test"; blank lines and '#' comments skipped.
std::vector<TestPair> parse_pairs(std::string_view text, const std::string& path = "<pairs>");

/// Convention pairing over declared top-level names: pkg.Name is tested by
/// pkg.NameTest, else pkg.TestName. Sorted by production id.
std::vector<TestPair> pair_by_convention(const std::vector<std::string>& declared);

/// NBI per top-level class: every .class under the given paths (and every
/// .class entry of any .jar) is decoded and folded by top_level_name().
std::map<std::string, double> nbi_table(const std::vector<std::filesystem::path>& class_dirs,
                                        const classfile::ReaderOptions& reader = {});

/// Parses every .java file below the given roots, concurrently. The first
/// failure in path order is rethrown.
std::vector<CompilationUnit> parse_tree(const std::vector<std::filesystem::path>& roots);

/// One record per paired class, sorted by class id. Test classes are kept
/// out of the production index so they do not count as couplings.
/// NBI is set iff class directories are given. Throws ParseError,
/// DuplicateClass, CyclicHierarchy, MalformedClassFile or Error("InputError").
std::vector<ClassRecord> extract_records(std::vector<CompilationUnit> units,
                                         const std::vector<TestPair>& pairs,
                                         const std::map<std::string, double>* nbi);

std::vector<ClassRecord> extract(const ExtractOptions& options);

}  // namespace testability::java
