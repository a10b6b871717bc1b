#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "testability/java/class_model.hpp"
#include "testability/java/syntax.hpp"

namespace testability::java {

struct ClassEntry {
  std::string qualified_name;
  const CompilationUnit* unit = nullptr;
  const TypeDecl* decl = nullptr;
  std::optional<std::string> parent;  // corpus-resolved superclass
  bool external_parent = false;       // extends a non-Object class outside the corpus
};

/// Index over the top-level classes of a corpus. Owns the parsed units;
/// entries point into them, so the index is move-only.
///
/// Classes named in `excluded` (test classes) stay reachable through
/// find_declaration() but take no part in hierarchy, resolution or
/// reference counting.
class CorpusIndex {
 public:
  /// Throws DuplicateClass when two top-level types share a qualified
  /// name and CyclicHierarchy when corpus-resolved superclasses loop.
  static CorpusIndex build(std::vector<CompilationUnit> units,
                           const std::set<std::string>& excluded = {});

  CorpusIndex(CorpusIndex&&) noexcept = default;
  CorpusIndex& operator=(CorpusIndex&&) noexcept = default;
  CorpusIndex(const CorpusIndex&) = delete;
  CorpusIndex& operator=(const CorpusIndex&) = delete;

  /// Indexed (non-excluded) classes, sorted by qualified name.
  const std::vector<ClassEntry>& classes() const { return classes_; }

  const ClassEntry* find(std::string_view qualified_name) const;

  /// Any top-level class, excluded or not.
  const ClassEntry* find_declaration(std::string_view qualified_name) const;

  /// Resolves a type name as written inside `context` to an indexed class.
  std::optional<std::string> resolve(const std::string& written,
                                     const CompilationUnit& context) const;

  /// Corpus-resolved ancestors, nearest first.
  std::vector<const ClassEntry*> ancestors(const ClassEntry& entry) const;

  int child_count(std::string_view qualified_name) const;

  /// Indexed classes referenced by / referencing the given class (self excluded).
  const std::set<std::string>& references(std::string_view qualified_name) const;
  const std::set<std::string>& referenced_by(std::string_view qualified_name) const;

 private:
  CorpusIndex() = default;

  std::vector<CompilationUnit> units_;
  std::vector<ClassEntry> classes_;
  std::map<std::string, ClassEntry, std::less<>> all_;
  std::map<std::string, std::size_t, std::less<>> position_;
  std::multimap<std::string, std::string> by_simple_name_;
  std::map<std::string, int, std::less<>> children_;
  std::map<std::string, std::set<std::string>, std::less<>> references_;
  std::map<std::string, std::set<std::string>, std::less<>> referenced_by_;
};

}  // namespace testability::java
