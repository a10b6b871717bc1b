#include "testability/java/corpus.hpp"

#include <algorithm>

#include "testability/core/errors.hpp"

namespace testability::java {
namespace {

const std::set<std::string> kEmpty;

bool is_object(const std::string& name) {
  return name == "Object" || name == "java.lang.Object";
}

}  // namespace

CorpusIndex CorpusIndex::build(std::vector<CompilationUnit> units,
                               const std::set<std::string>& excluded) {
  CorpusIndex index;
  index.units_ = std::move(units);
  std::sort(index.units_.begin(), index.units_.end(),
            [](const CompilationUnit& a, const CompilationUnit& b) { return a.path < b.path; });

  for (const CompilationUnit& unit : index.units_) {
    for (const auto& type : unit.types) {
      ClassEntry entry;
      entry.qualified_name = unit.qualified_name(*type);
      entry.unit = &unit;
      entry.decl = type.get();
      auto [it, inserted] = index.all_.emplace(entry.qualified_name, entry);
      if (!inserted) {
        throw DuplicateClass(entry.qualified_name + " is declared in both " +
                             it->second.unit->path + " and " + unit.path);
      }
    }
  }
  for (const auto& [name, entry] : index.all_) {
    if (excluded.contains(name)) continue;
    index.position_.emplace(name, index.classes_.size());
    index.classes_.push_back(entry);
    index.by_simple_name_.emplace(entry.decl->name, name);
  }

  // Superclasses.
  for (ClassEntry& entry : index.classes_) {
    const TypeRef* super = entry.decl->superclass();
    if (super == nullptr || super->names.empty() || is_object(super->names.front())) continue;
    if (auto parent = index.resolve(super->names.front(), *entry.unit);
        parent && *parent != entry.qualified_name) {
      entry.parent = *parent;
      ++index.children_[*parent];
    } else if (parent) {
      throw CyclicHierarchy(entry.qualified_name + " extends itself");
    } else {
      entry.external_parent = true;
    }
  }
  for (const ClassEntry& entry : index.classes_) {
    std::set<std::string> seen{entry.qualified_name};
    const ClassEntry* cur = &entry;
    while (cur->parent) {
      if (!seen.insert(*cur->parent).second) {
        throw CyclicHierarchy("inheritance cycle through " + entry.qualified_name);
      }
      cur = index.find(*cur->parent);
    }
  }

  // Type references, forward and reverse.
  for (const ClassEntry& entry : index.classes_) {
    const ClassModel model = flatten(*entry.decl);
    auto& refs = index.references_[entry.qualified_name];
    for (const auto& written : referenced_type_names(model)) {
      if (auto target = index.resolve(written, *entry.unit);
          target && *target != entry.qualified_name) {
        refs.insert(*target);
        index.referenced_by_[*target].insert(entry.qualified_name);
      }
    }
  }
  return index;
}

const ClassEntry* CorpusIndex::find(std::string_view qualified_name) const {
  const auto it = position_.find(qualified_name);
  return it == position_.end() ? nullptr : &classes_[it->second];
}

const ClassEntry* CorpusIndex::find_declaration(std::string_view qualified_name) const {
  if (const ClassEntry* e = find(qualified_name)) return e;
  const auto it = all_.find(qualified_name);
  return it == all_.end() ? nullptr : &it->second;
}

std::optional<std::string> CorpusIndex::resolve(const std::string& written,
                                                const CompilationUnit& context) const {
  if (written.find('.') != std::string::npos) {
    // Longest prefix naming an indexed class: pkg.Outer.Inner -> pkg.Outer.
    std::string prefix = written;
    while (true) {
      if (position_.contains(prefix)) return prefix;
      const auto dot = prefix.rfind('.');
      if (dot == std::string::npos) break;
      prefix.resize(dot);
    }
    // Outer.Inner written relative to an import or the current package.
    return resolve(written.substr(0, written.find('.')), context);
  }

  const std::string same_package =
      context.package_name.empty() ? written : context.package_name + "." + written;
  if (position_.contains(same_package)) return same_package;

  for (const ImportDecl& imp : context.imports) {
    if (imp.is_static || imp.is_wildcard) continue;
    if (simple_name(imp.name) == written) {
      if (position_.contains(imp.name)) return imp.name;
      return std::nullopt;  // explicitly imported from outside the corpus
    }
  }
  for (const ImportDecl& imp : context.imports) {
    if (imp.is_static || !imp.is_wildcard) continue;
    const std::string candidate = imp.name + "." + written;
    if (position_.contains(candidate)) return candidate;
  }
  // Fall back to a unique simple-name match anywhere in the corpus.
  const auto [lo, hi] = by_simple_name_.equal_range(written);
  if (lo != hi && std::next(lo) == hi) return lo->second;
  return std::nullopt;
}

std::vector<const ClassEntry*> CorpusIndex::ancestors(const ClassEntry& entry) const {
  std::vector<const ClassEntry*> out;
  const ClassEntry* cur = &entry;
  while (cur->parent) {
    cur = find(*cur->parent);
    if (cur == nullptr) break;
    out.push_back(cur);
  }
  return out;
}

int CorpusIndex::child_count(std::string_view qualified_name) const {
  const auto it = children_.find(qualified_name);
  return it == children_.end() ? 0 : it->second;
}

const std::set<std::string>& CorpusIndex::references(std::string_view qualified_name) const {
  const auto it = references_.find(qualified_name);
  return it == references_.end() ? kEmpty : it->second;
}

const std::set<std::string>& CorpusIndex::referenced_by(std::string_view qualified_name) const {
  const auto it = referenced_by_.find(qualified_name);
  return it == referenced_by_.end() ? kEmpty : it->second;
}

}  // namespace testability::java
