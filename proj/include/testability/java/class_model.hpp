#pragma once

#include <set>
#include <string>
#include <vector>

#include "testability/java/syntax.hpp"

namespace testability::java {

/// A top-level type with its nested, local and anonymous types folded in.
/// Metrics keyed by top-level class read their members from here.
struct ClassModel {
  const TypeDecl* top = nullptr;
  std::vector<const TypeDecl*> types;       // top first, then nested in pre-order
  std::vector<const MethodDecl*> methods;   // every method and constructor
  std::vector<const FieldDecl*> fields;
  std::vector<const CodeFacts*> code;       // method bodies and initializer facts
  std::set<std::string> own_type_names;     // simple names of top and nested types
  std::set<std::string> type_parameters;    // declared type variables
};

ClassModel flatten(const TypeDecl& top);

/// Names (as written, possibly dotted) of every type mentioned by field
/// types, parameter types, return types, local declarations, object
/// creations and casts. Primitives, the class itself, its nested types and
/// type variables are excluded.
std::set<std::string> referenced_type_names(const ClassModel& model);

std::string simple_name(const std::string& dotted);

/// (simple name, arity) identity used for name-based method resolution.
struct MethodKey {
  std::string name;
  int arity = 0;

  friend auto operator<=>(const MethodKey&, const MethodKey&) = default;
};

}  // namespace testability::java
