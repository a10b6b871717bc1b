#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "testability/java/lexer.hpp"

namespace testability::java {

enum Modifier : std::uint32_t {
  kPublic = 1u << 0,
  kProtected = 1u << 1,
  kPrivate = 1u << 2,
  kStatic = 1u << 3,
  kFinal = 1u << 4,
  kAbstract = 1u << 5,
  kNative = 1u << 6,
  kSynchronized = 1u << 7,
  kTransient = 1u << 8,
  kVolatile = 1u << 9,
  kStrictfp = 1u << 10,
  kDefault = 1u << 11,
};

struct LineSpan {
  int first = 0;
  int last = 0;
};

/// A type as written in source. `names` lists every class-or-interface
/// name it mentions (the outer type and its type arguments) with
/// primitives and `void` removed; qualified names keep their dots.
struct TypeRef {
  std::string text;  // whitespace-free rendering, e.g. "List<String>[]"
  std::vector<std::string> names;
  int line = 0;

  bool is_primitive_or_void() const { return names.empty(); }
};

/// Method or constructor invocation.
struct Call {
  std::string receiver;  // "" when absent, "this", "super", or receiver source text
  std::string name;
  int arg_count = 0;
  int line = 0;
};

/// Counts of decision-point tokens.
struct DecisionPoints {
  int if_count = 0;
  int for_count = 0;  // classic and enhanced
  int while_count = 0;
  int do_count = 0;
  int case_count = 0;  // `case` labels only; `default` adds nothing
  int catch_count = 0;
  int ternary_count = 0;
  int and_count = 0;  // &&
  int or_count = 0;   // ||

  int total() const {
    return if_count + for_count + while_count + do_count + case_count +
           catch_count + ternary_count + and_count + or_count;
  }
};

/// A simple name used as an expression, candidate field access.
struct NameUse {
  std::string name;
  bool via_this = false;  // `this.name`
};

/// Facts gathered from a region of code (a method body, or a type's field
/// initializers and initializer blocks).
struct CodeFacts {
  DecisionPoints decisions;
  std::vector<Call> calls;
  std::vector<NameUse> name_uses;
  std::vector<std::string> local_names;  // parameters and locals shadowing fields
  std::vector<TypeRef> local_types;      // local variable declarations
  std::vector<TypeRef> created_types;    // `new T(...)` and `new T[...]`
  std::vector<TypeRef> cast_types;
  bool uses_super_member = false;        // contains `super.x` or `super.m()`
};

struct Parameter {
  TypeRef type;
  std::string name;
};

struct MethodDecl {
  std::string name;
  bool is_constructor = false;
  std::uint32_t modifiers = 0;
  std::vector<std::string> annotations;  // simple names, e.g. "Test"
  std::vector<std::string> type_parameters;
  TypeRef return_type;                   // empty text for constructors
  std::vector<Parameter> parameters;
  bool has_body = false;
  CodeFacts body;
  LineSpan lines;

  int arity() const { return static_cast<int>(parameters.size()); }
};

struct FieldDecl {
  std::string name;
  TypeRef type;
  std::uint32_t modifiers = 0;
  int line = 0;
};

enum class TypeKind : unsigned char { Class, Interface, Enum, Annotation, Anonymous };

struct TypeDecl {
  TypeKind kind = TypeKind::Class;
  std::string name;  // empty for anonymous classes
  std::uint32_t modifiers = 0;
  std::vector<std::string> annotations;
  std::vector<std::string> type_parameters;
  std::vector<TypeRef> extends;     // at most one for classes
  std::vector<TypeRef> implements;
  std::vector<FieldDecl> fields;
  std::vector<MethodDecl> methods;
  std::vector<std::string> enum_constants;
  CodeFacts initializers;           // field initializers, initializer blocks
  std::vector<std::unique_ptr<TypeDecl>> nested;  // member, local, anonymous
  LineSpan lines;                   // from first modifier to closing brace

  const TypeRef* superclass() const {
    return kind == TypeKind::Class && !extends.empty() ? &extends.front() : nullptr;
  }
};

struct ImportDecl {
  std::string name;  // dotted, without ".*"
  bool is_static = false;
  bool is_wildcard = false;
};

struct CompilationUnit {
  std::string path;
  std::string package_name;  // empty for the default package
  std::vector<ImportDecl> imports;
  std::vector<std::unique_ptr<TypeDecl>> types;
  std::vector<CommentSpan> comments;
  std::vector<bool> code_lines;  // index = line number; true when a token starts or lies on it
  int line_count = 0;

  std::string qualified_name(const TypeDecl& top_level) const {
    return package_name.empty() ? top_level.name : package_name + "." + top_level.name;
  }
};

}  // namespace testability::java
