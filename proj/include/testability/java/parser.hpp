#pragma once

#include <string>
#include <string_view>

#include "testability/java/syntax.hpp"

namespace testability::java {

/// Parses one Java source file (Java 8 subset: declarations, statements and
/// expressions; annotations are accepted but their members are skipped).
/// Lambda bodies are parsed as ordinary code of the enclosing method.
/// Throws ParseError with file, line and column on malformed or
/// unsupported syntax.
CompilationUnit parse_source(std::string_view text, const std::string& path);

}  // namespace testability::java
