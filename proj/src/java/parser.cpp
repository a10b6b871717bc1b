#include "testability/java/parser.hpp"

#include <algorithm>
#include <array>
#include <optional>

#include "testability/core/errors.hpp"

namespace testability::java {
namespace {

constexpr std::array<std::string_view, 8> kPrimitiveTypes{
    "boolean", "byte", "char", "short", "int", "long", "float", "double"};

bool is_primitive_keyword(std::string_view word) {
  return std::find(kPrimitiveTypes.begin(), kPrimitiveTypes.end(), word) !=
         kPrimitiveTypes.end();
}

std::optional<Modifier> modifier_of(std::string_view word) {
  if (word == "public") return kPublic;
  if (word == "protected") return kProtected;
  if (word == "private") return kPrivate;
  if (word == "static") return kStatic;
  if (word == "final") return kFinal;
  if (word == "abstract") return kAbstract;
  if (word == "native") return kNative;
  if (word == "synchronized") return kSynchronized;
  if (word == "transient") return kTransient;
  if (word == "volatile") return kVolatile;
  if (word == "strictfp") return kStrictfp;
  return std::nullopt;
}

std::string last_segment(const std::string& dotted) {
  const auto dot = dotted.rfind('.');
  return dot == std::string::npos ? dotted : dotted.substr(dot + 1);
}

struct Modifiers {
  std::uint32_t bits = 0;
  std::vector<std::string> annotations;
  int first_line = 0;  // 0 when no modifier was present
};

class Parser {
 public:
  Parser(const LexedSource& lexed, const std::string& path)
      : toks_(lexed.tokens), path_(path) {}

  void parse_unit(CompilationUnit& unit) {
    // Package annotations are legal only in package-info.java; accept them.
    const std::size_t save = pos_;
    Modifiers mods = parse_modifiers();
    if (accept_kw("package")) {
      unit.package_name = parse_qualified_name();
      expect_op(";");
    } else {
      pos_ = save;
    }
    while (is_kw("import")) {
      advance();
      ImportDecl imp;
      imp.is_static = accept_kw("static");
      imp.name = expect_ident();
      while (accept_op(".")) {
        if (accept_op("*")) {
          imp.is_wildcard = true;
          break;
        }
        imp.name += "." + expect_ident();
      }
      expect_op(";");
      unit.imports.push_back(std::move(imp));
    }
    while (!at_end()) {
      if (accept_op(";")) continue;
      mods = parse_modifiers();
      unit.types.push_back(parse_type_declaration(mods, TypeKind::Class));
    }
  }

 private:
  // ---- token helpers -------------------------------------------------
  const Token& cur() const { return toks_[pos_]; }
  const Token& at(std::size_t ahead) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at_end() const { return cur().kind == TokenKind::EndOfFile; }
  void advance() {
    if (!at_end()) ++pos_;
  }

  bool is_op(std::string_view op, std::size_t ahead = 0) const {
    const Token& t = at(ahead);
    return t.kind == TokenKind::Operator && t.text == op;
  }
  bool is_kw(std::string_view kw, std::size_t ahead = 0) const {
    const Token& t = at(ahead);
    return t.kind == TokenKind::Keyword && t.text == kw;
  }
  bool is_ident(std::size_t ahead = 0) const {
    return at(ahead).kind == TokenKind::Identifier;
  }
  // Two tokens written with no space between them, e.g. the `>` `>` of a shift.
  bool adjacent(std::size_t a, std::size_t b) const {
    const Token& x = at(a);
    const Token& y = at(b);
    return x.line == y.line && x.column + static_cast<int>(x.text.size()) == y.column;
  }

  bool accept_op(std::string_view op) {
    if (!is_op(op)) return false;
    advance();
    return true;
  }
  bool accept_kw(std::string_view kw) {
    if (!is_kw(kw)) return false;
    advance();
    return true;
  }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = cur();
    const std::string found =
        t.kind == TokenKind::EndOfFile ? "end of file" : "'" + std::string(t.text) + "'";
    throw ParseError(path_, t.line, t.column, what + ", found " + found);
  }

  void expect_op(std::string_view op) {
    if (!accept_op(op)) fail("expected '" + std::string(op) + "'");
  }
  void expect_kw(std::string_view kw) {
    if (!accept_kw(kw)) fail("expected '" + std::string(kw) + "'");
  }
  std::string expect_ident() {
    if (!is_ident()) fail("expected identifier");
    std::string s(cur().text);
    advance();
    return s;
  }

  std::string parse_qualified_name() {
    std::string name = expect_ident();
    while (is_op(".") && is_ident(1)) {
      advance();
      name += "." + expect_ident();
    }
    return name;
  }

  std::string text_between(std::size_t begin, std::size_t end) const {
    std::string out;
    for (std::size_t i = begin; i < end; ++i) out += toks_[i].text;
    return out;
  }

  // Skips a balanced (...) group starting at the current '('.
  bool skip_parenthesized() {
    if (!is_op("(")) return false;
    int depth = 0;
    do {
      if (at_end()) return false;
      if (is_op("(")) ++depth;
      if (is_op(")")) --depth;
      advance();
    } while (depth > 0);
    return true;
  }

  // Index of the ')' matching the '(' at `open`, or npos.
  std::size_t matching_paren(std::size_t open) const {
    int depth = 0;
    for (std::size_t i = open; i < toks_.size(); ++i) {
      const Token& t = toks_[i];
      if (t.kind != TokenKind::Operator) continue;
      if (t.text == "(") ++depth;
      if (t.text == ")" && --depth == 0) return i;
    }
    return std::string::npos;
  }

  // ---- annotations and modifiers ----------------------------------------
  bool at_annotation() const { return is_op("@") && !is_kw("interface", 1); }

  std::string parse_annotation() {
    expect_op("@");
    const std::string name = parse_qualified_name();
    if (is_op("(") && !skip_parenthesized()) fail("unterminated annotation arguments");
    return last_segment(name);
  }

  // Annotation skipping that never throws, for speculative type parses.
  bool try_skip_annotation() {
    if (!at_annotation()) return false;
    advance();
    if (!is_ident()) return false;
    advance();
    while (is_op(".") && is_ident(1)) {
      advance();
      advance();
    }
    if (is_op("(")) return skip_parenthesized();
    return true;
  }

  Modifiers parse_modifiers(bool allow_default = false) {
    Modifiers mods;
    while (true) {
      if (at_annotation()) {
        if (mods.first_line == 0) mods.first_line = cur().line;
        mods.annotations.push_back(parse_annotation());
        continue;
      }
      if (cur().kind == TokenKind::Keyword) {
        if (auto m = modifier_of(cur().text)) {
          if (mods.first_line == 0) mods.first_line = cur().line;
          mods.bits |= *m;
          advance();
          continue;
        }
        if (allow_default && cur().text == "default" && !is_op(":", 1)) {
          if (mods.first_line == 0) mods.first_line = cur().line;
          mods.bits |= kDefault;
          advance();
          continue;
        }
      }
      return mods;
    }
  }

  // ---- types ------------------------------------------------------------
  // Speculative type parse: on failure restores the position and returns
  // false. Never records facts.
  bool try_parse_type(TypeRef& out, bool allow_diamond = false) {
    const std::size_t save = pos_;
    std::vector<std::string> names;
    out.line = cur().line;
    if (parse_type_inner(names, allow_diamond)) {
      out.text = text_between(save, pos_);
      out.names = std::move(names);
      // Drop annotation text from the rendering.
      if (out.text.find('@') != std::string::npos) out.text = strip_annotations(save, pos_);
      return true;
    }
    pos_ = save;
    return false;
  }

  std::string strip_annotations(std::size_t begin, std::size_t end) const {
    std::string out;
    for (std::size_t i = begin; i < end; ++i) {
      if (toks_[i].kind == TokenKind::Operator && toks_[i].text == "@") {
        ++i;  // name
        while (i + 2 < end && toks_[i + 1].text == "." &&
               toks_[i + 2].kind == TokenKind::Identifier) {
          i += 2;
        }
        if (i + 1 < end && toks_[i + 1].text == "(") {
          int depth = 0;
          for (++i; i < end; ++i) {
            if (toks_[i].text == "(") ++depth;
            if (toks_[i].text == ")" && --depth == 0) break;
          }
        }
        continue;
      }
      out += toks_[i].text;
    }
    return out;
  }

  bool parse_type_inner(std::vector<std::string>& names, bool allow_diamond) {
    while (at_annotation()) {
      if (!try_skip_annotation()) return false;
    }
    if (cur().kind == TokenKind::Keyword && is_primitive_keyword(cur().text)) {
      advance();
    } else if (is_ident()) {
      std::string name(cur().text);
      advance();
      std::vector<std::string> arg_names;
      if (is_op("<") && !parse_type_arguments(arg_names, allow_diamond)) return false;
      while (is_op(".") && (is_ident(1) || is_op("@", 1))) {
        advance();
        while (at_annotation()) {
          if (!try_skip_annotation()) return false;
        }
        if (!is_ident()) return false;
        name += ".";
        name += cur().text;
        advance();
        if (is_op("<") && !parse_type_arguments(arg_names, allow_diamond)) return false;
      }
      names.push_back(std::move(name));
      names.insert(names.end(), arg_names.begin(), arg_names.end());
    } else {
      return false;
    }
    parse_dims();
    return true;
  }

  void parse_dims() {
    while (true) {
      const std::size_t save = pos_;
      while (at_annotation()) {
        if (!try_skip_annotation()) break;
      }
      if (is_op("[") && is_op("]", 1)) {
        advance();
        advance();
      } else {
        pos_ = save;
        return;
      }
    }
  }

  bool parse_type_arguments(std::vector<std::string>& names, bool allow_diamond) {
    if (!accept_op("<")) return false;
    if (is_op(">")) {
      if (!allow_diamond) return false;
      advance();
      return true;
    }
    while (true) {
      while (at_annotation()) {
        if (!try_skip_annotation()) return false;
      }
      if (accept_op("?")) {
        if (accept_kw("extends") || accept_kw("super")) {
          if (!parse_type_inner(names, false)) return false;
        }
      } else if (!parse_type_inner(names, false)) {
        return false;
      }
      if (accept_op(",")) continue;
      return accept_op(">");
    }
  }

  TypeRef parse_type(bool allow_diamond = false) {
    TypeRef t;
    if (!try_parse_type(t, allow_diamond)) fail("expected type");
    return t;
  }

  std::vector<std::string> parse_type_parameters() {
    std::vector<std::string> params;
    expect_op("<");
    while (true) {
      while (at_annotation()) parse_annotation();
      params.push_back(expect_ident());
      if (accept_kw("extends")) {
        parse_type();
        while (accept_op("&")) parse_type();
      }
      if (accept_op(",")) continue;
      expect_op(">");
      return params;
    }
  }

  // ---- declarations -----------------------------------------------------
  std::unique_ptr<TypeDecl> parse_type_declaration(const Modifiers& mods,
                                                   TypeKind enclosing_kind) {
    auto decl = std::make_unique<TypeDecl>();
    decl->modifiers = mods.bits;
    decl->annotations = mods.annotations;
    decl->lines.first = mods.first_line != 0 ? mods.first_line : cur().line;
    if (enclosing_kind == TypeKind::Interface || enclosing_kind == TypeKind::Annotation) {
      decl->modifiers |= kPublic | kStatic;
    }
    if (accept_kw("class")) {
      decl->kind = TypeKind::Class;
      decl->name = expect_ident();
      if (is_op("<")) decl->type_parameters = parse_type_parameters();
      if (accept_kw("extends")) decl->extends.push_back(parse_type());
      if (accept_kw("implements")) decl->implements = parse_type_list();
      parse_class_body(*decl);
    } else if (accept_kw("interface")) {
      decl->kind = TypeKind::Interface;
      decl->name = expect_ident();
      if (is_op("<")) decl->type_parameters = parse_type_parameters();
      if (accept_kw("extends")) decl->extends = parse_type_list();
      parse_class_body(*decl);
    } else if (accept_kw("enum")) {
      decl->kind = TypeKind::Enum;
      decl->name = expect_ident();
      if (accept_kw("implements")) decl->implements = parse_type_list();
      parse_enum_body(*decl);
    } else if (is_op("@") && is_kw("interface", 1)) {
      advance();
      advance();
      decl->kind = TypeKind::Annotation;
      decl->name = expect_ident();
      parse_class_body(*decl);
    } else {
      fail("expected type declaration");
    }
    return decl;
  }

  std::vector<TypeRef> parse_type_list() {
    std::vector<TypeRef> list;
    do {
      list.push_back(parse_type());
    } while (accept_op(","));
    return list;
  }

  void parse_class_body(TypeDecl& decl) {
    expect_op("{");
    type_stack_.push_back(&decl);
    while (!is_op("}")) {
      if (at_end()) fail("expected '}' to close type body");
      parse_member(decl);
    }
    decl.lines.last = cur().line;
    advance();
    type_stack_.pop_back();
  }

  void parse_enum_body(TypeDecl& decl) {
    expect_op("{");
    type_stack_.push_back(&decl);
    CodeFacts* saved = facts_;
    facts_ = &decl.initializers;
    while (!is_op(";") && !is_op("}")) {
      while (at_annotation()) parse_annotation();
      decl.enum_constants.push_back(expect_ident());
      if (is_op("(")) parse_arguments();
      if (is_op("{")) {
        auto anon = std::make_unique<TypeDecl>();
        anon->kind = TypeKind::Anonymous;
        anon->lines.first = cur().line;
        TypeRef base;
        base.text = decl.name;
        base.line = cur().line;
        anon->extends.push_back(base);
        TypeDecl& ref = *anon;
        decl.nested.push_back(std::move(anon));
        parse_class_body(ref);
      }
      if (!accept_op(",")) break;
    }
    facts_ = saved;
    if (accept_op(";")) {
      while (!is_op("}")) {
        if (at_end()) fail("expected '}' to close enum body");
        parse_member(decl);
      }
    }
    decl.lines.last = cur().line;
    expect_op("}");
    type_stack_.pop_back();
  }

  void parse_member(TypeDecl& decl) {
    if (accept_op(";")) return;
    const bool interface_like =
        decl.kind == TypeKind::Interface || decl.kind == TypeKind::Annotation;
    if (is_op("{") || (is_kw("static") && is_op("{", 1))) {
      accept_kw("static");
      CodeFacts* saved = facts_;
      facts_ = &decl.initializers;
      parse_block();
      facts_ = saved;
      return;
    }
    const int start_line = cur().line;
    Modifiers mods = parse_modifiers(/*allow_default=*/true);
    if (is_kw("class") || is_kw("interface") || is_kw("enum") ||
        (is_op("@") && is_kw("interface", 1))) {
      decl.nested.push_back(parse_type_declaration(mods, decl.kind));
      return;
    }
    std::vector<std::string> type_params;
    if (is_op("<")) type_params = parse_type_parameters();

    MethodDecl method;
    method.modifiers = mods.bits;
    method.annotations = mods.annotations;
    method.type_parameters = std::move(type_params);
    method.lines.first = mods.first_line != 0 ? mods.first_line : start_line;

    if (is_ident() && is_op("(", 1)) {
      method.is_constructor = true;
      method.name = expect_ident();
      parse_method_rest(decl, method, interface_like);
      return;
    }
    TypeRef type;
    if (is_kw("void")) {
      type.text = "void";
      type.line = cur().line;
      advance();
    } else {
      type = parse_type();
    }
    const std::string name = expect_ident();
    if (is_op("(")) {
      method.name = name;
      method.return_type = std::move(type);
      parse_method_rest(decl, method, interface_like);
      return;
    }
    if (type.text == "void") fail("field cannot have type void");
    // Field declarators.
    std::uint32_t field_mods = mods.bits;
    if (interface_like) field_mods |= kPublic | kStatic | kFinal;
    std::string current = name;
    CodeFacts* saved = facts_;
    facts_ = &decl.initializers;
    while (true) {
      FieldDecl field;
      field.name = current;
      field.type = type;
      parse_dims();
      field.modifiers = field_mods;
      field.line = start_line;
      decl.fields.push_back(std::move(field));
      if (accept_op("=")) parse_variable_initializer();
      if (accept_op(",")) {
        current = expect_ident();
        continue;
      }
      break;
    }
    facts_ = saved;
    expect_op(";");
  }

  void parse_method_rest(TypeDecl& decl, MethodDecl& method, bool interface_like) {
    expect_op("(");
    if (!is_op(")")) {
      do {
        Modifiers pmods = parse_modifiers();
        (void)pmods;
        Parameter param;
        param.type = parse_type();
        if (accept_op("...")) param.type.text += "...";
        if (is_kw("this")) {  // receiver parameter
          advance();
          continue;
        }
        param.name = expect_ident();
        parse_dims();
        method.parameters.push_back(std::move(param));
      } while (accept_op(","));
    }
    expect_op(")");
    parse_dims();
    if (accept_kw("throws")) parse_type_list();
    for (const auto& p : method.parameters) method.body.local_names.push_back(p.name);

    if (interface_like && !(method.modifiers & kPrivate)) method.modifiers |= kPublic;
    if (is_op("{")) {
      method.has_body = true;
      CodeFacts* saved = facts_;
      facts_ = &method.body;
      parse_block();
      facts_ = saved;
      method.lines.last = toks_[pos_ - 1].line;
    } else {
      if (accept_kw("default")) {  // annotation element default
        CodeFacts scratch;
        CodeFacts* saved = facts_;
        facts_ = &scratch;
        parse_element_value();
        facts_ = saved;
      }
      method.lines.last = cur().line;
      expect_op(";");
      if (interface_like) method.modifiers |= kAbstract;
    }
    decl.methods.push_back(std::move(method));
  }

  void parse_element_value() {
    if (is_op("{")) {
      advance();
      while (!is_op("}")) {
        parse_element_value();
        if (!accept_op(",")) break;
      }
      expect_op("}");
    } else if (at_annotation()) {
      parse_annotation();
    } else {
      parse_expression();
    }
  }

  // ---- statements -------------------------------------------------------
  void parse_block() {
    expect_op("{");
    while (!is_op("}")) {
      if (at_end()) fail("expected '}' to close block");
      parse_block_statement();
    }
    advance();
  }

  bool at_local_class() const {
    std::size_t i = 0;
    while (true) {
      const Token& t = at(i);
      if (t.kind == TokenKind::Keyword &&
          (t.text == "class" || t.text == "interface" || t.text == "enum")) {
        return true;
      }
      if (t.kind == TokenKind::Keyword &&
          (t.text == "final" || t.text == "abstract" || t.text == "static" ||
           t.text == "strictfp")) {
        ++i;
        continue;
      }
      return false;
    }
  }

  // Looks for `[modifiers] Type name` followed by one of `follow`.
  bool looks_like_local_declaration(std::string_view follow) {
    const std::size_t save = pos_;
    bool result = false;
    while (is_kw("final") || at_annotation()) {
      if (is_kw("final")) {
        advance();
      } else if (!try_skip_annotation()) {
        pos_ = save;
        return false;
      }
    }
    TypeRef type;
    if (try_parse_type(type) && is_ident()) {
      const Token& next = at(1);
      result = next.kind == TokenKind::Operator &&
               follow.find(next.text) != std::string_view::npos &&
               next.text.size() == 1;
    }
    pos_ = save;
    return result;
  }

  void parse_block_statement() {
    if (at_local_class()) {
      Modifiers mods = parse_modifiers();
      current_type().nested.push_back(parse_type_declaration(mods, TypeKind::Class));
      return;
    }
    if (looks_like_local_declaration("=,;[")) {
      parse_local_variable_declaration();
      expect_op(";");
      return;
    }
    parse_statement();
  }

  void parse_local_variable_declaration() {
    parse_modifiers();
    TypeRef type = parse_type();
    facts_->local_types.push_back(type);
    do {
      facts_->local_names.push_back(expect_ident());
      parse_dims();
      if (accept_op("=")) parse_variable_initializer();
    } while (accept_op(","));
  }

  void parse_variable_initializer() {
    if (is_op("{")) {
      parse_array_initializer();
    } else {
      parse_expression();
    }
  }

  void parse_array_initializer() {
    expect_op("{");
    while (!is_op("}")) {
      parse_variable_initializer();
      if (!accept_op(",")) break;
    }
    expect_op("}");
  }

  void parse_par_expression() {
    expect_op("(");
    parse_expression();
    expect_op(")");
  }

  void parse_statement() {
    const Token& t = cur();
    if (t.kind == TokenKind::Operator) {
      if (t.text == "{") return parse_block();
      if (t.text == ";") return advance();
    }
    if (t.kind == TokenKind::Keyword) {
      const std::string_view kw = t.text;
      if (kw == "if") {
        advance();
        ++facts_->decisions.if_count;
        parse_par_expression();
        parse_statement();
        if (accept_kw("else")) parse_statement();
        return;
      }
      if (kw == "for") return parse_for();
      if (kw == "while") {
        advance();
        ++facts_->decisions.while_count;
        parse_par_expression();
        parse_statement();
        return;
      }
      if (kw == "do") {
        advance();
        ++facts_->decisions.do_count;
        parse_statement();
        expect_kw("while");
        parse_par_expression();
        expect_op(";");
        return;
      }
      if (kw == "try") return parse_try();
      if (kw == "switch") return parse_switch();
      if (kw == "synchronized") {
        advance();
        parse_par_expression();
        parse_block();
        return;
      }
      if (kw == "return") {
        advance();
        if (!is_op(";")) parse_expression();
        expect_op(";");
        return;
      }
      if (kw == "throw") {
        advance();
        parse_expression();
        expect_op(";");
        return;
      }
      if (kw == "break" || kw == "continue") {
        advance();
        if (is_ident()) advance();
        expect_op(";");
        return;
      }
      if (kw == "assert") {
        advance();
        parse_expression();
        if (accept_op(":")) parse_expression();
        expect_op(";");
        return;
      }
      if (kw == "else" || kw == "case" || kw == "default" || kw == "catch" ||
          kw == "finally") {
        fail("unexpected '" + std::string(kw) + "'");
      }
    }
    if (is_ident() && is_op(":", 1)) {  // labeled statement
      advance();
      advance();
      parse_statement();
      return;
    }
    parse_expression();
    expect_op(";");
  }

  void parse_for() {
    expect_kw("for");
    ++facts_->decisions.for_count;
    expect_op("(");
    if (looks_like_local_declaration(":")) {
      parse_modifiers();
      TypeRef type = parse_type();
      facts_->local_types.push_back(type);
      facts_->local_names.push_back(expect_ident());
      expect_op(":");
      parse_expression();
      expect_op(")");
      parse_statement();
      return;
    }
    if (!is_op(";")) {
      if (looks_like_local_declaration("=,;[")) {
        parse_local_variable_declaration();
      } else {
        do {
          parse_expression();
        } while (accept_op(","));
      }
    }
    expect_op(";");
    if (!is_op(";")) parse_expression();
    expect_op(";");
    if (!is_op(")")) {
      do {
        parse_expression();
      } while (accept_op(","));
    }
    expect_op(")");
    parse_statement();
  }

  void parse_try() {
    expect_kw("try");
    bool has_resources = false;
    if (accept_op("(")) {
      has_resources = true;
      while (!is_op(")")) {
        if (looks_like_local_declaration("=")) {
          parse_modifiers();
          facts_->local_types.push_back(parse_type());
          facts_->local_names.push_back(expect_ident());
          expect_op("=");
          parse_expression();
        } else {
          parse_expression();  // Java 9 effectively-final resource
        }
        if (!accept_op(";")) break;
      }
      expect_op(")");
    }
    parse_block();
    bool handled = false;
    while (accept_kw("catch")) {
      handled = true;
      ++facts_->decisions.catch_count;
      expect_op("(");
      parse_modifiers();
      facts_->local_types.push_back(parse_type());
      while (accept_op("|")) facts_->local_types.push_back(parse_type());
      facts_->local_names.push_back(expect_ident());
      expect_op(")");
      parse_block();
    }
    if (accept_kw("finally")) {
      handled = true;
      parse_block();
    }
    if (!handled && !has_resources) fail("expected 'catch' or 'finally'");
  }

  void parse_switch() {
    expect_kw("switch");
    parse_par_expression();
    expect_op("{");
    while (!is_op("}")) {
      if (at_end()) fail("expected '}' to close switch");
      if (accept_kw("case")) {
        ++facts_->decisions.case_count;
        parse_ternary();
        expect_op(":");
      } else if (is_kw("default") && is_op(":", 1)) {
        advance();
        advance();
      } else {
        parse_block_statement();
      }
    }
    advance();
  }

  // ---- expressions ------------------------------------------------------
  bool at_lambda() const {
    if (is_ident() && is_op("->", 1)) return true;
    if (!is_op("(")) return false;
    const std::size_t close = matching_paren(pos_);
    return close != std::string::npos && close + 1 < toks_.size() &&
           toks_[close + 1].kind == TokenKind::Operator && toks_[close + 1].text == "->";
  }

  void parse_lambda() {
    if (is_ident()) {
      facts_->local_names.push_back(expect_ident());
    } else {
      expect_op("(");
      if (!is_op(")")) {
        do {
          parse_modifiers();
          if (is_ident() && (is_op(",", 1) || is_op(")", 1))) {
            facts_->local_names.push_back(expect_ident());
          } else {
            facts_->local_types.push_back(parse_type());
            accept_op("...");
            facts_->local_names.push_back(expect_ident());
            parse_dims();
          }
        } while (accept_op(","));
      }
      expect_op(")");
    }
    expect_op("->");
    if (is_op("{")) {
      parse_block();
    } else {
      parse_expression();
    }
  }

  // Assignment operator length in tokens at the current position, 0 if none.
  std::size_t assignment_operator() const {
    const Token& t = cur();
    if (t.kind != TokenKind::Operator) return 0;
    static constexpr std::array<std::string_view, 10> kOps{
        "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<="};
    if (std::find(kOps.begin(), kOps.end(), t.text) != kOps.end()) return 1;
    if (t.text == ">" && is_op(">=", 1) && adjacent(0, 1)) return 2;  // >>=
    if (t.text == ">" && is_op(">", 1) && is_op(">=", 2) && adjacent(0, 1) &&
        adjacent(1, 2)) {
      return 3;  // >>>=
    }
    return 0;
  }

  void parse_expression() {
    if (at_lambda()) return parse_lambda();
    parse_ternary();
    if (const std::size_t n = assignment_operator()) {
      pos_ += n;
      parse_expression();
    }
  }

  void parse_ternary() {
    parse_binary(1);
    if (accept_op("?")) {
      ++facts_->decisions.ternary_count;
      parse_expression();
      expect_op(":");
      if (at_lambda()) {
        parse_lambda();
      } else {
        parse_ternary();
      }
    }
  }

  // Precedence level of the binary operator at the cursor (0 if none) and
  // the number of tokens it spans.
  int binary_level(std::size_t& width) const {
    width = 1;
    const Token& t = cur();
    if (t.kind == TokenKind::Keyword && t.text == "instanceof") return 7;
    if (t.kind != TokenKind::Operator) return 0;
    const std::string_view op = t.text;
    if (op == "||") return 1;
    if (op == "&&") return 2;
    if (op == "|") return 3;
    if (op == "^") return 4;
    if (op == "&") return 5;
    if (op == "==" || op == "!=") return 6;
    if (op == "<" || op == "<=" || op == ">=") return 7;
    if (op == ">") {
      if (is_op(">", 1) && adjacent(0, 1)) {
        if (is_op(">", 2) && adjacent(1, 2)) {
          width = 3;
          return 8;  // >>>
        }
        if (is_op(">=", 2) && adjacent(1, 2)) return 0;  // >>>=
        width = 2;
        return 8;  // >>
      }
      if (is_op(">=", 1) && adjacent(0, 1)) return 0;  // >>=
      return 7;
    }
    if (op == "<<") return 8;
    if (op == "+" || op == "-") return 9;
    if (op == "*" || op == "/" || op == "%") return 10;
    return 0;
  }

  void parse_binary(int min_level) {
    parse_unary();
    while (true) {
      std::size_t width = 1;
      const int level = binary_level(width);
      if (level == 0 || level < min_level) return;
      const bool is_instanceof = is_kw("instanceof");
      if (is_op("&&")) ++facts_->decisions.and_count;
      if (is_op("||")) ++facts_->decisions.or_count;
      pos_ += width;
      if (is_instanceof) {
        parse_modifiers();
        parse_type();
        continue;
      }
      parse_binary(level + 1);
    }
  }

  bool starts_cast_operand() const {
    const Token& t = cur();
    switch (t.kind) {
      case TokenKind::Identifier:
      case TokenKind::IntegerLiteral:
      case TokenKind::FloatLiteral:
      case TokenKind::CharLiteral:
      case TokenKind::StringLiteral:
        return true;
      case TokenKind::Keyword:
        return t.text == "this" || t.text == "super" || t.text == "new" ||
               t.text == "true" || t.text == "false" || t.text == "null" ||
               t.text == "void" || is_primitive_keyword(t.text);
      case TokenKind::Operator:
        return t.text == "(" || t.text == "!" || t.text == "~";
      default:
        return false;
    }
  }

  bool try_parse_cast() {
    if (!is_op("(")) return false;
    const std::size_t save = pos_;
    advance();
    TypeRef type;
    if (!try_parse_type(type)) {
      pos_ = save;
      return false;
    }
    while (is_op("&")) {  // intersection cast
      advance();
      TypeRef extra;
      if (!try_parse_type(extra)) {
        pos_ = save;
        return false;
      }
      type.names.insert(type.names.end(), extra.names.begin(), extra.names.end());
    }
    if (!accept_op(")")) {
      pos_ = save;
      return false;
    }
    const bool primitive = type.is_primitive_or_void();
    if (primitive ? !(starts_cast_operand() || is_op("+") || is_op("-") || is_op("++") ||
                      is_op("--"))
                  : !starts_cast_operand()) {
      pos_ = save;
      return false;
    }
    facts_->cast_types.push_back(std::move(type));
    if (at_lambda()) {
      parse_lambda();
    } else {
      parse_unary();
    }
    return true;
  }

  void parse_unary() {
    const Token& t = cur();
    if (t.kind == TokenKind::Operator &&
        (t.text == "+" || t.text == "-" || t.text == "++" || t.text == "--" ||
         t.text == "!" || t.text == "~")) {
      advance();
      parse_unary();
      return;
    }
    if (is_op("(") && try_parse_cast()) return;
    parse_postfix();
  }

  int parse_arguments() {
    expect_op("(");
    int count = 0;
    if (!is_op(")")) {
      do {
        parse_expression();
        ++count;
      } while (accept_op(","));
    }
    expect_op(")");
    return count;
  }

  void record_call(std::string receiver, std::string name, int arg_count, int line) {
    facts_->calls.push_back({std::move(receiver), std::move(name), arg_count, line});
  }

  void parse_postfix() {
    const std::size_t start = pos_;
    parse_primary();
    while (true) {
      if (is_op(".")) {
        const std::size_t dot = pos_;
        advance();
        if (is_op("<")) {
          std::vector<std::string> ignored;
          if (!parse_type_arguments(ignored, false)) fail("malformed type arguments");
        }
        if (is_ident()) {
          const int line = cur().line;
          std::string name = expect_ident();
          if (is_op("(")) {
            std::string receiver = text_between(start, dot);
            if (receiver == "super") facts_->uses_super_member = true;
            const int argc = parse_arguments();
            record_call(std::move(receiver), std::move(name), argc, line);
          } else if (dot == start + 1 && toks_[start].text == "this" &&
                     toks_[start].kind == TokenKind::Keyword) {
            facts_->name_uses.push_back({std::move(name), true});
          } else if (dot == start + 1 && toks_[start].text == "super" &&
                     toks_[start].kind == TokenKind::Keyword) {
            facts_->uses_super_member = true;
          }
          continue;
        }
        if (accept_kw("new")) {
          parse_creator();
          continue;
        }
        if (accept_kw("class") || accept_kw("this")) continue;
        if (is_kw("super") && is_op("::", 1)) {
          advance();
          continue;
        }
        if (is_kw("super") && is_op(".", 1)) {  // Outer.super.m()
          advance();
          continue;
        }
        fail("expected member name after '.'");
      }
      if (is_op("[")) {
        if (is_op("]", 1)) {
          parse_dims();
          if (accept_op(".")) {
            expect_kw("class");
          } else if (!is_op("::")) {
            fail("expected '.class' or '::' after array type");
          }
          continue;
        }
        advance();
        parse_expression();
        expect_op("]");
        continue;
      }
      if (accept_op("::")) {
        if (is_op("<")) {
          std::vector<std::string> ignored;
          parse_type_arguments(ignored, false);
        }
        if (!accept_kw("new")) expect_ident();
        continue;
      }
      if (is_op("++") || is_op("--")) {
        advance();
        continue;
      }
      return;
    }
  }

  void parse_primary() {
    const Token& t = cur();
    switch (t.kind) {
      case TokenKind::IntegerLiteral:
      case TokenKind::FloatLiteral:
      case TokenKind::CharLiteral:
      case TokenKind::StringLiteral:
        advance();
        return;
      case TokenKind::Identifier: {
        const int line = t.line;
        std::string name(t.text);
        advance();
        if (is_op("(")) {
          const int argc = parse_arguments();
          record_call("", std::move(name), argc, line);
        } else {
          facts_->name_uses.push_back({std::move(name), false});
        }
        return;
      }
      case TokenKind::Keyword: {
        const std::string_view kw = t.text;
        if (kw == "true" || kw == "false" || kw == "null") {
          advance();
          return;
        }
        if (kw == "this") {
          advance();
          if (is_op("(")) parse_arguments();  // this(...) constructor chaining
          return;
        }
        if (kw == "super") {
          advance();
          if (is_op("(")) {
            parse_arguments();  // super(...) constructor chaining
          } else if (!is_op(".") && !is_op("::")) {
            fail("expected '.' or '::' after 'super'");
          }
          return;
        }
        if (kw == "new") {
          advance();
          parse_creator();
          return;
        }
        if (kw == "void" || is_primitive_keyword(kw)) {
          advance();
          parse_dims();
          if (accept_op(".")) {
            expect_kw("class");
          } else if (!is_op("::")) {
            fail("expected '.class'");
          }
          return;
        }
        break;
      }
      case TokenKind::Operator:
        if (t.text == "(") {
          advance();
          parse_expression();
          expect_op(")");
          return;
        }
        break;
      default:
        break;
    }
    fail("expected expression");
  }

  void parse_creator() {
    if (is_op("<")) {
      std::vector<std::string> ignored;
      if (!parse_type_arguments(ignored, false)) fail("malformed type arguments");
    }
    while (at_annotation()) parse_annotation();
    TypeRef type;
    type.line = cur().line;
    const std::size_t begin = pos_;
    if (cur().kind == TokenKind::Keyword && is_primitive_keyword(cur().text)) {
      advance();
    } else {
      std::vector<std::string> names;
      std::string name = expect_ident();
      std::vector<std::string> arg_names;
      if (is_op("<") && !parse_type_arguments(arg_names, true)) fail("malformed type arguments");
      while (is_op(".") && is_ident(1)) {
        advance();
        name += "." + expect_ident();
        if (is_op("<") && !parse_type_arguments(arg_names, true)) {
          fail("malformed type arguments");
        }
      }
      type.names.push_back(std::move(name));
      type.names.insert(type.names.end(), arg_names.begin(), arg_names.end());
    }
    type.text = text_between(begin, pos_);
    if (is_op("[")) {
      bool sized = false;
      while (is_op("[")) {
        advance();
        if (is_op("]")) {
          advance();
        } else {
          sized = true;
          parse_expression();
          expect_op("]");
        }
        type.text += "[]";
      }
      if (!type.names.empty()) facts_->created_types.push_back(type);
      if (is_op("{")) {
        parse_array_initializer();
      } else if (!sized) {
        fail("expected array initializer");
      }
      return;
    }
    if (type.names.empty()) fail("expected '[' after primitive type in array creation");
    facts_->created_types.push_back(type);
    parse_arguments();
    if (is_op("{")) {
      auto anon = std::make_unique<TypeDecl>();
      anon->kind = TypeKind::Anonymous;
      anon->lines.first = cur().line;
      anon->extends.push_back(type);
      TypeDecl& ref = *anon;
      current_type().nested.push_back(std::move(anon));
      CodeFacts* saved = facts_;
      parse_class_body(ref);
      facts_ = saved;
    }
  }

  TypeDecl& current_type() {
    if (type_stack_.empty()) fail("code outside of a type declaration");
    return *type_stack_.back();
  }

  const std::vector<Token>& toks_;
  const std::string& path_;
  std::size_t pos_ = 0;
  std::vector<TypeDecl*> type_stack_;
  CodeFacts* facts_ = nullptr;
};

}  // namespace

CompilationUnit parse_source(std::string_view text, const std::string& path) {
  const LexedSource lexed = lex(text, path);
  CompilationUnit unit;
  unit.path = path;
  unit.comments = lexed.comments;
  unit.line_count = lexed.line_count;
  unit.code_lines.assign(static_cast<std::size_t>(lexed.line_count) + 2, false);
  for (const Token& t : lexed.tokens) {
    if (t.kind != TokenKind::EndOfFile) unit.code_lines[static_cast<std::size_t>(t.line)] = true;
  }
  Parser(lexed, path).parse_unit(unit);
  return unit;
}

}  // namespace testability::java
