#include "testability/java/class_model.hpp"

namespace testability::java {
namespace {

void collect(const TypeDecl& type, ClassModel& model) {
  model.types.push_back(&type);
  if (!type.name.empty()) model.own_type_names.insert(type.name);
  model.type_parameters.insert(type.type_parameters.begin(), type.type_parameters.end());
  for (const auto& f : type.fields) model.fields.push_back(&f);
  for (const auto& m : type.methods) {
    model.methods.push_back(&m);
    model.code.push_back(&m.body);
    model.type_parameters.insert(m.type_parameters.begin(), m.type_parameters.end());
  }
  model.code.push_back(&type.initializers);
  for (const auto& n : type.nested) collect(*n, model);
}

}  // namespace

std::string simple_name(const std::string& dotted) {
  const auto dot = dotted.rfind('.');
  return dot == std::string::npos ? dotted : dotted.substr(dot + 1);
}

ClassModel flatten(const TypeDecl& top) {
  ClassModel model;
  model.top = &top;
  collect(top, model);
  return model;
}

std::set<std::string> referenced_type_names(const ClassModel& model) {
  std::set<std::string> out;
  auto add = [&](const TypeRef& ref) {
    for (const auto& name : ref.names) {
      const auto first_dot = name.find('.');
      const std::string head = name.substr(0, first_dot);
      if (model.type_parameters.contains(name)) continue;
      if (model.own_type_names.contains(simple_name(name))) continue;
      // Outer.Inner where Outer is this class.
      if (first_dot != std::string::npos && model.own_type_names.contains(head)) continue;
      out.insert(name);
    }
  };
  for (const FieldDecl* f : model.fields) add(f->type);
  for (const MethodDecl* m : model.methods) {
    add(m->return_type);
    for (const auto& p : m->parameters) add(p.type);
  }
  for (const CodeFacts* facts : model.code) {
    for (const auto& t : facts->local_types) add(t);
    for (const auto& t : facts->created_types) add(t);
    for (const auto& t : facts->cast_types) add(t);
  }
  return out;
}

}  // namespace testability::java
