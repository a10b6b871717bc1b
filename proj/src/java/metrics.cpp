#include "testability/java/metrics.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "testability/java/class_model.hpp"

namespace testability::java {
namespace {

MethodKey key_of(const MethodDecl& m) { return {m.name, m.arity()}; }
MethodKey key_of(const Call& c) { return {c.name, c.arg_count}; }

std::set<MethodKey> declared_keys(const std::vector<const MethodDecl*>& methods) {
  std::set<MethodKey> keys;
  for (const MethodDecl* m : methods) {
    if (!m->is_constructor) keys.insert(key_of(*m));
  }
  return keys;
}

std::vector<const Call*> all_calls(const ClassModel& model) {
  std::vector<const Call*> calls;
  for (const CodeFacts* facts : model.code) {
    for (const Call& c : facts->calls) calls.push_back(&c);
  }
  return calls;
}

bool is_self_receiver(const Call& c) { return c.receiver.empty() || c.receiver == "this"; }

int count_lines(const CompilationUnit& unit, const TypeDecl& type) {
  int loc = 0;
  for (int line = type.lines.first; line <= type.lines.last; ++line) {
    if (static_cast<std::size_t>(line) < unit.code_lines.size() &&
        unit.code_lines[static_cast<std::size_t>(line)]) {
      ++loc;
    }
  }
  return loc;
}

int count_comment_lines(const CompilationUnit& unit, const TypeDecl& type) {
  std::set<int> lines;
  for (const CommentSpan& c : unit.comments) {
    const int first = std::max(c.first_line, type.lines.first);
    const int last = std::min(c.last_line, type.lines.last);
    for (int line = first; line <= last; ++line) lines.insert(line);
  }
  return static_cast<int>(lines.size());
}

struct ComplexitySummary {
  int wmc = 0;
  double amc = 0.0;
  int method_count = 0;
};

ComplexitySummary summarize_complexity(const ClassModel& model) {
  ComplexitySummary s;
  s.method_count = static_cast<int>(model.methods.size());
  for (const MethodDecl* m : model.methods) s.wmc += cyclomatic_complexity(*m);
  s.amc = s.method_count == 0 ? 0.0 : static_cast<double>(s.wmc) / s.method_count;
  return s;
}

std::set<std::string> accessed_fields(const MethodDecl& method,
                                      const std::set<std::string>& fields) {
  std::set<std::string> locals(method.body.local_names.begin(), method.body.local_names.end());
  std::set<std::string> out;
  for (const NameUse& use : method.body.name_uses) {
    if (!fields.contains(use.name)) continue;
    if (use.via_this || !locals.contains(use.name)) out.insert(use.name);
  }
  return out;
}

// Own (top-level) methods that are not constructors.
std::vector<const MethodDecl*> own_methods(const TypeDecl& type) {
  std::vector<const MethodDecl*> out;
  for (const auto& m : type.methods) {
    if (!m.is_constructor) out.push_back(&m);
  }
  return out;
}

// For each ancestor-declared method key, the nearest ancestor declaring it.
std::map<MethodKey, const ClassEntry*> nearest_declarations(
    const std::vector<const ClassEntry*>& ancestors) {
  std::map<MethodKey, const ClassEntry*> out;
  for (const ClassEntry* a : ancestors) {
    for (const MethodDecl* m : own_methods(*a->decl)) {
      if (m->modifiers & kPrivate) continue;
      out.emplace(key_of(*m), a);
    }
  }
  return out;
}

}  // namespace

int cyclomatic_complexity(const MethodDecl& method) {
  if (!method.has_body) return 1;
  return 1 + method.body.decisions.total();
}

MetricValues compute_size_metrics(const CompilationUnit& unit, const TypeDecl& type) {
  const ClassModel model = flatten(type);
  MetricValues out;
  out.set(MetricId::LOC, count_lines(unit, type));
  out.set(MetricId::LOCCOM, count_comment_lines(unit, type));

  int npm = 0, nstam = 0;
  for (const MethodDecl* m : model.methods) {
    if (m->modifiers & kPublic) ++npm;
    if (m->modifiers & kStatic) ++nstam;
  }
  int nstaf = 0;
  for (const FieldDecl* f : model.fields) {
    if (f->modifiers & kStatic) ++nstaf;
  }
  out.set(MetricId::NPM, npm);
  out.set(MetricId::NSTAM, nstam);
  out.set(MetricId::NOF, static_cast<double>(model.fields.size()));
  out.set(MetricId::NSTAF, nstaf);

  const auto keys = declared_keys(model.methods);
  const auto calls = all_calls(model);
  int internal = 0;
  for (const Call* c : calls) {
    if (is_self_receiver(*c) && keys.contains(key_of(*c))) ++internal;
  }
  const int total = static_cast<int>(calls.size());
  out.set(MetricId::NMC, total);
  out.set(MetricId::NMCI, internal);
  out.set(MetricId::NMCE, total - internal);
  return out;
}

MetricValues compute_complexity_metrics(const TypeDecl& type) {
  const ClassModel model = flatten(type);
  const ComplexitySummary s = summarize_complexity(model);
  const auto keys = declared_keys(model.methods);
  std::set<MethodKey> invoked;
  for (const Call* c : all_calls(model)) {
    if (!keys.contains(key_of(*c))) invoked.insert(key_of(*c));
  }
  MetricValues out;
  out.set(MetricId::WMC, s.wmc);
  out.set(MetricId::AMC, s.amc);
  out.set(MetricId::RFC, s.method_count + static_cast<double>(invoked.size()));
  return out;
}

MetricValues compute_inheritance_metrics(const ClassEntry& entry, const CorpusIndex& index) {
  const auto ancestors = index.ancestors(entry);
  const ClassEntry& root = ancestors.empty() ? entry : *ancestors.back();
  const int dit = static_cast<int>(ancestors.size()) + (root.external_parent ? 1 : 0);

  double mfa = 0.0;
  if (!ancestors.empty()) {
    const auto own = own_methods(*entry.decl);
    std::set<MethodKey> seen;
    for (const MethodDecl* m : own) seen.insert(key_of(*m));
    int inherited = 0;
    for (const ClassEntry* a : ancestors) {
      for (const MethodDecl* m : own_methods(*a->decl)) {
        if (m->modifiers & kPrivate) continue;
        if (seen.insert(key_of(*m)).second) ++inherited;
      }
    }
    const int denominator = inherited + static_cast<int>(own.size());
    if (denominator > 0) mfa = static_cast<double>(inherited) / denominator;
  }

  MetricValues out;
  out.set(MetricId::DIT, dit);
  out.set(MetricId::NOC, index.child_count(entry.qualified_name));
  out.set(MetricId::MFA, mfa);
  return out;
}

MetricValues compute_coupling_metrics(const ClassEntry& entry, const CorpusIndex& index) {
  const ClassModel model = flatten(*entry.decl);

  std::set<std::string> efferent;
  for (const auto& name : referenced_type_names(model)) efferent.insert(simple_name(name));

  const auto& refs = index.references(entry.qualified_name);
  const auto& back = index.referenced_by(entry.qualified_name);
  std::set<std::string> coupled(refs.begin(), refs.end());
  coupled.insert(back.begin(), back.end());

  // Inheritance-based coupling over corpus-resolved ancestors.
  const auto nearest = nearest_declarations(index.ancestors(entry));
  const TypeDecl& top = *entry.decl;
  std::set<MethodKey> own_keys;
  for (const MethodDecl* m : own_methods(top)) own_keys.insert(key_of(*m));

  std::set<std::string> ic_ancestors;
  int cbm = 0;
  for (const auto& m : top.methods) {
    bool overrides = false;
    if (!m.is_constructor) {
      if (auto it = nearest.find(key_of(m)); it != nearest.end()) {
        overrides = true;
        ic_ancestors.insert(it->second->qualified_name);
      }
    }
    if (overrides || m.body.uses_super_member) ++cbm;
  }
  auto scan_calls = [&](const CodeFacts& facts) {
    for (const Call& c : facts.calls) {
      if (!(is_self_receiver(c) || c.receiver == "super")) continue;
      if (c.receiver != "super" && own_keys.contains(key_of(c))) continue;
      if (auto it = nearest.find(key_of(c)); it != nearest.end()) {
        ic_ancestors.insert(it->second->qualified_name);
      }
    }
  };
  for (const auto& m : top.methods) scan_calls(m.body);
  scan_calls(top.initializers);

  MetricValues out;
  out.set(MetricId::CBO, static_cast<double>(coupled.size()));
  out.set(MetricId::IC, static_cast<double>(ic_ancestors.size()));
  out.set(MetricId::CBM, cbm);
  out.set(MetricId::Ca, static_cast<double>(back.size()));
  out.set(MetricId::Ce, static_cast<double>(efferent.size()));
  return out;
}

MetricValues compute_cohesion_metrics(const TypeDecl& type) {
  const ClassModel model = flatten(type);
  std::set<std::string> field_names;
  for (const FieldDecl* f : model.fields) field_names.insert(f->name);

  std::vector<std::set<std::string>> access;
  access.reserve(model.methods.size());
  for (const MethodDecl* m : model.methods) access.push_back(accessed_fields(*m, field_names));

  long long disjoint = 0, sharing = 0;
  for (std::size_t i = 0; i < access.size(); ++i) {
    for (std::size_t j = i + 1; j < access.size(); ++j) {
      const bool shares = std::any_of(access[i].begin(), access[i].end(),
                                      [&](const std::string& f) { return access[j].contains(f); });
      (shares ? sharing : disjoint) += 1;
    }
  }
  const double lcom = static_cast<double>(std::max(0LL, disjoint - sharing));

  const auto m = static_cast<double>(model.methods.size());
  const auto a = static_cast<double>(field_names.size());
  double lcom3 = 0.0;
  if (m >= 2 && a > 0) {
    double mu_sum = 0.0;
    for (const auto& f : field_names) {
      for (const auto& acc : access) mu_sum += acc.contains(f) ? 1.0 : 0.0;
    }
    lcom3 = (m - mu_sum / a) / (m - 1.0);
  }

  std::vector<std::set<std::string>> param_types;
  std::set<std::string> all_types;
  for (const MethodDecl* method : model.methods) {
    std::set<std::string> types;
    for (const auto& p : method->parameters) types.insert(p.type.text);
    all_types.insert(types.begin(), types.end());
    param_types.push_back(std::move(types));
  }
  double cam = 1.0;
  if (m > 0 && !all_types.empty()) {
    double sum = 0.0;
    for (const auto& types : param_types) sum += static_cast<double>(types.size());
    cam = sum / (m * static_cast<double>(all_types.size()));
  }

  MetricValues out;
  out.set(MetricId::LCOM, lcom);
  out.set(MetricId::LCOM3, lcom3);
  out.set(MetricId::CAM, cam);
  return out;
}

MetricValues compute_encapsulation_metrics(const TypeDecl& type) {
  const ClassModel model = flatten(type);
  int hidden = 0, private_fields = 0;
  for (const FieldDecl* f : model.fields) {
    if (f->modifiers & (kPrivate | kProtected)) ++hidden;
    if (f->modifiers & kPrivate) ++private_fields;
  }
  int private_methods = 0, protected_methods = 0;
  for (const MethodDecl* m : model.methods) {
    if (m->modifiers & kPrivate) ++private_methods;
    if (m->modifiers & kProtected) ++protected_methods;
  }
  MetricValues out;
  out.set(MetricId::DAM, model.fields.empty()
                             ? 1.0
                             : static_cast<double>(hidden) / static_cast<double>(model.fields.size()));
  out.set(MetricId::NPRIF, private_fields);
  out.set(MetricId::NPRIM, private_methods);
  out.set(MetricId::NPROM, protected_methods);
  return out;
}

MetricValues compute_test_effort_metrics(const CompilationUnit& unit, const TypeDecl& test_type) {
  const ClassModel model = flatten(test_type);
  const ComplexitySummary s = summarize_complexity(model);
  int tests = 0;
  for (const MethodDecl* m : model.methods) {
    const bool annotated =
        std::find(m->annotations.begin(), m->annotations.end(), "Test") != m->annotations.end();
    if (annotated || m->name.starts_with("test")) ++tests;
  }
  const auto calls = all_calls(model);
  int assertions = 0;
  for (const Call* c : calls) {
    if (c->name.starts_with("assert") || c->name == "fail") ++assertions;
  }
  MetricValues out;
  out.set(MetricId::T_LOC, count_lines(unit, test_type));
  out.set(MetricId::T_NOT, tests);
  out.set(MetricId::T_NOA, assertions);
  out.set(MetricId::T_NMC, static_cast<double>(calls.size()));
  out.set(MetricId::T_WMC, s.wmc);
  out.set(MetricId::T_AMC, s.amc);
  return out;
}

MetricValues compute_code_metrics(const ClassEntry& entry, const CorpusIndex& index) {
  MetricValues out;
  auto merge = [&](const MetricValues& part) {
    for (MetricId id : all_metrics()) {
      if (auto v = part.get(id)) out.set(id, *v);
    }
  };
  merge(compute_size_metrics(*entry.unit, *entry.decl));
  merge(compute_complexity_metrics(*entry.decl));
  merge(compute_inheritance_metrics(entry, index));
  merge(compute_coupling_metrics(entry, index));
  merge(compute_cohesion_metrics(*entry.decl));
  merge(compute_encapsulation_metrics(*entry.decl));
  return out;
}

}  // namespace testability::java
