#include "testability/java/extractor.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "testability/classfile/archive.hpp"
#include "testability/core/errors.hpp"
#include "testability/core/parallel.hpp"
#include "testability/java/metrics.hpp"
#include "testability/java/parser.hpp"

namespace testability::java {
namespace fs = std::filesystem;
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("InputError", "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> files_with_extension(const fs::path& root, std::string_view ext) {
  std::vector<fs::path> out;
  if (fs::is_regular_file(root)) {
    if (root.extension() == ext) out.push_back(root);
    return out;
  }
  if (!fs::is_directory(root)) throw Error("InputError", "no such directory: " + root.string());
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file() && e.path().extension() == ext) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <typename In, typename Fn>
auto parallel_map(const std::vector<In>& items, Fn fn) {
  return parallel_for_index(items.size(), [&](std::size_t i) { return fn(items[i]); });
}

}  // namespace

std::vector<TestPair> parse_pairs(std::string_view text, const std::string& path) {
  std::vector<TestPair> out;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error("InputError", path + ":" + std::to_string(line_no) + ": expected 'class,test'");
    }
    TestPair pair{trim(std::string_view(line).substr(0, comma)),
                  trim(std::string_view(line).substr(comma + 1))};
    if (pair.first.empty() || pair.second.empty()) {
      throw Error("InputError", path + ":" + std::to_string(line_no) + ": empty class id");
    }
    if (!seen.insert(pair.first).second) {
      throw DuplicateRecord(path + ":" + std::to_string(line_no) + ": " + pair.first +
                            " paired twice");
    }
    out.push_back(std::move(pair));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TestPair> pair_by_convention(const std::vector<std::string>& declared) {
  const std::set<std::string> names(declared.begin(), declared.end());
  std::set<std::string> tests;
  std::vector<TestPair> out;
  for (const std::string& name : names) {
    const auto dot = name.rfind('.');
    const std::string pkg = dot == std::string::npos ? "" : name.substr(0, dot + 1);
    const std::string simple = name.substr(pkg.size());
    for (const std::string& candidate : {pkg + simple + "Test", pkg + "Test" + simple}) {
      if (names.contains(candidate)) {
        out.emplace_back(name, candidate);
        tests.insert(candidate);
        break;
      }
    }
  }
  // A test class never counts as production, even if something tests it.
  std::erase_if(out, [&](const TestPair& p) { return tests.contains(p.first); });
  return out;
}

std::map<std::string, double> nbi_table(const std::vector<fs::path>& class_dirs,
                                        const classfile::ReaderOptions& reader) {
  struct Blob {
    std::string origin;
    std::vector<std::uint8_t> bytes;
  };
  std::vector<Blob> blobs;
  for (const fs::path& root : class_dirs) {
    for (const fs::path& p : files_with_extension(root, ".class")) {
      blobs.push_back({p.string(), classfile::read_file_bytes(p)});
    }
    for (const fs::path& jar : files_with_extension(root, ".jar")) {
      const auto bytes = classfile::read_file_bytes(jar);
      for (auto& entry : classfile::read_class_entries(bytes)) {
        blobs.push_back({jar.string() + "!" + entry.name, std::move(entry.bytes)});
      }
    }
  }
  const auto summaries = parallel_map(blobs, [&](const Blob& b) {
    try {
      return classfile::parse_classfile(b.bytes, reader);
    } catch (const MalformedClassFile& e) {
      throw MalformedClassFile(b.origin + ": " + e.what());
    } catch (const UnsupportedMajorVersion& e) {
      throw UnsupportedMajorVersion(b.origin + ": " + e.what());
    }
  });
  std::map<std::string, double> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    if (!seen.insert(summaries[i].class_name).second) {
      throw DuplicateClass("class file for " + summaries[i].class_name + " found twice (" +
                           blobs[i].origin + ")");
    }
    out[classfile::top_level_name(summaries[i].class_name)] +=
        static_cast<double>(classfile::count_nbi(summaries[i]));
  }
  return out;
}

std::vector<CompilationUnit> parse_tree(const std::vector<fs::path>& roots) {
  std::vector<fs::path> files;
  for (const fs::path& root : roots) {
    auto found = files_with_extension(root, ".java");
    files.insert(files.end(), found.begin(), found.end());
  }
  std::sort(files.begin(), files.end());
  return parallel_map(files, [](const fs::path& p) {
    return parse_source(read_text(p), p.generic_string());
  });
}

std::vector<ClassRecord> extract_records(std::vector<CompilationUnit> units,
                                         const std::vector<TestPair>& pairs,
                                         const std::map<std::string, double>* nbi) {
  std::set<std::string> tests;
  for (const auto& [prod, test] : pairs) tests.insert(test);
  const CorpusIndex index = CorpusIndex::build(std::move(units), tests);

  std::vector<ClassRecord> out;
  for (const auto& [prod, test] : pairs) {
    const ClassEntry* entry = index.find(prod);
    if (entry == nullptr) {
      throw Error("InputError", "paired class " + prod + " is not declared in the corpus" +
                                    (tests.contains(prod) ? " as production code" : ""));
    }
    const ClassEntry* test_entry = index.find_declaration(test);
    if (test_entry == nullptr) {
      throw Error("InputError", "test class " + test + " is not declared in the corpus");
    }
    ClassRecord record{prod, test, compute_code_metrics(*entry, index)};
    const MetricValues effort = compute_test_effort_metrics(*test_entry->unit, *test_entry->decl);
    for (MetricId id : all_metrics()) {
      if (auto v = effort.get(id)) record.metrics.set(id, *v);
    }
    if (nbi != nullptr) {
      const auto it = nbi->find(prod);
      if (it == nbi->end()) throw Error("InputError", "no class file found for " + prod);
      record.metrics.set(MetricId::NBI, it->second);
    }
    out.push_back(std::move(record));
  }
  std::sort(out.begin(), out.end(),
            [](const ClassRecord& a, const ClassRecord& b) { return a.class_id < b.class_id; });
  return out;
}

std::vector<ClassRecord> extract(const ExtractOptions& options) {
  std::vector<CompilationUnit> units = parse_tree(options.source_dirs);
  std::vector<TestPair> pairs;
  if (options.pairs_file) {
    pairs = parse_pairs(read_text(*options.pairs_file), options.pairs_file->string());
  } else {
    std::vector<std::string> declared;
    for (const auto& unit : units) {
      for (const auto& type : unit.types) declared.push_back(unit.qualified_name(*type));
    }
    pairs = pair_by_convention(declared);
  }
  if (pairs.empty()) throw Error("InputError", "no classes found");
  std::optional<std::map<std::string, double>> nbi;
  if (!options.class_dirs.empty()) nbi = nbi_table(options.class_dirs, options.reader);
  return extract_records(std::move(units), pairs, nbi ? &*nbi : nullptr);
}

}  // namespace testability::java
