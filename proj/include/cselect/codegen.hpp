#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "cselect/library_spec.hpp"
#include "cselect/typecheck.hpp"

// Program generation. A project is a directory with a manifest
//
//   { "project": "unique_elements", "spec": "unique.prs", "sources": ["main.cpp"] }
//
// whose sources include "cselect_types.hpp" and use the declared container
// type names directly (e.g. `UniqueCon<int> s;`). For every choice of
// implementation a variant directory is produced holding copies of the
// sources and a generated cselect_types.hpp in which each declared type is a
// class template wrapping the chosen container and exposing only the
// operations of its declared interfaces.
namespace cselect {

struct ProjectManifest {
  std::string project;
  std::filesystem::path root;
  std::filesystem::path spec;
  std::vector<std::filesystem::path> sources;  // relative to root
};

struct CodegenError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline ProjectManifest load_manifest(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw CodegenError(path.string() + ": " + e.what());
  }
  ProjectManifest m;
  m.root = path.parent_path();
  try {
    m.project = j.at("project").get<std::string>();
    m.spec = m.root / j.at("spec").get<std::string>();
    for (const auto& s : j.at("sources")) m.sources.emplace_back(s.get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw CodegenError(path.string() + ": " + e.what());
  }
  if (m.sources.empty()) throw CodegenError(path.string() + ": no sources");
  return m;
}

struct SourceDiagnostic {
  std::string file;
  int line = 0;
  int column = 0;
  std::string type;
  std::string op;
  std::string message;
};

inline std::string format(const SourceDiagnostic& d) {
  return d.file + ":" + std::to_string(d.line) + ":" + std::to_string(d.column) +
         ": SourceUsesUndeclaredOp: " + d.message;
}

// Operations visible through a declared type: the union over its bounds.
inline std::vector<OperationSig> exposed_operations(const ContainerTypeDecl& decl,
                                                    const InterfaceRegistry& ifaces) {
  std::vector<OperationSig> out;
  for (const auto& b : decl.bounds) {
    const InterfaceSig* sig = ifaces.find(b);
    if (!sig) throw CodegenError("unknown interface '" + b + "'");
    for (const auto& op : sig->operations) {
      bool dup = std::any_of(out.begin(), out.end(), [&](const OperationSig& o) { return o.name == op.name; });
      if (!dup) out.push_back(op);
    }
  }
  return out;
}

// Lexical check that every member call on a variable of a declared type
// names an exposed operation. Recognises declarations `Type<...> name` and
// `auto name = Type<...>`.
inline std::vector<SourceDiagnostic> scan_source(const std::string& text, const std::string& file,
                                                 const std::map<std::string, std::set<std::string>>& exposed) {
  std::vector<SourceDiagnostic> out;
  std::map<std::string, std::string> vars;  // variable -> declared type
  for (const auto& [type, _] : exposed) {
    std::regex decl("\\b" + type + "\\s*<[^;{}()]*>\\s*&?\\s*([A-Za-z_]\\w*)");
    std::regex auto_decl("\\bauto\\s+([A-Za-z_]\\w*)\\s*=\\s*" + type + "\\s*<");
    for (const auto* re : {&decl, &auto_decl}) {
      for (std::sregex_iterator it(text.begin(), text.end(), *re), end; it != end; ++it) {
        vars[(*it)[1].str()] = type;
      }
    }
  }
  if (vars.empty()) return out;
  std::vector<std::size_t> line_starts{0};
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\n') line_starts.push_back(i + 1);
  }
  std::regex call("\\b([A-Za-z_]\\w*)\\s*(?:\\.|->)\\s*([A-Za-z_]\\w*)\\s*\\(");
  for (std::sregex_iterator it(text.begin(), text.end(), call), end; it != end; ++it) {
    auto v = vars.find((*it)[1].str());
    if (v == vars.end()) continue;
    const std::string op = (*it)[2].str();
    if (exposed.at(v->second).count(op)) continue;
    auto offset = static_cast<std::size_t>(it->position(2));
    auto line_it = std::upper_bound(line_starts.begin(), line_starts.end(), offset) - 1;
    int line = static_cast<int>(line_it - line_starts.begin()) + 1;
    int col = static_cast<int>(offset - *line_it) + 1;
    out.push_back({file, line, col, v->second, op,
                   "'" + op + "' is not an operation of " + v->second + "'s declared interfaces"});
  }
  return out;
}

namespace detail {

inline std::string render_method(const OperationSig& op, const std::string& member) {
  const OpShape& s = op.shape;
  std::string ret;
  switch (s.output) {
    case OpOutput::Unit: ret = "void"; break;
    case OpOutput::Bool: ret = "bool"; break;
    case OpOutput::Size: ret = "std::size_t"; break;
    case OpOutput::OptElem: ret = "std::optional<T>"; break;
  }
  std::string param, arg;
  if (s.input == OpInput::Elem) {
    param = "const T& x";
    arg = "x";
  } else if (s.input == OpInput::Index) {
    param = "std::size_t n";
    arg = "n";
  }
  std::string body = s.output == OpOutput::Unit ? member + "." + op.name + "(" + arg + ");"
                                                 : "return " + member + "." + op.name + "(" + arg + ");";
  return "  " + ret + " " + op.name + "(" + param + ")" + (s.mutator ? "" : " const") + " { " + body + " }\n";
}

}  // namespace detail

// Source of cselect_types.hpp for one assignment of implementations to
// declared types.
inline std::string render_types_header(const TypedSpec& spec, const InterfaceRegistry& ifaces,
                                       const std::map<std::string, std::string>& choice) {
  std::string out =
      "// Generated. Do not edit.\n#pragma once\n\n#include <cstddef>\n#include <optional>\n\n"
      "#include \"cselect/containers.hpp\"\n";
  for (const auto& t : spec.types) {
    auto it = choice.find(t.decl.name);
    if (it == choice.end()) throw CodegenError("no implementation chosen for " + t.decl.name);
    out += "\n// " + t.decl.name + " = " + it->second + "; " + print(t.decl) + "\n";
    out += "template <class T>\nclass " + t.decl.name + " {\n public:\n";
    for (const auto& op : exposed_operations(t.decl, ifaces)) out += detail::render_method(op, "impl_");
    out += "\n private:\n  cselect::" + it->second + "<T> impl_;\n};\n";
  }
  return out;
}

struct Variant {
  std::string name;
  std::map<std::string, std::string> choice;  // declared type -> implementation
  std::filesystem::path dir;
};

// One variant per element of the product of the valid sets, named by the
// chosen implementations.
inline std::vector<std::map<std::string, std::string>> variant_choices(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& valid) {
  std::vector<std::map<std::string, std::string>> out{{}};
  for (const auto& [type, impls] : valid) {
    std::vector<std::map<std::string, std::string>> next;
    for (const auto& partial : out) {
      for (const auto& impl : impls) {
        auto m = partial;
        m[type] = impl;
        next.push_back(std::move(m));
      }
    }
    out = std::move(next);
  }
  return out;
}

inline std::string variant_name(const std::map<std::string, std::string>& choice,
                                const TypedSpec& spec) {
  std::string name;
  for (const auto& t : spec.types) {
    if (!name.empty()) name += "_";
    name += choice.at(t.decl.name);
  }
  return name;
}

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << content;
  if (!out) throw CodegenError("cannot write " + p.string());
}

struct GenerateOptions {
  bool check_sources = true;
};

struct GenerateResult {
  std::vector<Variant> variants;
  std::vector<SourceDiagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

// Writes `out_dir/<variant>/` for every choice. Nothing is written when the
// sources use an operation outside the declared interfaces.
inline GenerateResult generate(const ProjectManifest& project, const TypedSpec& spec,
                               const InterfaceRegistry& ifaces,
                               const std::vector<std::map<std::string, std::string>>& choices,
                               const std::filesystem::path& out_dir, const GenerateOptions& opts = {}) {
  GenerateResult result;
  std::map<std::string, std::set<std::string>> exposed;
  for (const auto& t : spec.types) {
    for (const auto& op : exposed_operations(t.decl, ifaces)) exposed[t.decl.name].insert(op.name);
  }
  std::vector<std::pair<std::filesystem::path, std::string>> sources;
  for (const auto& rel : project.sources) {
    std::string text = read_file(project.root / rel);
    if (opts.check_sources) {
      auto d = scan_source(text, (project.root / rel).string(), exposed);
      result.diagnostics.insert(result.diagnostics.end(), d.begin(), d.end());
    }
    sources.emplace_back(rel, std::move(text));
  }
  if (!result.ok()) return result;
  for (const auto& choice : choices) {
    Variant v{variant_name(choice, spec), choice, out_dir / variant_name(choice, spec)};
    write_file(v.dir / "cselect_types.hpp", render_types_header(spec, ifaces, choice));
    for (const auto& [rel, text] : sources) write_file(v.dir / rel, text);
    result.variants.push_back(std::move(v));
  }
  return result;
}

inline std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

// Runs a shell command, capturing stdout and stderr.
inline int run_command(const std::string& cmd, std::string* output = nullptr) {
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) return -1;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
    if (output) output->append(buf, n);
  }
  int status = pclose(pipe);
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
}

struct BuildConfig {
  std::string compiler;
  std::filesystem::path include_dir;  // directory containing cselect/
  std::string flags = "-std=c++20 -O2";
};

struct BuildResult {
  std::string variant;
  bool ok = false;
  std::filesystem::path binary;
  std::string log;
};

inline BuildResult build_variant(const Variant& v, const ProjectManifest& project, const BuildConfig& cfg) {
  BuildResult r{v.name, false, v.dir / "program", {}};
  std::string cmd = shell_quote(cfg.compiler) + " " + cfg.flags + " -I" + shell_quote(v.dir.string()) +
                    " -I" + shell_quote(cfg.include_dir.string());
  for (const auto& src : project.sources) {
    if (src.extension() == ".cpp" || src.extension() == ".cc") cmd += " " + shell_quote((v.dir / src).string());
  }
  cmd += " -o " + shell_quote(r.binary.string());
  r.ok = run_command(cmd, &r.log) == 0;
  return r;
}

}  // namespace cselect
