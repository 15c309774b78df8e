#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cselect {

enum class OpInput { None, Elem, Index };
enum class OpOutput { Unit, Bool, Size, OptElem };

// Shape of an interface operation, e.g. `mutator(elem) -> unit`.
struct OpShape {
  bool mutator = false;
  OpInput input = OpInput::None;
  OpOutput output = OpOutput::Unit;

  bool has_aux() const { return input != OpInput::None; }
  // Whether the model operation returns (list, value) rather than a list.
  bool paired() const { return output != OpOutput::Unit; }

  friend bool operator==(const OpShape&, const OpShape&) = default;
};

inline std::string to_string(const OpShape& s) {
  std::string out = s.mutator ? "mutator(" : "observer(";
  out += s.input == OpInput::Elem ? "elem" : s.input == OpInput::Index ? "index" : "";
  out += ") -> ";
  switch (s.output) {
    case OpOutput::Unit: out += "unit"; break;
    case OpOutput::Bool: out += "bool"; break;
    case OpOutput::Size: out += "size"; break;
    case OpOutput::OptElem: out += "elem?"; break;
  }
  return out;
}

struct OperationSig {
  std::string name;
  OpShape shape;
};

// A named set of operation signatures (a syntactic property).
struct InterfaceSig {
  std::string name;
  std::vector<OperationSig> operations;

  const OperationSig* find(const std::string& op) const {
    for (const auto& o : operations) {
      if (o.name == op) return &o;
    }
    return nullptr;
  }
};

class InterfaceRegistry {
 public:
  InterfaceRegistry() = default;
  explicit InterfaceRegistry(std::vector<InterfaceSig> sigs) {
    for (auto& s : sigs) add(std::move(s));
  }

  void add(InterfaceSig sig) {
    std::string name = sig.name;
    by_name_[name] = std::move(sig);
  }

  const InterfaceSig* find(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? nullptr : &it->second;
  }

  // Interface names (in registry order) declaring an operation `op`.
  std::vector<std::string> owners_of(const std::string& op) const {
    std::vector<std::string> out;
    for (const auto& [name, sig] : by_name_) {
      if (sig.find(op)) out.push_back(name);
    }
    return out;
  }

  std::vector<const InterfaceSig*> all() const {
    std::vector<const InterfaceSig*> out;
    for (const auto& [_, sig] : by_name_) out.push_back(&sig);
    return out;
  }

  bool empty() const { return by_name_.empty(); }

 private:
  std::map<std::string, InterfaceSig> by_name_;
};

}  // namespace cselect
