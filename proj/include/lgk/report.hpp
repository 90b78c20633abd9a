#pragma once

#include <string>
#include <vector>

namespace lgk {

// A named pass/fail item with an optional witness.
struct Check {
  std::string name;
  bool ok = true;
  std::string witness;
};

struct CheckList {
  std::vector<Check> items;

  void add(std::string name, bool ok, std::string witness = {}) {
    items.push_back({std::move(name), ok, ok ? std::string() : std::move(witness)});
  }
  bool ok() const {
    for (const auto& c : items)
      if (!c.ok) return false;
    return true;
  }
  const Check* first_failure() const {
    for (const auto& c : items)
      if (!c.ok) return &c;
    return nullptr;
  }
};

}  // namespace lgk
