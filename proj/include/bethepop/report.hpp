#pragma once

#include <string>
#include <vector>

namespace bp {

struct CheckItem {
  std::string name;
  bool pass = true;
  std::string detail;
};

// a flat list of named pass/fail checks; values are optional numeric diagnostics
struct Report {
  std::vector<CheckItem> items;

  void add(std::string name, bool pass, std::string detail = {}) {
    items.push_back({std::move(name), pass, std::move(detail)});
  }
  void merge(const Report& o, const std::string& prefix = {}) {
    for (const auto& it : o.items) items.push_back({prefix + it.name, it.pass, it.detail});
  }
  bool pass() const {
    for (const auto& it : items)
      if (!it.pass) return false;
    return true;
  }
  size_t failures() const {
    size_t n = 0;
    for (const auto& it : items) n += !it.pass;
    return n;
  }
};

}  // namespace bp
