#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace fatlab {

struct Violation {
  std::string property;  // statement that failed, in words
  std::string witness;   // smallest data reproducing the failure
};

struct Report {
  std::size_t checked = 0;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void fail(std::string property, std::string witness) {
    violations.push_back({std::move(property), std::move(witness)});
  }
  void merge(const Report& o) {
    checked += o.checked;
    violations.insert(violations.end(), o.violations.begin(), o.violations.end());
  }
};

}  // namespace fatlab
