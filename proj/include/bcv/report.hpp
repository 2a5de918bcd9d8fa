#pragma once

#include <map>
#include <string>
#include <vector>

namespace bcv {

struct Check {
  std::string name;
  double residual = 0;
  double tol = 0;
  bool passed() const { return residual <= tol; }
};

/// Named max-residual checks plus the convention constants that produced them.
struct Report {
  std::vector<Check> checks;
  std::map<std::string, std::string> conventions;

  /// Max-merges `residual` into the check called `name`, creating it with `tol`.
  void record(const std::string& name, double residual, double tol);
  const Check* find(const std::string& name) const;
  double residual(const std::string& name) const;
  bool passed() const;
  void merge(const Report& other);
};

}  // namespace bcv
