#include "bcv/report.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bcv {

void Report::record(const std::string& name, double residual, double tol) {
  for (auto& c : checks) {
    if (c.name == name) {
      // NaN must never hide behind a max
      c.residual = (std::isnan(residual) || std::isnan(c.residual)) ? NAN : std::max(c.residual, residual);
      return;
    }
  }
  checks.push_back({name, residual, tol});
}

const Check* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

double Report::residual(const std::string& name) const {
  const Check* c = find(name);
  if (!c) throw std::out_of_range("no check named '" + name + "'");
  return c->residual;
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

void Report::merge(const Report& other) {
  for (const auto& c : other.checks) record(c.name, c.residual, c.tol);
  for (const auto& [k, v] : other.conventions) conventions[k] = v;
}

}  // namespace bcv
