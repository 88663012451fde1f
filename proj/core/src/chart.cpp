#include "dirackit/chart.hpp"

#include <set>

#include "dirackit/error.hpp"

namespace dirackit {

Chart::Chart(std::vector<std::string> vars) {
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (v.empty()) throw Error("chart: empty variable name");
    if (!seen.insert(v).second)
      throw Error("chart: duplicate variable name '" + v + "'");
  }
  vars_ = std::make_shared<const std::vector<std::string>>(std::move(vars));
}

std::optional<std::size_t> Chart::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_->size(); ++i)
    if ((*vars_)[i] == name) return i;
  return std::nullopt;
}

void require_same_chart(const Chart& a, const Chart& b, const char* where) {
  if (a != b) throw Error(std::string(where) + ": charts differ");
}

}  // namespace dirackit
