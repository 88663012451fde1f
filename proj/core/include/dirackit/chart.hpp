#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dirackit {

// An ordered list of coordinate names on R^n. Charts are immutable and cheap
// to copy; every scalar, tensor and map in the engine is tied to one, and all
// binary operations require the charts to agree (same names, same order).
class Chart {
 public:
  Chart() : vars_(std::make_shared<const std::vector<std::string>>()) {}
  explicit Chart(std::vector<std::string> vars);

  std::size_t dim() const { return vars_->size(); }
  const std::vector<std::string>& vars() const { return *vars_; }
  const std::string& var(std::size_t i) const { return (*vars_)[i]; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool operator==(const Chart& o) const {
    return vars_ == o.vars_ || *vars_ == *o.vars_;
  }
  bool operator!=(const Chart& o) const { return !(*this == o); }

 private:
  std::shared_ptr<const std::vector<std::string>> vars_;
};

// Throws Error unless the two charts agree; `where` names the operation.
void require_same_chart(const Chart& a, const Chart& b, const char* where);

}  // namespace dirackit
