#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pcs/precubical.hpp"

namespace pcs {

/// Accumulates the human-readable body and the trailing machine
/// section of a command report. Keys appear in insertion order, so
/// output is deterministic.
class Report {
 public:
  void line(const std::string& text) { lines_.push_back(text); }

  template <typename V>
  void kv(const std::string& key, const V& value) {
    std::ostringstream s;
    s << value;
    kvs_.push_back({key, s.str()});
  }

  void instance_summary(const PrecubicalSet& x, const std::string& origin) {
    std::ostringstream cells;
    for (int d = 0; d <= x.max_dim(); ++d) {
      if (d) cells << " ";
      cells << "dim" << d << "=" << x.count(d);
    }
    line("instance: " + origin);
    line("cells: " + (x.total_cells() ? cells.str() : std::string("none")));
    kv("instance", origin);
    for (int d = 0; d <= x.max_dim(); ++d) kv("n" + std::to_string(d), x.count(d));
  }

  std::string str() const {
    std::ostringstream out;
    for (const std::string& l : lines_) out << l << "\n";
    out << "#kv\n";
    for (const auto& [k, v] : kvs_) out << k << "=" << v << "\n";
    return out.str();
  }

 private:
  std::vector<std::string> lines_;
  std::vector<std::pair<std::string, std::string>> kvs_;
};

}  // namespace pcs
