#pragma once

#include <list>
#include <string>
#include <string_view>
#include <vector>

namespace kni::app {

/// Key-indented tree: each line is "<2*depth spaces>key: value".
/// Repeated entries use the key "item".
struct ReportNode {
  std::string key;
  std::string value;
  std::list<ReportNode> children;

  ReportNode& add(std::string k, std::string v = {});
  const ReportNode* find(std::string_view k) const;
  /// Value at a '/'-separated path of first matches; empty when missing.
  std::string get(std::string_view path) const;
};

class Report {
 public:
  static constexpr int kVersion = 1;

  ReportNode root;

  /// "kni-report <version>" header, then the tree.
  std::string serialize() const;
  /// Rejects other versions, bad indentation and keys outside the schema.
  static Report parse(std::string_view text);
  /// Serialization with the timings section removed.
  std::string serialize_without_timings() const;

  /// '/'-separated key paths accepted by parse ("item" for list entries).
  static const std::vector<std::string>& schema();
};

}  // namespace kni::app
