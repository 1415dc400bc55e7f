#include "kni/app/report.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "kni/errors.hpp"

namespace kni::app {

namespace {

void write(const ReportNode& n, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(2 * depth), ' ');
  out += n.key;
  out += ':';
  if (!n.value.empty()) out += ' ' + n.value;
  out += '\n';
  for (const auto& c : n.children) write(c, depth + 1, out);
}

const std::set<std::string>& schema_set() {
  static const std::set<std::string> s(Report::schema().begin(), Report::schema().end());
  return s;
}

}  // namespace

ReportNode& ReportNode::add(std::string k, std::string v) {
  if (k.empty() || k.find_first_of(": \n") != std::string::npos) throw Error("report key '" + k + "' is not a bare word");
  for (char& ch : v)
    if (ch == '\n') ch = ' ';
  children.push_back({std::move(k), std::move(v), {}});
  return children.back();
}

const ReportNode* ReportNode::find(std::string_view k) const {
  for (const auto& c : children)
    if (c.key == k) return &c;
  return nullptr;
}

std::string ReportNode::get(std::string_view path) const {
  const ReportNode* n = this;
  while (!path.empty()) {
    const auto slash = path.find('/');
    n = n->find(path.substr(0, slash));
    if (!n) return {};
    path = slash == std::string_view::npos ? std::string_view{} : path.substr(slash + 1);
  }
  return n->value;
}

std::string Report::serialize() const {
  std::string out = "kni-report " + std::to_string(kVersion) + "\n";
  for (const auto& c : root.children) write(c, 0, out);
  return out;
}

std::string Report::serialize_without_timings() const {
  Report r = *this;
  r.root.children.remove_if([](const ReportNode& n) { return n.key == "timings"; });
  return r.serialize();
}

Report Report::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line.rfind("kni-report ", 0) != 0) throw ParseError("report: missing header", 0);
  if (line != "kni-report " + std::to_string(kVersion)) throw ParseError("report: unsupported version '" + line.substr(11) + "'", 11);
  Report r;
  std::vector<ReportNode*> stack = {&r.root};
  std::vector<std::string> path;
  std::size_t offset = line.size() + 1;
  while (std::getline(in, line)) {
    const std::size_t at = offset;
    offset += line.size() + 1;
    if (line.empty()) continue;
    const std::size_t indent = line.find_first_not_of(' ');
    if (indent == std::string::npos || indent % 2) throw ParseError("report: bad indentation", at);
    const std::size_t depth = indent / 2;
    if (depth + 1 > stack.size()) throw ParseError("report: indentation jumps a level", at);
    const auto colon = line.find(':', indent);
    if (colon == std::string::npos) throw ParseError("report: expected 'key: value'", at);
    const std::string key = line.substr(indent, colon - indent);
    std::string value = line.substr(colon + 1);
    if (!value.empty()) {
      if (value[0] != ' ') throw ParseError("report: expected a space after ':'", at + colon);
      value.erase(0, 1);
    }
    stack.resize(depth + 1);
    path.resize(depth);
    path.push_back(key);
    std::string joined;
    for (const auto& p : path) joined += (joined.empty() ? "" : "/") + p;
    if (!schema_set().count(joined)) throw ParseError("report: unknown field '" + joined + "'", at + indent);
    stack.push_back(&stack.back()->add(key, value));
  }
  return r;
}

const std::vector<std::string>& Report::schema() {
  static const std::vector<std::string> s = {
#include "report_schema.inc"
  };
  return s;
}

}  // namespace kni::app
