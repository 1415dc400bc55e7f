#include "kni/data.hpp"

#include <cstdio>
#include <sstream>

#include "kni/errors.hpp"

namespace kni::data {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void verify_checksum(std::string_view name, std::string_view content) {
  std::istringstream in{std::string(kChecksums)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string sum, file;
    ls >> sum >> file;
    if (file != name) continue;
    const std::string actual = hex64(fnv1a64(content));
    if (sum != actual) throw Error("fixture " + std::string(name) + ": checksum " + actual + " != " + sum);
    return;
  }
  throw Error("fixture " + std::string(name) + ": no checksum entry");
}

std::string_view fixture(std::string_view name) {
  std::string_view text;
  if (name == "schwarz_table.txt") text = kSchwarzTable;
  else if (name == "hyp_printed.op") text = kHypPrinted;
  else if (name == "hyp_variant.op") text = kHypVariant;
  else if (name == "a3_printed.sys") text = kA3Printed;
  else throw Error("unknown fixture " + std::string(name));
  verify_checksum(name, text);
  return text;
}

}  // namespace kni::data
