#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace kni::data {

// Shipped fixture files, embedded at build time from data/.
extern const std::string_view kSchwarzTable;
extern const std::string_view kHypPrinted;
extern const std::string_view kHypVariant;
extern const std::string_view kA3Printed;
extern const std::string_view kChecksums;

/// FNV-1a 64-bit.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

/// Checks `content` against the entry for `name` in the checksum list;
/// throws kni::Error on mismatch or a missing entry.
void verify_checksum(std::string_view name, std::string_view content);

/// Embedded file by name ("schwarz_table.txt", "hyp_printed.op", ...),
/// checksum verified.
std::string_view fixture(std::string_view name);

}  // namespace kni::data
