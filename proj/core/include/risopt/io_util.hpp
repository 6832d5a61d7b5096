#pragma once

// Small file and formatting helpers shared by the IO layers: deterministic
// content hashing for manifests, whole-file reads with uniform error
// reporting, and the fixed float format used in CSV artifacts.

#include <cstdint>
#include <string>

namespace risopt {

// FNV-1a over the raw bytes.  Stable across platforms, used to fingerprint
// input files in run manifests and trained-model provenance.
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64_append(std::uint64_t state, const void* data,
                             std::size_t size);
inline constexpr std::uint64_t kFnv1a64Seed = 14695981039346656037ull;

// "fnv1a64:<16 hex digits>" of a file's content.  io failures throw
// std::runtime_error (the CLI maps those to its IO exit code).
std::string hash_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Shortest-faithful decimal with 9 significant digits, the CSV float format.
std::string format_csv_double(double value);

}  // namespace risopt
