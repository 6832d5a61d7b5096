#include "risopt/io_util.hpp"

#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>

#include <gtest/gtest.h>

namespace risopt {
namespace {

TEST(Fnv1a64, KnownTestVectors) {
  // Published FNV-1a 64-bit reference values.
  EXPECT_EQ(fnv1a64("", 0), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a", 1), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(fnv1a64("foobar", 6), 0x85944171f73967e8ull);
  EXPECT_EQ(kFnv1a64Seed, 0xcbf29ce484222325ull);
}

TEST(Fnv1a64, AppendIsIncremental) {
  const char* text = "hello world";
  const std::uint64_t whole = fnv1a64(text, 11);
  std::uint64_t split = fnv1a64_append(kFnv1a64Seed, text, 5);
  split = fnv1a64_append(split, text + 5, 6);
  EXPECT_EQ(whole, split);
}

TEST(TextFileIo, RoundTripsAndHashes) {
  const std::string path =
      (std::filesystem::path(testing::TempDir()) / "risopt_io_test.txt")
          .string();
  const std::string content = "line one\nline two\n";
  write_text_file(path, content);
  EXPECT_EQ(read_text_file(path), content);

  const std::string digest = hash_file(path);
  ASSERT_EQ(digest.size(), std::string("fnv1a64:").size() + 16);
  EXPECT_EQ(digest.rfind("fnv1a64:", 0), 0u);
  char expected[32];
  std::snprintf(expected, sizeof expected, "fnv1a64:%016llx",
                static_cast<unsigned long long>(
                    fnv1a64(content.data(), content.size())));
  EXPECT_EQ(digest, expected);
  std::filesystem::remove(path);
}

TEST(TextFileIo, MissingFilesRaise) {
  EXPECT_THROW(read_text_file("/nonexistent/risopt/file.txt"),
               std::runtime_error);
  EXPECT_THROW(hash_file("/nonexistent/risopt/file.txt"), std::runtime_error);
  EXPECT_THROW(write_text_file("/nonexistent/risopt/file.txt", "x"),
               std::runtime_error);
}

TEST(FormatCsvDouble, NineSignificantDigits) {
  EXPECT_EQ(format_csv_double(0.0), "0");
  EXPECT_EQ(format_csv_double(1.0), "1");
  EXPECT_EQ(format_csv_double(0.1), "0.1");
  EXPECT_EQ(format_csv_double(-2.5), "-2.5");
  EXPECT_EQ(format_csv_double(3.141592653589793), "3.14159265");
  EXPECT_EQ(format_csv_double(1e-9), "1e-09");
}

}  // namespace
}  // namespace risopt
