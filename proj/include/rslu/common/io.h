// include/rslu/common/io.h
//
// Copyright 2026  The rslu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef RSLU_COMMON_IO_H_
#define RSLU_COMMON_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace rslu {

// Writes `contents` to a sibling temp file and renames it over `path`, so a
// reader never observes a partially written file.
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view contents);

std::string ReadFile(const std::filesystem::path& path);

// Splits on '\n'; a trailing newline does not produce an empty last line.
std::vector<std::string> SplitLines(const std::string& text);

// Lowercase hex SHA-256.
std::string Sha256Hex(std::string_view bytes);
std::string Sha256File(const std::filesystem::path& path);

// Fixed-precision formatting used by every human-readable table.
std::string FormatFixed(double value, int precision);

}  // namespace rslu

#endif  // RSLU_COMMON_IO_H_
