// include/rslu/corpus/dataset_io.h
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

#ifndef RSLU_CORPUS_DATASET_IO_H_
#define RSLU_CORPUS_DATASET_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "rslu/corpus/transcript.h"

namespace rslu {

// One JSON object per line with string fields id, clean, noisy, intent and
// split. Extra fields are ignored, blank lines skipped. Missing or non-string
// fields raise ParseError naming the line; duplicate ids raise
// ValidationError.
std::vector<TranscriptPair> ParseJsonl(const std::string& text);
std::vector<TranscriptPair> LoadJsonl(const std::filesystem::path& path);

std::string ToJsonl(const std::vector<TranscriptPair>& pairs);
void SaveJsonl(const std::filesystem::path& path, const std::vector<TranscriptPair>& pairs);

}  // namespace rslu

#endif  // RSLU_CORPUS_DATASET_IO_H_
