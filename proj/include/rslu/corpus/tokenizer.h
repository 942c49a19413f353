// include/rslu/corpus/tokenizer.h
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

#ifndef RSLU_CORPUS_TOKENIZER_H_
#define RSLU_CORPUS_TOKENIZER_H_

#include <string>
#include <string_view>
#include <vector>

namespace rslu {

// Word-level tokenizer: ASCII lowercase, punctuation removed except an
// apostrophe between two word characters ("tuesday's"), split on whitespace.
std::vector<std::string> Tokenize(std::string_view text);

std::string JoinTokens(const std::vector<std::string>& tokens);

}  // namespace rslu

#endif  // RSLU_CORPUS_TOKENIZER_H_
