// Copyright 2026 The xray-census Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef XRAY_STRINGS_H_
#define XRAY_STRINGS_H_

#include <string>
#include <string_view>
#include <vector>

namespace xray {

std::string ToLowerAscii(std::string_view text);
std::string_view TrimWhitespace(std::string_view text);
bool EqualsIgnoreCase(std::string_view a, std::string_view b);

// Splits on every occurrence of |sep|; empty pieces are kept.
std::vector<std::string_view> Split(std::string_view text, char sep);

// Splits one CSV record. Fields may be double-quoted with "" as the escape
// for a literal quote; unquoted fields are whitespace-trimmed.
std::vector<std::string> SplitCsvRecord(std::string_view line);

// 64-bit FNV-1a of |data| as 16 lowercase hex digits. Used to fingerprint
// pinned input files.
std::string Fnv1a64Hex(std::string_view data);

}  // namespace xray

#endif  // XRAY_STRINGS_H_
