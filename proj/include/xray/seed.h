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

#ifndef XRAY_SEED_H_
#define XRAY_SEED_H_

#include <istream>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xray {

enum class SeedStatus { kAccepted, kRejected };
enum class RejectReason { kMalformed, kBinaryExtension, kDuplicate };

const char* SeedStatusName(SeedStatus status);
const char* RejectReasonName(RejectReason reason);

// A candidate page address. |normalized| is empty only for malformed input.
struct SeedUrl {
  std::string raw;
  std::string normalized;
  std::optional<int> rank;
  SeedStatus status = SeedStatus::kAccepted;
  std::optional<RejectReason> reject_reason;

  bool accepted() const { return status == SeedStatus::kAccepted; }
  friend bool operator==(const SeedUrl&, const SeedUrl&) = default;
};

struct SeedOptions {
  // Lowercase, without the dot.
  std::set<std::string, std::less<>> binary_extensions = {
      "pdf", "xls", "xlsx", "doc", "docx", "ppt",
      "pptx", "zip", "gz", "exe", "dmg"};
};

// One line of a seed file, before normalization.
struct SeedLine {
  std::string raw;
  std::optional<int> rank;
};

// Lowercases the host, defaults the scheme to http, drops the fragment and
// turns an empty path into "/". The query string is kept.
SeedUrl NormalizeUrl(std::string_view raw, const SeedOptions& options = {});

// Order-preserving; every input produces exactly one output entry. The first
// occurrence of a normalized URL wins, later ones are rejected as duplicates.
std::vector<SeedUrl> FilterSeedList(std::span<const SeedLine> seeds,
                                    const SeedOptions& options = {});
std::vector<SeedUrl> FilterSeedList(std::span<const std::string> seeds,
                                    const SeedOptions& options = {});

// Plain "url" or Alexa-style "rank,url" lines; blank lines and lines
// starting with "#" are skipped.
std::vector<SeedLine> ReadSeedLines(std::istream& in);

}  // namespace xray

#endif  // XRAY_SEED_H_
