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

#include "xray/seed.h"

#include <cctype>
#include <charconv>
#include <unordered_set>

#include "xray/url.h"

namespace xray {

namespace {

std::string LastSegmentExtension(std::string_view path) {
  const size_t slash = path.rfind('/');
  const std::string_view filename =
      slash == std::string_view::npos ? path : path.substr(slash + 1);
  const size_t dot = filename.rfind('.');
  if (dot == std::string_view::npos || dot == 0) return "";
  return ToLowerAscii(filename.substr(dot + 1));
}

SeedUrl Rejected(SeedUrl seed, RejectReason reason) {
  seed.status = SeedStatus::kRejected;
  seed.reject_reason = reason;
  return seed;
}

}  // namespace

const char* SeedStatusName(SeedStatus status) {
  return status == SeedStatus::kAccepted ? "accepted" : "rejected";
}

const char* RejectReasonName(RejectReason reason) {
  switch (reason) {
    case RejectReason::kMalformed:
      return "malformed";
    case RejectReason::kBinaryExtension:
      return "binary_extension";
    case RejectReason::kDuplicate:
      return "duplicate";
  }
  return "unknown";
}

SeedUrl NormalizeUrl(std::string_view raw, const SeedOptions& options) {
  SeedUrl seed;
  seed.raw = std::string(raw);
  const std::string_view trimmed = TrimWhitespace(raw);
  if (trimmed.empty()) return Rejected(std::move(seed), RejectReason::kMalformed);

  std::string candidate;
  if (const size_t sep = trimmed.find("://"); sep != std::string_view::npos) {
    const std::string scheme = ToLowerAscii(trimmed.substr(0, sep));
    if (scheme != "http" && scheme != "https") {
      return Rejected(std::move(seed), RejectReason::kMalformed);
    }
    candidate = scheme + std::string(trimmed.substr(sep));
  } else {
    candidate = "http://" + std::string(trimmed);
  }
  for (char c : candidate) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      return Rejected(std::move(seed), RejectReason::kMalformed);
    }
  }

  const auto url = ParseAbsoluteUrl(candidate);
  if (!url) return Rejected(std::move(seed), RejectReason::kMalformed);

  std::string authority;
  if (const size_t at = url->authority.rfind('@'); at != std::string::npos) {
    authority = url->authority.substr(0, at + 1);
  }
  authority += url->host;
  if (!url->port.empty()) authority += ":" + url->port;
  seed.normalized = url->scheme + "://" + authority +
                    (url->path.empty() ? "/" : url->path) + url->query;

  if (options.binary_extensions.contains(LastSegmentExtension(url->path))) {
    return Rejected(std::move(seed), RejectReason::kBinaryExtension);
  }
  return seed;
}

std::vector<SeedUrl> FilterSeedList(std::span<const SeedLine> seeds,
                                    const SeedOptions& options) {
  std::vector<SeedUrl> out;
  out.reserve(seeds.size());
  std::unordered_set<std::string> seen;
  for (const SeedLine& line : seeds) {
    SeedUrl seed = NormalizeUrl(line.raw, options);
    seed.rank = line.rank;
    if (seed.accepted() && !seen.insert(seed.normalized).second) {
      seed = Rejected(std::move(seed), RejectReason::kDuplicate);
    }
    out.push_back(std::move(seed));
  }
  return out;
}

std::vector<SeedUrl> FilterSeedList(std::span<const std::string> seeds,
                                    const SeedOptions& options) {
  std::vector<SeedLine> lines;
  lines.reserve(seeds.size());
  for (const std::string& raw : seeds) lines.push_back({raw, std::nullopt});
  return FilterSeedList(std::span<const SeedLine>(lines), options);
}

std::vector<SeedLine> ReadSeedLines(std::istream& in) {
  std::vector<SeedLine> lines;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view text = TrimWhitespace(line);
    if (text.empty() || text.front() == '#') continue;
    SeedLine seed{std::string(text), std::nullopt};
    if (const size_t comma = text.find(','); comma != std::string_view::npos) {
      const std::string_view rank_text = TrimWhitespace(text.substr(0, comma));
      int rank = 0;
      const auto [ptr, ec] = std::from_chars(
          rank_text.data(), rank_text.data() + rank_text.size(), rank);
      if (ec == std::errc() && ptr == rank_text.data() + rank_text.size() &&
          rank > 0) {
        seed.raw = std::string(TrimWhitespace(text.substr(comma + 1)));
        seed.rank = rank;
      }
    }
    lines.push_back(std::move(seed));
  }
  return lines;
}

}  // namespace xray
