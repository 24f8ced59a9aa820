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

#ifndef XRAY_HAR_H_
#define XRAY_HAR_H_

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "xray/capture.h"

namespace xray {

// Reads the HAR 1.2 subset the census needs:
//   log.pages[]   id, title, startedDateTime
//   log.entries[] pageref, startedDateTime, request.method, request.url,
//                 response.status, response.headers (Set-Cookie, Location),
//                 response.redirectURL, response.content.mimeType
// Three optional page extensions written by capture endpoints are honoured:
// _loadStatus ("ok" | "timeout" | "failed"), _metaDescription and _cookies
// (HAR cookie objects for cookies set outside response headers). Everything
// else is ignored.
//
// Produces one result per page. Throws Error(kHarIngest) naming the entry
// index for missing required fields, and for documents or pages without
// entries.
std::vector<PageLoadResult> IngestHar(const nlohmann::json& document);
std::vector<PageLoadResult> IngestHarText(std::string_view text);
std::vector<PageLoadResult> IngestHarFile(const std::filesystem::path& path);

// Sorted list of *.har files directly inside |dir|.
std::vector<std::filesystem::path> ListHarFiles(
    const std::filesystem::path& dir);

// Replays recorded page loads. Pages are matched to seeds by normalized URL
// of their document request; seeds without a recording load as kFailed.
class HarReplayDriver : public CaptureDriver {
 public:
  // Files are read in sorted order; when two recordings share a page URL the
  // first one wins.
  static std::unique_ptr<HarReplayDriver> FromDirectory(
      const std::filesystem::path& dir);
  explicit HarReplayDriver(std::vector<PageLoadResult> pages);

  std::string Describe() const override;
  bool Ping(std::string* diagnostic) override;
  std::unique_ptr<CaptureSession> NewSession() override;

  size_t size() const { return pages_.size(); }

 private:
  class Session;
  std::map<std::string, PageLoadResult> pages_;
  std::string source_;
};

}  // namespace xray

#endif  // XRAY_HAR_H_
