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

#ifndef XRAY_CAPTURE_H_
#define XRAY_CAPTURE_H_

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xray/seed.h"
#include "xray/time_util.h"

namespace xray {

enum class LoadStatus { kOk, kTimeout, kFailed };

const char* LoadStatusName(LoadStatus status);
std::optional<LoadStatus> LoadStatusFromName(std::string_view name);

struct RequestRecord {
  std::string url;
  std::string method = "GET";
  Timestamp initiated_at{};
  bool received = false;
  std::optional<int> response_status;  // absent unless received
  std::optional<std::string> content_type;

  friend bool operator==(const RequestRecord&, const RequestRecord&) = default;
};

struct CookieRecord {
  std::string name;
  std::string value;
  std::string domain;  // lowercase, never a leading dot
  std::string path = "/";
  std::optional<Timestamp> expiry;
  bool secure = false;
  bool http_only = false;

  friend bool operator==(const CookieRecord&, const CookieRecord&) = default;
};

// One page's capture. |requests| starts with the document request.
struct PageLoadResult {
  SeedUrl seed;
  std::string final_url;
  std::string title;
  std::string meta_description;
  std::vector<RequestRecord> requests;
  std::vector<CookieRecord> cookies;
  LoadStatus load_status = LoadStatus::kFailed;
  Timestamp captured_at{};
  std::string diagnostic;

  friend bool operator==(const PageLoadResult&,
                         const PageLoadResult&) = default;
};

PageLoadResult FailedResult(const SeedUrl& seed, std::string diagnostic);

inline constexpr std::string_view kDefaultUserAgent =
    "Mozilla/5.0 (Windows NT 10.0; Win64; x64) AppleWebKit/537.36 (KHTML, "
    "like Gecko) Chrome/124.0.0.0 Safari/537.36";

struct CaptureOptions {
  // Hard wall per page, measured from navigation start. Whatever was
  // captured when it expires is kept with status kTimeout.
  std::chrono::milliseconds timeout{std::chrono::seconds(30)};
  // Extra allowance for driver round trips and teardown.
  std::chrono::milliseconds grace{std::chrono::seconds(5)};
  std::string user_agent{kDefaultUserAgent};
  bool send_dnt = false;
  int max_redirects = 10;
};

// One isolated browsing context. A session is used for a single page and
// then discarded.
class CaptureSession {
 public:
  virtual ~CaptureSession() = default;
  virtual PageLoadResult Load(const SeedUrl& seed,
                              const CaptureOptions& options) = 0;
};

// Factory for sessions. Implementations must allow NewSession() and the
// sessions it returns to be used from several threads at once.
class CaptureDriver {
 public:
  virtual ~CaptureDriver() = default;
  virtual std::string Describe() const = 0;
  // Cheap reachability probe run once before a crawl starts.
  virtual bool Ping(std::string* diagnostic) = 0;
  virtual std::unique_ptr<CaptureSession> NewSession() = 0;
};

// Runs one page in a fresh session. Never throws: driver failures become a
// kFailed result carrying the diagnostic.
PageLoadResult LoadPage(const SeedUrl& seed, CaptureDriver& driver,
                        const CaptureOptions& options);

// Parses one Set-Cookie header value. The cookie domain defaults to
// |request_host|; a leading dot on the Domain attribute is dropped.
// Max-Age is resolved relative to |received_at|.
std::optional<CookieRecord> ParseSetCookie(std::string_view header,
                                           std::string_view request_host,
                                           Timestamp received_at);

std::string NormalizeCookieDomain(std::string_view domain);

}  // namespace xray

#endif  // XRAY_CAPTURE_H_
