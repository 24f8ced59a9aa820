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

#include "xray/capture.h"

#include <charconv>
#include <exception>

#include "xray/strings.h"

namespace xray {

const char* LoadStatusName(LoadStatus status) {
  switch (status) {
    case LoadStatus::kOk:
      return "ok";
    case LoadStatus::kTimeout:
      return "timeout";
    case LoadStatus::kFailed:
      return "failed";
  }
  return "failed";
}

std::optional<LoadStatus> LoadStatusFromName(std::string_view name) {
  if (name == "ok") return LoadStatus::kOk;
  if (name == "timeout") return LoadStatus::kTimeout;
  if (name == "failed") return LoadStatus::kFailed;
  return std::nullopt;
}

PageLoadResult FailedResult(const SeedUrl& seed, std::string diagnostic) {
  PageLoadResult result;
  result.seed = seed;
  result.load_status = LoadStatus::kFailed;
  result.captured_at = Now();
  result.diagnostic = std::move(diagnostic);
  return result;
}

PageLoadResult LoadPage(const SeedUrl& seed, CaptureDriver& driver,
                        const CaptureOptions& options) {
  if (options.timeout <= std::chrono::milliseconds::zero()) {
    return FailedResult(seed, "capture timeout must be positive");
  }
  try {
    auto session = driver.NewSession();
    PageLoadResult result = session->Load(seed, options);
    result.seed = seed;
    return result;
  } catch (const std::exception& e) {
    return FailedResult(seed, driver.Describe() + ": " + e.what());
  }
}

std::string NormalizeCookieDomain(std::string_view domain) {
  domain = TrimWhitespace(domain);
  while (!domain.empty() && domain.front() == '.') domain.remove_prefix(1);
  // A fully qualified spelling names the same host as the URL parser sees.
  if (!domain.empty() && domain.back() == '.') domain.remove_suffix(1);
  return ToLowerAscii(domain);
}

std::optional<CookieRecord> ParseSetCookie(std::string_view header,
                                           std::string_view request_host,
                                           Timestamp received_at) {
  const std::vector<std::string_view> parts = Split(header, ';');
  const std::string_view pair = TrimWhitespace(parts.front());
  const size_t eq = pair.find('=');
  if (eq == std::string_view::npos) return std::nullopt;
  CookieRecord cookie;
  cookie.name = std::string(TrimWhitespace(pair.substr(0, eq)));
  cookie.value = std::string(TrimWhitespace(pair.substr(eq + 1)));
  if (cookie.name.empty()) return std::nullopt;
  cookie.domain = NormalizeCookieDomain(request_host);

  std::optional<Timestamp> expires;
  std::optional<Timestamp> max_age;
  for (size_t i = 1; i < parts.size(); ++i) {
    const std::string_view attr = TrimWhitespace(parts[i]);
    const size_t attr_eq = attr.find('=');
    const std::string_view key = TrimWhitespace(attr.substr(0, attr_eq));
    const std::string_view value =
        attr_eq == std::string_view::npos
            ? std::string_view{}
            : TrimWhitespace(attr.substr(attr_eq + 1));
    if (EqualsIgnoreCase(key, "domain")) {
      const std::string domain = NormalizeCookieDomain(value);
      if (!domain.empty()) cookie.domain = domain;
    } else if (EqualsIgnoreCase(key, "path")) {
      if (!value.empty() && value.front() == '/') cookie.path = value;
    } else if (EqualsIgnoreCase(key, "expires")) {
      expires = ParseHttpDate(value);
    } else if (EqualsIgnoreCase(key, "max-age")) {
      long long seconds = 0;
      const auto [ptr, ec] =
          std::from_chars(value.data(), value.data() + value.size(), seconds);
      if (ec == std::errc() && ptr == value.data() + value.size()) {
        max_age = received_at + std::chrono::seconds(seconds);
      }
    } else if (EqualsIgnoreCase(key, "secure")) {
      cookie.secure = true;
    } else if (EqualsIgnoreCase(key, "httponly")) {
      cookie.http_only = true;
    }
  }
  // Max-Age takes precedence over Expires.
  cookie.expiry = max_age ? max_age : expires;
  if (cookie.domain.empty()) return std::nullopt;
  return cookie;
}

}  // namespace xray
