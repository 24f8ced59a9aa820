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

#include "xray/live_driver.h"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <map>
#include <set>
#include <utility>

#include "httplib.h"
#include "json.hpp"
#include "xray/error.h"
#include "xray/har.h"
#include "xray/strings.h"
#include "xray/url.h"

namespace xray {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

std::string ClientOrigin(const Url& url) {
  std::string origin = ToLowerAscii(url.scheme) + "://";
  const bool ipv6 = url.host.find(':') != std::string::npos;
  origin += ipv6 ? "[" + url.host + "]" : url.host;
  if (!url.port.empty()) origin += ":" + url.port;
  return origin;
}

RequestRecord Pending(std::string url, Timestamp at) {
  RequestRecord record;
  record.url = std::move(url);
  record.initiated_at = at;
  return record;
}

void SetTimeouts(httplib::Client& client, std::chrono::milliseconds budget) {
  budget = std::max(budget, std::chrono::milliseconds(1));
  const auto connect = std::min(budget, std::chrono::milliseconds(10000));
  client.set_connection_timeout(connect);
  client.set_read_timeout(budget);
  client.set_write_timeout(budget);
}

// ---------------------------------------------------------------------------
// Remote browser service

class RemoteSession : public CaptureSession {
 public:
  RemoteSession(std::string origin, std::string prefix)
      : origin_(std::move(origin)), prefix_(std::move(prefix)) {}

  PageLoadResult Load(const SeedUrl& seed,
                      const CaptureOptions& options) override {
    const Timestamp started = Now();
    json request = {
        {"url", seed.normalized},
        {"timeout_ms", options.timeout.count()},
        {"user_agent", options.user_agent},
        {"headers", json::object()},
    };
    if (options.send_dnt) request["headers"]["DNT"] = "1";

    httplib::Client client(origin_);
    SetTimeouts(client, options.timeout + options.grace);
    const auto response =
        client.Post(prefix_ + "/capture", request.dump(), "application/json");
    if (!response) {
      const httplib::Error error = response.error();
      if (error == httplib::Error::Read) {
        PageLoadResult result;
        result.seed = seed;
        result.load_status = LoadStatus::kTimeout;
        result.captured_at = started;
        result.diagnostic = "capture service did not answer within the timeout";
        result.requests.push_back(Pending(seed.normalized, started));
        return result;
      }
      return FailedResult(seed, "capture service: " + httplib::to_string(error));
    }
    if (response->status != 200) {
      return FailedResult(seed, "capture service returned HTTP " +
                                    std::to_string(response->status) + ": " +
                                    response->body.substr(0, 200));
    }
    std::vector<PageLoadResult> pages = IngestHarText(response->body);
    if (pages.size() != 1) {
      return FailedResult(seed, "capture service returned " +
                                    std::to_string(pages.size()) + " pages");
    }
    PageLoadResult result = std::move(pages.front());
    result.seed = seed;
    if (result.load_status == LoadStatus::kOk && result.final_url.empty()) {
      result.final_url = seed.normalized;
    }
    return result;
  }

 private:
  std::string origin_;
  std::string prefix_;
};

// ---------------------------------------------------------------------------
// Built-in static fetcher

struct FetchOutcome {
  bool received = false;
  bool timed_out = false;
  int status = 0;
  std::string final_url;
  std::string content_type;
  std::string body;
  std::string diagnostic;
};

class StaticSession : public CaptureSession {
 public:
  PageLoadResult Load(const SeedUrl& seed,
                      const CaptureOptions& options) override {
    deadline_ = Clock::now() + options.timeout;
    options_ = &options;
    result_ = PageLoadResult{};
    result_.seed = seed;
    result_.captured_at = Now();

    const FetchOutcome document = Fetch(seed.normalized, /*keep_body=*/true);
    if (document.timed_out) return Finish(LoadStatus::kTimeout, "");
    if (!document.received || document.status >= 400) {
      const std::string why =
          document.received ? "document returned HTTP " +
                                  std::to_string(document.status)
                            : document.diagnostic;
      return Finish(LoadStatus::kFailed, why);
    }
    result_.final_url = document.final_url;

    if (ToLowerAscii(document.content_type).find("html") != std::string::npos ||
        document.content_type.empty()) {
      const HtmlSummary html = ScanHtml(document.body);
      result_.title = html.title;
      result_.meta_description = html.meta_description;
      const auto base = ParseAbsoluteUrl(document.final_url);
      std::set<std::string> fetched;
      for (const std::string& reference : html.resources) {
        if (!base) break;
        const auto resolved = ResolveUrl(*base, reference);
        if (!resolved) continue;
        const auto url = ParseAbsoluteUrl(*resolved);
        if (!url) continue;
        const std::string scheme = ToLowerAscii(url->scheme);
        if (scheme != "http" && scheme != "https") continue;
        const std::string target = url->WithoutFragment();
        if (!fetched.insert(target).second) continue;
        if (Clock::now() >= deadline_) {
          return Finish(LoadStatus::kTimeout, "");
        }
        if (Fetch(target, /*keep_body=*/false).timed_out) {
          return Finish(LoadStatus::kTimeout, "");
        }
      }
    }
    return Finish(LoadStatus::kOk, "");
  }

 private:
  PageLoadResult Finish(LoadStatus status, std::string diagnostic) {
    result_.load_status = status;
    if (status == LoadStatus::kTimeout) {
      result_.diagnostic = "hard wall of " +
                           std::to_string(options_->timeout.count()) +
                           " ms reached; partial capture kept";
    } else {
      result_.diagnostic = std::move(diagnostic);
    }
    return std::move(result_);
  }

  // Requests |start| and follows redirects, appending one RequestRecord per
  // hop and collecting Set-Cookie headers on the way.
  FetchOutcome Fetch(const std::string& start, bool keep_body) {
    FetchOutcome outcome;
    std::string current = start;
    for (int hop = 0; hop <= options_->max_redirects; ++hop) {
      const auto url = ParseAbsoluteUrl(current);
      if (!url) {
        outcome.diagnostic = "malformed URL " + current;
        return outcome;
      }
      const auto remaining =
          std::chrono::duration_cast<std::chrono::milliseconds>(deadline_ -
                                                                Clock::now());
      if (remaining.count() <= 0) {
        outcome.timed_out = true;
        return outcome;
      }
      result_.requests.push_back(Pending(url->WithoutFragment(), Now()));
      const size_t index = result_.requests.size() - 1;

      httplib::Client client(ClientOrigin(*url));
      if (!client.is_valid()) {
        outcome.diagnostic = "unsupported URL " + current;
        return outcome;
      }
      SetTimeouts(client, remaining);
      httplib::Headers headers = {{"User-Agent", options_->user_agent},
                                  {"Accept", "*/*"}};
      if (options_->send_dnt) headers.emplace("DNT", "1");
      std::string target = url->path.empty() ? "/" : url->path;
      target += url->query;
      const auto deadline = deadline_;
      std::string body;
      const auto response = client.Get(
          target, headers,
          [&](const char* data, size_t length) {
            if (keep_body) body.append(data, length);
            return Clock::now() < deadline;
          });
      if (!response) {
        // A read error this close to the wall is the read timeout firing.
        const bool at_wall =
            Clock::now() + std::chrono::milliseconds(50) >= deadline_;
        if (at_wall || response.error() == httplib::Error::Canceled) {
          outcome.timed_out = true;
        } else {
          outcome.diagnostic = httplib::to_string(response.error());
        }
        return outcome;
      }
      RequestRecord& record = result_.requests[index];
      record.received = true;
      record.response_status = response->status;
      if (response->has_header("Content-Type")) {
        record.content_type = response->get_header_value("Content-Type");
      }
      const Timestamp received_at = Now();
      const size_t n_cookies = response->get_header_value_count("Set-Cookie");
      for (size_t i = 0; i < n_cookies; ++i) {
        if (auto cookie = ParseSetCookie(
                response->get_header_value("Set-Cookie", i), url->host,
                received_at)) {
          result_.cookies.push_back(std::move(*cookie));
        }
      }
      outcome.received = true;
      outcome.status = response->status;
      outcome.final_url = url->WithoutFragment();
      outcome.content_type = record.content_type.value_or("");
      if (response->status >= 300 && response->status < 400 &&
          response->has_header("Location")) {
        const auto next =
            ResolveUrl(*url, response->get_header_value("Location"));
        if (!next) {
          outcome.diagnostic = "bad redirect target";
          return outcome;
        }
        current = *next;
        continue;
      }
      outcome.body = std::move(body);
      return outcome;
    }
    outcome.diagnostic = "too many redirects";
    outcome.received = false;
    return outcome;
  }

  Clock::time_point deadline_;
  const CaptureOptions* options_ = nullptr;
  PageLoadResult result_;
};

// ---------------------------------------------------------------------------
// Markup scanning

bool IsNameChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ||
         c == ':';
}

std::string DecodeEntities(std::string_view text) {
  static const std::pair<std::string_view, char> kEntities[] = {
      {"&amp;", '&'}, {"&quot;", '"'}, {"&#39;", '\''},
      {"&apos;", '\''}, {"&lt;", '<'}, {"&gt;", '>'},
  };
  std::string out;
  out.reserve(text.size());
  for (size_t i = 0; i < text.size();) {
    bool replaced = false;
    if (text[i] == '&') {
      for (const auto& [entity, value] : kEntities) {
        if (text.substr(i, entity.size()) == entity) {
          out += value;
          i += entity.size();
          replaced = true;
          break;
        }
      }
    }
    if (!replaced) out += text[i++];
  }
  return out;
}

std::string CollapseWhitespace(std::string_view text) {
  std::string out;
  bool space = false;
  for (char c : TrimWhitespace(text)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

size_t FindIgnoreCase(std::string_view haystack, std::string_view needle,
                      size_t from) {
  if (needle.size() > haystack.size()) return std::string_view::npos;
  for (size_t i = from; i + needle.size() <= haystack.size(); ++i) {
    if (EqualsIgnoreCase(haystack.substr(i, needle.size()), needle)) return i;
  }
  return std::string_view::npos;
}

}  // namespace

HtmlSummary ScanHtml(std::string_view html) {
  HtmlSummary summary;
  bool have_title = false;
  size_t i = 0;
  while ((i = html.find('<', i)) != std::string_view::npos) {
    if (html.substr(i, 4) == "<!--") {
      const size_t end = html.find("-->", i + 4);
      if (end == std::string_view::npos) break;
      i = end + 3;
      continue;
    }
    size_t j = i + 1;
    while (j < html.size() && IsNameChar(html[j])) ++j;
    const std::string tag = ToLowerAscii(html.substr(i + 1, j - i - 1));
    if (tag.empty()) {
      i = j;
      continue;
    }

    std::map<std::string, std::string> attributes;
    while (j < html.size() && html[j] != '>') {
      if (std::isspace(static_cast<unsigned char>(html[j])) || html[j] == '/') {
        ++j;
        continue;
      }
      size_t name_end = j;
      while (name_end < html.size() && !std::isspace(
                 static_cast<unsigned char>(html[name_end])) &&
             html[name_end] != '=' && html[name_end] != '>' &&
             html[name_end] != '/') {
        ++name_end;
      }
      if (name_end == j) {
        ++j;
        continue;
      }
      std::string name = ToLowerAscii(html.substr(j, name_end - j));
      j = name_end;
      while (j < html.size() && std::isspace(static_cast<unsigned char>(html[j])))
        ++j;
      std::string value;
      if (j < html.size() && html[j] == '=') {
        ++j;
        while (j < html.size() &&
               std::isspace(static_cast<unsigned char>(html[j])))
          ++j;
        if (j < html.size() && (html[j] == '"' || html[j] == '\'')) {
          const char quote = html[j];
          const size_t end = html.find(quote, j + 1);
          const size_t stop = end == std::string_view::npos ? html.size() : end;
          value = DecodeEntities(html.substr(j + 1, stop - j - 1));
          j = stop == html.size() ? stop : stop + 1;
        } else {
          const size_t start = j;
          while (j < html.size() && html[j] != '>' &&
                 !std::isspace(static_cast<unsigned char>(html[j])))
            ++j;
          value = DecodeEntities(html.substr(start, j - start));
        }
      }
      attributes.emplace(std::move(name), std::move(value));
    }
    const size_t tag_end = j < html.size() ? j + 1 : html.size();

    const auto add = [&](const char* attribute) {
      const auto it = attributes.find(attribute);
      if (it == attributes.end()) return;
      const std::string_view value = TrimWhitespace(it->second);
      if (!value.empty()) summary.resources.emplace_back(value);
    };
    if (tag == "script" || tag == "img" || tag == "iframe" ||
        tag == "source" || tag == "embed" || tag == "video" ||
        tag == "audio" || tag == "input") {
      add("src");
    } else if (tag == "link") {
      const std::string rel = ToLowerAscii(attributes["rel"]);
      if (rel.find("stylesheet") != std::string::npos ||
          rel.find("icon") != std::string::npos ||
          rel.find("preload") != std::string::npos) {
        add("href");
      }
    } else if (tag == "meta") {
      if (summary.meta_description.empty() &&
          ToLowerAscii(attributes["name"]) == "description") {
        summary.meta_description = CollapseWhitespace(attributes["content"]);
      }
    }

    // Raw text elements: skip their content so markup-like strings inside
    // them are not scanned.
    if (tag == "script" || tag == "style" || tag == "title" ||
        tag == "textarea") {
      const size_t close = FindIgnoreCase(html, "</" + tag, tag_end);
      const size_t stop = close == std::string_view::npos ? html.size() : close;
      if (tag == "title" && !have_title) {
        summary.title =
            CollapseWhitespace(DecodeEntities(html.substr(tag_end, stop - tag_end)));
        have_title = true;
      }
      i = stop == html.size() ? stop : stop + 2;
      continue;
    }
    i = tag_end;
  }
  return summary;
}

// ---------------------------------------------------------------------------

RemoteBrowserDriver::RemoteBrowserDriver(std::string endpoint) {
  const auto url = ParseAbsoluteUrl(endpoint);
  const std::string scheme = url ? ToLowerAscii(url->scheme) : "";
  if (scheme != "http" && scheme != "https") {
    throw Error(ErrorCode::kDriver, "bad driver endpoint: " + endpoint);
  }
  origin_ = ClientOrigin(*url);
  prefix_ = url->path;
  while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
}

std::string RemoteBrowserDriver::Describe() const {
  return "remote browser at " + origin_ + prefix_;
}

bool RemoteBrowserDriver::Ping(std::string* diagnostic) {
  httplib::Client client(origin_);
  client.set_connection_timeout(std::chrono::seconds(5));
  client.set_read_timeout(std::chrono::seconds(5));
  const auto response = client.Get(prefix_ + "/status");
  std::string why;
  if (!response) {
    why = httplib::to_string(response.error());
  } else if (response->status != 200) {
    why = "status endpoint returned HTTP " + std::to_string(response->status);
  } else {
    const json status = json::parse(response->body, nullptr, false);
    if (status.is_object() && status.value("ready", false)) return true;
    why = "service is not ready";
  }
  if (diagnostic) *diagnostic = Describe() + ": " + why;
  return false;
}

std::unique_ptr<CaptureSession> RemoteBrowserDriver::NewSession() {
  return std::make_unique<RemoteSession>(origin_, prefix_);
}

std::string StaticFetchDriver::Describe() const {
  return "builtin static fetcher";
}

bool StaticFetchDriver::Ping(std::string*) { return true; }

std::unique_ptr<CaptureSession> StaticFetchDriver::NewSession() {
  return std::make_unique<StaticSession>();
}

std::unique_ptr<CaptureDriver> MakeLiveDriver(std::string_view spec) {
  if (spec == "builtin") return std::make_unique<StaticFetchDriver>();
  return std::make_unique<RemoteBrowserDriver>(std::string(spec));
}

}  // namespace xray
