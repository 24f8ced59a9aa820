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

#include "xray/har.h"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "xray/error.h"
#include "xray/strings.h"
#include "xray/url.h"

namespace xray {

namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& message) {
  throw Error(ErrorCode::kHarIngest, message);
}

[[noreturn]] void FailEntry(size_t index, const std::string& message) {
  Fail("HAR entry " + std::to_string(index) + ": " + message);
}

const json* Member(const json& object, const char* key) {
  if (!object.is_object()) return nullptr;
  const auto it = object.find(key);
  return it == object.end() ? nullptr : &*it;
}

std::string OptionalString(const json& object, const char* key) {
  const json* value = Member(object, key);
  return value && value->is_string() ? value->get<std::string>() : "";
}

struct Entry {
  size_t index = 0;
  std::string pageref;
  RequestRecord request;
  std::string host;
  std::string redirect_target;  // absolute, empty when not a redirect
  std::vector<std::string> set_cookie_headers;
};

Entry ReadEntry(const json& raw, size_t index) {
  if (!raw.is_object()) FailEntry(index, "not an object");
  Entry entry;
  entry.index = index;
  entry.pageref = OptionalString(raw, "pageref");

  const json* started = Member(raw, "startedDateTime");
  if (!started || !started->is_string()) {
    FailEntry(index, "missing startedDateTime");
  }
  const auto ts = ParseIso8601(started->get<std::string>());
  if (!ts) FailEntry(index, "unparseable startedDateTime");
  entry.request.initiated_at = *ts;

  const json* request = Member(raw, "request");
  if (!request || !request->is_object()) FailEntry(index, "missing request");
  const json* method = Member(*request, "method");
  if (!method || !method->is_string()) {
    FailEntry(index, "missing request.method");
  }
  const json* url = Member(*request, "url");
  if (!url || !url->is_string()) FailEntry(index, "missing request.url");
  entry.request.method = method->get<std::string>();
  entry.request.url = url->get<std::string>();
  const auto parsed = ParseAbsoluteUrl(entry.request.url);
  if (!parsed) FailEntry(index, "request.url is not absolute");
  entry.host = parsed->host;

  const json* response = Member(raw, "response");
  if (!response || !response->is_object()) FailEntry(index, "missing response");
  const json* status = Member(*response, "status");
  if (!status || !status->is_number()) {
    FailEntry(index, "missing response.status");
  }
  const int code = status->get<int>();
  // HAR uses 0 (or a negative value) for requests that never got a response.
  if (code > 0) {
    entry.request.received = true;
    entry.request.response_status = code;
    if (const json* content = Member(*response, "content")) {
      const std::string mime = OptionalString(*content, "mimeType");
      if (!mime.empty()) entry.request.content_type = mime;
    }
  }

  std::string location = OptionalString(*response, "redirectURL");
  if (const json* headers = Member(*response, "headers");
      headers && headers->is_array()) {
    for (const json& header : *headers) {
      const std::string name = OptionalString(header, "name");
      const std::string value = OptionalString(header, "value");
      if (EqualsIgnoreCase(name, "set-cookie")) {
        // Some exporters fold repeated headers into one value with newlines.
        for (std::string_view line : Split(value, '\n')) {
          if (!TrimWhitespace(line).empty()) {
            entry.set_cookie_headers.emplace_back(line);
          }
        }
      } else if (EqualsIgnoreCase(name, "location") && location.empty()) {
        location = value;
      }
    }
  }
  if (code >= 300 && code < 400 && !location.empty()) {
    if (auto target = ResolveUrl(*parsed, location)) {
      entry.redirect_target = *target;
    }
  }
  return entry;
}

std::string StripFragment(std::string_view url) {
  return std::string(url.substr(0, url.find('#')));
}

CookieRecord ReadHarCookie(const json& raw, std::string_view default_domain) {
  CookieRecord cookie;
  cookie.name = OptionalString(raw, "name");
  cookie.value = OptionalString(raw, "value");
  cookie.domain = NormalizeCookieDomain(OptionalString(raw, "domain"));
  if (cookie.domain.empty()) cookie.domain = NormalizeCookieDomain(default_domain);
  const std::string path = OptionalString(raw, "path");
  if (!path.empty()) cookie.path = path;
  cookie.expiry = ParseIso8601(OptionalString(raw, "expires"));
  if (const json* secure = Member(raw, "secure"); secure && secure->is_boolean()) {
    cookie.secure = secure->get<bool>();
  }
  if (const json* http_only = Member(raw, "httpOnly");
      http_only && http_only->is_boolean()) {
    cookie.http_only = http_only->get<bool>();
  }
  return cookie;
}

PageLoadResult BuildPage(const json* page, const std::string& page_id,
                         std::vector<const Entry*> entries) {
  if (entries.empty()) Fail("HAR page \"" + page_id + "\" has no entries");
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry* a, const Entry* b) {
                     return a->request.initiated_at < b->request.initiated_at;
                   });
  const Entry& document = *entries.front();

  PageLoadResult result;
  result.seed = NormalizeUrl(document.request.url);
  if (result.seed.normalized.empty()) {
    FailEntry(document.index, "document URL cannot be normalized");
  }
  result.load_status = LoadStatus::kOk;
  result.captured_at = document.request.initiated_at;

  // Follow the redirect chain from the document request.
  std::string final_url = StripFragment(document.request.url);
  const Entry* hop = &document;
  for (size_t guard = 0; guard < entries.size() && !hop->redirect_target.empty();
       ++guard) {
    const std::string target = StripFragment(hop->redirect_target);
    const auto next = std::find_if(
        entries.begin(), entries.end(), [&](const Entry* candidate) {
          return StripFragment(candidate->request.url) == target;
        });
    final_url = target;
    if (next == entries.end()) break;
    hop = *next;
  }
  result.final_url = final_url;

  for (const Entry* entry : entries) {
    result.requests.push_back(entry->request);
    for (const std::string& header : entry->set_cookie_headers) {
      if (auto cookie = ParseSetCookie(header, entry->host,
                                       entry->request.initiated_at)) {
        result.cookies.push_back(std::move(*cookie));
      }
    }
  }

  if (page) {
    result.title = OptionalString(*page, "title");
    result.meta_description = OptionalString(*page, "_metaDescription");
    const std::string started = OptionalString(*page, "startedDateTime");
    if (auto ts = ParseIso8601(started)) result.captured_at = *ts;
    const std::string status = OptionalString(*page, "_loadStatus");
    if (!status.empty()) {
      const auto parsed = LoadStatusFromName(status);
      if (!parsed) Fail("HAR page \"" + page_id + "\": bad _loadStatus");
      result.load_status = *parsed;
    }
    result.diagnostic = OptionalString(*page, "_diagnostic");
    const std::string final_override = OptionalString(*page, "_finalUrl");
    if (!final_override.empty()) result.final_url = final_override;
    if (const json* cookies = Member(*page, "_cookies");
        cookies && cookies->is_array()) {
      const auto document_url = ParseAbsoluteUrl(result.final_url);
      const std::string default_domain =
          document_url ? document_url->host : document.host;
      for (const json& raw : *cookies) {
        CookieRecord cookie = ReadHarCookie(raw, default_domain);
        if (!cookie.name.empty() && !cookie.domain.empty()) {
          result.cookies.push_back(std::move(cookie));
        }
      }
    }
  }
  return result;
}

}  // namespace

std::vector<PageLoadResult> IngestHar(const json& document) {
  const json* log = Member(document, "log");
  if (!log || !log->is_object()) Fail("HAR document has no log object");
  const json* entries_json = Member(*log, "entries");
  if (!entries_json || !entries_json->is_array()) {
    Fail("HAR log has no entries array");
  }
  if (entries_json->empty()) Fail("HAR log has zero entries");

  std::vector<Entry> entries;
  entries.reserve(entries_json->size());
  for (size_t i = 0; i < entries_json->size(); ++i) {
    entries.push_back(ReadEntry((*entries_json)[i], i));
  }

  std::vector<const json*> pages;
  if (const json* pages_json = Member(*log, "pages");
      pages_json && pages_json->is_array()) {
    for (const json& page : *pages_json) pages.push_back(&page);
  }

  std::vector<PageLoadResult> results;
  if (pages.empty()) {
    std::vector<const Entry*> all;
    for (const Entry& entry : entries) all.push_back(&entry);
    results.push_back(BuildPage(nullptr, "", std::move(all)));
    return results;
  }

  std::map<std::string, std::vector<const Entry*>> by_page;
  for (const Entry& entry : entries) {
    std::string ref = entry.pageref;
    if (ref.empty()) {
      if (pages.size() != 1) FailEntry(entry.index, "missing pageref");
      ref = OptionalString(*pages.front(), "id");
    }
    by_page[ref].push_back(&entry);
  }
  for (const json* page : pages) {
    const std::string id = OptionalString(*page, "id");
    const auto it = by_page.find(id);
    if (it == by_page.end()) Fail("HAR page \"" + id + "\" has no entries");
    results.push_back(BuildPage(page, id, it->second));
    by_page.erase(it);
  }
  if (!by_page.empty()) {
    FailEntry(by_page.begin()->second.front()->index,
              "pageref \"" + by_page.begin()->first + "\" names no page");
  }
  return results;
}

std::vector<PageLoadResult> IngestHarText(std::string_view text) {
  json document = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (document.is_discarded()) Fail("HAR document is not valid JSON");
  return IngestHar(document);
}

std::vector<PageLoadResult> IngestHarFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return IngestHarText(buffer.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.filename().string() + ": " + e.what());
  }
}

std::vector<std::filesystem::path> ListHarFiles(
    const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorCode::kIo, "not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& item : std::filesystem::directory_iterator(dir)) {
    if (item.is_regular_file() && item.path().extension() == ".har") {
      files.push_back(item.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

class HarReplayDriver::Session : public CaptureSession {
 public:
  explicit Session(const HarReplayDriver& driver) : driver_(driver) {}

  PageLoadResult Load(const SeedUrl& seed,
                      const CaptureOptions& /*options*/) override {
    const auto it = driver_.pages_.find(seed.normalized);
    if (it == driver_.pages_.end()) {
      PageLoadResult failed = FailedResult(seed, "no recording for " +
                                                     seed.normalized);
      // Keep replays reproducible.
      failed.captured_at = Timestamp{};
      return failed;
    }
    PageLoadResult result = it->second;
    result.seed = seed;
    return result;
  }

 private:
  const HarReplayDriver& driver_;
};

HarReplayDriver::HarReplayDriver(std::vector<PageLoadResult> pages) {
  for (PageLoadResult& page : pages) {
    const std::string key = page.seed.normalized;
    pages_.emplace(key, std::move(page));
  }
  source_ = "har-replay(" + std::to_string(pages_.size()) + " pages)";
}

std::unique_ptr<HarReplayDriver> HarReplayDriver::FromDirectory(
    const std::filesystem::path& dir) {
  std::vector<PageLoadResult> pages;
  for (const auto& file : ListHarFiles(dir)) {
    for (PageLoadResult& page : IngestHarFile(file)) {
      pages.push_back(std::move(page));
    }
  }
  auto driver = std::make_unique<HarReplayDriver>(std::move(pages));
  driver->source_ = "har-replay(" + dir.string() + ")";
  return driver;
}

std::string HarReplayDriver::Describe() const { return source_; }

bool HarReplayDriver::Ping(std::string* /*diagnostic*/) { return true; }

std::unique_ptr<CaptureSession> HarReplayDriver::NewSession() {
  return std::make_unique<Session>(*this);
}

}  // namespace xray
