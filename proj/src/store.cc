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

#include "xray/store.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "xray/cookie_analysis.h"
#include "xray/error.h"
#include "xray/url.h"

namespace xray {

namespace {

using nlohmann::json;

json OptionalTimestamp(const std::optional<Timestamp>& ts) {
  return ts ? json(FormatIso8601(*ts)) : json(nullptr);
}

json ToJson(const PageRecord& page) {
  return {
      {"kind", "page"},
      {"key", page.key},
      {"raw_seed", page.raw_seed},
      {"rank", page.rank ? json(*page.rank) : json(nullptr)},
      {"final_url", page.final_url},
      {"title", page.title},
      {"meta_description", page.meta_description},
      {"host", page.host},
      {"page_domain", page.page_domain},
      {"tld", page.tld},
      {"load_status", LoadStatusName(page.load_status)},
      {"captured_at", FormatIso8601(page.captured_at)},
      {"diagnostic", page.diagnostic},
      {"n_requests", page.n_requests},
      {"n_first_party_requests", page.n_first_party_requests},
      {"n_third_party_requests", page.n_third_party_requests},
      {"n_unattributable_requests", page.n_unattributable_requests},
      {"n_cookies", page.n_cookies},
      {"n_unattributable_cookies", page.n_unattributable_cookies},
  };
}

json ToJson(const ElementRecord& element) {
  return {
      {"kind", "element"},
      {"page", element.page},
      {"registered_domain", element.registered_domain},
      {"element_path", element.element_path},
      {"host", element.host},
      {"filename", element.filename},
      {"args", element.args},
      {"extension", element.extension},
      {"element_type", ElementTypeName(element.element_type)},
      {"full_url", element.full_url},
      {"request_count", element.request_count},
  };
}

json ToJson(const CookieEntry& cookie) {
  return {
      {"kind", "cookie"},
      {"page", cookie.page},
      {"registered_domain", cookie.registered_domain},
      {"name", cookie.name},
      {"value", cookie.value},
      {"domain", cookie.domain},
      {"path", cookie.path},
      {"expiry", OptionalTimestamp(cookie.expiry)},
      {"secure", cookie.secure},
      {"http_only", cookie.http_only},
  };
}

// Field accessors that report the offending line.
class LineReader {
 public:
  LineReader(const json& object, size_t line) : object_(object), line_(line) {}

  [[noreturn]] void Fail(const std::string& why) const {
    throw Error(ErrorCode::kStoreImport,
                "store line " + std::to_string(line_) + ": " + why);
  }

  const json& Get(const char* key) const {
    const auto it = object_.find(key);
    if (it == object_.end()) Fail(std::string("missing field \"") + key + "\"");
    return *it;
  }

  std::string String(const char* key) const {
    const json& value = Get(key);
    if (!value.is_string()) Fail(std::string("field \"") + key + "\" is not a string");
    return value.get<std::string>();
  }

  int Int(const char* key) const {
    const json& value = Get(key);
    if (!value.is_number_integer()) {
      Fail(std::string("field \"") + key + "\" is not an integer");
    }
    return value.get<int>();
  }

  bool Bool(const char* key) const {
    const json& value = Get(key);
    if (!value.is_boolean()) Fail(std::string("field \"") + key + "\" is not a boolean");
    return value.get<bool>();
  }

  Timestamp Time(const char* key) const {
    const auto ts = ParseIso8601(String(key));
    if (!ts) Fail(std::string("field \"") + key + "\" is not a timestamp");
    return *ts;
  }

  std::optional<Timestamp> OptionalTime(const char* key) const {
    if (Get(key).is_null()) return std::nullopt;
    return Time(key);
  }

 private:
  const json& object_;
  size_t line_;
};

}  // namespace

std::string TldOf(std::string_view host) {
  if (IsIpAddress(host)) return "ip";
  const size_t dot = host.rfind('.');
  return std::string(dot == std::string_view::npos ? host : host.substr(dot + 1));
}

void CrawlStore::ErasePage(const std::string& page) {
  pages_.erase(page);
  elements_.erase(elements_.lower_bound({page, "", ""}),
                  elements_.lower_bound({page + '\0', "", ""}));
  cookies_.erase(cookies_.lower_bound({page, "", "", ""}),
                 cookies_.lower_bound({page + '\0', "", "", ""}));
}

IngestSummary CrawlStore::Put(const PageLoadResult& result,
                              const PublicSuffixRuleSet& rules,
                              const ExtensionMap& extensions) {
  const auto url = ParseAbsoluteUrl(result.seed.normalized);
  if (!url) {
    throw Error(ErrorCode::kStorage,
                "page result has no usable seed URL: \"" + result.seed.raw +
                    "\"");
  }
  const std::string key = result.seed.normalized;
  ErasePage(key);

  PageRecord page;
  page.key = key;
  page.raw_seed = result.seed.raw;
  page.rank = result.seed.rank;
  page.final_url = result.final_url;
  page.title = result.title;
  page.meta_description = result.meta_description;
  page.host = url->host;
  page.page_domain = PageDomain(result.seed, rules);
  page.tld = TldOf(url->host);
  page.load_status = result.load_status;
  page.captured_at = result.captured_at;
  page.diagnostic = result.diagnostic;
  page.n_requests = static_cast<int>(result.requests.size());
  page.n_cookies = static_cast<int>(result.cookies.size());

  IngestSummary summary;
  for (const RequestRecord& request : result.requests) {
    ParsedElement element;
    try {
      element = ParseRequestUrl(request.url, rules, extensions);
    } catch (const Error&) {
      ++page.n_unattributable_requests;
      continue;
    }
    if (!IsThirdParty(page.page_domain, element.registered_domain)) {
      ++page.n_first_party_requests;
      continue;
    }
    ++page.n_third_party_requests;
    ++summary.n_third_party_requests;
    ElementKey element_key{key, element.registered_domain,
                           element.element_path};
    auto [it, inserted] = elements_.try_emplace(std::move(element_key));
    ElementRecord& record = it->second;
    if (inserted) {
      record.page = key;
      record.registered_domain = element.registered_domain;
      record.element_path = element.element_path;
      record.host = element.host;
      record.filename = element.filename;
      record.args = element.args;
      record.extension = element.extension;
      record.element_type = element.element_type;
      record.full_url = element.full_url;
    }
    ++record.request_count;
  }

  CookieDiagnostics diagnostics;
  for (const CookieRecord& cookie : ThirdPartyCookies(
           page.page_domain, result.cookies, rules, &diagnostics)) {
    const std::string domain = rules.RegisteredDomain(cookie.domain);
    CookieKey cookie_key{key, domain, cookie.name, cookie.value};
    auto [it, inserted] = cookies_.try_emplace(std::move(cookie_key));
    if (!inserted) continue;
    ++summary.n_third_party_cookies;
    CookieEntry& entry = it->second;
    entry.page = key;
    entry.registered_domain = domain;
    entry.name = cookie.name;
    entry.value = cookie.value;
    entry.domain = cookie.domain;
    entry.path = cookie.path;
    entry.expiry = cookie.expiry;
    entry.secure = cookie.secure;
    entry.http_only = cookie.http_only;
  }
  page.n_unattributable_cookies = diagnostics.unattributable;
  pages_.emplace(key, std::move(page));
  return summary;
}

std::optional<Timestamp> CrawlStore::RunTimestamp() const {
  std::optional<Timestamp> latest;
  for (const auto& [key, page] : pages_) {
    if (!latest || page.captured_at > *latest) latest = page.captured_at;
  }
  return latest;
}

void CrawlStore::Export(std::ostream& out) const {
  const json meta = {
      {"kind", "meta"},
      {"schema", kStoreSchema},
      {"psl_version", metadata_.psl_version},
      {"extension_map", metadata_.extension_map},
      {"run_timestamp", OptionalTimestamp(RunTimestamp())},
      {"n_pages", pages_.size()},
      {"n_elements", elements_.size()},
      {"n_cookies", cookies_.size()},
  };
  out << meta.dump() << '\n';
  for (const auto& [key, page] : pages_) out << ToJson(page).dump() << '\n';
  for (const auto& [key, element] : elements_) {
    out << ToJson(element).dump() << '\n';
  }
  for (const auto& [key, cookie] : cookies_) {
    out << ToJson(cookie).dump() << '\n';
  }
}

std::string CrawlStore::ExportString() const {
  std::ostringstream out;
  Export(out);
  return out.str();
}

CrawlStore CrawlStore::Import(std::istream& in) {
  CrawlStore store;
  std::string line;
  size_t line_number = 0;
  bool meta_seen = false;
  size_t expected_pages = 0;
  size_t expected_elements = 0;
  size_t expected_cookies = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const json object = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (object.is_discarded() || !object.is_object()) {
      throw Error(ErrorCode::kStoreImport,
                  "store line " + std::to_string(line_number) +
                      ": not a JSON object (truncated or corrupt)");
    }
    const LineReader reader(object, line_number);
    const std::string kind = reader.String("kind");
    if (!meta_seen && kind != "meta") reader.Fail("first record must be meta");
    if (kind == "meta") {
      if (meta_seen) reader.Fail("duplicate meta record");
      meta_seen = true;
      if (reader.String("schema") != kStoreSchema) {
        reader.Fail("unsupported schema \"" + reader.String("schema") + "\"");
      }
      store.metadata_.psl_version = reader.String("psl_version");
      store.metadata_.extension_map = reader.String("extension_map");
      expected_pages = static_cast<size_t>(reader.Int("n_pages"));
      expected_elements = static_cast<size_t>(reader.Int("n_elements"));
      expected_cookies = static_cast<size_t>(reader.Int("n_cookies"));
    } else if (kind == "page") {
      PageRecord page;
      page.key = reader.String("key");
      page.raw_seed = reader.String("raw_seed");
      if (!reader.Get("rank").is_null()) page.rank = reader.Int("rank");
      page.final_url = reader.String("final_url");
      page.title = reader.String("title");
      page.meta_description = reader.String("meta_description");
      page.host = reader.String("host");
      page.page_domain = reader.String("page_domain");
      page.tld = reader.String("tld");
      const auto status = LoadStatusFromName(reader.String("load_status"));
      if (!status) reader.Fail("bad load_status");
      page.load_status = *status;
      page.captured_at = reader.Time("captured_at");
      page.diagnostic = reader.String("diagnostic");
      page.n_requests = reader.Int("n_requests");
      page.n_first_party_requests = reader.Int("n_first_party_requests");
      page.n_third_party_requests = reader.Int("n_third_party_requests");
      page.n_unattributable_requests = reader.Int("n_unattributable_requests");
      page.n_cookies = reader.Int("n_cookies");
      page.n_unattributable_cookies = reader.Int("n_unattributable_cookies");
      const std::string key = page.key;
      if (!store.pages_.emplace(key, std::move(page)).second) {
        reader.Fail("duplicate page " + key);
      }
    } else if (kind == "element") {
      ElementRecord element;
      element.page = reader.String("page");
      element.registered_domain = reader.String("registered_domain");
      element.element_path = reader.String("element_path");
      element.host = reader.String("host");
      element.filename = reader.String("filename");
      element.args = reader.String("args");
      element.extension = reader.String("extension");
      const auto type = ElementTypeFromName(reader.String("element_type"));
      if (!type) reader.Fail("bad element_type");
      element.element_type = *type;
      element.full_url = reader.String("full_url");
      element.request_count = reader.Int("request_count");
      if (!store.pages_.contains(element.page)) {
        reader.Fail("element for unknown page " + element.page);
      }
      ElementKey key{element.page, element.registered_domain,
                     element.element_path};
      if (!store.elements_.emplace(std::move(key), std::move(element)).second) {
        reader.Fail("duplicate element");
      }
    } else if (kind == "cookie") {
      CookieEntry cookie;
      cookie.page = reader.String("page");
      cookie.registered_domain = reader.String("registered_domain");
      cookie.name = reader.String("name");
      cookie.value = reader.String("value");
      cookie.domain = reader.String("domain");
      cookie.path = reader.String("path");
      cookie.expiry = reader.OptionalTime("expiry");
      cookie.secure = reader.Bool("secure");
      cookie.http_only = reader.Bool("http_only");
      if (!store.pages_.contains(cookie.page)) {
        reader.Fail("cookie for unknown page " + cookie.page);
      }
      CookieKey key{cookie.page, cookie.registered_domain, cookie.name,
                    cookie.value};
      if (!store.cookies_.emplace(std::move(key), std::move(cookie)).second) {
        reader.Fail("duplicate cookie");
      }
    } else {
      reader.Fail("unknown record kind \"" + kind + "\"");
    }
  }
  if (!meta_seen) {
    throw Error(ErrorCode::kStoreImport,
                "store line " + std::to_string(line_number + 1) +
                    ": missing meta record");
  }
  if (store.pages_.size() != expected_pages ||
      store.elements_.size() != expected_elements ||
      store.cookies_.size() != expected_cookies) {
    throw Error(ErrorCode::kStoreImport,
                "store line " + std::to_string(line_number + 1) +
                    ": truncated, record counts do not match the meta record");
  }
  return store;
}

void CrawlStore::Save(const std::filesystem::path& path) const {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kStorage, "cannot write " + tmp.string());
    Export(out);
    out.flush();
    if (!out) throw Error(ErrorCode::kStorage, "write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw Error(ErrorCode::kStorage,
                "cannot replace " + path.string() + ": " + ec.message());
  }
}

CrawlStore CrawlStore::Open(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return CrawlStore{};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read store " + path.string());
  return Import(in);
}

}  // namespace xray
