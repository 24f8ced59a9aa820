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

#ifndef XRAY_STORE_H_
#define XRAY_STORE_H_

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>

#include "xray/capture.h"
#include "xray/public_suffix.h"
#include "xray/request_analysis.h"

namespace xray {

inline constexpr std::string_view kStoreSchema = "xray-census-store/1";

struct PageRecord {
  std::string key;  // normalized seed URL
  std::string raw_seed;
  std::optional<int> rank;
  std::string final_url;
  std::string title;
  std::string meta_description;
  std::string host;
  std::string page_domain;
  std::string tld;  // final host label, or "ip"
  LoadStatus load_status = LoadStatus::kFailed;
  Timestamp captured_at{};
  std::string diagnostic;
  int n_requests = 0;
  int n_first_party_requests = 0;
  int n_third_party_requests = 0;
  int n_unattributable_requests = 0;
  int n_cookies = 0;
  int n_unattributable_cookies = 0;

  bool analyzed() const { return load_status != LoadStatus::kFailed; }
  friend bool operator==(const PageRecord&, const PageRecord&) = default;
};

// A third-party element as seen from one page. Identity within the page is
// (registered_domain, element_path); arguments are not part of it.
struct ElementRecord {
  std::string page;
  std::string registered_domain;
  std::string element_path;
  std::string host;
  std::string filename;
  std::string args;  // of the first request for this element
  std::string extension;
  ElementType element_type = ElementType::kUnknown;
  std::string full_url;
  int request_count = 0;

  friend bool operator==(const ElementRecord&, const ElementRecord&) = default;
};

// A third-party cookie as seen from one page, keyed by
// (page, registered_domain, name, value).
struct CookieEntry {
  std::string page;
  std::string registered_domain;
  std::string name;
  std::string value;
  std::string domain;
  std::string path;
  std::optional<Timestamp> expiry;
  bool secure = false;
  bool http_only = false;

  friend bool operator==(const CookieEntry&, const CookieEntry&) = default;
};

struct StoreMetadata {
  std::string psl_version;
  std::string extension_map = "default";

  friend bool operator==(const StoreMetadata&, const StoreMetadata&) = default;
};

struct IngestSummary {
  int n_third_party_requests = 0;
  int n_third_party_cookies = 0;
};

using ElementKey = std::tuple<std::string, std::string, std::string>;
using CookieKey = std::tuple<std::string, std::string, std::string, std::string>;

// Pages and their third-party elements and cookies. Every container is
// ordered by key, so the content (and therefore every export and query) is
// independent of the order pages were added in.
class CrawlStore {
 public:
  // Drops first-party requests, stores third-party elements and cookies and
  // replaces anything previously stored for the same page. Throws
  // Error(kStorage) when the result has no normalized seed.
  IngestSummary Put(const PageLoadResult& result,
                    const PublicSuffixRuleSet& rules,
                    const ExtensionMap& extensions = ExtensionMap::Default());

  const std::map<std::string, PageRecord>& pages() const { return pages_; }
  const std::map<ElementKey, ElementRecord>& elements() const {
    return elements_;
  }
  const std::map<CookieKey, CookieEntry>& cookies() const { return cookies_; }
  const StoreMetadata& metadata() const { return metadata_; }
  StoreMetadata& mutable_metadata() { return metadata_; }

  bool empty() const { return pages_.empty(); }

  // Latest capture time across pages; derived from the data so that a store
  // rebuilt from the same inputs is identical.
  std::optional<Timestamp> RunTimestamp() const;

  // One JSON object per line: a "meta" record followed by "page", "element"
  // and "cookie" records in key order.
  void Export(std::ostream& out) const;
  std::string ExportString() const;

  // Throws Error(kStoreImport) naming the first bad line, including
  // truncation detected against the record counts in the meta line.
  static CrawlStore Import(std::istream& in);

  // Atomic write (temporary file + rename).
  void Save(const std::filesystem::path& path) const;
  // A missing file yields an empty store.
  static CrawlStore Open(const std::filesystem::path& path);

  friend bool operator==(const CrawlStore&, const CrawlStore&) = default;

 private:
  void ErasePage(const std::string& page);

  std::map<std::string, PageRecord> pages_;
  std::map<ElementKey, ElementRecord> elements_;
  std::map<CookieKey, CookieEntry> cookies_;
  StoreMetadata metadata_;
};

// Final host label, or "ip" for IP literals.
std::string TldOf(std::string_view host);

}  // namespace xray

#endif  // XRAY_STORE_H_
