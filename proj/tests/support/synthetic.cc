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

#include "support/synthetic.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>

#include "xray/time_util.h"

namespace xray::testing {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CatalogEntry {
  const char* host;
  const char* registered_domain;
  const char* owner;    // ultimate parent, "" when unowned
  const char* display;  // company column
  std::vector<const char*> paths;
  const char* cookie_name;    // nullptr: sets no cookie
  const char* cookie_domain;  // Domain attribute, nullptr for host-only
  int weight;
};

const std::vector<CatalogEntry>& Catalog() {
  static const std::vector<CatalogEntry> kCatalog = {
      {"www.google-analytics.com", "google-analytics.com", "Google", "Google",
       {"/__utm.gif", "/ga.js", "/analytics.js"}, nullptr, nullptr, 40},
      {"ssl.google-analytics.com", "google-analytics.com", "Google", "Google",
       {"/ga.js"}, nullptr, nullptr, 10},
      {"www.google.com", "google.com", "Google", "Google",
       {"/images/small-logo.png", "/jsapi"}, "PREF", ".google.com", 14},
      {"www.google.de", "google.de", "Google", "Google",
       {"/xjs/_/js/main.js"}, "PREF", ".google.de", 4},
      {"stats.g.doubleclick.net", "doubleclick.net", "Google", "Google",
       {"/__utm.gif", "/dc.js"}, "id", ".doubleclick.net", 16},
      {"connect.facebook.net", "facebook.net", "Facebook", "Facebook",
       {"/en_US/all.js"}, nullptr, nullptr, 18},
      {"www.facebook.com", "facebook.com", "Facebook", "Facebook",
       {"/plugins/like.php"}, "datr", ".facebook.com", 9},
      {"fbstatic-a.akamaihd.net", "fbstatic-a.akamaihd.net", "Akamai",
       "Akamai/Facebook", {"/rsrc.php/v2/yK/r/LVx-xkvaJ0b.png"}, nullptr,
       nullptr, 12},
      {"stats.wordpress.com", "wordpress.com", "Wordpress", "Wordpress",
       {"/g.gif", "/e-201420.js"}, nullptr, nullptr, 5},
      {"pixel.reson8.com", "reson8.com", "Resonate", "Resonate",
       {"/vendor.gif"}, "rsn", nullptr, 4},
      {"img1.blogblog.com", "blogblog.com", "Google", "Google",
       {"/img/icon18_wrench_allbkg.png"}, nullptr, nullptr, 3},
      {"dpm.demdex.net", "demdex.net", "Adobe", "Adobe", {"/demconf.jpg"},
       "demdex", ".demdex.net", 3},
      {"platform.twitter.com", "twitter.com", "Twitter", "Twitter",
       {"/widgets.js"}, nullptr, nullptr, 9},
      {"b.scorecardresearch.com", "scorecardresearch.com", "comScore",
       "comScore", {"/beacon.js", "/p"}, "UID", ".scorecardresearch.com", 6},
      {"ib.adnxs.com", "adnxs.com", "AppNexus", "AppNexus", {"/ttj"}, "uuid2",
       ".adnxs.com", 6},
      {"fonts.googleapis.com", "fonts.googleapis.com", "Google", "Google",
       {"/css"}, nullptr, nullptr, 7},
      {"fonts.gstatic.com", "gstatic.com", "Google", "Google",
       {"/s/roboto/v15/roboto.woff2"}, nullptr, nullptr, 7},
      {"s7.addthis.com", "addthis.com", "AddThis", "AddThis",
       {"/js/300/addthis_widget.js", "/services/count.json"}, "uid", nullptr,
       4},
      {"c.amazon-adsystem.com", "amazon-adsystem.com", "Amazon", "Amazon",
       {"/aax2/amzn_ads.js"}, "ad-id", ".amazon-adsystem.com", 5},
      {"s.ytimg.com", "ytimg.com", "Google", "Google",
       {"/yts/jsbin/player.js"}, nullptr, nullptr, 4},
      {"cdn.tracker-example.co.uk", "tracker-example.co.uk", "", "",
       {"/lib/track.js"}, "tid", nullptr, 3},
      {"198.51.100.7", "198.51.100.7", "", "", {"/collect.php"}, nullptr,
       nullptr, 2},
      {"metrics.stats-example.com.br", "stats-example.com.br", "", "",
       {"/styles/widget.css"}, "PREF", nullptr, 2},
      {"widgets.example.jp", "example.jp", "", "", {"/w/api.cgi"}, nullptr,
       nullptr, 2},
  };
  return kCatalog;
}

struct SiteTld {
  const char* suffix;  // registrable under this
  const char* tld;     // final label
  int weight;
};

const std::vector<SiteTld>& SiteTlds() {
  static const std::vector<SiteTld> kTlds = {
      {"com", "com", 10}, {"org", "org", 3},   {"net", "net", 3},
      {"de", "de", 3},    {"ru", "ru", 3},     {"co.uk", "uk", 2},
      {"com.br", "br", 2}, {"jp", "jp", 2},
  };
  return kTlds;
}

std::string FileNameOf(const std::string& path) {
  return path.substr(path.rfind('/') + 1);
}

std::string ExtensionOfName(const std::string& name) {
  const size_t dot = name.rfind('.');
  if (dot == std::string::npos || dot == 0) return "";
  return name.substr(dot + 1);
}

std::string MimeFor(const std::string& extension) {
  if (extension == "js") return "application/javascript";
  if (extension == "gif") return "image/gif";
  if (extension == "png") return "image/png";
  if (extension == "jpg") return "image/jpeg";
  if (extension == "css") return "text/css";
  if (extension == "json") return "application/json";
  if (extension == "woff2") return "font/woff2";
  return "text/html";
}

std::string RandomToken(std::mt19937& rng, int length) {
  static const char kAlphabet[] = "abcdefghijklmnopqrstuvwxyz0123456789";
  std::uniform_int_distribution<int> pick(0, 35);
  std::string token;
  for (int i = 0; i < length; ++i) token += kAlphabet[pick(rng)];
  return token;
}

PlantedRequest MakeRequest(const std::string& scheme_host,
                           const std::string& host,
                           const std::string& registered_domain,
                           const std::string& path, const std::string& args,
                           const std::string& page_domain) {
  PlantedRequest request;
  request.url = scheme_host + path + args;
  request.host = host;
  request.registered_domain = registered_domain;
  request.element_path = path;
  request.filename = FileNameOf(path);
  request.extension = ExtensionOfName(request.filename);
  request.third_party = registered_domain != page_domain;
  request.mime_type = MimeFor(request.extension);
  return request;
}

void AddCookie(PlantedPage& page, PlantedRequest& request,
               const std::string& name, const std::string& value,
               const char* domain_attribute) {
  std::string header = name + "=" + value + "; path=/";
  if (domain_attribute) header += std::string("; domain=") + domain_attribute;
  if (value.size() % 2 == 0) header += "; Max-Age=31536000";
  request.set_cookie.push_back(header);
  page.cookies.push_back(
      {name, value, request.registered_domain, request.third_party});
}

}  // namespace

SyntheticCorpus GenerateCorpus(const CorpusOptions& options) {
  std::mt19937 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto& catalog = Catalog();
  std::vector<int> catalog_weights;
  for (const CatalogEntry& entry : catalog) {
    catalog_weights.push_back(entry.weight);
  }
  std::discrete_distribution<size_t> pick_entry(catalog_weights.begin(),
                                                catalog_weights.end());
  std::vector<int> tld_weights;
  for (const SiteTld& tld : SiteTlds()) tld_weights.push_back(tld.weight);
  std::discrete_distribution<size_t> pick_tld(tld_weights.begin(),
                                              tld_weights.end());
  std::uniform_int_distribution<int> n_third(0, options.max_third_party);

  SyntheticCorpus corpus;
  for (const CatalogEntry& entry : catalog) {
    corpus.owners[entry.registered_domain] = {entry.owner, entry.display};
  }

  const Timestamp epoch =
      ParseIso8601("2014-05-01T00:00:00.000Z").value_or(Timestamp{});
  const int total = options.n_pages + options.n_unrecorded;
  for (int i = 0; i < total; ++i) {
    PlantedPage page;
    page.rank = i + 1;
    page.recorded = i < options.n_pages;
    const SiteTld& tld = SiteTlds()[pick_tld(rng)];
    const std::string site = (page.recorded ? "site" : "unrecorded") +
                             std::to_string(options.seed % 1000) + "x" +
                             std::to_string(i);
    page.page_domain = site + "." + tld.suffix;
    page.tld = tld.tld;
    const bool www = unit(rng) < 0.7;
    const std::string host = (www ? "www." : "") + page.page_domain;
    page.seed = "http://" + host + "/";
    page.title = "Site " + std::to_string(i);
    page.started = epoch + std::chrono::minutes(i);
    if (!page.recorded) {
      page.status = LoadStatus::kFailed;
      corpus.pages.push_back(std::move(page));
      continue;
    }
    const double roll = unit(rng);
    page.status = roll < options.p_failed
                      ? LoadStatus::kFailed
                      : roll < options.p_failed + options.p_timeout
                            ? LoadStatus::kTimeout
                            : LoadStatus::kOk;

    // Document, optionally behind a redirect.
    PlantedRequest document = MakeRequest("http://" + host, host,
                                          page.page_domain, "/", "",
                                          page.page_domain);
    if (page.status == LoadStatus::kFailed) {
      document.status = 0;
      page.requests.push_back(std::move(document));
      corpus.pages.push_back(std::move(page));
      continue;
    }
    if (unit(rng) < 0.2) {
      document.status = 301;
      document.redirect_to = "http://" + host + "/home";
      page.requests.push_back(document);
      document = MakeRequest("http://" + host, host, page.page_domain, "/home",
                             "", page.page_domain);
    }
    document.mime_type = "text/html";
    AddCookie(page, document, "sess", RandomToken(rng, 8), nullptr);
    page.requests.push_back(std::move(document));

    // First-party subresources.
    const std::string static_host = "static." + page.page_domain;
    page.requests.push_back(MakeRequest("http://" + static_host, static_host,
                                        page.page_domain, "/css/main.css", "",
                                        page.page_domain));
    page.requests.push_back(MakeRequest("https://" + host, host,
                                        page.page_domain, "/img/logo.png",
                                        "?v=" + RandomToken(rng, 3),
                                        page.page_domain));

    // Third-party elements from the catalog.
    const int n = n_third(rng);
    for (int k = 0; k < n; ++k) {
      const CatalogEntry& entry = catalog[pick_entry(rng)];
      std::uniform_int_distribution<size_t> pick_path(0, entry.paths.size() - 1);
      const std::string path = entry.paths[pick_path(rng)];
      const std::string args =
          unit(rng) < 0.5 ? "?utmn=" + RandomToken(rng, 6) : "";
      const std::string scheme = unit(rng) < 0.5 ? "http://" : "https://";
      PlantedRequest request =
          MakeRequest(scheme + entry.host, entry.host, entry.registered_domain,
                      path, args, page.page_domain);
      if (entry.cookie_name && unit(rng) < 0.6) {
        AddCookie(page, request, entry.cookie_name, RandomToken(rng, 4 + k % 3),
                  entry.cookie_domain);
      }
      page.requests.push_back(std::move(request));
    }

    // A domain no other page contacts.
    if (unit(rng) < options.p_single_site) {
      const std::string domain = "single" + std::to_string(options.seed % 1000) +
                                 "x" + std::to_string(i) + ".net";
      const std::string single_host = "cdn." + domain;
      PlantedRequest request =
          MakeRequest("http://" + single_host, single_host, domain,
                      "/pixel.gif", "", page.page_domain);
      if (unit(rng) < 0.5) {
        AddCookie(page, request, "sid", RandomToken(rng, 5), nullptr);
      }
      page.requests.push_back(std::move(request));
    }

    // A timed-out page loses the responses of its last requests, and with
    // them any cookies those responses would have set.
    if (page.status == LoadStatus::kTimeout) {
      std::uniform_int_distribution<size_t> cut(1, page.requests.size());
      const size_t first_lost = cut(rng);
      for (size_t r = first_lost; r < page.requests.size(); ++r) {
        PlantedRequest& request = page.requests[r];
        request.status = 0;
        request.mime_type.clear();
        for (const std::string& header : request.set_cookie) {
          const std::string name = header.substr(0, header.find('='));
          const std::string value = header.substr(
              header.find('=') + 1, header.find(';') - header.find('=') - 1);
          const auto it = std::find_if(
              page.cookies.begin(), page.cookies.end(),
              [&](const PlantedCookie& cookie) {
                return cookie.name == name && cookie.value == value &&
                       cookie.registered_domain == request.registered_domain;
              });
          if (it != page.cookies.end()) page.cookies.erase(it);
        }
        request.set_cookie.clear();
      }
    }
    corpus.pages.push_back(std::move(page));
  }
  return corpus;
}

json ToHar(const std::vector<const PlantedPage*>& pages) {
  json har_pages = json::array();
  json entries = json::array();
  for (size_t p = 0; p < pages.size(); ++p) {
    const PlantedPage& page = *pages[p];
    const std::string id = "page_" + std::to_string(p + 1);
    json har_page = {{"id", id},
                     {"title", page.title},
                     {"startedDateTime", FormatIso8601(page.started)},
                     {"pageTimings", json::object()}};
    if (page.status != LoadStatus::kOk) {
      har_page["_loadStatus"] = LoadStatusName(page.status);
    }
    har_pages.push_back(std::move(har_page));
    for (size_t r = 0; r < page.requests.size(); ++r) {
      const PlantedRequest& request = page.requests[r];
      json headers = json::array();
      for (const std::string& cookie : request.set_cookie) {
        headers.push_back({{"name", "Set-Cookie"}, {"value", cookie}});
      }
      if (!request.redirect_to.empty()) {
        headers.push_back({{"name", "Location"}, {"value", request.redirect_to}});
      }
      json content = {{"size", 0}};
      if (!request.mime_type.empty()) content["mimeType"] = request.mime_type;
      entries.push_back({
          {"pageref", id},
          {"startedDateTime",
           FormatIso8601(page.started + std::chrono::milliseconds(10 * r))},
          {"time", 12},
          {"request",
           {{"method", "GET"},
            {"url", request.url},
            {"httpVersion", "HTTP/1.1"},
            {"headers", json::array()},
            {"queryString", json::array()},
            {"cookies", json::array()},
            {"headersSize", -1},
            {"bodySize", 0}}},
          {"response",
           {{"status", request.status},
            {"statusText", ""},
            {"httpVersion", "HTTP/1.1"},
            {"headers", headers},
            {"cookies", json::array()},
            {"content", content},
            {"redirectURL", request.redirect_to},
            {"headersSize", -1},
            {"bodySize", -1}}},
          {"cache", json::object()},
          {"timings", {{"send", 0}, {"wait", 10}, {"receive", 2}}},
      });
    }
  }
  return {{"log",
           {{"version", "1.2"},
            {"creator", {{"name", "xray-synth"}, {"version", "1"}}},
            {"pages", har_pages},
            {"entries", entries}}}};
}

void WriteHarDirectory(const SyntheticCorpus& corpus, const fs::path& dir,
                       int pages_per_file) {
  fs::create_directories(dir);
  std::vector<const PlantedPage*> batch;
  int file_index = 0;
  const auto flush = [&] {
    if (batch.empty()) return;
    char name[32];
    std::snprintf(name, sizeof(name), "page_%05d.har", file_index++);
    std::ofstream out(dir / name);
    out << ToHar(batch).dump();
    batch.clear();
  };
  for (const PlantedPage& page : corpus.pages) {
    if (!page.recorded) continue;
    batch.push_back(&page);
    if (static_cast<int>(batch.size()) >= pages_per_file) flush();
  }
  flush();
}

std::vector<SeedUrl> SeedsOf(const SyntheticCorpus& corpus) {
  std::vector<SeedUrl> seeds;
  for (const PlantedPage& page : corpus.pages) {
    SeedUrl seed;
    seed.raw = page.seed;
    seed.normalized = page.seed;
    seed.rank = page.rank;
    seeds.push_back(std::move(seed));
  }
  return seeds;
}

TempDir::TempDir() {
  static std::mt19937_64 rng(std::random_device{}());
  path_ = fs::temp_directory_path() /
          ("xray-test-" + std::to_string(rng()));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ignored;
  fs::remove_all(path_, ignored);
}

fs::path SourceDir() { return XRAY_SOURCE_DIR; }

}  // namespace xray::testing
