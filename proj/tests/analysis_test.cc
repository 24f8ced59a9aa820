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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "support/matchers.h"
#include "support/pipeline.h"
#include "support/synthetic.h"
#include "xray/cookie_analysis.h"
#include "xray/har.h"
#include "xray/ownership.h"
#include "xray/request_analysis.h"

namespace xray {
namespace {

using ::xray::testing::ErrorMessageOf;
using ::xray::testing::ShippedPsl;
using ::xray::testing::ShippedRegistry;
using ::xray::testing::SourceDir;

TEST(RequestAnalysisTest, TrackingPixelDecomposition) {
  const ParsedElement element = ParseRequestUrl(
      "http://sub.example.com/tracking_pixel.png?id=8675309", ShippedPsl());
  EXPECT_EQ(element.registered_domain, "example.com");
  EXPECT_EQ(element.host, "sub.example.com");
  EXPECT_EQ(element.element_path, "/tracking_pixel.png");
  EXPECT_EQ(element.filename, "tracking_pixel.png");
  EXPECT_EQ(element.args, "?id=8675309");
  EXPECT_EQ(element.extension, "png");
  EXPECT_EQ(element.element_type, ElementType::kImage);
}

TEST(RequestAnalysisTest, ExtensionsAndTypes) {
  const ParsedElement script =
      ParseRequestUrl("http://cdn.example.net/lib/app.min.js", ShippedPsl());
  EXPECT_EQ(script.extension, "js");
  EXPECT_EQ(script.element_type, ElementType::kJavascript);
  const ParsedElement beacon =
      ParseRequestUrl("http://t.example.org/beacon", ShippedPsl());
  EXPECT_EQ(beacon.filename, "beacon");
  EXPECT_EQ(beacon.extension, "");
  EXPECT_EQ(beacon.element_type, ElementType::kUnknown);
  EXPECT_EQ(ExtensionOf(".htaccess"), "");
  EXPECT_EQ(ExtensionOf("trailing."), "");
  EXPECT_EQ(ExtensionOf("A.TAR.GZ"), "gz");
}

TEST(RequestAnalysisTest, DefaultClassification) {
  const std::pair<const char*, ElementType> cases[] = {
      {"png", ElementType::kImage},      {"ico", ElementType::kImage},
      {"js", ElementType::kJavascript},  {"css", ElementType::kCss},
      {"woff2", ElementType::kFont},     {"json", ElementType::kJson},
      {"php", ElementType::kDynamic},    {"cgi", ElementType::kDynamic},
      {"xyz", ElementType::kUnknown},    {"", ElementType::kUnknown},
  };
  for (const auto& [extension, type] : cases) {
    EXPECT_EQ(ClassifyExtension(extension), type) << extension;
  }
}

TEST(RequestAnalysisTest, ExtensionConfigOverridesDefaults) {
  std::istringstream config("# site-specific\nswf,dynamic\nsvg, unknown\n");
  const ExtensionMap map = ExtensionMap::FromConfig(config);
  EXPECT_EQ(map.Classify("swf"), ElementType::kDynamic);
  EXPECT_EQ(map.Classify("svg"), ElementType::kUnknown);
  EXPECT_EQ(map.Classify("png"), ElementType::kImage);
  std::istringstream bad("swf,flash\n");
  ErrorMessageOf(ErrorCode::kInvalidArgument,
                 [&] { ExtensionMap::FromConfig(bad); });
}

TEST(RequestAnalysisTest, Errors) {
  ErrorMessageOf(ErrorCode::kMalformedUrl,
                 [] { ParseRequestUrl("/relative.js", ShippedPsl()); });
  ErrorMessageOf(ErrorCode::kNoRegisteredDomain,
                 [] { ParseRequestUrl("http://co.uk/x.js", ShippedPsl()); });
}

TEST(RequestAnalysisTest, FirstAndThirdParty) {
  const auto domain = [](const char* url) {
    return ParseRequestUrl(url, ShippedPsl()).registered_domain;
  };
  const std::string page = domain("http://example.com/");
  EXPECT_FALSE(IsThirdParty(page, domain("http://images.example.com/header.png")));
  EXPECT_TRUE(IsThirdParty(page, domain("http://www.google-analytics.com/__utm.gif")));
  EXPECT_FALSE(IsThirdParty("example.com", "example.com"));
}

// Random URLs built from a small alphabet that exercises dots, slashes,
// empty segments and query strings.
std::string RandomUrl(std::mt19937& rng) {
  static const char* const kHosts[] = {"a.com", "x.y.co.uk", "cdn.b.net",
                                       "b.s3.amazonaws.com", "198.51.100.4"};
  static const char kPathChars[] = "ab./._-%20";
  std::uniform_int_distribution<int> len(0, 12);
  std::uniform_int_distribution<size_t> host(0, std::size(kHosts) - 1);
  std::uniform_int_distribution<size_t> ch(0, sizeof(kPathChars) - 2);
  std::string path = "/";
  for (int i = len(rng); i > 0; --i) path += kPathChars[ch(rng)];
  std::string query;
  if (rng() % 2) {
    query = "?";
    for (int i = len(rng); i > 0; --i) query += "k=v&?/"[rng() % 6];
  }
  return std::string(rng() % 2 ? "http://" : "https://") + kHosts[host(rng)] +
         path + query;
}

TEST(RequestAnalysisPropertyTest, PartsReassembleTheUrl) {
  std::mt19937 rng(20140501);
  for (int i = 0; i < 2000; ++i) {
    const std::string url = RandomUrl(rng);
    const ParsedElement element = ParseRequestUrl(url, ShippedPsl());
    const size_t host_end = url.find('/', url.find("//") + 2);
    EXPECT_EQ(url.substr(host_end), element.element_path + element.args) << url;
    EXPECT_EQ(element.full_url, url);
    EXPECT_TRUE(element.element_path.ends_with(element.filename)) << url;
    const size_t dot = element.filename.rfind('.');
    EXPECT_EQ(element.extension.empty(),
              dot == std::string::npos || dot == 0 ||
                  dot + 1 == element.filename.size())
        << url;
    EXPECT_EQ(element.element_type, ClassifyExtension(element.extension));
  }
}

TEST(RequestAnalysisPropertyTest, ThirdPartyIsSymmetricAndIrreflexive) {
  const char* domains[] = {"example.com", "google.com", "a.co.uk", "b.co.uk", ""};
  for (const char* a : domains) {
    EXPECT_FALSE(IsThirdParty(a, a));
    for (const char* b : domains) EXPECT_EQ(IsThirdParty(a, b), IsThirdParty(b, a));
  }
}

CookieRecord Cookie(std::string name, std::string domain) {
  CookieRecord cookie;
  cookie.name = std::move(name);
  cookie.value = "v";
  cookie.domain = std::move(domain);
  return cookie;
}

TEST(CookieAnalysisTest, ThirdPartySelection) {
  const std::vector<CookieRecord> cookies = {
      Cookie("a", "google.com"), Cookie("b", "shop.example.com"),
      Cookie("c", "com"), Cookie("d", "example.com")};
  CookieDiagnostics diagnostics;
  const auto third = ThirdPartyCookies("example.com", cookies, ShippedPsl(),
                                       &diagnostics);
  ASSERT_EQ(third.size(), 1u);
  EXPECT_EQ(third[0].name, "a");
  EXPECT_EQ(diagnostics.unattributable, 1);
}

TEST(CookieAnalysisTest, IndicatorRules) {
  const auto rules = DefaultIndicators();
  const OwnershipRegistry& registry = ShippedRegistry();
  const auto matched = [&](const char* name, const char* domain) {
    std::vector<std::string> labels;
    for (const IndicatorRule& rule : rules) {
      if (rule.Matches(name, domain, registry)) labels.push_back(rule.indicator);
    }
    return labels;
  };
  using Labels = std::vector<std::string>;
  EXPECT_EQ(matched("PREF", "google.de"), Labels{std::string(kGooglePref)});
  EXPECT_EQ(matched("id", "doubleclick.net"), Labels{std::string(kDoubleclickId)});
  EXPECT_EQ(matched("PREF", "example.org"), Labels{});
  EXPECT_EQ(matched("pref", "google.com"), Labels{});
  EXPECT_EQ(matched("ID", "doubleclick.net"), Labels{});
  // DoubleClick is Google-owned, so its PREF cookies count as Google's.
  EXPECT_EQ(matched("PREF", "doubleclick.net"), Labels{std::string(kGooglePref)});
}

TEST(CookieAnalysisTest, ShippedIndicatorFileMatchesDefaults) {
  const auto loaded =
      LoadIndicatorFile((SourceDir() / "data" / "indicators.txt").string());
  const auto defaults = DefaultIndicators();
  ASSERT_EQ(loaded.size(), defaults.size());
  for (size_t i = 0; i < loaded.size(); ++i) {
    EXPECT_EQ(loaded[i].cookie_name, defaults[i].cookie_name);
    EXPECT_EQ(loaded[i].match, defaults[i].match);
    EXPECT_EQ(loaded[i].match_value, defaults[i].match_value);
    EXPECT_EQ(loaded[i].indicator, defaults[i].indicator);
  }
  std::istringstream bad("PREF, vendor, Google\n");
  const std::string message =
      ErrorMessageOf(ErrorCode::kIndicatorParse, [&] { ParseIndicators(bad); });
  EXPECT_NE(message.find("line 1"), std::string::npos);
}

TEST(CookieAnalysisTest, FixtureYieldsExactlyThreeFlags) {
  const auto results = IngestHarFile(SourceDir() / "tests" / "fixtures" /
                                     "surveillance.har");
  const auto indicators = DefaultIndicators();
  const auto flags = FlagSurveillanceCookies(results, ShippedRegistry(),
                                             ShippedPsl(), indicators);
  const std::vector<SurveillanceFlag> expected = {
      {"http://news.example.com/", "PREF", "google.com", std::string(kGooglePref)},
      {"http://news.example.com/", "id", "doubleclick.net",
       std::string(kDoubleclickId)},
      {"http://shop.example.org/", "PREF", "google.de", std::string(kGooglePref)},
  };
  EXPECT_EQ(flags, expected);
  const auto pages = FlaggedPages(flags);
  EXPECT_EQ(pages.at(std::string(kGooglePref)).size(), 2u);
  EXPECT_EQ(pages.at(std::string(kDoubleclickId)).size(), 1u);
}

TEST(CookieAnalysisTest, FirstPartyPrefIsNeverFlagged) {
  PageLoadResult google;
  google.seed = NormalizeUrl("www.google.com");
  google.load_status = LoadStatus::kOk;
  google.cookies = {Cookie("PREF", "google.com"), Cookie("PREF", "www.google.com")};
  const std::vector<PageLoadResult> results = {google};
  const auto indicators = DefaultIndicators();
  EXPECT_TRUE(FlagSurveillanceCookies(results, ShippedRegistry(), ShippedPsl(),
                                      indicators)
                  .empty());
}

TEST(CookieAnalysisPropertyTest, FlagCountsAreMonotoneInPages) {
  std::mt19937 rng(7);
  const char* domains[] = {"google.com", "google.de", "doubleclick.net",
                           "example.org", "ytimg.com", "news.example.com"};
  const char* names[] = {"PREF", "id", "sid"};
  const auto indicators = DefaultIndicators();
  std::vector<PageLoadResult> results;
  std::map<std::string, size_t> previous;
  for (int i = 0; i < 60; ++i) {
    PageLoadResult page;
    page.seed = NormalizeUrl("site" + std::to_string(i) + ".example.com");
    page.load_status = LoadStatus::kOk;
    for (int c = rng() % 4; c > 0; --c) {
      page.cookies.push_back(Cookie(names[rng() % 3], domains[rng() % 6]));
    }
    results.push_back(page);
    const auto flags = FlagSurveillanceCookies(results, ShippedRegistry(),
                                               ShippedPsl(), indicators);
    for (const auto& [indicator, flagged] : FlaggedPages(flags)) {
      EXPECT_GE(flagged.size(), previous[indicator]);
      previous[indicator] = flagged.size();
    }
    for (const SurveillanceFlag& flag : flags) {
      if (flag.indicator == kGooglePref) {
        EXPECT_EQ(flag.cookie_name, "PREF");
        EXPECT_EQ(ShippedRegistry()
                      .Resolve(ShippedPsl().RegisteredDomain(flag.cookie_domain))
                      ->ultimate_parent,
                  "Google");
      } else {
        EXPECT_EQ(flag.cookie_name, "id");
        EXPECT_EQ(ShippedPsl().RegisteredDomain(flag.cookie_domain),
                  "doubleclick.net");
      }
    }
  }
}

OwnershipRegistry LoadRegistry(const std::string& text) {
  std::istringstream in(text);
  return OwnershipRegistry::Load(in);
}

TEST(OwnershipTest, ResolvesCompaniesAndParents) {
  const OwnershipRegistry& registry = ShippedRegistry();
  EXPECT_EQ(registry.Resolve("1e100.net")->ultimate_parent, "Google");
  EXPECT_EQ(registry.Resolve("2o7.net")->company, "Adobe");
  const auto doubleclick = registry.Resolve("doubleclick.net");
  ASSERT_TRUE(doubleclick);
  EXPECT_EQ(doubleclick->company, "DoubleClick");
  EXPECT_EQ(doubleclick->ultimate_parent, "Google");
  EXPECT_EQ(doubleclick->DisplayName(), "Google");
  const auto akamai = registry.Resolve("akamaihd.net");
  ASSERT_TRUE(akamai);
  EXPECT_EQ(akamai->company, "Akamai");
  EXPECT_EQ(akamai->DisplayName(), "Akamai/Facebook");
  EXPECT_FALSE(registry.Resolve("nobody-knows-this.example"));
}

TEST(OwnershipTest, PrivateSuffixRegistrationsFallBackToSuffixOwner) {
  const OwnershipRegistry& registry = ShippedRegistry();
  EXPECT_EQ(ShippedPsl().RegisteredDomain("fbstatic-a.akamaihd.net"),
            "fbstatic-a.akamaihd.net");
  const auto owner = registry.Resolve("fbstatic-a.akamaihd.net");
  ASSERT_TRUE(owner);
  EXPECT_EQ(owner->company, "Akamai");
  // A bare suffix label never matches.
  EXPECT_FALSE(registry.Resolve("net"));
  EXPECT_FALSE(registry.Resolve("unknown.net"));
}

TEST(OwnershipTest, LoadErrors) {
  const std::string header = "domain,company,parent,notes\n";
  const std::string duplicate = ErrorMessageOf(ErrorCode::kRegistryLoad, [&] {
    LoadRegistry(header + "1e100.net,Google\nx.com,X\n1e100.net,Google\n");
  });
  EXPECT_NE(duplicate.find("line 2"), std::string::npos) << duplicate;
  EXPECT_NE(duplicate.find("line 4"), std::string::npos) << duplicate;
  ErrorMessageOf(ErrorCode::kRegistryLoad, [&] {
    LoadRegistry(header + "a.com,A,B\nb.com,B,C\nc.com,C,A\n");
  });
  ErrorMessageOf(ErrorCode::kRegistryLoad, [&] {
    LoadRegistry(header + "a.com,A,B\nb.com,B,C\nc.com,C,D\nd.com,D,E\n");
  });
  ErrorMessageOf(ErrorCode::kRegistryLoad,
                 [&] { LoadRegistry(header + "a.com,A,A\n"); });
  ErrorMessageOf(ErrorCode::kRegistryLoad,
                 [&] { LoadRegistry(header + "a.com,A,B\nb.com,A,C\n"); });
  ErrorMessageOf(ErrorCode::kRegistryLoad,
                 [&] { LoadRegistry("a.com,A\n"); });
  ErrorMessageOf(ErrorCode::kRegistryLoad,
                 [&] { LoadRegistry(header + "http://a.com/,A\n"); });
  const std::string missing = ErrorMessageOf(ErrorCode::kIo, [] {
    OwnershipRegistry::LoadFile("/nonexistent/registry.csv");
  });
  EXPECT_NE(missing.find("/nonexistent/registry.csv"), std::string::npos);
}

TEST(OwnershipTest, VersionFromCommentOrContentHash) {
  EXPECT_EQ(ShippedRegistry().version(), "2014-05-seed");
  const OwnershipRegistry hashed =
      LoadRegistry("domain,company,parent,notes\na.com,A\n");
  EXPECT_TRUE(hashed.version().starts_with("fnv1a64:"));
  EXPECT_EQ(LoadRegistry("domain,company,parent,notes\na.com,A\n").version(),
            hashed.version());
}

TEST(OwnershipTest, ParentChainWithinHopLimit) {
  const OwnershipRegistry registry = LoadRegistry(
      "domain,company,parent,notes\n"
      "a.com,A,B\nb.com,B,C\nc.com,C,D\nd.com,D\n");
  EXPECT_EQ(registry.Resolve("a.com")->ultimate_parent, "D");
  EXPECT_EQ(registry.UltimateParent("Unknown"), "Unknown");
  EXPECT_EQ(registry.Companies(), (std::set<std::string>{"A", "B", "C", "D"}));
}

}  // namespace
}  // namespace xray
