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

#ifndef XRAY_COOKIE_ANALYSIS_H_
#define XRAY_COOKIE_ANALYSIS_H_

#include <istream>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xray/capture.h"
#include "xray/ownership.h"
#include "xray/public_suffix.h"

namespace xray {

struct CookieDiagnostics {
  // Cookies whose domain is a bare public suffix (e.g. "com").
  int unattributable = 0;
};

// Cookies whose registered domain differs from |page_domain|.
std::vector<CookieRecord> ThirdPartyCookies(
    std::string_view page_domain, std::span<const CookieRecord> cookies,
    const PublicSuffixRuleSet& rules, CookieDiagnostics* diagnostics = nullptr);

inline constexpr std::string_view kGooglePref = "google_pref";
inline constexpr std::string_view kDoubleclickId = "doubleclick_id";

enum class IndicatorMatch { kOwner, kDomain };

// A cookie name (exact, case-sensitive) plus a condition on who set it.
// kOwner compares against the resolved company or its ultimate parent;
// kDomain against the cookie's registered domain.
struct IndicatorRule {
  std::string cookie_name;
  IndicatorMatch match = IndicatorMatch::kOwner;
  std::string match_value;
  std::string indicator;

  bool Matches(std::string_view name, std::string_view registered_domain,
               const OwnershipRegistry& registry) const;
};

// PREF from Google-owned domains and id from doubleclick.net.
std::vector<IndicatorRule> DefaultIndicators();

// One rule per line: "cookie_name, owner|domain, match_value[, label]".
// "#" lines are comments. The label defaults to "<name>@<match_value>".
std::vector<IndicatorRule> ParseIndicators(std::istream& in);
std::vector<IndicatorRule> LoadIndicatorFile(const std::string& path);

struct SurveillanceFlag {
  std::string page_url;
  std::string cookie_name;
  std::string cookie_domain;
  std::string indicator;

  friend bool operator==(const SurveillanceFlag&,
                         const SurveillanceFlag&) = default;
};

// One flag per matching third-party cookie. First-party cookies never
// produce flags.
std::vector<SurveillanceFlag> FlagSurveillanceCookies(
    std::span<const PageLoadResult> results, const OwnershipRegistry& registry,
    const PublicSuffixRuleSet& rules,
    std::span<const IndicatorRule> indicators);

// indicator -> pages with at least one flag of that indicator.
std::map<std::string, std::set<std::string>> FlaggedPages(
    std::span<const SurveillanceFlag> flags);

// Registered domain of a page's own address; the host itself when it is a
// bare suffix or IP literal.
std::string PageDomain(const SeedUrl& seed, const PublicSuffixRuleSet& rules);

}  // namespace xray

#endif  // XRAY_COOKIE_ANALYSIS_H_
