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

#include "xray/cookie_analysis.h"

#include <fstream>

#include "xray/error.h"
#include "xray/request_analysis.h"
#include "xray/strings.h"
#include "xray/url.h"

namespace xray {

std::vector<CookieRecord> ThirdPartyCookies(
    std::string_view page_domain, std::span<const CookieRecord> cookies,
    const PublicSuffixRuleSet& rules, CookieDiagnostics* diagnostics) {
  std::vector<CookieRecord> out;
  for (const CookieRecord& cookie : cookies) {
    const auto domain = rules.TryRegisteredDomain(cookie.domain);
    if (!domain) {
      if (diagnostics) ++diagnostics->unattributable;
      continue;
    }
    if (IsThirdParty(page_domain, *domain)) out.push_back(cookie);
  }
  return out;
}

bool IndicatorRule::Matches(std::string_view name,
                            std::string_view registered_domain,
                            const OwnershipRegistry& registry) const {
  if (name != cookie_name) return false;
  if (match == IndicatorMatch::kDomain) return registered_domain == match_value;
  const auto owner = registry.Resolve(registered_domain);
  return owner &&
         (owner->company == match_value || owner->ultimate_parent == match_value);
}

std::vector<IndicatorRule> DefaultIndicators() {
  return {
      {"PREF", IndicatorMatch::kOwner, "Google", std::string(kGooglePref)},
      {"id", IndicatorMatch::kDomain, "doubleclick.net",
       std::string(kDoubleclickId)},
  };
}

std::vector<IndicatorRule> ParseIndicators(std::istream& in) {
  std::vector<IndicatorRule> rules;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string_view text = TrimWhitespace(line);
    if (text.empty() || text.front() == '#') continue;
    const std::vector<std::string> fields = SplitCsvRecord(text);
    const auto fail = [&](const std::string& why) {
      throw Error(ErrorCode::kIndicatorParse,
                  "indicator line " + std::to_string(line_number) + ": " + why);
    };
    if (fields.size() < 3 || fields.size() > 4) {
      fail("expected \"cookie_name, owner|domain, value[, label]\"");
    }
    IndicatorRule rule;
    rule.cookie_name = fields[0];
    const std::string kind = ToLowerAscii(fields[1]);
    if (kind == "owner") {
      rule.match = IndicatorMatch::kOwner;
      rule.match_value = fields[2];
    } else if (kind == "domain") {
      rule.match = IndicatorMatch::kDomain;
      rule.match_value = ToLowerAscii(fields[2]);
    } else {
      fail("match kind must be owner or domain, got \"" + fields[1] + "\"");
    }
    if (rule.cookie_name.empty() || rule.match_value.empty()) {
      fail("empty cookie name or match value");
    }
    rule.indicator = fields.size() == 4 && !fields[3].empty()
                         ? fields[3]
                         : rule.cookie_name + "@" + rule.match_value;
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::vector<IndicatorRule> LoadIndicatorFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read indicators: " + path);
  return ParseIndicators(in);
}

std::string PageDomain(const SeedUrl& seed, const PublicSuffixRuleSet& rules) {
  const auto url = ParseAbsoluteUrl(seed.normalized);
  if (!url) return "";
  if (auto domain = rules.TryRegisteredDomain(url->host)) return *domain;
  return url->host;
}

std::vector<SurveillanceFlag> FlagSurveillanceCookies(
    std::span<const PageLoadResult> results, const OwnershipRegistry& registry,
    const PublicSuffixRuleSet& rules,
    std::span<const IndicatorRule> indicators) {
  std::vector<SurveillanceFlag> flags;
  for (const PageLoadResult& result : results) {
    const std::string page_domain = PageDomain(result.seed, rules);
    for (const CookieRecord& cookie :
         ThirdPartyCookies(page_domain, result.cookies, rules)) {
      const std::string domain = rules.RegisteredDomain(cookie.domain);
      for (const IndicatorRule& rule : indicators) {
        if (rule.Matches(cookie.name, domain, registry)) {
          flags.push_back({result.seed.normalized, cookie.name, cookie.domain,
                           rule.indicator});
        }
      }
    }
  }
  return flags;
}

std::map<std::string, std::set<std::string>> FlaggedPages(
    std::span<const SurveillanceFlag> flags) {
  std::map<std::string, std::set<std::string>> pages;
  for (const SurveillanceFlag& flag : flags) {
    pages[flag.indicator].insert(flag.page_url);
  }
  return pages;
}

}  // namespace xray
