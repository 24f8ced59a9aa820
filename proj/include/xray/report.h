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

#ifndef XRAY_REPORT_H_
#define XRAY_REPORT_H_

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "xray/cookie_analysis.h"
#include "xray/ownership.h"
#include "xray/store.h"

namespace xray {

inline constexpr std::string_view kReportSchema = "xray-census-report/1";

// Percentages throughout are 100.0 * count / denominator, where the
// denominator is the number of successfully analyzed pages (ok or timeout).
double Percent(long long count, long long denominator);

// The store seen through the single-site filter: third-party domains that
// appear on fewer than |min_pages| pages are dropped from every statistic.
class FilteredView {
 public:
  struct PageFacts {
    std::set<std::string> domains;  // retained third-party domains
    bool has_cookie = false;        // >= 1 retained third-party cookie
    bool has_javascript = false;    // >= 1 retained javascript element
  };

  const CrawlStore& store() const { return *store_; }
  int min_pages() const { return min_pages_; }

  bool Retained(std::string_view domain) const {
    return retained_.contains(domain);
  }
  const std::set<std::string, std::less<>>& retained_domains() const {
    return retained_;
  }
  // Excluded domain -> number of pages it appeared on.
  const std::map<std::string, int>& excluded_domains() const {
    return excluded_;
  }

  // Analyzed pages in key order.
  const std::vector<const PageRecord*>& analyzed_pages() const {
    return analyzed_;
  }
  const PageFacts& facts(const std::string& page) const;

 private:
  friend FilteredView FilterSingleSiteDomains(const CrawlStore&, int);
  friend FilteredView FilterSingleSiteDomains(const FilteredView&);
  static FilteredView Build(const CrawlStore& store, int min_pages,
                            const std::set<std::string, std::less<>>* within);

  const CrawlStore* store_ = nullptr;
  int min_pages_ = 2;
  std::set<std::string, std::less<>> retained_;
  std::map<std::string, int> excluded_;
  std::vector<const PageRecord*> analyzed_;
  std::map<std::string, PageFacts> facts_;
};

FilteredView FilterSingleSiteDomains(const CrawlStore& store,
                                     int min_pages = 2);
// Re-applies the filter to an already filtered view; a no-op by construction.
FilteredView FilterSingleSiteDomains(const FilteredView& view);

struct Summary {
  int n_pages_total = 0;
  int n_pages_analyzed = 0;
  int n_pages_failed = 0;
  int n_pages_timeout = 0;

  int n_with_3pe = 0;
  double pct_with_3pe = 0;
  long long total_domains_contacted = 0;
  // Mean over pages with >= 1 third-party domain; 0 with
  // no_qualifying_pages set when there are none.
  double avg_domains_contacted = 0;
  bool no_qualifying_pages = false;
  // Mean over all analyzed pages.
  double avg_domains_all_pages = 0;

  int n_with_3p_cookie = 0;
  double pct_with_3p_cookie = 0;
  int n_with_3p_js = 0;
  double pct_with_3p_js = 0;

  // Corpus-level counts after filtering.
  int unique_cookies = 0;            // distinct (domain, name, value)
  int unique_elements_global = 0;    // distinct (domain, path)
  long long unique_elements_per_page = 0;  // sum over pages
  int distinct_third_party_domains = 0;
  int excluded_domains = 0;
};

struct TldRow {
  std::string tld;
  int n = 0;
  int n_with_3pe = 0;
  double pct_3pe = 0;
  long long total_domains = 0;
  double avg_domains = 0;
  bool no_qualifying_pages = false;
  int n_with_cookie = 0;
  double pct_cookie = 0;
  int n_with_js = 0;
  double pct_js = 0;
};

struct TopElement {
  int rank = 0;
  std::string domain;
  std::string element_path;
  std::string filename;
  ElementType element_type = ElementType::kUnknown;
  int n_pages = 0;
  double pct_pages = 0;
  std::string company;          // display name or "unattributed"
  std::string ultimate_parent;  // or "unattributed"
};

struct TypeShare {
  int count = 0;
  double pct = 0;
};

struct ReachEntry {
  std::string company;
  int n_pages = 0;
  double pct_pages = 0;
};

struct IndicatorStats {
  std::string indicator;
  int n_pages = 0;
  double pct_analyzed = 0;   // over analyzed pages
  double pct_attempted = 0;  // over every stored page, failed included
};

struct Surveillance {
  std::vector<IndicatorStats> indicators;
  // Convenience copies of the two default indicators (0 when not
  // configured).
  double pct_pref_pages = 0;
  double pct_dclk_id_pages = 0;
};

// Throws Error(kEmptyInput) when no page was successfully analyzed.
Summary SummaryStats(const FilteredView& view);

// Rows sorted by n descending, then tld ascending.
std::vector<TldRow> TldBreakdown(const FilteredView& view);

// Ranked by share of analyzed pages requesting the element; ties broken by
// (domain, path). When |only| is set, other element types are skipped before
// ranking. Throws Error(kInvalidArgument) for k < 1.
std::vector<TopElement> TopElements(const FilteredView& view, int k,
                                    const OwnershipRegistry& registry,
                                    std::optional<ElementType> only = {});

// Share of each type among |ranked| itself. Throws Error(kEmptyInput) for an
// empty list.
std::map<ElementType, TypeShare> TypeDistribution(
    std::span<const TopElement> ranked);

// Pages contacting any domain that resolves to each ultimate parent, sorted
// by share descending then company name. Throws Error(kEmptyInput) for an
// empty store.
std::vector<ReachEntry> CorporateReach(const FilteredView& view,
                                       const OwnershipRegistry& registry);

Surveillance SurveillanceStats(const FilteredView& view,
                               const OwnershipRegistry& registry,
                               std::span<const IndicatorRule> indicators);

struct ReportOptions {
  int top_k = 100;
  int top_images = 10;
  int min_pages = 2;
};

struct ReportMetadata {
  std::string psl_version;
  std::string registry_version;
  int registry_domains = 0;
  int registry_companies = 0;
  std::optional<Timestamp> run_timestamp;
  int top_k = 0;
  int top_images = 0;
  int single_site_min_pages = 2;
  std::vector<std::string> excluded_domains;
  std::vector<std::string> indicators;
};

struct CensusReport {
  Summary summary;
  std::vector<TldRow> tld_rows;
  std::vector<TopElement> top_elements;
  std::vector<TopElement> top_images;
  std::map<ElementType, TypeShare> type_distribution;
  std::vector<ReachEntry> reach;
  Surveillance surveillance;
  ReportMetadata metadata;
};

// filter -> summary -> TLD rows -> top elements -> reach -> surveillance.
CensusReport BuildReport(const CrawlStore& store,
                         const OwnershipRegistry& registry,
                         std::span<const IndicatorRule> indicators,
                         const ReportOptions& options = {});

enum class ReportFormat { kJson, kText };

nlohmann::json ReportToJson(const CensusReport& report);
std::string RenderReport(const CensusReport& report, ReportFormat format);

}  // namespace xray

#endif  // XRAY_REPORT_H_
