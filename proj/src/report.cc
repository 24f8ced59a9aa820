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

#include "xray/report.h"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <utility>

#include "xray/error.h"

namespace xray {

namespace {

using nlohmann::json;

struct ColumnCounts {
  int n = 0;
  int n_with_3pe = 0;
  long long total_domains = 0;
  int n_with_cookie = 0;
  int n_with_js = 0;
};

void Accumulate(const FilteredView::PageFacts& facts, ColumnCounts& counts) {
  ++counts.n;
  if (!facts.domains.empty()) {
    ++counts.n_with_3pe;
    counts.total_domains += static_cast<long long>(facts.domains.size());
  }
  if (facts.has_cookie) ++counts.n_with_cookie;
  if (facts.has_javascript) ++counts.n_with_js;
}

double Mean(long long total, long long count) {
  return count == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(count);
}

}  // namespace

double Percent(long long count, long long denominator) {
  if (denominator == 0) return 0.0;
  return 100.0 * static_cast<double>(count) / static_cast<double>(denominator);
}

// ---------------------------------------------------------------------------
// Single-site filter

FilteredView FilteredView::Build(
    const CrawlStore& store, int min_pages,
    const std::set<std::string, std::less<>>* within) {
  FilteredView view;
  view.store_ = &store;
  view.min_pages_ = min_pages;

  std::set<std::string> analyzed_keys;
  for (const auto& [key, page] : store.pages()) {
    if (!page.analyzed()) continue;
    view.analyzed_.push_back(&page);
    analyzed_keys.insert(key);
    view.facts_[key];
  }

  // Elements are ordered by (page, domain, path), so one (page, domain) pair
  // is a contiguous run.
  std::map<std::string, int> page_counts;
  const std::string* last_page = nullptr;
  const std::string* last_domain = nullptr;
  for (const auto& [key, element] : store.elements()) {
    if (!analyzed_keys.contains(element.page)) continue;
    if (within && !within->contains(element.registered_domain)) continue;
    if (last_page && *last_page == element.page && last_domain &&
        *last_domain == element.registered_domain) {
      continue;
    }
    last_page = &element.page;
    last_domain = &element.registered_domain;
    ++page_counts[element.registered_domain];
  }
  for (const auto& [domain, count] : page_counts) {
    if (count >= min_pages) {
      view.retained_.insert(domain);
    } else {
      view.excluded_.emplace(domain, count);
    }
  }
  for (const auto& [key, element] : store.elements()) {
    const auto facts = view.facts_.find(element.page);
    if (facts == view.facts_.end() ||
        !view.retained_.contains(element.registered_domain)) {
      continue;
    }
    facts->second.domains.insert(element.registered_domain);
    if (element.element_type == ElementType::kJavascript) {
      facts->second.has_javascript = true;
    }
  }
  for (const auto& [key, cookie] : store.cookies()) {
    const auto facts = view.facts_.find(cookie.page);
    if (facts == view.facts_.end() ||
        !view.retained_.contains(cookie.registered_domain)) {
      continue;
    }
    facts->second.has_cookie = true;
  }
  return view;
}

const FilteredView::PageFacts& FilteredView::facts(
    const std::string& page) const {
  static const PageFacts kEmpty;
  const auto it = facts_.find(page);
  return it == facts_.end() ? kEmpty : it->second;
}

FilteredView FilterSingleSiteDomains(const CrawlStore& store, int min_pages) {
  return FilteredView::Build(store, min_pages, nullptr);
}

FilteredView FilterSingleSiteDomains(const FilteredView& view) {
  FilteredView refiltered =
      FilteredView::Build(view.store(), view.min_pages(), &view.retained_);
  for (const auto& [domain, count] : view.excluded_) {
    refiltered.excluded_.emplace(domain, count);
  }
  return refiltered;
}

// ---------------------------------------------------------------------------
// Statistics

Summary SummaryStats(const FilteredView& view) {
  const CrawlStore& store = view.store();
  Summary summary;
  summary.n_pages_total = static_cast<int>(store.pages().size());
  summary.n_pages_analyzed = static_cast<int>(view.analyzed_pages().size());
  summary.n_pages_failed = summary.n_pages_total - summary.n_pages_analyzed;
  for (const PageRecord* page : view.analyzed_pages()) {
    if (page->load_status == LoadStatus::kTimeout) ++summary.n_pages_timeout;
  }
  if (summary.n_pages_analyzed == 0) {
    throw Error(ErrorCode::kEmptyInput, "no successfully analyzed pages");
  }

  ColumnCounts counts;
  for (const PageRecord* page : view.analyzed_pages()) {
    Accumulate(view.facts(page->key), counts);
  }
  const int n = counts.n;
  summary.n_with_3pe = counts.n_with_3pe;
  summary.pct_with_3pe = Percent(counts.n_with_3pe, n);
  summary.total_domains_contacted = counts.total_domains;
  summary.no_qualifying_pages = counts.n_with_3pe == 0;
  summary.avg_domains_contacted = Mean(counts.total_domains, counts.n_with_3pe);
  summary.avg_domains_all_pages = Mean(counts.total_domains, n);
  summary.n_with_3p_cookie = counts.n_with_cookie;
  summary.pct_with_3p_cookie = Percent(counts.n_with_cookie, n);
  summary.n_with_3p_js = counts.n_with_js;
  summary.pct_with_3p_js = Percent(counts.n_with_js, n);

  std::set<std::string> analyzed;
  for (const PageRecord* page : view.analyzed_pages()) analyzed.insert(page->key);
  std::set<std::pair<std::string, std::string>> elements;
  for (const auto& [key, element] : store.elements()) {
    if (!analyzed.contains(element.page) ||
        !view.Retained(element.registered_domain)) {
      continue;
    }
    elements.emplace(element.registered_domain, element.element_path);
    ++summary.unique_elements_per_page;
  }
  summary.unique_elements_global = static_cast<int>(elements.size());
  std::set<std::tuple<std::string, std::string, std::string>> cookies;
  for (const auto& [key, cookie] : store.cookies()) {
    if (!analyzed.contains(cookie.page) ||
        !view.Retained(cookie.registered_domain)) {
      continue;
    }
    cookies.emplace(cookie.registered_domain, cookie.name, cookie.value);
  }
  summary.unique_cookies = static_cast<int>(cookies.size());
  summary.distinct_third_party_domains =
      static_cast<int>(view.retained_domains().size());
  summary.excluded_domains = static_cast<int>(view.excluded_domains().size());
  return summary;
}

std::vector<TldRow> TldBreakdown(const FilteredView& view) {
  std::map<std::string, ColumnCounts> groups;
  for (const PageRecord* page : view.analyzed_pages()) {
    Accumulate(view.facts(page->key), groups[page->tld]);
  }
  std::vector<TldRow> rows;
  for (const auto& [tld, counts] : groups) {
    TldRow row;
    row.tld = tld;
    row.n = counts.n;
    row.n_with_3pe = counts.n_with_3pe;
    row.pct_3pe = Percent(counts.n_with_3pe, counts.n);
    row.total_domains = counts.total_domains;
    row.avg_domains = Mean(counts.total_domains, counts.n_with_3pe);
    row.no_qualifying_pages = counts.n_with_3pe == 0;
    row.n_with_cookie = counts.n_with_cookie;
    row.pct_cookie = Percent(counts.n_with_cookie, counts.n);
    row.n_with_js = counts.n_with_js;
    row.pct_js = Percent(counts.n_with_js, counts.n);
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const TldRow& a, const TldRow& b) { return a.n > b.n; });
  return rows;
}

std::vector<TopElement> TopElements(const FilteredView& view, int k,
                                    const OwnershipRegistry& registry,
                                    std::optional<ElementType> only) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "top-k must be >= 1");
  std::set<std::string> analyzed;
  for (const PageRecord* page : view.analyzed_pages()) analyzed.insert(page->key);

  std::map<std::pair<std::string, std::string>, TopElement> counts;
  for (const auto& [key, element] : view.store().elements()) {
    if (!analyzed.contains(element.page) ||
        !view.Retained(element.registered_domain)) {
      continue;
    }
    if (only && element.element_type != *only) continue;
    auto [it, inserted] = counts.try_emplace(
        {element.registered_domain, element.element_path});
    if (inserted) {
      it->second.domain = element.registered_domain;
      it->second.element_path = element.element_path;
      it->second.filename = element.filename;
      it->second.element_type = element.element_type;
    }
    ++it->second.n_pages;
  }
  std::vector<TopElement> ranked;
  ranked.reserve(counts.size());
  for (auto& [key, element] : counts) ranked.push_back(std::move(element));
  // |counts| is already in (domain, path) order; a stable sort on page count
  // keeps that as the tie-break.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const TopElement& a, const TopElement& b) {
                     return a.n_pages > b.n_pages;
                   });
  if (ranked.size() > static_cast<size_t>(k)) ranked.resize(k);
  const long long n = static_cast<long long>(analyzed.size());
  for (size_t i = 0; i < ranked.size(); ++i) {
    TopElement& element = ranked[i];
    element.rank = static_cast<int>(i) + 1;
    element.pct_pages = Percent(element.n_pages, n);
    if (const auto owner = registry.Resolve(element.domain)) {
      element.company = owner->DisplayName();
      element.ultimate_parent = owner->ultimate_parent;
    } else {
      element.company = std::string(kUnattributed);
      element.ultimate_parent = std::string(kUnattributed);
    }
  }
  return ranked;
}

std::map<ElementType, TypeShare> TypeDistribution(
    std::span<const TopElement> ranked) {
  if (ranked.empty()) {
    throw Error(ErrorCode::kEmptyInput, "type distribution of an empty list");
  }
  std::map<ElementType, TypeShare> shares;
  for (const TopElement& element : ranked) ++shares[element.element_type].count;
  for (auto& [type, share] : shares) {
    share.pct = Percent(share.count, static_cast<long long>(ranked.size()));
  }
  return shares;
}

std::vector<ReachEntry> CorporateReach(const FilteredView& view,
                                       const OwnershipRegistry& registry) {
  if (view.store().empty()) {
    throw Error(ErrorCode::kEmptyInput, "corporate reach of an empty store");
  }
  const long long n = static_cast<long long>(view.analyzed_pages().size());
  if (n == 0) {
    throw Error(ErrorCode::kEmptyInput, "no successfully analyzed pages");
  }
  std::map<std::string, int> pages_per_company;
  for (const PageRecord* page : view.analyzed_pages()) {
    std::set<std::string> companies;
    for (const std::string& domain : view.facts(page->key).domains) {
      if (const auto owner = registry.Resolve(domain)) {
        companies.insert(owner->ultimate_parent);
      }
    }
    for (const std::string& company : companies) ++pages_per_company[company];
  }
  std::vector<ReachEntry> reach;
  for (const auto& [company, count] : pages_per_company) {
    reach.push_back({company, count, Percent(count, n)});
  }
  std::stable_sort(reach.begin(), reach.end(),
                   [](const ReachEntry& a, const ReachEntry& b) {
                     return a.n_pages > b.n_pages;
                   });
  return reach;
}

Surveillance SurveillanceStats(const FilteredView& view,
                               const OwnershipRegistry& registry,
                               std::span<const IndicatorRule> indicators) {
  std::set<std::string> analyzed;
  for (const PageRecord* page : view.analyzed_pages()) analyzed.insert(page->key);

  std::map<std::string, std::set<std::string>> pages;
  for (const auto& [key, cookie] : view.store().cookies()) {
    if (!analyzed.contains(cookie.page) ||
        !view.Retained(cookie.registered_domain)) {
      continue;
    }
    for (const IndicatorRule& rule : indicators) {
      if (rule.Matches(cookie.name, cookie.registered_domain, registry)) {
        pages[rule.indicator].insert(cookie.page);
      }
    }
  }

  Surveillance result;
  std::set<std::string> seen;
  const long long n_analyzed = static_cast<long long>(analyzed.size());
  const long long n_attempted =
      static_cast<long long>(view.store().pages().size());
  for (const IndicatorRule& rule : indicators) {
    if (!seen.insert(rule.indicator).second) continue;
    IndicatorStats stats;
    stats.indicator = rule.indicator;
    stats.n_pages = static_cast<int>(pages[rule.indicator].size());
    stats.pct_analyzed = Percent(stats.n_pages, n_analyzed);
    stats.pct_attempted = Percent(stats.n_pages, n_attempted);
    if (rule.indicator == kGooglePref) result.pct_pref_pages = stats.pct_analyzed;
    if (rule.indicator == kDoubleclickId) {
      result.pct_dclk_id_pages = stats.pct_analyzed;
    }
    result.indicators.push_back(std::move(stats));
  }
  return result;
}

CensusReport BuildReport(const CrawlStore& store,
                         const OwnershipRegistry& registry,
                         std::span<const IndicatorRule> indicators,
                         const ReportOptions& options) {
  if (store.empty()) throw Error(ErrorCode::kEmptyInput, "store is empty");
  const FilteredView view = FilterSingleSiteDomains(store, options.min_pages);

  CensusReport report;
  report.summary = SummaryStats(view);
  report.tld_rows = TldBreakdown(view);
  report.top_elements = TopElements(view, options.top_k, registry);
  report.top_images =
      TopElements(view, options.top_images, registry, ElementType::kImage);
  if (!report.top_elements.empty()) {
    report.type_distribution = TypeDistribution(report.top_elements);
  }
  report.reach = CorporateReach(view, registry);
  report.surveillance = SurveillanceStats(view, registry, indicators);

  ReportMetadata& meta = report.metadata;
  meta.psl_version = store.metadata().psl_version;
  meta.registry_version = registry.version();
  meta.registry_domains = static_cast<int>(registry.entries().size());
  meta.registry_companies = static_cast<int>(registry.Companies().size());
  meta.run_timestamp = store.RunTimestamp();
  meta.top_k = options.top_k;
  meta.top_images = options.top_images;
  meta.single_site_min_pages = options.min_pages;
  for (const auto& [domain, count] : view.excluded_domains()) {
    meta.excluded_domains.push_back(domain);
  }
  for (const IndicatorRule& rule : indicators) {
    meta.indicators.push_back(rule.indicator + " = " + rule.cookie_name + " @ " +
                              (rule.match == IndicatorMatch::kOwner ? "owner:"
                                                                    : "domain:") +
                              rule.match_value);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

json ElementJson(const TopElement& element) {
  return {
      {"rank", element.rank},
      {"domain", element.domain},
      {"element_path", element.element_path},
      {"filename", element.filename},
      {"element_type", ElementTypeName(element.element_type)},
      {"n_pages", element.n_pages},
      {"pct_pages", element.pct_pages},
      {"company", element.company},
      {"ultimate_parent", element.ultimate_parent},
  };
}

std::string Fixed(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

// Left-aligned columns separated by two spaces, with a dashed rule under the
// header.
std::string Table(const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) return "";
  std::vector<size_t> widths(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size() && i < widths.size(); ++i) {
      widths[i] = std::max(widths[i], row[i].size());
    }
  }
  std::ostringstream out;
  const auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(widths[i] - row[i].size() + 2, ' ');
    }
    out << line << '\n';
  };
  emit(rows.front());
  std::vector<std::string> rule;
  for (size_t width : widths) rule.push_back(std::string(width, '-'));
  emit(rule);
  for (size_t i = 1; i < rows.size(); ++i) emit(rows[i]);
  return out.str();
}

std::string RenderText(const CensusReport& report) {
  const Summary& s = report.summary;
  const ReportMetadata& meta = report.metadata;
  std::ostringstream out;
  out << "xray-census report (" << kReportSchema << ")\n";
  out << "PSL version:      " << meta.psl_version << '\n';
  out << "Registry version: " << meta.registry_version << " ("
      << meta.registry_domains << " domains, " << meta.registry_companies
      << " companies)\n";
  out << "Run timestamp:    "
      << (meta.run_timestamp ? FormatIso8601(*meta.run_timestamp) : "-") << '\n';
  out << "Single-site filter: third-party domains on fewer than "
      << meta.single_site_min_pages << " pages excluded ("
      << meta.excluded_domains.size() << " excluded)\n";
  out << "Pages: " << s.n_pages_total << " attempted, " << s.n_pages_analyzed
      << " analyzed (" << s.n_pages_timeout << " partial after timeout), "
      << s.n_pages_failed << " failed\n";
  out << "Unique cookies: " << s.unique_cookies
      << "  Unique elements: " << s.unique_elements_global << " global, "
      << s.unique_elements_per_page << " per-page"
      << "  Third-party domains: " << s.distinct_third_party_domains << "\n\n";

  out << "Findings Summary\n";
  const auto avg = [](double value, bool none) {
    return none ? Fixed(value) + "*" : Fixed(value);
  };
  std::vector<std::vector<std::string>> table1 = {
      {"Rank", "TLD", "N", "% W/3PE", "Ave. Domains Contacted", "% W/Cookie",
       "% W/JS"},
      {"-", "*", std::to_string(s.n_pages_analyzed), Fixed(s.pct_with_3pe),
       avg(s.avg_domains_contacted, s.no_qualifying_pages),
       Fixed(s.pct_with_3p_cookie), Fixed(s.pct_with_3p_js)}};
  for (size_t i = 0; i < report.tld_rows.size(); ++i) {
    const TldRow& row = report.tld_rows[i];
    table1.push_back({std::to_string(i + 1), row.tld, std::to_string(row.n),
                      Fixed(row.pct_3pe),
                      avg(row.avg_domains, row.no_qualifying_pages),
                      Fixed(row.pct_cookie), Fixed(row.pct_js)});
  }
  out << Table(table1);
  out << "Ave. Domains Contacted is over pages with >= 1 third-party domain; "
         "over all analyzed pages it is "
      << Fixed(s.avg_domains_all_pages) << ".\n";
  if (s.no_qualifying_pages) out << "* no qualifying pages\n";
  out << '\n';

  out << "Top Image Characteristics\n";
  std::vector<std::vector<std::string>> table2 = {
      {"Rank", "% Sites", "File Name", "Domain", "Company"}};
  for (const TopElement& e : report.top_images) {
    table2.push_back({std::to_string(e.rank), Fixed(e.pct_pages) + "%",
                      e.filename, e.domain, e.company});
  }
  out << Table(table2) << '\n';

  out << "Top " << meta.top_k << " Requested Elements\n";
  std::vector<std::vector<std::string>> top = {
      {"Rank", "% Sites", "File Name", "Domain", "Company", "Type"}};
  for (const TopElement& e : report.top_elements) {
    top.push_back({std::to_string(e.rank), Fixed(e.pct_pages) + "%",
                   e.filename, e.domain, e.company,
                   ElementTypeName(e.element_type)});
  }
  out << Table(top) << '\n';

  out << "Types of Requested Elements (top " << report.top_elements.size()
      << ")\n";
  std::vector<std::vector<std::string>> types = {{"Type", "Count", "%"}};
  for (const auto& [type, share] : report.type_distribution) {
    types.push_back(
        {ElementTypeName(type), std::to_string(share.count), Fixed(share.pct)});
  }
  out << Table(types) << '\n';

  out << "Corporate Reach\n";
  std::vector<std::vector<std::string>> reach = {{"Rank", "Company", "% Sites"}};
  for (size_t i = 0; i < report.reach.size(); ++i) {
    reach.push_back({std::to_string(i + 1), report.reach[i].company,
                     Fixed(report.reach[i].pct_pages)});
  }
  out << Table(reach) << '\n';

  out << "Surveillance Cookie Indicators\n";
  std::vector<std::vector<std::string>> surveillance = {
      {"Indicator", "Pages", "% Analyzed", "% Attempted"}};
  for (const IndicatorStats& stats : report.surveillance.indicators) {
    surveillance.push_back({stats.indicator, std::to_string(stats.n_pages),
                            Fixed(stats.pct_analyzed),
                            Fixed(stats.pct_attempted)});
  }
  out << Table(surveillance);
  return out.str();
}

}  // namespace

json ReportToJson(const CensusReport& report) {
  const Summary& s = report.summary;
  json summary = {
      {"n_pages_total", s.n_pages_total},
      {"n_pages_analyzed", s.n_pages_analyzed},
      {"n_pages_failed", s.n_pages_failed},
      {"n_pages_timeout", s.n_pages_timeout},
      {"n_with_3pe", s.n_with_3pe},
      {"pct_with_3pe", s.pct_with_3pe},
      {"total_domains_contacted", s.total_domains_contacted},
      {"avg_domains_contacted", s.avg_domains_contacted},
      {"no_qualifying_pages", s.no_qualifying_pages},
      {"avg_domains_all_pages", s.avg_domains_all_pages},
      {"n_with_3p_cookie", s.n_with_3p_cookie},
      {"pct_with_3p_cookie", s.pct_with_3p_cookie},
      {"n_with_3p_js", s.n_with_3p_js},
      {"pct_with_3p_js", s.pct_with_3p_js},
      {"unique_cookies", s.unique_cookies},
      {"unique_elements_global", s.unique_elements_global},
      {"unique_elements_per_page", s.unique_elements_per_page},
      {"distinct_third_party_domains", s.distinct_third_party_domains},
      {"excluded_domains", s.excluded_domains},
  };
  json tld_rows = json::array();
  for (const TldRow& row : report.tld_rows) {
    tld_rows.push_back({
        {"tld", row.tld},
        {"n", row.n},
        {"n_with_3pe", row.n_with_3pe},
        {"pct_3pe", row.pct_3pe},
        {"total_domains", row.total_domains},
        {"avg_domains", row.avg_domains},
        {"no_qualifying_pages", row.no_qualifying_pages},
        {"n_with_cookie", row.n_with_cookie},
        {"pct_cookie", row.pct_cookie},
        {"n_with_js", row.n_with_js},
        {"pct_js", row.pct_js},
    });
  }
  json top_elements = json::array();
  for (const TopElement& e : report.top_elements) {
    top_elements.push_back(ElementJson(e));
  }
  json top_images = json::array();
  for (const TopElement& e : report.top_images) {
    top_images.push_back(ElementJson(e));
  }
  json types = json::object();
  for (const auto& [type, share] : report.type_distribution) {
    types[ElementTypeName(type)] = {{"count", share.count}, {"pct", share.pct}};
  }
  json reach = json::array();
  for (const ReachEntry& entry : report.reach) {
    reach.push_back({{"company", entry.company},
                     {"n_pages", entry.n_pages},
                     {"pct_pages", entry.pct_pages}});
  }
  json indicators = json::array();
  for (const IndicatorStats& stats : report.surveillance.indicators) {
    indicators.push_back({{"indicator", stats.indicator},
                          {"n_pages", stats.n_pages},
                          {"pct_analyzed", stats.pct_analyzed},
                          {"pct_attempted", stats.pct_attempted}});
  }
  const ReportMetadata& meta = report.metadata;
  json metadata = {
      {"schema", kReportSchema},
      {"psl_version", meta.psl_version},
      {"registry_version", meta.registry_version},
      {"registry_domains", meta.registry_domains},
      {"registry_companies", meta.registry_companies},
      {"run_timestamp", meta.run_timestamp
                            ? json(FormatIso8601(*meta.run_timestamp))
                            : json(nullptr)},
      {"top_k", meta.top_k},
      {"top_images", meta.top_images},
      {"filter",
       {{"single_site_min_pages", meta.single_site_min_pages},
        {"excluded_domains", meta.excluded_domains},
        {"applies_to", "all statistics"}}},
      {"indicators", meta.indicators},
      {"denominator", "successfully analyzed pages (load status ok or timeout)"},
      {"avg_domains_scope",
       "pages with >= 1 third-party domain, after the single-site filter"},
      {"timeout_semantics", "hard wall from navigation start; partial capture kept"},
  };
  return {
      {"summary", summary},
      {"tld_rows", tld_rows},
      {"top_elements", top_elements},
      {"top_images", top_images},
      {"type_distribution", types},
      {"reach", reach},
      {"surveillance",
       {{"indicators", indicators},
        {"pct_pref_pages", report.surveillance.pct_pref_pages},
        {"pct_dclk_id_pages", report.surveillance.pct_dclk_id_pages}}},
      {"metadata", metadata},
  };
}

std::string RenderReport(const CensusReport& report, ReportFormat format) {
  if (format == ReportFormat::kText) return RenderText(report);
  return ReportToJson(report).dump(2) + "\n";
}

}  // namespace xray
