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

#include "xray/cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "xray/capture_pool.h"
#include "xray/cookie_analysis.h"
#include "xray/error.h"
#include "xray/har.h"
#include "xray/live_driver.h"
#include "xray/ownership.h"
#include "xray/public_suffix.h"
#include "xray/report.h"
#include "xray/request_analysis.h"
#include "xray/seed.h"
#include "xray/store.h"
#include "xray/url.h"

namespace xray {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string seeds;
  std::string accepted_out;
  std::string rejected_out;
  std::string store;
  std::string psl;
  bool psl_icann_only = false;
  std::string registry;
  std::string indicators;
  std::string extensions;
  int timeout_seconds = 30;
  int pool_size = 4;
  int delay_ms = 0;
  std::string driver;
  std::string har_dir;
  bool dnt = false;
  std::string user_agent{kDefaultUserAgent};
  std::string format = "json";
  int top_k = 100;
  int top_images = 10;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kStorage:
    case ErrorCode::kDriver:
      return kExitRuntime;
    default:
      return kExitInput;
  }
}

void Require(const std::string& value, const char* flag, const char* env) {
  if (value.empty()) {
    throw UsageError(std::string(flag) + " is required" +
                     (env ? std::string(" (or set ") + env + ")" : ""));
  }
}

std::vector<SeedUrl> ReadSeeds(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read seed file: " + path);
  const std::vector<SeedLine> lines = ReadSeedLines(in);
  return FilterSeedList(lines);
}

void WriteLines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::trunc);
  for (const std::string& line : lines) out << line << '\n';
  if (!out) throw Error(ErrorCode::kStorage, "cannot write " + path);
}

int IngestSeeds(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Require(config.seeds, "--seeds", nullptr);
  const std::vector<SeedUrl> seeds = ReadSeeds(config.seeds);
  std::vector<std::string> accepted;
  std::vector<std::string> rejected;
  for (const SeedUrl& seed : seeds) {
    if (seed.accepted()) {
      accepted.push_back(seed.rank ? std::to_string(*seed.rank) + "," +
                                         seed.normalized
                                   : seed.normalized);
    } else {
      rejected.push_back(std::string(RejectReasonName(*seed.reject_reason)) +
                         "," + seed.raw);
    }
  }
  const std::string accepted_path = config.accepted_out.empty()
                                        ? config.seeds + ".accepted"
                                        : config.accepted_out;
  const std::string rejected_path = config.rejected_out.empty()
                                        ? config.seeds + ".rejected"
                                        : config.rejected_out;
  WriteLines(accepted_path, accepted);
  WriteLines(rejected_path, rejected);
  if (seeds.empty()) err << "warning: no seeds in " << config.seeds << '\n';
  out << "accepted " << accepted.size() << ", rejected " << rejected.size()
      << '\n';
  return kExitOk;
}

PublicSuffixRuleSet LoadRules(const RunConfig& config) {
  PslOptions options;
  options.include_private = !config.psl_icann_only;
  return LoadPslFile(config.psl, options);
}

ExtensionMap LoadExtensions(const RunConfig& config) {
  if (config.extensions.empty()) return ExtensionMap::Default();
  std::ifstream in(config.extensions);
  if (!in) {
    throw Error(ErrorCode::kIo,
                "cannot read extension map: " + config.extensions);
  }
  return ExtensionMap::FromConfig(in);
}

void StampMetadata(CrawlStore& store, const PublicSuffixRuleSet& rules,
                   const RunConfig& config) {
  store.mutable_metadata().psl_version = rules.version();
  store.mutable_metadata().extension_map =
      config.extensions.empty() ? "default"
                                : fs::path(config.extensions).filename().string();
}

int Crawl(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Require(config.seeds, "--seeds", nullptr);
  Require(config.store, "--store", "XRAY_STORE");
  Require(config.psl, "--psl", "XRAY_PSL");
  if (config.driver.empty() == config.har_dir.empty()) {
    throw UsageError("exactly one of --driver and --har-dir must be given");
  }
  const PublicSuffixRuleSet rules = LoadRules(config);
  const ExtensionMap extensions = LoadExtensions(config);
  std::vector<SeedUrl> seeds = ReadSeeds(config.seeds);
  std::erase_if(seeds, [](const SeedUrl& seed) { return !seed.accepted(); });

  std::unique_ptr<CaptureDriver> driver;
  if (!config.har_dir.empty()) {
    driver = HarReplayDriver::FromDirectory(config.har_dir);
  } else {
    driver = MakeLiveDriver(config.driver);
  }
  std::string diagnostic;
  if (!driver->Ping(&diagnostic)) {
    err << "error: capture driver unavailable: " << diagnostic << '\n';
    return kExitRuntime;
  }

  CrawlStore store = CrawlStore::Open(config.store);
  StampMetadata(store, rules, config);
  CaptureOptions options;
  options.timeout = std::chrono::seconds(config.timeout_seconds);
  options.send_dnt = config.dnt;
  options.user_agent = config.user_agent;
  PoolOptions pool;
  pool.pool_size = config.pool_size;
  pool.per_domain_delay = std::chrono::milliseconds(config.delay_ms);
  const auto politeness_key = [&rules](const SeedUrl& seed) {
    const auto url = ParseAbsoluteUrl(seed.normalized);
    if (!url) return seed.normalized;
    return rules.TryRegisteredDomain(url->host).value_or(url->host);
  };
  const CaptureSummary summary = RunCapture(
      seeds, *driver, options, pool,
      [&](const PageLoadResult& result) { store.Put(result, rules, extensions); },
      politeness_key);
  store.Save(config.store);

  for (const auto& [seed, why] : summary.unstored) {
    err << "error: not stored: " << seed << ": " << why << '\n';
  }
  out << "ok " << summary.ok << ", timeout " << summary.timeout << ", failed "
      << summary.failed << '\n';
  return summary.unstored.empty() ? kExitOk : kExitRuntime;
}

int ImportHar(const RunConfig& config, std::ostream& out) {
  Require(config.har_dir, "--har-dir", nullptr);
  Require(config.store, "--store", "XRAY_STORE");
  Require(config.psl, "--psl", "XRAY_PSL");
  const PublicSuffixRuleSet rules = LoadRules(config);
  const ExtensionMap extensions = LoadExtensions(config);
  std::set<std::string> seen;
  CrawlStore store = CrawlStore::Open(config.store);
  StampMetadata(store, rules, config);
  int imported = 0;
  for (const fs::path& file : ListHarFiles(config.har_dir)) {
    for (const PageLoadResult& page : IngestHarFile(file)) {
      if (!seen.insert(page.seed.normalized).second) continue;
      store.Put(page, rules, extensions);
      ++imported;
    }
  }
  store.Save(config.store);
  out << "imported " << imported << " pages\n";
  return kExitOk;
}

int Report(const RunConfig& config, std::ostream& out) {
  Require(config.store, "--store", "XRAY_STORE");
  Require(config.registry, "--registry", "XRAY_REGISTRY");
  if (!fs::exists(config.store)) {
    throw Error(ErrorCode::kEmptyInput, "store not found: " + config.store);
  }
  const CrawlStore store = CrawlStore::Open(config.store);
  if (store.empty()) {
    throw Error(ErrorCode::kEmptyInput, "store is empty: " + config.store);
  }
  const OwnershipRegistry registry = OwnershipRegistry::LoadFile(config.registry);
  const std::vector<IndicatorRule> indicators =
      config.indicators.empty() ? DefaultIndicators()
                                : LoadIndicatorFile(config.indicators);
  ReportOptions options;
  options.top_k = config.top_k;
  options.top_images = config.top_images;
  const CensusReport report = BuildReport(store, registry, indicators, options);
  out << RenderReport(report, config.format == "text" ? ReportFormat::kText
                                                       : ReportFormat::kJson);
  return kExitOk;
}

int ValidateOwnership(const RunConfig& config, std::ostream& out) {
  Require(config.registry, "--registry", "XRAY_REGISTRY");
  const OwnershipRegistry registry = OwnershipRegistry::LoadFile(config.registry);
  out << "registry " << registry.version() << ": "
      << registry.entries().size() << " domains, "
      << registry.Companies().size() << " companies\n";
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  RunConfig config;
  CLI::App app{"Census of third-party requests, cookies and scripts",
               "xray-census"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--seeds", config.seeds, "Seed list (url or rank,url lines)");
  app.add_option("--store", config.store, "Crawl store (JSONL)")
      ->envname("XRAY_STORE");
  app.add_option("--psl", config.psl, "Public suffix list file")
      ->envname("XRAY_PSL");
  app.add_flag("--psl-icann-only", config.psl_icann_only,
               "Ignore the private-domains section of the suffix list");
  app.add_option("--registry", config.registry, "Ownership registry CSV")
      ->envname("XRAY_REGISTRY");
  app.add_option("--indicators", config.indicators,
                 "Surveillance cookie indicator rules");
  app.add_option("--extensions", config.extensions,
                 "Extension to element type overrides (ext,type lines)");
  app.add_option("--timeout", config.timeout_seconds,
                 "Per-page hard wall in seconds")
      ->check(CLI::Range(1, 86400))
      ->capture_default_str();
  app.add_option("--pool", config.pool_size, "Concurrent page loads")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
  app.add_option("--delay-ms", config.delay_ms,
                 "Minimum spacing between loads of one registered domain")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--driver", config.driver,
                 "\"builtin\" or a capture service URL")
      ->envname("XRAY_DRIVER");
  app.add_option("--har-dir", config.har_dir, "Directory of .har recordings");
  app.add_flag("--dnt", config.dnt, "Send DNT: 1");
  app.add_option("--user-agent", config.user_agent, "User-Agent header");
  app.add_option("--format", config.format, "Report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--top-k", config.top_k, "Number of top elements")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--top-images", config.top_images, "Number of top images")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI::App* ingest =
      app.add_subcommand("ingest-seeds", "Normalize and filter a seed list");
  ingest->add_option("--out", config.accepted_out,
                     "Accepted seeds (default <seeds>.accepted)");
  ingest->add_option("--audit", config.rejected_out,
                     "Rejection audit (default <seeds>.rejected)");
  CLI::App* crawl = app.add_subcommand("crawl", "Capture every seed");
  CLI::App* import =
      app.add_subcommand("import-har", "Store every page of a HAR directory");
  CLI::App* report = app.add_subcommand("report", "Render the census report");
  CLI::App* ownership =
      app.add_subcommand("ownership", "Ownership registry tools");
  ownership->require_subcommand(1);
  CLI::App* validate =
      ownership->add_subcommand("validate", "Load and check the registry");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ingest) return IngestSeeds(config, out, err);
    if (*crawl) return Crawl(config, out, err);
    if (*import) return ImportHar(config, out);
    if (*report) return Report(config, out);
    if (*validate) return ValidateOwnership(config, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace xray
