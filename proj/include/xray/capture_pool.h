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

#ifndef XRAY_CAPTURE_POOL_H_
#define XRAY_CAPTURE_POOL_H_

#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "xray/capture.h"

namespace xray {

// Spaces out page loads that share a key (normally the registered domain
// of the seed). Slots are handed out in call order.
class PolitenessLimiter {
 public:
  explicit PolitenessLimiter(std::chrono::milliseconds delay) : delay_(delay) {}

  // Blocks until |key| may be contacted again.
  void Acquire(const std::string& key);

 private:
  using Clock = std::chrono::steady_clock;
  std::chrono::milliseconds delay_;
  std::mutex mu_;
  std::map<std::string, Clock::time_point> next_;
};

struct PoolOptions {
  int pool_size = 1;
  std::chrono::milliseconds per_domain_delay{0};
};

struct CaptureSummary {
  int ok = 0;
  int timeout = 0;
  int failed = 0;
  // Seeds whose result could not be stored even after a retry, with the
  // error message.
  std::vector<std::pair<std::string, std::string>> unstored;
};

using ResultSink = std::function<void(const PageLoadResult&)>;
using PolitenessKey = std::function<std::string(const SeedUrl&)>;

// Loads every seed on |pool_size| workers, each page in its own session.
// Results are handed to |sink| from one writer thread, so the sink needs no
// locking. A sink that throws gets one more attempt after the crawl; the
// crawl itself never stops for a single page. |politeness_key| defaults to
// the seed host.
CaptureSummary RunCapture(std::span<const SeedUrl> seeds, CaptureDriver& driver,
                          const CaptureOptions& options,
                          const PoolOptions& pool, const ResultSink& sink,
                          const PolitenessKey& politeness_key = {});

}  // namespace xray

#endif  // XRAY_CAPTURE_POOL_H_
