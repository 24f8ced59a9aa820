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

#include "xray/capture_pool.h"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <deque>
#include <exception>
#include <optional>
#include <thread>

#include "xray/error.h"
#include "xray/url.h"

namespace xray {

void PolitenessLimiter::Acquire(const std::string& key) {
  if (delay_.count() <= 0) return;
  Clock::time_point slot;
  {
    std::lock_guard<std::mutex> lock(mu_);
    const auto now = Clock::now();
    auto [it, inserted] = next_.try_emplace(key, now);
    slot = std::max(now, it->second);
    it->second = slot + delay_;
  }
  std::this_thread::sleep_until(slot);
}

namespace {

// Multi-producer, single-consumer hand-off between capture workers and the
// store writer.
class IngestionQueue {
 public:
  void Push(PageLoadResult result) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      items_.push_back(std::move(result));
    }
    cv_.notify_one();
  }

  void Close() {
    {
      std::lock_guard<std::mutex> lock(mu_);
      closed_ = true;
    }
    cv_.notify_all();
  }

  // Empty once the queue is closed and drained.
  std::optional<PageLoadResult> Pop() {
    std::unique_lock<std::mutex> lock(mu_);
    cv_.wait(lock, [&] { return closed_ || !items_.empty(); });
    if (items_.empty()) return std::nullopt;
    PageLoadResult result = std::move(items_.front());
    items_.pop_front();
    return result;
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<PageLoadResult> items_;
  bool closed_ = false;
};

std::string HostKey(const SeedUrl& seed) {
  const auto url = ParseAbsoluteUrl(seed.normalized);
  return url ? url->host : seed.normalized;
}

}  // namespace

CaptureSummary RunCapture(std::span<const SeedUrl> seeds, CaptureDriver& driver,
                          const CaptureOptions& options,
                          const PoolOptions& pool, const ResultSink& sink,
                          const PolitenessKey& politeness_key) {
  if (pool.pool_size < 1) {
    throw Error(ErrorCode::kInvalidArgument, "pool size must be >= 1");
  }
  PolitenessLimiter limiter(pool.per_domain_delay);
  IngestionQueue queue;
  CaptureSummary summary;
  std::vector<PageLoadResult> retry;

  std::thread writer([&] {
    while (auto result = queue.Pop()) {
      switch (result->load_status) {
        case LoadStatus::kOk: ++summary.ok; break;
        case LoadStatus::kTimeout: ++summary.timeout; break;
        case LoadStatus::kFailed: ++summary.failed; break;
      }
      try {
        sink(*result);
      } catch (const std::exception&) {
        retry.push_back(std::move(*result));
      }
    }
  });

  std::atomic<size_t> next{0};
  const auto work = [&] {
    for (size_t i = next++; i < seeds.size(); i = next++) {
      const SeedUrl& seed = seeds[i];
      limiter.Acquire(politeness_key ? politeness_key(seed) : HostKey(seed));
      queue.Push(LoadPage(seed, driver, options));
    }
  };
  const int n_workers =
      static_cast<int>(std::min<size_t>(pool.pool_size, seeds.size()));
  std::vector<std::thread> workers;
  workers.reserve(n_workers);
  for (int i = 0; i < n_workers; ++i) workers.emplace_back(work);
  for (std::thread& worker : workers) worker.join();
  queue.Close();
  writer.join();

  for (const PageLoadResult& result : retry) {
    try {
      sink(result);
    } catch (const std::exception& e) {
      summary.unstored.emplace_back(result.seed.normalized, e.what());
    }
  }
  return summary;
}

}  // namespace xray
