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

#ifndef XRAY_LIVE_DRIVER_H_
#define XRAY_LIVE_DRIVER_H_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "xray/capture.h"

namespace xray {

// Talks to a headless-browser automation service over HTTP+JSON:
//
//   GET  {endpoint}/status   -> {"ready": true}
//   POST {endpoint}/capture  <- {"url", "timeout_ms", "user_agent",
//                                "headers": {"DNT": "1"}?}
//                            -> a HAR document for one page
//
// The service owns the browser and applies the hard wall itself; the HAR
// page may carry "_loadStatus" ("ok" | "timeout" | "failed"), "_finalUrl",
// "_metaDescription", "_cookies" and "_diagnostic". If the service does not
// answer within timeout + grace the page is kept as a timeout holding the
// unanswered document request.
class RemoteBrowserDriver : public CaptureDriver {
 public:
  // |endpoint| is "http://host:port" with an optional path prefix. Throws
  // Error(kDriver) if it cannot be parsed.
  explicit RemoteBrowserDriver(std::string endpoint);

  std::string Describe() const override;
  bool Ping(std::string* diagnostic) override;
  std::unique_ptr<CaptureSession> NewSession() override;

 private:
  std::string origin_;
  std::string prefix_;
};

// Minimal built-in capture without a browser: fetches the document,
// follows redirects, then fetches every subresource referenced from the
// markup (script, img, link, iframe, source, embed, video, audio). Scripts
// are not executed, so requests they would make are not observed.
class StaticFetchDriver : public CaptureDriver {
 public:
  std::string Describe() const override;
  bool Ping(std::string* diagnostic) override;
  std::unique_ptr<CaptureSession> NewSession() override;
};

// "builtin" selects StaticFetchDriver; anything else is a remote endpoint.
std::unique_ptr<CaptureDriver> MakeLiveDriver(std::string_view spec);

struct HtmlSummary {
  std::string title;
  std::string meta_description;
  std::vector<std::string> resources;  // raw attribute values, in order
};

// Tolerant tag scanner; not a full HTML parser.
HtmlSummary ScanHtml(std::string_view html);

}  // namespace xray

#endif  // XRAY_LIVE_DRIVER_H_
