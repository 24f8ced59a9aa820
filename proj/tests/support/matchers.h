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

#ifndef XRAY_TESTS_SUPPORT_MATCHERS_H_
#define XRAY_TESTS_SUPPORT_MATCHERS_H_

#include <gtest/gtest.h>

#include <string>

#include "xray/error.h"

namespace xray::testing {

// Runs |fn| and returns the message of the xray::Error it throws, failing
// the current test when nothing is thrown or the code differs.
template <typename Fn>
std::string ErrorMessageOf(ErrorCode expected, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), expected)
        << ErrorCodeName(e.code()) << ": " << e.what();
    return e.what();
  }
  ADD_FAILURE() << "expected " << ErrorCodeName(expected) << ", nothing thrown";
  return {};
}

}  // namespace xray::testing

#endif  // XRAY_TESTS_SUPPORT_MATCHERS_H_
