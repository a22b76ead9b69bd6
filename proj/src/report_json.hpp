// Copyright 2026 The mixcert Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "empirical_ci.hpp"
#include "estimators.hpp"
#include "io.hpp"
#include "markov_core.hpp"

namespace mixcert {

inline constexpr int kSchemaVersion = 1;

Json IntervalToJson(const Interval& iv);
Json ToJson(const SpectralSummary& s);
Json ToJson(const PluginEstimate& e);
Json ToJson(const BootstrapEstimate& e);
Json ToJson(const TheoryBounds& t);
Json ToJson(const EmpiricalCertificate& c);
Json ToJson(const IntervalReport& r);
// Report with the certificate nested under "certificate".
Json ToJson(const IntervalResult& r, long long n, int d);
Json ToJson(const StopTrace& t);

}  // namespace mixcert
