// Copyright 2026 The mvflow Authors
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
#ifndef MVFLOW_EMIT_H
#define MVFLOW_EMIT_H

#include <string>
#include <string_view>

#include "mvflow/orchestrate.h"

namespace mvflow {

enum class EmitFormat { Csv, Dot, Json };

/// Throws ValidationError on an unknown name.
EmitFormat parse_emit_format(std::string_view name);

/// Byte-stable text for a run: weights carry 12 significant digits and json
/// keys are sorted.
std::string emit(const RunResult &result, EmitFormat format);

inline constexpr int kJsonSchemaVersion = 1;

}  // namespace mvflow

#endif  // MVFLOW_EMIT_H
