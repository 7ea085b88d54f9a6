// Copyright 2026 The ghzrig Authors
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

#include "ghzrig/error.hpp"

namespace ghzrig {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument:
            return "invalid_argument";
        case ErrorKind::ShapeMismatch:
            return "shape_mismatch";
        case ErrorKind::DimensionCeiling:
            return "dimension_ceiling";
        case ErrorKind::Schema:
            return "schema_violation";
        case ErrorKind::Numeric:
            return "numeric_failure";
    }
    return "unknown";
}

void fail(ErrorKind kind, const std::string &message) { throw Error(kind, message); }

}  // namespace ghzrig
