// Copyright 2026 The nlbox Authors
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

#ifndef NLBOX_ERRORS_H
#define NLBOX_ERRORS_H

#include <stdexcept>

namespace nlbox {

// Invalid arguments are reported with std::invalid_argument.

/// A size cap or a finite resource (box pool capacity) was exceeded.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A single-use box end was measured twice.
struct BoxReuseError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace nlbox

#endif
