// Copyright 2026 the lssclt authors
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

#ifndef LSSCLT_LOG_HPP_
#define LSSCLT_LOG_HPP_

#include <string>

namespace lssclt {

enum class LogLevel { kError = 0, kInfo = 1, kDebug = 2 };

// Current level, read once from the LSSCLT_LOG environment variable
// ("error" | "info" | "debug", default "error").
LogLevel log_level();

// Plain stderr logging;  no timestamps so runs stay diffable.
void log_error(const std::string& msg);
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace lssclt

#endif  // LSSCLT_LOG_HPP_
