// Copyright 2026 The enakit Authors
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

#include <string>
#include <string_view>
#include <vector>

namespace enakit::csv {

using Row = std::vector<std::string>;

// RFC 4180 reader: comma separator, double-quote escaping, quoted fields may
// span lines, CRLF or LF line endings. A UTF-8 byte-order mark is skipped.
// Blank lines are dropped.
std::vector<Row> parse(std::string_view text);

std::string quote(std::string_view field);
void append_row(std::string& out, const Row& row);

}  // namespace enakit::csv
