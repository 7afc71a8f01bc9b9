// Copyright 2026 the ikqe authors
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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ikqe {

// Dense 0-based ids. Kept as plain integers; validity is always relative to
// the owning graph (id < num_entities / num_relations).
using EntityId = std::uint32_t;
using RelationId = std::uint32_t;

struct Triple {
    EntityId head;
    RelationId relation;
    EntityId tail;

    friend bool operator==(const Triple&, const Triple&) = default;
    friend auto operator<=>(const Triple& a, const Triple& b) {
        if (auto c = a.head <=> b.head; c != 0) return c;
        if (auto c = a.relation <=> b.relation; c != 0) return c;
        return a.tail <=> b.tail;
    }
};

// Base error for everything this library throws on bad input or bad files.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed text input (TSV, DSL, JSONL, config). Carries a 1-based line
// and, where it makes sense, a 0-based column.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column = 0)
        : Error(what + " (line " + std::to_string(line) +
                (column ? ", col " + std::to_string(column) : std::string()) + ")"),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace ikqe
