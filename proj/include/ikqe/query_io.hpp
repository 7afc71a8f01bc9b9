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

// JSONL wire format for query instances, one object per line:
//   {"anchors":[..],"easy":[..],"hard":[..],"relations":[..],"type":"2p"}
// Answer arrays are sorted ascending so files are byte-stable.

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ikqe/common.hpp"
#include "ikqe/query.hpp"

namespace ikqe {

inline std::string serialize(const QueryInstance& q) {
    nlohmann::json j;
    j["type"] = to_string(q.dag.type);
    j["anchors"] = q.dag.anchors;
    j["relations"] = q.dag.relations;
    j["easy"] = q.easy;
    j["hard"] = q.hard;
    return j.dump();
}

inline QueryInstance deserialize(const std::string& line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("query JSON: ") + e.what());
    }
    auto require = [&](const char* field, bool is_array) {
        if (!j.contains(field))
            throw Error(std::string("query JSON: missing field '") + field + "'");
        if (is_array ? !j[field].is_array() : !j[field].is_string())
            throw Error(std::string("query JSON: field '") + field +
                        (is_array ? "' must be an array of integers" : "' must be a string"));
    };
    require("type", false);
    require("anchors", true);
    require("relations", true);
    require("easy", true);
    require("hard", true);

    QueryType type = query_type_from_string(j["type"].get<std::string>());
    auto ints = [&](const char* field) {
        std::vector<EntityId> v;
        for (const auto& x : j[field]) {
            if (!x.is_number_unsigned())
                throw Error(std::string("query JSON: field '") + field +
                            "' must contain non-negative integers");
            v.push_back(x.get<EntityId>());
        }
        return v;
    };

    QueryInstance q;
    q.dag = from_pattern(type, ints("anchors"), ints("relations"));
    q.easy = ints("easy");
    q.hard = ints("hard");
    std::sort(q.easy.begin(), q.easy.end());
    std::sort(q.hard.begin(), q.hard.end());
    for (EntityId e : q.hard)
        if (std::binary_search(q.easy.begin(), q.easy.end(), e))
            throw Error("query JSON: fields 'easy' and 'hard' must be disjoint");
    return q;
}

inline void save_queries(const std::vector<QueryInstance>& qs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write query file: " + path);
    for (const QueryInstance& q : qs) out << serialize(q) << '\n';
}

inline std::vector<QueryInstance> load_queries(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open query file: " + path);
    std::vector<QueryInstance> qs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            qs.push_back(deserialize(line));
        } catch (const Error& e) {
            throw ParseError(e.what(), line_no);
        }
    }
    return qs;
}

}  // namespace ikqe
