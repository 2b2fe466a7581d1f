// Copyright 2026 The blockenc Authors
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

#include <json.hpp>

#include "be/node.hpp"

namespace be {

/// {"pattern": "0#"}, {"or": [low, high]}, {"and": [high, ..., low]} or {"dim": d}.
nlohmann::json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const nlohmann::json& j);

/// Primitives are flat objects ({"op": "increment", "bits": 2}); composites
/// carry {"op", "args", "params"}.
nlohmann::json node_to_json(const NodePtr& n);
NodePtr node_from_json(const nlohmann::json& j);

/// {"version": 1, "root": ..., "metadata": {...}}.
nlohmann::json graph_document(const NodePtr& root, nlohmann::json metadata = nlohmann::json::object());
NodePtr parse_graph_document(const nlohmann::json& doc);
NodePtr load_graph(const std::string& path);

}  // namespace be
