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
#include "mvflow/emit.h"

#include <cstdio>
#include <cstdlib>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "mvflow/errors.h"

namespace mvflow {

namespace {

std::string weight_text(double w) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", w);
    return buf;
}

double round12(double w) {
    return std::strtod(weight_text(w).c_str(), nullptr);
}

std::string word_text(std::uint64_t v, int width) {
    std::string s = "0b";
    for (int k = width; k >= 1; --k) {
        s += ((v >> (k - 1)) & 1U) ? '1' : '0';
    }
    return s;
}

std::string emit_csv(const RunResult &r) {
    std::ostringstream out;
    out << "t,b,weight,engine,link\n";
    for (const auto &trace : r.traces) {
        const char *engine = engine_name(trace.engine);
        for (std::size_t t = 0; t < trace.trace.columns.size(); ++t) {
            for (const auto &node : trace.trace.columns[t]) {
                out << t << ',' << word_text(node.b, r.width) << ',' << weight_text(node.weight) << ',' << engine
                    << ',';
                if (node.link) {
                    out << word_text(*node.link, r.width);
                }
                out << '\n';
            }
        }
    }
    return out.str();
}

std::string emit_dot(const RunResult &r) {
    std::ostringstream out;
    out << "digraph mvflow {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=box];\n";
    for (const auto &trace : r.traces) {
        const std::string engine = engine_name(trace.engine);
        auto id = [&](std::size_t t, std::uint64_t b) {
            return '"' + engine + ':' + std::to_string(t) + ':' + word_text(b, r.width) + '"';
        };
        out << "  subgraph cluster_" << engine << " {\n";
        out << "    label=\"" << engine << "\";\n";
        const auto &columns = trace.trace.columns;
        for (std::size_t t = 0; t < columns.size(); ++t) {
            for (const auto &node : columns[t]) {
                out << "    " << id(t, node.b) << " [label=\"t=" << t << ' ' << word_text(node.b, r.width) << "\\n"
                    << weight_text(node.weight) << "\"];\n";
            }
        }
        for (std::size_t t = 0; t + 1 < columns.size(); ++t) {
            std::set<std::uint64_t> next;
            for (const auto &node : columns[t + 1]) {
                next.insert(node.b);
            }
            for (const auto &node : columns[t]) {
                if (node.link && next.count(*node.link)) {
                    out << "    " << id(t, node.b) << " -> " << id(t + 1, *node.link) << ";\n";
                }
            }
        }
        out << "  }\n";
    }
    out << "}\n";
    return out.str();
}

std::string emit_json(const RunResult &r) {
    using nlohmann::json;
    json doc;
    doc["schema_version"] = kJsonSchemaVersion;
    doc["width"] = r.width;
    doc["tolerance"] = r.options.tolerance;
    doc["max_qubits"] = r.options.max_qubits;
    doc["traces"] = json::array();
    for (const auto &trace : r.traces) {
        json jt;
        jt["engine"] = engine_name(trace.engine);
        jt["linked_steps"] = trace.trace.linked_steps;
        jt["columns"] = json::array();
        for (std::size_t t = 0; t < trace.trace.columns.size(); ++t) {
            json nodes = json::array();
            for (const auto &node : trace.trace.columns[t]) {
                nodes.push_back({{"b", word_text(node.b, r.width)},
                                 {"weight", round12(node.weight)},
                                 {"link", node.link ? json(word_text(*node.link, r.width)) : json(nullptr)}});
            }
            jt["columns"].push_back({{"t", t}, {"nodes", std::move(nodes)}});
        }
        doc["traces"].push_back(std::move(jt));
    }
    doc["analyses"] = json::array();
    for (const auto &a : r.analyses) {
        json metrics = json::object();
        for (const auto &[k, v] : a.metrics) {
            metrics[k] = round12(v);
        }
        doc["analyses"].push_back({{"name", a.name},
                                   {"passed", a.passed},
                                   {"expect_pass", a.expect_pass},
                                   {"detail", a.detail},
                                   {"metrics", std::move(metrics)}});
    }
    doc["warnings"] = r.warnings;
    return doc.dump(2) + "\n";
}

}  // namespace

EmitFormat parse_emit_format(std::string_view name) {
    if (name == "csv") {
        return EmitFormat::Csv;
    }
    if (name == "dot") {
        return EmitFormat::Dot;
    }
    if (name == "json") {
        return EmitFormat::Json;
    }
    throw ValidationError("unknown emit format '" + std::string(name) + "'");
}

std::string emit(const RunResult &result, EmitFormat format) {
    switch (format) {
        case EmitFormat::Csv:
            return emit_csv(result);
        case EmitFormat::Dot:
            return emit_dot(result);
        case EmitFormat::Json:
            return emit_json(result);
    }
    return {};
}

}  // namespace mvflow
