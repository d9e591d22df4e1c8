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
// mvflow run <file> [--emit csv|dot|json] [--tolerance X] [--max-qubits K] [--out PATH]
// mvflow print <file>
//
// Exit codes: 0 success, 1 validation/parse/resource error, 2 an analysis
// did not meet its expectation.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "mvflow/circuit_document.h"
#include "mvflow/emit.h"
#include "mvflow/errors.h"
#include "mvflow/orchestrate.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitExpectation = 2;

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw mvflow::ValidationError("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

double default_tolerance() {
    if (const char *env = std::getenv("MVFLOW_TOLERANCE")) {
        char *end = nullptr;
        double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(v > 0.0)) {
            throw mvflow::ValidationError(std::string("MVFLOW_TOLERANCE is not a positive number: ") + env);
        }
        return v;
    }
    return mvflow::kDefaultTolerance;
}

void write_output(const std::string &text, const std::string &path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw mvflow::ValidationError("cannot write " + path);
    }
    out << text;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Heisenberg-picture information-flow analysis of quantum computational networks"};
    app.require_subcommand(1);

    std::string file;
    std::string format = "csv";
    std::string out_path;
    std::optional<double> tolerance;
    int max_qubits = mvflow::HeisenbergNetwork::kDefaultMaxQubits;

    auto *run = app.add_subcommand("run", "run the engines and analyses of a circuit document");
    run->add_option("file", file, "circuit document")->required();
    run->add_option("--emit", format, "output format")->check(CLI::IsMember({"csv", "dot", "json"}));
    run->add_option("--tolerance", tolerance, "numerical tolerance (default 1e-10 or MVFLOW_TOLERANCE)")
        ->check(CLI::PositiveNumber);
    run->add_option("--max-qubits", max_qubits, "refuse networks wider than this")->check(CLI::Range(1, 30));
    run->add_option("--out", out_path, "write here instead of stdout");

    auto *print = app.add_subcommand("print", "print a circuit document in canonical form");
    print->add_option("file", file, "circuit document")->required();
    print->add_option("--out", out_path, "write here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? kExitOk : kExitInvalid;
    }

    try {
        const auto doc = mvflow::parse_document(read_file(file));
        for (const auto &w : doc.warnings) {
            std::cerr << "warning: " << w << '\n';
        }
        if (print->parsed()) {
            write_output(mvflow::print_document(doc), out_path);
            return kExitOk;
        }
        mvflow::RunOptions options;
        options.tolerance = tolerance ? *tolerance : default_tolerance();
        options.max_qubits = max_qubits;
        const auto result = mvflow::orchestrate(doc, options);
        write_output(mvflow::emit(result, mvflow::parse_emit_format(format)), out_path);
        int code = kExitOk;
        for (const auto &a : result.analyses) {
            if (!a.meets_expectation()) {
                std::cerr << "analysis '" << a.name << "' " << (a.passed ? "passed" : "failed") << ", expected "
                          << (a.expect_pass ? "pass" : "fail") << ": " << a.detail << '\n';
                code = kExitExpectation;
            }
        }
        return code;
    } catch (const mvflow::ParseError &e) {
        std::cerr << file << ':' << e.what() << '\n';
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return kExitInvalid;
}
