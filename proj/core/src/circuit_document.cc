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
#include "mvflow/circuit_document.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "mvflow/errors.h"

namespace mvflow {

namespace {

using Index = Eigen::Index;

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-' || c == '+';
}

// One line of input with a read position.  Columns are 1-based in errors.
class Cursor {
   public:
    Cursor(std::string_view text, int line) : text_(text), line_(line) {
    }

    std::size_t pos() const noexcept {
        return pos_;
    }
    int line() const noexcept {
        return line_;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            fail(pos_, std::string("expected '") + c + "'");
        }
    }

    std::string_view word() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        if (start == pos_) {
            fail(start, "expected a keyword");
        }
        return text_.substr(start, pos_ - start);
    }

    // Reads "key=" and returns key.
    std::string_view key() {
        skip_ws();
        const std::size_t start = pos_;
        auto k = word();
        if (!accept('=')) {
            fail(start, "expected key=value");
        }
        return k;
    }

    void expect_key(std::string_view name) {
        skip_ws();
        const std::size_t start = pos_;
        if (key() != name) {
            fail(start, "expected " + std::string(name) + "=");
        }
    }

    int integer() {
        skip_ws();
        const std::size_t start = pos_;
        std::int64_t v = 0;
        auto [end, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
        if (ec != std::errc() || v < 0 || v > 1'000'000'000) {
            fail(start, "expected a non-negative integer");
        }
        pos_ = static_cast<std::size_t>(end - text_.data());
        return static_cast<int>(v);
    }

    double real() {
        skip_ws();
        const std::size_t start = pos_;
        double v = 0.0;
        auto [end, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
        if (ec != std::errc() || !std::isfinite(v)) {
            fail(start, "expected a finite number");
        }
        pos_ = static_cast<std::size_t>(end - text_.data());
        return v;
    }

    Complex complex() {
        expect('(');
        double re = real();
        expect(',');
        double im = real();
        expect(')');
        return {re, im};
    }

    std::uint64_t bit_word(int width) {
        skip_ws();
        const std::size_t start = pos_;
        std::uint64_t v = 0;
        if (text_.substr(pos_, 2) == "0b") {
            pos_ += 2;
            const std::size_t digits = pos_;
            while (pos_ < text_.size() && (text_[pos_] == '0' || text_[pos_] == '1')) {
                v = (v << 1) | static_cast<std::uint64_t>(text_[pos_] - '0');
                if (pos_ - digits >= static_cast<std::size_t>(width)) {
                    fail(start, "word has more than " + std::to_string(width) + " bits");
                }
                ++pos_;
            }
            if (pos_ == digits) {
                fail(start, "expected binary digits after 0b");
            }
        } else {
            v = static_cast<std::uint64_t>(integer());
            if (v >= (std::uint64_t{1} << width)) {
                fail(start, "word does not fit in " + std::to_string(width) + " bits");
            }
        }
        return v;
    }

    Rational rational() {
        skip_ws();
        const std::size_t start = pos_;
        std::int64_t num = integer();
        std::int64_t den = 1;
        if (accept('/')) {
            den = integer();
        }
        if (num <= 0 || den <= 0) {
            fail(start, "multiplicity must be a positive rational");
        }
        return Rational(num, den);
    }

    std::vector<int> int_list() {
        std::vector<int> out;
        expect('[');
        do {
            out.push_back(integer());
        } while (accept(','));
        expect(']');
        return out;
    }

    Matrix rows() {
        skip_ws();
        const std::size_t start = pos_;
        std::vector<std::vector<Complex>> rows;
        expect('[');
        do {
            expect('[');
            rows.emplace_back();
            do {
                rows.back().push_back(complex());
            } while (accept(','));
            expect(']');
        } while (accept(','));
        expect(']');
        const auto dim = rows.size();
        Matrix m(static_cast<Index>(dim), static_cast<Index>(dim));
        for (std::size_t r = 0; r < dim; ++r) {
            if (rows[r].size() != dim) {
                fail(start, "matrix rows must form a square matrix");
            }
            for (std::size_t c = 0; c < dim; ++c) {
                m(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
            }
        }
        return m;
    }

    std::string token_at(std::size_t at) const {
        if (at >= text_.size()) {
            return "<end of line>";
        }
        std::size_t end = at;
        while (end < text_.size() && is_word_char(text_[end])) {
            ++end;
        }
        if (end == at) {
            ++end;
        }
        return std::string(text_.substr(at, end - at));
    }

    [[noreturn]] void fail(std::size_t at, const std::string &message) const {
        while (at < text_.size() && (text_[at] == ' ' || text_[at] == '\t')) {
            ++at;
        }
        throw ParseError(line_, static_cast<int>(at) + 1, token_at(at), message);
    }

   private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_;
};

std::string word_text(std::uint64_t v, int width) {
    std::string s = "0b";
    for (int k = width; k >= 1; --k) {
        s += ((v >> (k - 1)) & 1U) ? '1' : '0';
    }
    return s;
}

QuantumGate parse_gate(Cursor &cur) {
    const std::size_t start = cur.pos();
    const auto name = cur.word();
    if (name == "toffoli") {
        int k = cur.integer(), l = cur.integer(), m = cur.integer();
        return ClassicalGate::toffoli(k, l, m);
    }
    if (name == "cnot") {
        int m = cur.integer(), t = cur.integer();
        return ClassicalGate::cnot(m, t);
    }
    if (name == "not") {
        return ClassicalGate::not_gate(cur.integer());
    }
    if (name == "swap") {
        int k = cur.integer(), l = cur.integer();
        return ClassicalGate::swap(k, l);
    }
    if (name == "delay") {
        return ClassicalGate::delay(cur.integer());
    }
    if (name == "phase") {
        int k = cur.integer();
        return PhaseGate{k, cur.real()};
    }
    if (name == "unitary") {
        cur.expect_key("q");
        auto qubits = cur.int_list();
        cur.expect_key("rows");
        return UnitaryGate{std::move(qubits), cur.rows()};
    }
    if (name == "cond") {
        cur.expect_key("control");
        int control = cur.integer();
        cur.expect_key("f");
        const std::size_t perm_at = cur.pos();
        if (cur.word() != "perm") {
            cur.fail(perm_at, "expected perm(...)");
        }
        cur.expect('(');
        std::vector<std::uint64_t> f;
        do {
            f.push_back(static_cast<std::uint64_t>(cur.integer()));
        } while (cur.accept(','));
        cur.expect(')');
        cur.expect_key("U");
        cur.expect_key("rows");
        return ConditionalGate{control, std::move(f), cur.rows()};
    }
    cur.fail(start, "unknown gate '" + std::string(name) + "'");
}

Engine parse_engine(Cursor &cur) {
    const std::size_t start = cur.pos();
    const auto name = cur.word();
    for (Engine e : {Engine::Classical, Engine::Ensemble, Engine::Quantum}) {
        if (name == engine_name(e)) {
            return e;
        }
    }
    cur.fail(start, "unknown engine");
}

AnalysisRequest parse_analysis(Cursor &cur) {
    AnalysisRequest req;
    const std::size_t kind_at = cur.pos();
    const auto kind = cur.word();
    if (kind == "correspondence") {
        req.kind = AnalysisKind::Correspondence;
    } else if (kind == "classicality") {
        req.kind = AnalysisKind::Classicality;
    } else if (kind == "autonomy") {
        req.kind = AnalysisKind::Autonomy;
    } else if (kind == "robustness") {
        req.kind = AnalysisKind::Robustness;
    } else {
        cur.fail(kind_at, "unknown analysis");
    }
    std::set<std::string, std::less<>> seen;
    while (!cur.at_end()) {
        const std::size_t key_at = cur.pos();
        const auto key = cur.key();
        if (!seen.insert(std::string(key)).second) {
            cur.fail(key_at, "repeated option");
        }
        if (key == "expect") {
            const std::size_t at = cur.pos();
            const auto v = cur.word();
            if (v != "pass" && v != "fail") {
                cur.fail(at, "expect must be pass or fail");
            }
            req.expect_pass = v == "pass";
        } else if (key == "selector" && req.kind == AnalysisKind::Autonomy) {
            cur.skip_ws();
            const std::size_t at = cur.pos();
            const auto v = cur.word();
            std::string_view stem = v;
            std::string_view suffix;
            for (std::string_view prefix : {"off", "z", "x"}) {
                if (v.substr(0, prefix.size()) == prefix) {
                    stem = prefix;
                    suffix = v.substr(prefix.size());
                    break;
                }
            }
            if (stem == "z" && suffix.empty()) {
                req.selector = SelectorFamily::AllZ;
                continue;
            }
            if (stem == "z") {
                req.selector = SelectorFamily::ControlOn;
            } else if (stem == "off") {
                req.selector = SelectorFamily::ControlOff;
            } else if (stem == "x") {
                req.selector = SelectorFamily::ControlOnX;
            } else {
                cur.fail(at, "unknown selector");
            }
            if (suffix == "N") {
                req.control = 0;
            } else {
                int c = 0;
                auto [end, ec] = std::from_chars(suffix.data(), suffix.data() + suffix.size(), c);
                if (ec != std::errc() || end != suffix.data() + suffix.size() || c < 1) {
                    cur.fail(at, "selector needs a control qubit or N");
                }
                req.control = c;
            }
        } else if (key == "monitor" && req.kind == AnalysisKind::Robustness) {
            do {
                req.monitor.push_back(cur.integer());
            } while (cur.accept(','));
        } else {
            cur.fail(key_at, "option not valid for this analysis");
        }
    }
    return req;
}

bool all_steps_classical(const CircuitDocument &doc) {
    return std::all_of(doc.steps.begin(), doc.steps.end(),
                       [&](const QuantumStep &s) { return classical_candidate(s, doc.width).has_value(); });
}

std::string print_gate(const QuantumGate &gate) {
    std::ostringstream out;
    auto print_rows = [&](const Matrix &m) {
        out << '[';
        for (Index r = 0; r < m.rows(); ++r) {
            out << (r ? ",[" : "[");
            for (Index c = 0; c < m.cols(); ++c) {
                out << (c ? "," : "") << '(' << format_double(m(r, c).real()) << ','
                    << format_double(m(r, c).imag()) << ')';
            }
            out << ']';
        }
        out << ']';
    };
    if (const auto *g = std::get_if<ClassicalGate>(&gate)) {
        out << gate_name(g->kind);
        for (int b : g->bits()) {
            out << ' ' << b;
        }
    } else if (const auto *p = std::get_if<PhaseGate>(&gate)) {
        out << "phase " << p->qubit << ' ' << format_double(p->theta);
    } else if (const auto *u = std::get_if<UnitaryGate>(&gate)) {
        out << "unitary q=[";
        for (std::size_t i = 0; i < u->qubits.size(); ++i) {
            out << (i ? "," : "") << u->qubits[i];
        }
        out << "] rows=";
        print_rows(u->matrix);
    } else if (const auto *c = std::get_if<ConditionalGate>(&gate)) {
        out << "cond control=" << c->control << " f=perm(";
        for (std::size_t i = 0; i < c->f.size(); ++i) {
            out << (i ? "," : "") << c->f[i];
        }
        out << ") U=rows=";
        print_rows(c->u);
    }
    return out.str();
}

}  // namespace

const char *engine_name(Engine e) {
    switch (e) {
        case Engine::Classical:
            return "classical";
        case Engine::Ensemble:
            return "ensemble";
        case Engine::Quantum:
            return "quantum";
    }
    return "?";
}

const char *analysis_name(AnalysisKind k) {
    switch (k) {
        case AnalysisKind::Correspondence:
            return "correspondence";
        case AnalysisKind::Classicality:
            return "classicality";
        case AnalysisKind::Autonomy:
            return "autonomy";
        case AnalysisKind::Robustness:
            return "robustness";
    }
    return "?";
}

bool CircuitDocument::runs(Engine e) const {
    return std::find(engines.begin(), engines.end(), e) != engines.end();
}

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, end);
}

CircuitDocument parse_document(std::string_view text) {
    CircuitDocument doc;
    bool have_width = false;
    bool have_init = false;
    bool have_engines = false;
    int line_no = 0;
    std::size_t offset = 0;
    while (offset <= text.size()) {
        std::size_t eol = text.find('\n', offset);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        std::string_view line = text.substr(offset, eol - offset);
        offset = eol + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        Cursor cur(line, line_no);
        if (cur.at_end()) {
            continue;
        }
        const std::size_t kw_at = cur.pos();
        const auto kw = cur.word();
        if (kw != "qubits" && !have_width) {
            cur.fail(kw_at, "the first statement must be 'qubits N'");
        }
        if (kw == "qubits") {
            if (have_width) {
                cur.fail(kw_at, "qubits given twice");
            }
            const std::size_t at = cur.pos();
            doc.width = cur.integer();
            if (doc.width < 1 || doc.width > BitWord::kMaxWidth) {
                cur.fail(at, "qubit count out of range");
            }
            have_width = true;
        } else if (kw == "engines") {
            if (have_engines) {
                cur.fail(kw_at, "engines given twice");
            }
            have_engines = true;
            do {
                const std::size_t at = cur.pos();
                Engine e = parse_engine(cur);
                if (doc.runs(e)) {
                    cur.fail(at, "engine listed twice");
                }
                doc.engines.push_back(e);
            } while (!cur.at_end());
        } else if (kw == "init") {
            if (have_init) {
                cur.fail(kw_at, "init given twice");
            }
            have_init = true;
            const std::size_t kind_at = cur.pos();
            const auto kind = cur.word();
            std::set<std::uint64_t> seen;
            auto fresh_word = [&] {
                cur.skip_ws();
                const std::size_t at = cur.pos();
                auto b = cur.bit_word(doc.width);
                if (!seen.insert(b).second) {
                    cur.fail(at, "word listed twice");
                }
                cur.expect(':');
                return b;
            };
            if (kind == "basis") {
                doc.init.kind = InitKind::Basis;
                doc.init.basis = cur.bit_word(doc.width);
            } else if (kind == "ensemble") {
                doc.init.kind = InitKind::Ensemble;
                do {
                    auto b = fresh_word();
                    doc.init.ensemble.emplace_back(b, cur.rational());
                } while (!cur.at_end());
            } else if (kind == "state") {
                doc.init.kind = InitKind::State;
                do {
                    auto b = fresh_word();
                    doc.init.amplitudes.emplace_back(b, cur.complex());
                } while (!cur.at_end());
                double norm2 = 0.0;
                for (const auto &[b, a] : doc.init.amplitudes) {
                    norm2 += std::norm(a);
                }
                const double norm = std::sqrt(norm2);
                if (norm == 0.0) {
                    cur.fail(kind_at, "state has zero norm");
                }
                if (std::abs(norm - 1.0) > kInputTolerance) {
                    for (auto &entry : doc.init.amplitudes) {
                        entry.second /= norm;
                    }
                    doc.warnings.push_back("line " + std::to_string(line_no) + ": state norm " +
                                           format_double(norm) + " normalized to 1");
                }
            } else {
                cur.fail(kind_at, "init must be basis, ensemble or state");
            }
        } else if (kw == "step") {
            QuantumStep step;
            do {
                cur.skip_ws();
                const std::size_t gate_at = cur.pos();
                try {
                    step.push_back(parse_gate(cur));
                    validate_step({step.back()}, doc.width);
                } catch (const ParseError &) {
                    throw;
                } catch (const ValidationError &e) {
                    cur.fail(gate_at, e.what());
                }
            } while (cur.accept(';'));
            if (!cur.at_end()) {
                cur.fail(cur.pos(), "expected ';' or end of line");
            }
            try {
                validate_step(step, doc.width);
            } catch (const ValidationError &e) {
                cur.fail(kw_at, e.what());
            }
            doc.steps.push_back(std::move(step));
        } else if (kw == "analyze") {
            const std::size_t at = cur.pos();
            auto req = parse_analysis(cur);
            if (req.control > doc.width || (req.kind == AnalysisKind::Autonomy &&
                                            req.selector != SelectorFamily::AllZ && doc.width < 2)) {
                cur.fail(at, "selector control outside the network");
            }
            for (int q : req.monitor) {
                if (q < 1 || q > doc.width) {
                    cur.fail(at, "monitored qubit outside the network");
                }
            }
            doc.analyses.push_back(std::move(req));
        } else {
            cur.fail(kw_at, "unknown statement");
        }
        if (!cur.at_end()) {
            cur.fail(cur.pos(), "unexpected trailing input");
        }
    }
    if (!have_width || !have_init) {
        throw ParseError(line_no, 1, "<end of input>", have_width ? "missing init" : "missing 'qubits N'");
    }
    if (!have_engines) {
        const bool classical = all_steps_classical(doc);
        switch (doc.init.kind) {
            case InitKind::Basis:
                if (classical) {
                    doc.engines.push_back(Engine::Classical);
                }
                break;
            case InitKind::Ensemble:
                if (classical) {
                    doc.engines.push_back(Engine::Ensemble);
                }
                break;
            case InitKind::State:
                break;
        }
        doc.engines.push_back(Engine::Quantum);
    }
    return doc;
}

std::string print_document(const CircuitDocument &doc) {
    std::ostringstream out;
    out << "qubits " << doc.width << '\n';
    out << "engines";
    for (Engine e : doc.engines) {
        out << ' ' << engine_name(e);
    }
    out << '\n';
    switch (doc.init.kind) {
        case InitKind::Basis:
            out << "init basis " << word_text(doc.init.basis, doc.width);
            break;
        case InitKind::Ensemble:
            out << "init ensemble";
            for (const auto &[b, mu] : doc.init.ensemble) {
                out << ' ' << word_text(b, doc.width) << ':' << mu.numerator();
                if (mu.denominator() != 1) {
                    out << '/' << mu.denominator();
                }
            }
            break;
        case InitKind::State:
            out << "init state";
            for (const auto &[b, a] : doc.init.amplitudes) {
                out << ' ' << word_text(b, doc.width) << ":(" << format_double(a.real()) << ','
                    << format_double(a.imag()) << ')';
            }
            break;
    }
    out << '\n';
    for (const auto &step : doc.steps) {
        out << "step";
        for (std::size_t i = 0; i < step.size(); ++i) {
            out << (i ? " ; " : " ") << print_gate(step[i]);
        }
        out << '\n';
    }
    for (const auto &a : doc.analyses) {
        out << "analyze " << analysis_name(a.kind);
        if (a.kind == AnalysisKind::Autonomy) {
            static const char *stems[] = {"z", "z", "off", "x"};
            out << " selector=" << stems[static_cast<int>(a.selector)];
            if (a.selector != SelectorFamily::AllZ) {
                out << (a.control == 0 ? std::string("N") : std::to_string(a.control));
            }
        }
        if (!a.monitor.empty()) {
            out << " monitor=";
            for (std::size_t i = 0; i < a.monitor.size(); ++i) {
                out << (i ? "," : "") << a.monitor[i];
            }
        }
        if (!a.expect_pass) {
            out << " expect=fail";
        }
        out << '\n';
    }
    return out.str();
}

bool documents_equal(const CircuitDocument &a, const CircuitDocument &b) {
    if (a.width != b.width || a.engines != b.engines || a.init.kind != b.init.kind ||
        a.init.basis != b.init.basis || a.init.ensemble != b.init.ensemble ||
        a.init.amplitudes != b.init.amplitudes || a.steps.size() != b.steps.size() ||
        a.analyses.size() != b.analyses.size()) {
        return false;
    }
    for (std::size_t s = 0; s < a.steps.size(); ++s) {
        if (a.steps[s].size() != b.steps[s].size()) {
            return false;
        }
        for (std::size_t g = 0; g < a.steps[s].size(); ++g) {
            if (!same_gate(a.steps[s][g], b.steps[s][g])) {
                return false;
            }
        }
    }
    for (std::size_t i = 0; i < a.analyses.size(); ++i) {
        const auto &x = a.analyses[i];
        const auto &y = b.analyses[i];
        if (x.kind != y.kind || x.selector != y.selector || x.control != y.control || x.monitor != y.monitor ||
            x.expect_pass != y.expect_pass) {
            return false;
        }
    }
    return true;
}

Vector initial_amplitudes(const CircuitDocument &doc) {
    Vector psi = Vector::Zero(Index{1} << doc.width);
    switch (doc.init.kind) {
        case InitKind::Basis:
            psi(static_cast<Index>(doc.init.basis)) = 1.0;
            break;
        case InitKind::Ensemble: {
            Rational total(0);
            for (const auto &[b, mu] : doc.init.ensemble) {
                total += mu;
            }
            for (const auto &[b, mu] : doc.init.ensemble) {
                psi(static_cast<Index>(b)) = std::sqrt(boost::rational_cast<double>(mu / total));
            }
            break;
        }
        case InitKind::State:
            for (const auto &[b, a] : doc.init.amplitudes) {
                psi(static_cast<Index>(b)) = a;
            }
            break;
    }
    return psi;
}

}  // namespace mvflow
