#include "kgfe/ingest.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace kgfe {

namespace {

[[noreturn]] void fail(std::size_t line, DiagnosticKind kind, std::string_view excerpt,
                       const std::string& what) {
    ParseDiagnostic diag;
    diag.line = line;
    diag.kind = kind;
    diag.excerpt = std::string(excerpt.substr(0, 120));
    throw ParseError(std::move(diag),
                     "line " + std::to_string(line) + ": " + what + " [" + to_string(kind) + "]");
}

bool valid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        const auto b0 = static_cast<unsigned char>(s[i]);
        std::size_t len;
        std::uint32_t cp;
        if (b0 < 0x80) {
            i += 1;
            continue;
        } else if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1F;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0F;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07;
        } else {
            return false;
        }
        if (i + len > s.size()) return false;
        for (std::size_t k = 1; k < len; ++k) {
            const auto b = static_cast<unsigned char>(s[i + k]);
            if ((b & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (b & 0x3F);
        }
        // overlongs, surrogates, out-of-range
        if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000))
            return false;
        if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
        i += len;
    }
    return true;
}

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

void parse_tsv_line(GraphBuilder& builder, std::string_view line, std::size_t lineno) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == '\t') {
            fields.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    if (fields.size() == 1) {
        // isolated entity declaration
        if (trim(fields[0]).empty()) return;  // whitespace-only line
        builder.intern_entity(fields[0]);
        return;
    }
    if (fields.size() != 3) {
        fail(lineno, DiagnosticKind::MalformedFields, line,
             "expected 3 tab-separated fields, got " + std::to_string(fields.size()));
    }
    for (const auto field : fields) {
        if (trim(field).empty()) {
            fail(lineno, DiagnosticKind::EmptyLabel, line, "empty field");
        }
    }
    builder.add_triple(fields[0], fields[1], fields[2]);
}

// One `<iri> <iri> <iri> .` statement; whitespace-separated, comments handled
// by the caller.
void parse_ntriples_line(GraphBuilder& builder, std::string_view line, std::size_t lineno) {
    std::size_t pos = 0;
    const auto skip_ws = [&] {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    };
    std::vector<std::string_view> terms;
    for (int t = 0; t < 3; ++t) {
        skip_ws();
        if (pos >= line.size() || line[pos] == '.') {
            fail(lineno, DiagnosticKind::MalformedFields, line,
                 "expected 3 terms, got " + std::to_string(t));
        }
        const char c = line[pos];
        if (c == '"') {
            fail(lineno, DiagnosticKind::UnsupportedTerm, line, "literals are not supported");
        }
        if (c == '_') {
            fail(lineno, DiagnosticKind::UnsupportedTerm, line, "blank nodes are not supported");
        }
        if (c != '<') {
            fail(lineno, DiagnosticKind::MalformedFields, line, "expected '<' to open an IRI");
        }
        const std::size_t close = line.find('>', pos + 1);
        if (close == std::string_view::npos) {
            fail(lineno, DiagnosticKind::MalformedFields, line, "unterminated IRI");
        }
        const auto iri = line.substr(pos + 1, close - pos - 1);
        if (iri.empty()) {
            fail(lineno, DiagnosticKind::EmptyLabel, line, "empty IRI");
        }
        terms.push_back(iri);
        pos = close + 1;
    }
    skip_ws();
    if (pos >= line.size() || line[pos] != '.') {
        fail(lineno, DiagnosticKind::BadTerminator, line, "statement must end with '.'");
    }
    ++pos;
    skip_ws();
    if (pos != line.size()) {
        fail(lineno, DiagnosticKind::MalformedFields, line, "trailing content after '.'");
    }
    builder.add_triple(terms[0], terms[1], terms[2]);
}

template <typename LineFn>
KnowledgeGraph parse_lines(std::istream& in, LineFn&& parse_line) {
    GraphBuilder builder;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string_view line = strip_cr(raw);
        if (line.empty() || line.front() == '#') continue;
        if (!valid_utf8(line)) {
            fail(lineno, DiagnosticKind::Encoding, line, "invalid UTF-8");
        }
        parse_line(builder, line, lineno);
    }
    return builder.build();
}

}  // namespace

const char* to_string(DiagnosticKind kind) {
    switch (kind) {
        case DiagnosticKind::MalformedFields: return "malformed-fields";
        case DiagnosticKind::EmptyLabel: return "empty-label";
        case DiagnosticKind::BadTerminator: return "bad-terminator";
        case DiagnosticKind::Encoding: return "encoding";
        case DiagnosticKind::UnsupportedTerm: return "unsupported-term";
    }
    return "unknown";
}

KnowledgeGraph parse_tsv(std::istream& in) {
    return parse_lines(in, parse_tsv_line);
}

KnowledgeGraph parse_tsv(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_tsv(in);
}

KnowledgeGraph parse_ntriples(std::istream& in) {
    return parse_lines(in, parse_ntriples_line);
}

KnowledgeGraph parse_ntriples(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_ntriples(in);
}

void write_tsv(const KnowledgeGraph& graph, std::ostream& out) {
    std::vector<bool> has_edge(graph.entity_count(), false);
    graph.for_each_triple([&](const Triple& t) {
        has_edge[t.head.value] = true;
        has_edge[t.tail.value] = true;
        out << graph.entity_label(t.head) << '\t' << graph.relation_label(t.relation) << '\t'
            << graph.entity_label(t.tail) << '\n';
    });
    for (std::uint32_t e = 0; e < graph.entity_count(); ++e) {
        if (!has_edge[e]) {
            out << graph.entity_label(EntityId{e}) << '\n';
        }
    }
}

}  // namespace kgfe
