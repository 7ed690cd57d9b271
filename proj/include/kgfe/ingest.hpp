#pragma once

#include <istream>
#include <ostream>
#include <string_view>

#include "kgfe/graph.hpp"

namespace kgfe {

// Tab-separated triples, one `head<TAB>relation<TAB>tail` per line. Lines
// starting with '#' and blank lines are skipped; a single-field line declares
// an isolated entity with no edges. LF and CRLF both accepted. Parsing is
// all-or-nothing: the first bad line raises ParseError.
KnowledgeGraph parse_tsv(std::istream& in);
KnowledgeGraph parse_tsv(std::string_view text);

// N-Triples subset: `<iri> <iri> <iri> .` per line, IRIs kept verbatim with
// the angle brackets stripped. Literals and blank nodes are rejected.
KnowledgeGraph parse_ntriples(std::istream& in);
KnowledgeGraph parse_ntriples(std::string_view text);

// Writes triples in storage order, then one single-field line per entity
// that has no edges. parse_tsv(write_tsv(g)) reproduces g's labels and edges.
void write_tsv(const KnowledgeGraph& graph, std::ostream& out);

}  // namespace kgfe
