#include "kgfe/cli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>

#include <CLI11.hpp>
#include <json.hpp>

#include "kgfe/complexity.hpp"
#include "kgfe/ingest.hpp"
#include "kgfe/scoring.hpp"
#include "kgfe/traversal.hpp"

namespace kgfe::cli {

namespace {

using nlohmann::ordered_json;

// Usage problems discovered after flag parsing (exit code 1).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_number(double value) {
    std::array<char, 32> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

KnowledgeGraph load_graph(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidInput("cannot open graph file: " + path);
    }
    if (path.size() >= 3 && path.compare(path.size() - 3, 3, ".nt") == 0) {
        return parse_ntriples(in);
    }
    return parse_tsv(in);
}

EntityId resolve_entity(const KnowledgeGraph& graph, std::string_view label) {
    if (auto id = graph.find_entity(label)) {
        return *id;
    }
    throw InvalidInput("unknown entity label: " + std::string(trim(label)));
}

std::vector<EntityId> resolve_csv(const KnowledgeGraph& graph, std::string_view csv) {
    std::vector<EntityId> ids;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= csv.size(); ++i) {
        if (i == csv.size() || csv[i] == ',') {
            const auto label = trim(csv.substr(start, i - start));
            if (label.empty()) {
                throw InvalidInput("empty label in list: " + std::string(csv));
            }
            ids.push_back(resolve_entity(graph, label));
            start = i + 1;
        }
    }
    return ids;
}

std::vector<EntityId> resolve_label_file(const KnowledgeGraph& graph, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidInput("cannot open candidates file: " + path);
    }
    std::vector<EntityId> ids;
    std::string line;
    while (std::getline(in, line)) {
        const auto label = trim(line);
        if (label.empty()) continue;
        ids.push_back(resolve_entity(graph, label));
    }
    if (ids.empty()) {
        throw InvalidInput("candidates file is empty: " + path);
    }
    return ids;
}

double effective_alpha(const KnowledgeGraph& graph, const std::optional<double>& alpha,
                       std::ostream& err) {
    if (alpha) {
        return *alpha;
    }
    const double computed = static_cast<double>(diameter(graph)) + 1.0;
    err << "alpha not set; using diameter + 1 = " << format_number(computed) << "\n";
    return computed;
}

std::string render_chain(const KnowledgeGraph& graph, const RelationPath& path) {
    std::string out = graph.entity_label(path.nodes.front());
    for (std::size_t i = 0; i < path.relations.size(); ++i) {
        out += " -";
        out += graph.relation_label(path.relations[i]);
        out += "-> ";
        out += graph.entity_label(path.nodes[i + 1]);
    }
    return out;
}

ordered_json path_json(const KnowledgeGraph& graph, const RelationPath& path) {
    ordered_json arr = ordered_json::array();
    arr.push_back(graph.entity_label(path.nodes.front()));
    for (std::size_t i = 0; i < path.relations.size(); ++i) {
        arr.push_back(graph.relation_label(path.relations[i]));
        arr.push_back(graph.entity_label(path.nodes[i + 1]));
    }
    return arr;
}

void print_table(std::ostream& out, std::span<const std::string> header,
                 const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        widths[c] = header[c].size();
    }
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            widths[c] = std::max(widths[c], row[c].size());
        }
    }
    const auto print_row = [&](std::span<const std::string> cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            out << cells[c];
            if (c + 1 < cells.size()) {
                out << std::string(widths[c] - cells[c].size() + 2, ' ');
            }
        }
        out << '\n';
    };
    print_row(header);
    for (const auto& row : rows) {
        print_row(row);
    }
}

ordered_json card_json(const KnowledgeGraph& graph, const ScoreCard& card) {
    ordered_json record;
    record["entity"] = graph.entity_label(card.entity);
    if (card.distance) {
        record["distance"] = *card.distance;
    } else {
        record["distance"] = nullptr;
    }
    record["s_geo"] = card.s_geo;
    record["k"] = card.k;
    record["f"] = card.f;
    if (card.path) {
        record["path"] = path_json(graph, *card.path);
    } else {
        record["path"] = nullptr;
    }
    return record;
}

std::vector<std::string> card_row(const KnowledgeGraph& graph, const ScoreCard& card) {
    return {graph.entity_label(card.entity),
            card.distance ? std::to_string(*card.distance) : "null",
            format_number(card.s_geo),
            format_number(card.k),
            format_number(card.f),
            card.path ? render_chain(graph, *card.path) : "null"};
}

void emit_cards(std::ostream& out, const KnowledgeGraph& graph,
                const std::vector<ScoreCard>& cards, const ScoringParams& params,
                std::span<const std::string> context_labels, const std::string& format) {
    if (format == "json") {
        ordered_json doc;
        doc["schema"] = 1;
        doc["mode"] = params.mode == Mode::Pragmatic ? "pragmatic" : "epistemic";
        doc["alpha"] = params.alpha;
        doc["lambda"] = params.lambda;
        doc["context"] = context_labels;
        doc["results"] = ordered_json::array();
        for (const ScoreCard& card : cards) {
            doc["results"].push_back(card_json(graph, card));
        }
        out << doc.dump(2) << '\n';
        return;
    }
    const std::array<std::string, 6> header = {"entity", "distance", "s_geo", "k", "f", "path"};
    std::vector<std::vector<std::string>> rows;
    rows.reserve(cards.size());
    for (const ScoreCard& card : cards) {
        rows.push_back(card_row(graph, card));
    }
    print_table(out, header, rows);
}

struct Options {
    std::string graph_path;
    std::string context_csv;
    std::string candidates_csv;
    std::string candidates_file;
    std::string entity_label;
    std::optional<double> alpha;
    double lambda = 1.0;
    std::string mode = "pragmatic";
    std::string format = "table";
};

std::vector<std::string> split_context_labels(std::string_view csv) {
    std::vector<std::string> labels;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= csv.size(); ++i) {
        if (i == csv.size() || csv[i] == ',') {
            labels.emplace_back(trim(csv.substr(start, i - start)));
            start = i + 1;
        }
    }
    return labels;
}

int run_rank_or_score(const Options& opt, bool ranked, std::ostream& out, std::ostream& err) {
    const KnowledgeGraph graph = load_graph(opt.graph_path);
    const Context context = resolve_csv(graph, opt.context_csv);

    std::vector<EntityId> candidates;
    if (!opt.candidates_csv.empty()) {
        candidates = resolve_csv(graph, opt.candidates_csv);
    } else if (!opt.candidates_file.empty()) {
        candidates = resolve_label_file(graph, opt.candidates_file);
    } else {
        throw UsageError("one of --candidates or --candidates-file is required");
    }

    ScoringParams params;
    params.alpha = effective_alpha(graph, opt.alpha, err);
    params.lambda = opt.lambda;
    params.mode = opt.mode == "epistemic" ? Mode::Epistemic : Mode::Pragmatic;

    const Scorer scorer(graph, context, params);
    std::vector<ScoreCard> cards;
    if (ranked) {
        cards = scorer.rank(candidates);
    } else {
        cards.reserve(candidates.size());
        for (const EntityId entity : candidates) {
            cards.push_back(scorer.score(entity));
        }
    }
    emit_cards(out, graph, cards, params, split_context_labels(opt.context_csv), opt.format);
    return 0;
}

int run_distances(const Options& opt, std::ostream& out) {
    const KnowledgeGraph graph = load_graph(opt.graph_path);
    const Context context = resolve_csv(graph, opt.context_csv);
    const DistanceMap distances = multi_source_bfs(graph, context);

    if (opt.format == "json") {
        ordered_json doc;
        doc["schema"] = 1;
        doc["context"] = split_context_labels(opt.context_csv);
        doc["results"] = ordered_json::array();
        for (std::uint32_t e = 0; e < graph.entity_count(); ++e) {
            ordered_json record;
            record["entity"] = graph.entity_label(EntityId{e});
            if (distances.reached(EntityId{e})) {
                record["distance"] = distances.hops(EntityId{e});
            } else {
                record["distance"] = nullptr;
            }
            doc["results"].push_back(std::move(record));
        }
        out << doc.dump(2) << '\n';
        return 0;
    }
    const std::array<std::string, 2> header = {"entity", "distance"};
    std::vector<std::vector<std::string>> rows;
    for (std::uint32_t e = 0; e < graph.entity_count(); ++e) {
        rows.push_back({graph.entity_label(EntityId{e}),
                        distances.reached(EntityId{e})
                            ? std::to_string(distances.hops(EntityId{e}))
                            : "null"});
    }
    print_table(out, header, rows);
    return 0;
}

int run_explain(const Options& opt, std::ostream& out, std::ostream& err) {
    const KnowledgeGraph graph = load_graph(opt.graph_path);
    const Context context = resolve_csv(graph, opt.context_csv);
    const EntityId entity = resolve_entity(graph, opt.entity_label);
    const double alpha = effective_alpha(graph, opt.alpha, err);

    const DistanceMap distances = multi_source_bfs(graph, context);
    const auto path = shortest_relation_path(graph, distances, entity);

    if (opt.format == "json") {
        ordered_json doc;
        doc["schema"] = 1;
        doc["entity"] = graph.entity_label(entity);
        doc["alpha"] = alpha;
        if (path) {
            doc["distance"] = distances.hops(entity);
            doc["path"] = path_json(graph, *path);
        } else {
            doc["distance"] = nullptr;
            doc["path"] = nullptr;
        }
        out << doc.dump(2) << '\n';
        return 0;
    }
    if (!path) {
        out << "no path from context to '" << graph.entity_label(entity)
            << "' (surprise = alpha = " << format_number(alpha) << ")\n";
    } else if (path->length() == 0) {
        out << graph.entity_label(entity) << " (distance 0; in context)\n";
    } else {
        out << render_chain(graph, *path) << '\n';
    }
    return 0;
}

int run_stats(const Options& opt, std::ostream& out) {
    const KnowledgeGraph graph = load_graph(opt.graph_path);
    const std::uint32_t diam = diameter(graph);
    const std::uint32_t suggested_alpha = diam + 1;

    if (opt.format == "json") {
        ordered_json doc;
        doc["schema"] = 1;
        doc["entities"] = graph.entity_count();
        doc["relations"] = graph.relation_count();
        doc["edges"] = graph.edge_count();
        doc["diameter"] = diam;
        doc["suggested_alpha"] = suggested_alpha;
        out << doc.dump(2) << '\n';
        return 0;
    }
    const std::array<std::string, 2> header = {"metric", "value"};
    const std::vector<std::vector<std::string>> rows = {
        {"entities", std::to_string(graph.entity_count())},
        {"relations", std::to_string(graph.relation_count())},
        {"edges", std::to_string(graph.edge_count())},
        {"diameter", std::to_string(diam)},
        {"suggested_alpha", std::to_string(suggested_alpha)},
    };
    print_table(out, header, rows);
    return 0;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"free-energy scoring of entity groundings over a knowledge graph", "kgfe"};
    app.require_subcommand(1);

    Options opt;

    const auto add_graph = [&](CLI::App* sub) {
        sub->add_option("--graph", opt.graph_path, "triple file (TSV, or N-Triples for *.nt)")
            ->required();
    };
    const auto add_context = [&](CLI::App* sub) {
        sub->add_option("--context", opt.context_csv, "comma-separated context entity labels")
            ->required();
    };
    const auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"table", "json"}))
            ->capture_default_str();
    };
    const auto add_scoring = [&](CLI::App* sub) {
        sub->add_option("--alpha", opt.alpha, "disconnection penalty (default: diameter + 1)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--lambda", opt.lambda, "complexity weight")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        sub->add_option("--mode", opt.mode, "ranking mode")
            ->check(CLI::IsMember({"pragmatic", "epistemic"}))
            ->capture_default_str();
    };
    const auto add_candidates = [&](CLI::App* sub) {
        auto* csv = sub->add_option("--candidates", opt.candidates_csv,
                                    "comma-separated candidate labels");
        sub->add_option("--candidates-file", opt.candidates_file,
                        "file with one candidate label per line")
            ->excludes(csv);
    };

    CLI::App* rank = app.add_subcommand("rank", "score and order candidate groundings");
    add_graph(rank);
    add_context(rank);
    add_candidates(rank);
    add_scoring(rank);
    add_format(rank);

    CLI::App* score = app.add_subcommand("score", "score candidates in the given order");
    add_graph(score);
    add_context(score);
    add_candidates(score);
    add_scoring(score);
    add_format(score);

    CLI::App* distances = app.add_subcommand("distances", "hop counts from the context");
    add_graph(distances);
    add_context(distances);
    add_format(distances);

    CLI::App* explain = app.add_subcommand("explain", "show one shortest relation path");
    add_graph(explain);
    add_context(explain);
    explain->add_option("entity", opt.entity_label, "target entity label")->required();
    explain->add_option("--alpha", opt.alpha, "disconnection penalty (default: diameter + 1)")
        ->check(CLI::PositiveNumber);
    add_format(explain);

    CLI::App* stats = app.add_subcommand("stats", "graph size, diameter, suggested alpha");
    add_graph(stats);
    add_format(stats);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 1;
    }

    try {
        if (rank->parsed()) return run_rank_or_score(opt, true, out, err);
        if (score->parsed()) return run_rank_or_score(opt, false, out, err);
        if (distances->parsed()) return run_distances(opt, out);
        if (explain->parsed()) return run_explain(opt, out, err);
        if (stats->parsed()) return run_stats(opt, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace kgfe::cli
