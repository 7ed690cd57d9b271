#include "kgfe/scoring.hpp"

#include <algorithm>
#include <unordered_map>

namespace kgfe {

namespace {

void validate(const ScoringParams& params) {
    if (!(params.alpha > 0.0)) {
        throw InvalidInput("alpha must be positive");
    }
    if (params.lambda < 0.0) {
        throw InvalidInput("lambda must be non-negative");
    }
}

DistanceMap checked_bfs(const KnowledgeGraph& graph, std::span<const EntityId> context,
                        const ScoringParams& params) {
    validate(params);
    return multi_source_bfs(graph, context);
}

void sort_pragmatic(std::vector<ScoreCard>& cards) {
    std::stable_sort(cards.begin(), cards.end(), [](const ScoreCard& a, const ScoreCard& b) {
        if (a.f != b.f) return a.f < b.f;
        return a.entity < b.entity;
    });
}

// Unreached candidates offer no path to observe, so they rank behind every
// reached candidate despite their maximal surprise.
void sort_epistemic(std::vector<ScoreCard>& cards) {
    std::stable_sort(cards.begin(), cards.end(), [](const ScoreCard& a, const ScoreCard& b) {
        const bool ar = a.distance.has_value();
        const bool br = b.distance.has_value();
        if (ar != br) return ar;
        if (ar && a.s_geo != b.s_geo) return a.s_geo > b.s_geo;
        return a.entity < b.entity;
    });
}

}  // namespace

double free_energy(double s_geo, double k, double lambda) {
    if (lambda < 0.0) {
        throw InvalidInput("lambda must be non-negative");
    }
    if (k < 0.0 || k > 1.0) {
        throw InvalidInput("k must lie in [0, 1]");
    }
    return s_geo + lambda * k;
}

Scorer::Scorer(const KnowledgeGraph& graph, std::span<const EntityId> context,
               ScoringParams params)
    : graph_(graph),
      params_(params),
      distances_(checked_bfs(graph, context, params)),
      estimator_(build_relation_corpus(graph)) {}

ScoreCard Scorer::make_card(EntityId entity, std::optional<RelationPath> path, double k) const {
    ScoreCard card;
    card.entity = entity;
    if (path) {
        card.distance = distances_.hops(entity);
        card.s_geo = static_cast<double>(*card.distance);
        card.k = k;
        card.path = std::move(path);
    } else {
        card.s_geo = params_.alpha;
        card.k = 1.0;  // no path in the graph: maximal complexity
    }
    card.f = free_energy(card.s_geo, card.k, params_.lambda);
    return card;
}

ScoreCard Scorer::score(EntityId entity) const {
    auto path = shortest_relation_path(graph_, distances_, entity);
    if (!path) {
        return make_card(entity, std::nullopt, 1.0);
    }
    const double k = estimator_.estimate(encode_path(graph_, *path)).k;
    return make_card(entity, std::move(path), k);
}

std::vector<ScoreCard> Scorer::rank(std::span<const EntityId> candidates) const {
    if (candidates.empty()) {
        throw InvalidInput("candidate list must not be empty");
    }
    std::vector<ScoreCard> cards;
    cards.reserve(candidates.size());
    std::unordered_map<std::string, double> k_by_path;  // candidates often share paths
    for (const EntityId entity : candidates) {
        auto path = shortest_relation_path(graph_, distances_, entity);
        if (!path) {
            cards.push_back(make_card(entity, std::nullopt, 1.0));
            continue;
        }
        std::string encoded = encode_path(graph_, *path);
        auto it = k_by_path.find(encoded);
        if (it == k_by_path.end()) {
            const double k = estimator_.estimate(encoded).k;
            it = k_by_path.emplace(std::move(encoded), k).first;
        }
        cards.push_back(make_card(entity, std::move(path), it->second));
    }
    if (params_.mode == Mode::Pragmatic) {
        sort_pragmatic(cards);
    } else {
        sort_epistemic(cards);
    }
    return cards;
}

ScoreCard score_entity(const KnowledgeGraph& graph, std::span<const EntityId> context,
                       EntityId entity, const ScoringParams& params) {
    return Scorer(graph, context, params).score(entity);
}

std::vector<ScoreCard> rank_candidates(const KnowledgeGraph& graph,
                                       std::span<const EntityId> context,
                                       std::span<const EntityId> candidates,
                                       const ScoringParams& params) {
    return Scorer(graph, context, params).rank(candidates);
}

std::vector<ScoreCard> epistemic_rank(const KnowledgeGraph& graph,
                                      std::span<const EntityId> context,
                                      std::span<const EntityId> candidates,
                                      const ScoringParams& params) {
    ScoringParams epistemic = params;
    epistemic.mode = Mode::Epistemic;
    return Scorer(graph, context, epistemic).rank(candidates);
}

}  // namespace kgfe
