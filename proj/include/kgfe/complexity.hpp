#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgfe/graph.hpp"
#include "kgfe/traversal.hpp"

namespace kgfe {

inline constexpr std::size_t kLzWindow = 32768;
inline constexpr std::size_t kLzMinMatch = 3;
inline constexpr std::size_t kCorpusCapBytes = 32768;

// Fixed-unit cost model: a literal costs 1, a match costs 3.
inline constexpr std::uint64_t kLiteralCost = 1;
inline constexpr std::uint64_t kMatchCost = 3;

struct LzToken {
    enum class Kind : std::uint8_t { Literal, Match };

    Kind kind = Kind::Literal;
    std::uint8_t literal = 0;   // Literal only
    std::uint32_t offset = 0;   // Match: 1..window, distance back into the stream
    std::uint32_t length = 0;   // Match: >= min_match

    static LzToken make_literal(std::uint8_t byte) {
        return LzToken{Kind::Literal, byte, 0, 0};
    }
    static LzToken make_match(std::uint32_t offset, std::uint32_t length) {
        return LzToken{Kind::Match, 0, offset, length};
    }
    friend bool operator==(const LzToken&, const LzToken&) = default;
};

// Greedy longest-match LZ77; equal-length candidates resolve to the lowest
// offset. Matches may overlap their own output (offset < length).
std::vector<LzToken> lz77_compress(std::string_view input, std::size_t window = kLzWindow,
                                   std::size_t min_match = kLzMinMatch);

// Exact inverse of lz77_compress. Throws CorruptStream on tokens that
// reference data before the start of the output.
std::string lz77_decompress(std::span<const LzToken> tokens);

std::uint64_t lz_cost(std::span<const LzToken> tokens);

// Relation labels of the path joined with '|'. A label containing the
// delimiter is rejected.
std::string encode_path(const KnowledgeGraph& graph, const RelationPath& path);

// Relation labels of every stored triple in storage order, '|'-joined,
// truncated to the final kCorpusCapBytes bytes.
std::string build_relation_corpus(const KnowledgeGraph& graph);

struct ComplexityEstimate {
    double k = 0.0;                     // clamp(conditional_cost / raw_length, 0, 1)
    std::int64_t conditional_cost = 0;  // cost units added by appending the path
    std::size_t raw_length = 0;         // bytes of the encoded path
};

// Compression-based complexity of a path given a corpus already in the
// window: cost(compress(corpus + "|" + path)) - cost(compress(corpus)),
// normalised by the raw path length. Empty paths score 0.
ComplexityEstimate kolmogorov_estimate(std::string_view encoded_path, std::string_view corpus);

// Variant reusing a precomputed cost(compress(corpus)).
ComplexityEstimate kolmogorov_estimate(std::string_view encoded_path, std::string_view corpus,
                                       std::uint64_t corpus_cost);

// Amortises kolmogorov_estimate over many paths against one corpus. The
// corpus is parsed once; per path only the tokens whose greedy choice can see
// the appended bytes are re-derived. Results are identical to the free
// function for every input.
class PathComplexityEstimator {
public:
    explicit PathComplexityEstimator(std::string corpus);

    ComplexityEstimate estimate(std::string_view encoded_path) const;
    std::uint64_t corpus_cost() const noexcept { return corpus_cost_; }
    const std::string& corpus() const noexcept { return corpus_; }

private:
    std::string corpus_;
    std::uint64_t corpus_cost_ = 0;
    std::uint64_t prefix_cost_ = 0;   // cost of tokens starting before reparse_start_
    std::size_t reparse_start_ = 0;   // first token whose match reached the corpus end
};

}  // namespace kgfe
