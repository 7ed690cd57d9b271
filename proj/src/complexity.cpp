#include "kgfe/complexity.hpp"

#include <algorithm>

namespace kgfe {

namespace {

constexpr std::uint32_t kHashBits = 15;
constexpr std::size_t kHashSize = std::size_t{1} << kHashBits;
constexpr std::int32_t kNil = -1;

std::uint32_t hash3(const unsigned char* d, std::size_t p) {
    const std::uint32_t x = (std::uint32_t{d[p]} << 16) | (std::uint32_t{d[p + 1]} << 8) | d[p + 2];
    return (x * 2654435761u) >> (32 - kHashBits);
}

// Hash-chain matcher state. Chains list positions sharing a 3-byte prefix,
// newest first, so walking them realises the lowest-offset tie rule directly.
class ChainMatcher {
public:
    ChainMatcher(std::string_view input, std::size_t window, std::size_t min_match)
        : d_(reinterpret_cast<const unsigned char*>(input.data())),
          n_(input.size()),
          window_(window),
          min_match_(min_match),
          head_(kHashSize, kNil),
          prev_(n_, kNil) {}

    void insert(std::size_t p) {
        if (p + 2 < n_) {
            const auto h = hash3(d_, p);
            prev_[p] = head_[h];
            head_[h] = static_cast<std::int32_t>(p);
        }
    }

    // Longest match at i (lowest offset on length ties); length below
    // min_match means "emit a literal".
    struct Match {
        std::size_t length = 0;
        std::size_t offset = 0;
    };
    Match find(std::size_t i) const {
        Match best;
        const std::size_t max_len = n_ - i;
        if (max_len < min_match_) return best;
        const std::size_t window_start = i > window_ ? i - window_ : 0;
        for (std::int32_t j = head_[hash3(d_, i)];
             j != kNil && static_cast<std::size_t>(j) >= window_start; j = prev_[j]) {
            const auto cand = static_cast<std::size_t>(j);
            // a candidate must improve on the current best to matter
            if (best.length > 0 && d_[cand + best.length] != d_[i + best.length]) continue;
            std::size_t len = 0;
            while (len < max_len && d_[cand + len] == d_[i + len]) ++len;
            if (len > best.length) {
                best.length = len;
                best.offset = i - cand;
                if (len == max_len) break;
            }
        }
        return best;
    }

    std::size_t size() const noexcept { return n_; }
    const unsigned char* data() const noexcept { return d_; }
    std::size_t min_match() const noexcept { return min_match_; }

private:
    const unsigned char* d_;
    std::size_t n_;
    std::size_t window_;
    std::size_t min_match_;
    std::vector<std::int32_t> head_;
    std::vector<std::int32_t> prev_;
};

// Greedy parse from `start`; positions before it are assumed already parsed
// and are only registered in the chains. When `end_limited` is non-null it
// records, per emitted token, whether some match candidate at the token start
// ran into the end of the input (those decisions can change if bytes are
// appended, every other decision is final).
std::vector<LzToken> parse_chained(ChainMatcher& matcher, std::size_t start,
                                   std::vector<std::pair<std::size_t, bool>>* end_limited) {
    const std::size_t n = matcher.size();
    for (std::size_t p = 0; p < start; ++p) matcher.insert(p);

    std::vector<LzToken> tokens;
    std::size_t i = start;
    while (i < n) {
        const std::size_t max_len = n - i;
        const auto best = matcher.find(i);
        // best.length == max_len means a candidate was cut short by the end
        // of input; below min_match no candidates were visible at all.
        if (end_limited) {
            end_limited->emplace_back(i, best.length == max_len || max_len < matcher.min_match());
        }
        if (best.length >= matcher.min_match()) {
            tokens.push_back(LzToken::make_match(static_cast<std::uint32_t>(best.offset),
                                                 static_cast<std::uint32_t>(best.length)));
            for (std::size_t p = i; p < i + best.length; ++p) matcher.insert(p);
            i += best.length;
        } else {
            tokens.push_back(LzToken::make_literal(matcher.data()[i]));
            matcher.insert(i);
            ++i;
        }
    }
    return tokens;
}

std::vector<LzToken> compress_chained(std::string_view input, std::size_t window,
                                      std::size_t min_match) {
    ChainMatcher matcher(input, window, min_match);
    return parse_chained(matcher, 0, nullptr);
}

// Window scan for min_match < 3, where the 3-byte chains cannot see all
// candidates. Only exercised with non-default parameters.
std::vector<LzToken> compress_naive(std::string_view input, std::size_t window,
                                    std::size_t min_match) {
    const auto* d = reinterpret_cast<const unsigned char*>(input.data());
    const std::size_t n = input.size();
    std::vector<LzToken> tokens;
    std::size_t i = 0;
    while (i < n) {
        const std::size_t max_len = n - i;
        const std::size_t window_start = i > window ? i - window : 0;
        std::size_t best_len = 0;
        std::size_t best_offset = 0;
        for (std::size_t j = i; j-- > window_start;) {
            std::size_t len = 0;
            while (len < max_len && d[j + len] == d[i + len]) ++len;
            if (len > best_len) {
                best_len = len;
                best_offset = i - j;
                if (best_len == max_len) break;
            }
        }
        if (best_len >= min_match) {
            tokens.push_back(LzToken::make_match(static_cast<std::uint32_t>(best_offset),
                                                 static_cast<std::uint32_t>(best_len)));
            i += best_len;
        } else {
            tokens.push_back(LzToken::make_literal(d[i]));
            ++i;
        }
    }
    return tokens;
}

}  // namespace

std::vector<LzToken> lz77_compress(std::string_view input, std::size_t window,
                                   std::size_t min_match) {
    if (window < 1) throw InvalidInput("window must be at least 1");
    if (min_match < 1) throw InvalidInput("min_match must be at least 1");
    if (input.empty()) return {};
    return min_match >= 3 ? compress_chained(input, window, min_match)
                          : compress_naive(input, window, min_match);
}

std::string lz77_decompress(std::span<const LzToken> tokens) {
    std::string out;
    for (const LzToken& token : tokens) {
        if (token.kind == LzToken::Kind::Literal) {
            out.push_back(static_cast<char>(token.literal));
            continue;
        }
        if (token.offset == 0 || token.length == 0) {
            throw CorruptStream("match token with zero offset or length");
        }
        if (token.offset > out.size()) {
            throw CorruptStream("match references data before the start of the stream");
        }
        const std::size_t start = out.size() - token.offset;
        for (std::size_t k = 0; k < token.length; ++k) {
            out.push_back(out[start + k]);  // byte-wise to allow overlap
        }
    }
    return out;
}

std::uint64_t lz_cost(std::span<const LzToken> tokens) {
    std::uint64_t cost = 0;
    for (const LzToken& token : tokens) {
        cost += token.kind == LzToken::Kind::Literal ? kLiteralCost : kMatchCost;
    }
    return cost;
}

std::string encode_path(const KnowledgeGraph& graph, const RelationPath& path) {
    std::string out;
    for (std::size_t i = 0; i < path.relations.size(); ++i) {
        const std::string& label = graph.relation_label(path.relations[i]);
        if (label.find('|') != std::string::npos) {
            throw InvalidInput("relation label contains the reserved delimiter '|': " + label);
        }
        if (i > 0) out.push_back('|');
        out.append(label);
    }
    return out;
}

std::string build_relation_corpus(const KnowledgeGraph& graph) {
    std::string corpus;
    graph.for_each_triple([&](const Triple& t) {
        if (!corpus.empty()) corpus.push_back('|');
        corpus.append(graph.relation_label(t.relation));
    });
    if (corpus.size() > kCorpusCapBytes) {
        corpus.erase(0, corpus.size() - kCorpusCapBytes);
    }
    return corpus;
}

ComplexityEstimate kolmogorov_estimate(std::string_view encoded_path, std::string_view corpus) {
    return kolmogorov_estimate(encoded_path, corpus, lz_cost(lz77_compress(corpus)));
}

ComplexityEstimate kolmogorov_estimate(std::string_view encoded_path, std::string_view corpus,
                                       std::uint64_t corpus_cost) {
    ComplexityEstimate estimate;
    estimate.raw_length = encoded_path.size();
    if (encoded_path.empty()) {
        return estimate;
    }
    std::string combined;
    combined.reserve(corpus.size() + 1 + encoded_path.size());
    combined.append(corpus);
    combined.push_back('|');
    combined.append(encoded_path);

    const std::uint64_t full_cost = lz_cost(lz77_compress(combined));
    estimate.conditional_cost =
        static_cast<std::int64_t>(full_cost) - static_cast<std::int64_t>(corpus_cost);
    const double ratio =
        static_cast<double>(estimate.conditional_cost) / static_cast<double>(estimate.raw_length);
    estimate.k = std::clamp(ratio, 0.0, 1.0);
    return estimate;
}

PathComplexityEstimator::PathComplexityEstimator(std::string corpus) : corpus_(std::move(corpus)) {
    ChainMatcher matcher(corpus_, kLzWindow, kLzMinMatch);
    std::vector<std::pair<std::size_t, bool>> flags;
    const auto tokens = parse_chained(matcher, 0, &flags);
    corpus_cost_ = lz_cost(tokens);
    reparse_start_ = corpus_.size();
    prefix_cost_ = corpus_cost_;
    std::uint64_t cost_before = 0;
    for (std::size_t t = 0; t < tokens.size(); ++t) {
        if (flags[t].second) {
            reparse_start_ = flags[t].first;
            prefix_cost_ = cost_before;
            break;
        }
        cost_before += tokens[t].kind == LzToken::Kind::Literal ? kLiteralCost : kMatchCost;
    }
}

ComplexityEstimate PathComplexityEstimator::estimate(std::string_view encoded_path) const {
    ComplexityEstimate out;
    out.raw_length = encoded_path.size();
    if (encoded_path.empty()) {
        return out;
    }
    std::string combined;
    combined.reserve(corpus_.size() + 1 + encoded_path.size());
    combined.append(corpus_);
    combined.push_back('|');
    combined.append(encoded_path);

    ChainMatcher matcher(combined, kLzWindow, kLzMinMatch);
    const auto tail = parse_chained(matcher, reparse_start_, nullptr);
    const std::uint64_t full_cost = prefix_cost_ + lz_cost(tail);
    out.conditional_cost =
        static_cast<std::int64_t>(full_cost) - static_cast<std::int64_t>(corpus_cost_);
    const double ratio =
        static_cast<double>(out.conditional_cost) / static_cast<double>(out.raw_length);
    out.k = std::clamp(ratio, 0.0, 1.0);
    return out;
}

}  // namespace kgfe
