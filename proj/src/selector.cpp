#include "iclog/selector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "iclog/errors.hpp"

namespace iclog {

Bm25Index::Bm25Index(std::vector<Candidate> candidates, double k1, double b)
    : candidates_(std::move(candidates)), k1_(k1), b_(b) {
    if (candidates_.empty()) throw EmptyCorpus("BM25 index requires a non-empty corpus");

    term_counts_.reserve(candidates_.size());
    doc_lengths_.reserve(candidates_.size());
    std::size_t total_tokens = 0;
    for (const auto& candidate : candidates_) {
        TokenizedLog doc = tokenize(candidate.record.content);
        std::unordered_map<std::string, std::size_t> counts;
        for (auto& token : doc.tokens) ++counts[std::move(token)];
        for (const auto& [token, count] : counts) ++doc_freq_[token];
        term_counts_.push_back(std::move(counts));
        doc_lengths_.push_back(doc.token_count);
        total_tokens += doc.token_count;
    }
    avg_len_ = static_cast<double>(total_tokens) / static_cast<double>(candidates_.size());
}

double Bm25Index::idf(std::string_view token) const {
    auto it = doc_freq_.find(std::string(token));
    double f = (it == doc_freq_.end()) ? 0.0 : static_cast<double>(it->second);
    double n = static_cast<double>(candidates_.size());
    return std::log((n - f + 0.5) / (f + 0.5) + 1.0);
}

std::size_t Bm25Index::doc_freq(std::string_view token) const {
    auto it = doc_freq_.find(std::string(token));
    return it == doc_freq_.end() ? 0 : it->second;
}

double Bm25Index::score(const TokenizedLog& query, std::size_t doc_id) const {
    if (doc_id >= candidates_.size()) throw BadDocId("BM25 doc id out of range");

    const auto& counts = term_counts_[doc_id];
    double doc_len = static_cast<double>(doc_lengths_[doc_id]);
    double norm = k1_ * (1.0 - b_ + b_ * doc_len / avg_len_);

    double total = 0.0;
    std::vector<std::string_view> seen;
    seen.reserve(query.tokens.size());
    for (const auto& token : query.tokens) {
        if (std::find(seen.begin(), seen.end(), token) != seen.end()) continue;
        seen.push_back(token);
        auto it = counts.find(token);
        if (it == counts.end()) continue;
        double tf = static_cast<double>(it->second);
        total += idf(token) * tf * (k1_ + 1.0) / (tf + norm);
    }
    return total;
}

std::vector<Bm25Index::ScoredCandidate> Bm25Index::top_k(const TokenizedLog& query,
                                                         std::size_t k, bool ascending) const {
    std::vector<std::size_t> order(candidates_.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> scores(candidates_.size());
    for (std::size_t i = 0; i < candidates_.size(); ++i) scores[i] = score(query, i);

    auto better = [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return candidates_[a].record.line_id < candidates_[b].record.line_id;
    };
    std::size_t take = std::min(k, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take),
                      order.end(), better);
    order.resize(take);

    // Selection picked best-first; the prompt wants ascending similarity.
    // Equal scores keep smaller line_id first in either direction.
    if (ascending) {
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (scores[a] != scores[b]) return scores[a] < scores[b];
            return candidates_[a].record.line_id < candidates_[b].record.line_id;
        });
    }

    std::vector<ScoredCandidate> out;
    out.reserve(order.size());
    for (std::size_t idx : order) {
        out.push_back({candidates_[idx].record, candidates_[idx].tmpl, scores[idx]});
    }
    return out;
}

}  // namespace iclog
