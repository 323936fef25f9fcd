#pragma once

#include <string_view>
#include <unordered_map>
#include <vector>

#include "iclog/core.hpp"

namespace iclog {

// A labeled candidate: a sampled log together with its ground-truth template.
struct Candidate {
    LogRecord record;
    Template tmpl;
};

// BM25 index over the labeled inference set. Immutable after construction;
// concurrent queries are safe.
class Bm25Index {
public:
    struct ScoredCandidate {
        LogRecord record;
        Template tmpl;
        double score = 0.0;
    };

    // Throws EmptyCorpus.
    explicit Bm25Index(std::vector<Candidate> candidates, double k1 = 1.2, double b = 0.75);

    // ln((N - f(w) + 0.5) / (f(w) + 0.5) + 1); unseen tokens use f(w) = 0.
    double idf(std::string_view token) const;

    // Sum over distinct query tokens of idf * saturated, length-normalized
    // term frequency. Throws BadDocId.
    double score(const TokenizedLog& query, std::size_t doc_id) const;

    // The k highest-scoring candidates (ties by ascending line_id), returned
    // in ascending score order so the most similar example sits last, next
    // to the query in the prompt. Pass ascending=false for the flipped order.
    std::vector<ScoredCandidate> top_k(const TokenizedLog& query, std::size_t k,
                                       bool ascending = true) const;

    std::size_t size() const { return candidates_.size(); }
    double avg_len() const { return avg_len_; }
    std::size_t doc_freq(std::string_view token) const;
    const std::vector<Candidate>& candidates() const { return candidates_; }

private:
    std::vector<Candidate> candidates_;
    std::vector<std::unordered_map<std::string, std::size_t>> term_counts_;
    std::vector<std::size_t> doc_lengths_;
    std::unordered_map<std::string, std::size_t> doc_freq_;
    double avg_len_ = 0.0;
    double k1_;
    double b_;
};

}  // namespace iclog
