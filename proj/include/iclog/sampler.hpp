#pragma once

#include <cstdint>
#include <vector>

#include "iclog/core.hpp"

namespace iclog {

struct SamplerConfig {
    double epsilon = 10.0;          // DBSCAN neighborhood radius in complexity units
    std::size_t min_pts = 5;        // minimum cluster density (point included)
    double sample_ratio = 0.0001;   // fraction of input drawn
    double smoothing_factor = 1.0;  // weight smoothing constant
    std::uint64_t seed = 0;
};

// The two disjoint candidate sets the sampler produces.
struct SampledSets {
    std::vector<LogRecord> meta_set;
    std::vector<LogRecord> inference_set;
};

// token_count^token_count + char_length, with 0^0 defined as 1. Saturates
// to the maximum finite double on overflow so huge logs stay comparable.
double complexity(const TokenizedLog& log);

// Smoothed weight of one log against the whole corpus; weights over the
// corpus sum to 1. Throws EmptyCorpus.
double record_weight(const TokenizedLog& log, const std::vector<TokenizedLog>& corpus,
                     double smoothing_factor);

struct Clustering {
    std::vector<std::vector<std::size_t>> clusters;  // member indices, ascending
    std::vector<std::size_t> noise;                  // indices, ascending
};

// 1-D DBSCAN over the given feature values with |a - b| as the distance.
// A point is core when at least min_pts points (itself included) lie within
// epsilon; border points attach to the nearest core point, ties toward the
// lower value. The result depends only on the values, not input order.
// Throws EmptyInput.
Clustering cluster_values(const std::vector<double>& values, double epsilon,
                          std::size_t min_pts);

// DBSCAN over the records' complexity values.
Clustering cluster(const std::vector<LogRecord>& records, const SamplerConfig& config);

// Draws ceil(sample_ratio * |records|) logs: per-cluster quotas by largest
// remainder (noise forms one pseudo-cluster), weighted draws without
// replacement inside each cluster, then an alternating split by descending
// weight into the meta and inference sets. Deterministic under the seed.
// Throws EmptyInput / RatioTooSmall.
SampledSets sample(const std::vector<LogRecord>& records, const SamplerConfig& config);

}  // namespace iclog
