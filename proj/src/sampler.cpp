#include "iclog/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "iclog/errors.hpp"
#include "iclog/preprocess.hpp"

namespace iclog {

namespace {

// Deterministic unit double from the top 53 bits of the generator output.
double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double saturating_self_pow(std::size_t n) {
    if (n == 0) return 1.0;  // 0^0 convention keeps complexity positive
    double result = 1.0;
    double base = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        result *= base;
        if (!std::isfinite(result)) return std::numeric_limits<double>::max();
    }
    return result;
}

std::vector<double> complexities_of(const std::vector<LogRecord>& records) {
    std::vector<double> values;
    values.reserve(records.size());
    for (const auto& rec : records) values.push_back(complexity(tokenize(rec.content)));
    return values;
}

// Weighted draw without replacement over the still-available members.
std::vector<std::size_t> draw_without_replacement(const std::vector<std::size_t>& members,
                                                  const std::vector<double>& weights,
                                                  std::size_t count, std::mt19937_64& rng) {
    std::vector<std::size_t> pool = members;
    std::vector<double> pool_weights;
    pool_weights.reserve(pool.size());
    for (std::size_t idx : pool) pool_weights.push_back(weights[idx]);

    std::vector<std::size_t> drawn;
    drawn.reserve(count);
    for (std::size_t d = 0; d < count && !pool.empty(); ++d) {
        long double total = 0.0L;
        for (double w : pool_weights) total += w;
        long double u = static_cast<long double>(next_unit(rng)) * total;
        std::size_t pick = pool.size() - 1;
        long double cum = 0.0L;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            cum += pool_weights[i];
            if (u < cum) {
                pick = i;
                break;
            }
        }
        drawn.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
        pool_weights.erase(pool_weights.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return drawn;
}

// Largest-remainder apportionment of `target` over cluster sizes, with a
// minimum of one per cluster while the total permits.
std::vector<std::size_t> cluster_quotas(const std::vector<std::size_t>& sizes,
                                        std::size_t target) {
    std::size_t n = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
    std::vector<std::size_t> quotas(sizes.size(), 0);
    if (n == 0 || target == 0) return quotas;

    std::vector<double> fractions(sizes.size(), 0.0);
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        double exact = static_cast<double>(target) * static_cast<double>(sizes[i]) /
                       static_cast<double>(n);
        quotas[i] = static_cast<std::size_t>(exact);
        fractions[i] = exact - static_cast<double>(quotas[i]);
        assigned += quotas[i];
    }

    std::vector<std::size_t> order(sizes.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (fractions[a] != fractions[b]) return fractions[a] > fractions[b];
        if (sizes[a] != sizes[b]) return sizes[a] > sizes[b];
        return a < b;
    });
    for (std::size_t i = 0; assigned < target && i < order.size(); ++i) {
        ++quotas[order[i]];
        ++assigned;
    }

    // Minimum one per nonempty cluster while the total allows it.
    if (target >= sizes.size()) {
        for (std::size_t i = 0; i < quotas.size(); ++i) {
            if (quotas[i] > 0 || sizes[i] == 0) continue;
            auto donor = std::max_element(quotas.begin(), quotas.end());
            if (*donor < 2) break;
            --*donor;
            quotas[i] = 1;
        }
    }

    for (std::size_t i = 0; i < quotas.size(); ++i) quotas[i] = std::min(quotas[i], sizes[i]);
    return quotas;
}

}  // namespace

double complexity(const TokenizedLog& log) {
    double value = saturating_self_pow(log.token_count) + static_cast<double>(log.char_length);
    if (!std::isfinite(value)) return std::numeric_limits<double>::max();
    return value;
}

double record_weight(const TokenizedLog& log, const std::vector<TokenizedLog>& corpus,
                     double smoothing_factor) {
    if (corpus.empty()) throw EmptyCorpus("weight requires a non-empty corpus");
    long double denom = 0.0L;
    for (const auto& entry : corpus) {
        denom += static_cast<long double>(complexity(entry)) + smoothing_factor;
    }
    long double numer = static_cast<long double>(complexity(log)) + smoothing_factor;
    return static_cast<double>(numer / denom);
}

Clustering cluster_values(const std::vector<double>& values, double epsilon,
                          std::size_t min_pts) {
    if (values.empty()) throw EmptyInput("cluster requires a non-empty input");
    const std::size_t n = values.size();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (values[a] != values[b]) return values[a] < values[b];
        return a < b;
    });

    // Sorted values make neighborhoods contiguous ranges.
    std::vector<double> sorted(n);
    for (std::size_t i = 0; i < n; ++i) sorted[i] = values[order[i]];

    // Edges located with the |a - b| <= epsilon predicate itself, so the
    // boundary behavior is exactly the pairwise-distance definition.
    auto range_of = [&](double center) {
        auto lo = std::partition_point(sorted.begin(), sorted.end(),
                                       [&](double v) { return center - v > epsilon; });
        auto hi = std::partition_point(lo, sorted.end(),
                                       [&](double v) { return v - center <= epsilon; });
        return std::pair<std::size_t, std::size_t>(
            static_cast<std::size_t>(lo - sorted.begin()),
            static_cast<std::size_t>(hi - sorted.begin()));
    };

    std::vector<bool> core(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        auto [lo, hi] = range_of(sorted[i]);
        core[i] = (hi - lo) >= min_pts;
    }

    // Core points chain into one cluster while consecutive gaps stay <= epsilon.
    std::vector<int> cluster_of(n, -1);
    int next_cluster = -1;
    double prev_core_value = 0.0;
    bool have_prev_core = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (!core[i]) continue;
        if (!have_prev_core || sorted[i] - prev_core_value > epsilon) ++next_cluster;
        cluster_of[i] = next_cluster;
        prev_core_value = sorted[i];
        have_prev_core = true;
    }

    // Border points join the nearest core point, ties toward the lower value.
    for (std::size_t i = 0; i < n; ++i) {
        if (core[i]) continue;
        auto [lo, hi] = range_of(sorted[i]);
        int best = -1;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = lo; j < hi; ++j) {
            if (!core[j]) continue;
            double dist = std::abs(sorted[i] - sorted[j]);
            if (dist < best_dist) {
                best_dist = dist;
                best = cluster_of[j];
            }
        }
        cluster_of[i] = best;
    }

    Clustering out;
    if (next_cluster >= 0) out.clusters.resize(static_cast<std::size_t>(next_cluster) + 1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t original = order[i];
        if (cluster_of[i] < 0) {
            out.noise.push_back(original);
        } else {
            out.clusters[static_cast<std::size_t>(cluster_of[i])].push_back(original);
        }
    }
    for (auto& members : out.clusters) std::sort(members.begin(), members.end());
    std::sort(out.noise.begin(), out.noise.end());
    std::sort(out.clusters.begin(), out.clusters.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

Clustering cluster(const std::vector<LogRecord>& records, const SamplerConfig& config) {
    if (records.empty()) throw EmptyInput("cluster requires a non-empty input");
    return cluster_values(complexities_of(records), config.epsilon, config.min_pts);
}

SampledSets sample(const std::vector<LogRecord>& records, const SamplerConfig& config) {
    if (records.empty()) throw EmptyInput("sample requires a non-empty input");

    std::size_t target = static_cast<std::size_t>(
        std::ceil(config.sample_ratio * static_cast<double>(records.size())));
    if (target < 2) {
        throw RatioTooSmall("sample target below 2; raise sample_ratio");
    }

    // The draw operates on distinct normalized contents so the two output
    // sets stay disjoint even on non-deduplicated input.
    std::vector<LogRecord> distinct = deduplicate(records);
    target = std::min(target, distinct.size());

    Clustering clustering = cluster(distinct, config);
    std::vector<std::vector<std::size_t>> groups = clustering.clusters;
    if (!clustering.noise.empty()) groups.push_back(clustering.noise);

    std::vector<double> values = complexities_of(distinct);
    std::vector<double> weights(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        weights[i] = values[i] + config.smoothing_factor;
    }

    std::vector<std::size_t> sizes;
    sizes.reserve(groups.size());
    for (const auto& g : groups) sizes.push_back(g.size());
    std::vector<std::size_t> quotas = cluster_quotas(sizes, target);

    std::mt19937_64 rng(config.seed);
    std::vector<std::size_t> drawn;
    drawn.reserve(target);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        auto picks = draw_without_replacement(groups[g], weights, quotas[g], rng);
        drawn.insert(drawn.end(), picks.begin(), picks.end());
    }

    // Alternating split by descending weight keeps the two sets alike in
    // complexity profile.
    std::sort(drawn.begin(), drawn.end(), [&](std::size_t a, std::size_t b) {
        if (weights[a] != weights[b]) return weights[a] > weights[b];
        return distinct[a].line_id < distinct[b].line_id;
    });

    SampledSets out;
    for (std::size_t i = 0; i < drawn.size(); ++i) {
        const LogRecord& rec = distinct[drawn[i]];
        if (i % 2 == 0) {
            out.meta_set.push_back(rec);
        } else {
            out.inference_set.push_back(rec);
        }
    }
    return out;
}

}  // namespace iclog
