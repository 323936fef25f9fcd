#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "iclog/cache.hpp"
#include "iclog/core.hpp"

namespace iclog {

struct EvalReport {
    double pa = 0.0;
    double pta = 0.0;
    double rta = 0.0;
    std::size_t n_correct_templates = 0;
    std::size_t n_identified = 0;
    std::size_t n_ground_truth = 0;
    std::size_t total_lines = 0;
    StageTimings timings;
    CacheStats cache_stats;
};

// Fraction of lines whose produced template equals the ground truth after
// normalizing both. Throws LengthMismatch on misaligned inputs.
double parsing_accuracy(const std::vector<ParseResult>& results,
                        const std::vector<Template>& truth);

struct TemplateAccuracy {
    double pta = 0.0;
    double rta = 0.0;
    std::size_t n_correct = 0;
    std::size_t n_identified = 0;
    std::size_t n_ground_truth = 0;
};

// A produced template counts as correctly identified when its normalized
// text equals a ground-truth template's AND it covers exactly that
// template's line set. Throws LengthMismatch.
TemplateAccuracy template_accuracy(const std::vector<ParseResult>& results,
                                   const std::vector<Template>& truth);

EvalReport evaluate(const std::vector<ParseResult>& results, const std::vector<Template>& truth,
                    const StageTimings& timings = {}, const CacheStats& cache_stats = {});

nlohmann::json report_to_json(const EvalReport& report);
std::string report_to_table(const EvalReport& report);

// CSV of mismatching lines: line_id, content, produced, truth.
void write_mismatch_csv(const std::vector<ParseResult>& results,
                        const std::vector<Template>& truth, std::ostream& os);

}  // namespace iclog
