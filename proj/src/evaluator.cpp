#include "iclog/evaluator.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "iclog/csv.hpp"
#include "iclog/errors.hpp"

namespace iclog {

namespace {

void check_aligned(const std::vector<ParseResult>& results, const std::vector<Template>& truth) {
    if (results.size() != truth.size()) {
        throw LengthMismatch("results and ground truth differ in length: " +
                             std::to_string(results.size()) + " vs " +
                             std::to_string(truth.size()));
    }
}

}  // namespace

double parsing_accuracy(const std::vector<ParseResult>& results,
                        const std::vector<Template>& truth) {
    check_aligned(results, truth);
    if (results.empty()) return 1.0;

    std::size_t correct = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (normalize(results[i].tmpl.text()) == normalize(truth[i].text())) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(results.size());
}

TemplateAccuracy template_accuracy(const std::vector<ParseResult>& results,
                                   const std::vector<Template>& truth) {
    check_aligned(results, truth);

    std::map<std::string, std::set<std::size_t>> produced_lines;
    std::map<std::string, std::set<std::size_t>> truth_lines;
    for (std::size_t i = 0; i < results.size(); ++i) {
        produced_lines[normalize(results[i].tmpl.text())].insert(results[i].line_id);
        truth_lines[normalize(truth[i].text())].insert(results[i].line_id);
    }

    std::size_t correct = 0;
    for (const auto& [text, lines] : produced_lines) {
        auto it = truth_lines.find(text);
        if (it != truth_lines.end() && it->second == lines) ++correct;
    }

    TemplateAccuracy out;
    out.n_correct = correct;
    out.n_identified = produced_lines.size();
    out.n_ground_truth = truth_lines.size();
    out.pta = out.n_identified ? static_cast<double>(correct) / static_cast<double>(out.n_identified) : 0.0;
    out.rta = out.n_ground_truth ? static_cast<double>(correct) / static_cast<double>(out.n_ground_truth) : 0.0;
    return out;
}

EvalReport evaluate(const std::vector<ParseResult>& results, const std::vector<Template>& truth,
                    const StageTimings& timings, const CacheStats& cache_stats) {
    EvalReport report;
    report.pa = parsing_accuracy(results, truth);
    TemplateAccuracy ta = template_accuracy(results, truth);
    report.pta = ta.pta;
    report.rta = ta.rta;
    report.n_correct_templates = ta.n_correct;
    report.n_identified = ta.n_identified;
    report.n_ground_truth = ta.n_ground_truth;
    report.total_lines = results.size();
    report.timings = timings;
    report.cache_stats = cache_stats;
    return report;
}

nlohmann::json report_to_json(const EvalReport& report) {
    return {
        {"pa", report.pa},
        {"pta", report.pta},
        {"rta", report.rta},
        {"n_correct_templates", report.n_correct_templates},
        {"n_identified", report.n_identified},
        {"n_ground_truth", report.n_ground_truth},
        {"total_lines", report.total_lines},
        {"timings",
         {{"sample_s", report.timings.sample_s},
          {"cache_s", report.timings.cache_s},
          {"llm_s", report.timings.llm_s},
          {"total_s", report.timings.total_s}}},
        {"cache_stats",
         {{"lru_hits", report.cache_stats.lru_hits},
          {"pattern_hits", report.cache_stats.pattern_hits},
          {"misses", report.cache_stats.misses},
          {"evictions", report.cache_stats.evictions}}},
    };
}

std::string report_to_table(const EvalReport& report) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(4);
    os << "metric               value\n"
       << "-------------------  ----------\n"
       << "PA                   " << report.pa << '\n'
       << "PTA                  " << report.pta << '\n'
       << "RTA                  " << report.rta << '\n'
       << "correct templates    " << report.n_correct_templates << '\n'
       << "identified           " << report.n_identified << '\n'
       << "ground truth         " << report.n_ground_truth << '\n'
       << "total lines          " << report.total_lines << '\n'
       << "sample time (s)      " << report.timings.sample_s << '\n'
       << "cache time (s)       " << report.timings.cache_s << '\n'
       << "llm time (s)         " << report.timings.llm_s << '\n'
       << "total time (s)       " << report.timings.total_s << '\n'
       << "lru hits             " << report.cache_stats.lru_hits << '\n'
       << "pattern hits         " << report.cache_stats.pattern_hits << '\n'
       << "misses               " << report.cache_stats.misses << '\n'
       << "evictions            " << report.cache_stats.evictions << '\n';
    return os.str();
}

void write_mismatch_csv(const std::vector<ParseResult>& results,
                        const std::vector<Template>& truth, std::ostream& os) {
    check_aligned(results, truth);
    write_csv_row(os, {"LineId", "Content", "Produced", "Truth"});
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (normalize(results[i].tmpl.text()) == normalize(truth[i].text())) continue;
        write_csv_row(os, {std::to_string(results[i].line_id), results[i].content,
                           results[i].tmpl.text(), truth[i].text()});
    }
}

}  // namespace iclog
