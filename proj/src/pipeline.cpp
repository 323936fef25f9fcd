#include "iclog/pipeline.hpp"

#include <chrono>

#include "iclog/errors.hpp"

namespace iclog {

namespace {

class StageClock {
public:
    explicit StageClock(double* sink) : sink_(sink), start_(clock::now()) {}
    ~StageClock() {
        if (sink_) {
            *sink_ += std::chrono::duration<double>(clock::now() - start_).count();
        }
    }

private:
    using clock = std::chrono::steady_clock;
    double* sink_;
    clock::time_point start_;
};

}  // namespace

std::vector<ParseResult> parse_stream(const std::vector<LogRecord>& lines, TemplateCache& cache,
                                      const Bm25Index* index, LlmBackend& backend,
                                      const ParseOptions& options, StageTimings* timings,
                                      const ParseObserver& observer) {
    std::vector<ParseResult> results;
    results.reserve(lines.size());
    auto run_start = std::chrono::steady_clock::now();

    for (const LogRecord& line : lines) {
        TemplateCache::Lookup hit;
        {
            StageClock clock(timings ? &timings->cache_s : nullptr);
            hit = cache.lookup(line.content);
        }

        if (hit.outcome == TemplateCache::Outcome::LruHit) {
            results.push_back({line.line_id, line.content, *hit.tmpl, TemplateSource::Lru});
        } else if (hit.outcome == TemplateCache::Outcome::PatternHit) {
            results.push_back({line.line_id, line.content, *hit.tmpl, TemplateSource::Pattern});
        } else {
            std::vector<std::pair<std::string, std::string>> demos;
            if (index != nullptr && options.shots > 0) {
                auto scored = index->top_k(tokenize(line.content), options.shots,
                                           options.ascending_order);
                demos.reserve(scored.size());
                for (const auto& candidate : scored) {
                    demos.emplace_back(candidate.record.content, candidate.tmpl.text());
                }
            }
            PromptSpec prompt =
                build_prompt(std::move(demos), line.content, options.instruction);

            TemplateSource source = TemplateSource::Llm;
            std::string resolved_text;
            try {
                std::string response;
                {
                    StageClock clock(timings ? &timings->llm_s : nullptr);
                    response = backend.query(prompt);
                }
                resolved_text = extract_template(response).text();
            } catch (const AuthError&) {
                throw;  // misconfiguration, not a per-line condition
            } catch (const std::runtime_error&) {
                // Backend exhaustion or degenerate output: the raw log
                // stands in as an all-constant template.
                resolved_text = normalize(line.content);
                source = TemplateSource::Fallback;
            }

            Template resolved(std::move(resolved_text));
            {
                StageClock clock(timings ? &timings->cache_s : nullptr);
                cache.insert(line.content, resolved);
            }
            results.push_back({line.line_id, line.content, std::move(resolved), source});
        }

        if (observer) observer(results.back(), cache);
    }

    if (timings) {
        timings->total_s +=
            std::chrono::duration<double>(std::chrono::steady_clock::now() - run_start).count();
    }
    return results;
}

}  // namespace iclog
