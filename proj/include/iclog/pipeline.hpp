#pragma once

#include <functional>
#include <string>
#include <vector>

#include "iclog/cache.hpp"
#include "iclog/llm_client.hpp"
#include "iclog/selector.hpp"

namespace iclog {

struct ParseOptions {
    std::size_t shots = 5;
    bool ascending_order = true;  // most similar demonstration last
    std::string instruction = std::string(kDefaultInstruction);
};

// Called after every parsed line; used by stats printers and tests that
// check cache invariants per operation.
using ParseObserver = std::function<void(const ParseResult&, const TemplateCache&)>;

// Runs the parsing loop over the lines in order: cache lookup first; on a
// miss, retrieve top-k demonstrations, build the prompt, query the backend,
// extract the template, and update the cache. A backend failure or an
// unparseable response falls back to the raw log as an all-constant
// template. index may be null (zero-shot prompts).
std::vector<ParseResult> parse_stream(const std::vector<LogRecord>& lines, TemplateCache& cache,
                                      const Bm25Index* index, LlmBackend& backend,
                                      const ParseOptions& options = {},
                                      StageTimings* timings = nullptr,
                                      const ParseObserver& observer = {});

}  // namespace iclog
