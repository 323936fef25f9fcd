#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "iclog/selector.hpp"

namespace iclog {

struct TrainingExample {
    std::string prompt_text;
    std::string completion_text;
    std::size_t shot = 0;
    std::string task_id;
};

// Emits the progressive curriculum: for each shot level 0..max_shot,
// per_shot_count examples whose query and demonstrations are drawn from the
// labeled meta set, the query never among its own demonstrations. Output is
// ordered by ascending shot level and deterministic under the seed.
// Throws TooFewExamples when |meta_set| <= max_shot.
std::vector<TrainingExample> emit_training_examples(const std::vector<Candidate>& meta_set,
                                                    std::size_t max_shot,
                                                    std::size_t per_shot_count,
                                                    std::uint64_t seed);

// One JSON object per line: prompt, completion, shot, task_id.
void write_training_jsonl(const std::vector<TrainingExample>& examples, std::ostream& os);

}  // namespace iclog
