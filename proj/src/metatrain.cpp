#include "iclog/metatrain.hpp"

#include <limits>
#include <ostream>
#include <random>

#include <json.hpp>

#include "iclog/errors.hpp"
#include "iclog/llm_client.hpp"

namespace iclog {

std::vector<TrainingExample> emit_training_examples(const std::vector<Candidate>& meta_set,
                                                    std::size_t max_shot,
                                                    std::size_t per_shot_count,
                                                    std::uint64_t seed) {
    if (meta_set.size() <= max_shot) {
        throw TooFewExamples("meta set must exceed the max shot count");
    }

    std::mt19937_64 rng(seed);
    auto pick = [&rng](std::size_t bound) {
        // Rejection sampling keeps the draw unbiased and reproducible.
        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t value;
        do {
            value = rng();
        } while (value >= limit);
        return static_cast<std::size_t>(value % bound);
    };

    std::vector<TrainingExample> out;
    out.reserve((max_shot + 1) * per_shot_count);
    for (std::size_t shot = 0; shot <= max_shot; ++shot) {
        for (std::size_t n = 0; n < per_shot_count; ++n) {
            std::size_t query_idx = pick(meta_set.size());

            // Demonstrations: distinct members, query excluded.
            std::vector<std::size_t> pool;
            pool.reserve(meta_set.size() - 1);
            for (std::size_t i = 0; i < meta_set.size(); ++i) {
                if (i != query_idx) pool.push_back(i);
            }
            std::vector<std::pair<std::string, std::string>> demos;
            demos.reserve(shot);
            for (std::size_t d = 0; d < shot; ++d) {
                std::size_t j = pick(pool.size());
                const Candidate& demo = meta_set[pool[j]];
                demos.emplace_back(demo.record.content, demo.tmpl.text());
                pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
            }

            const Candidate& query = meta_set[query_idx];
            PromptSpec prompt = build_prompt(std::move(demos), query.record.content);
            out.push_back({prompt.render(), query.tmpl.text(), shot, query.record.dataset});
        }
    }
    return out;
}

void write_training_jsonl(const std::vector<TrainingExample>& examples, std::ostream& os) {
    for (const auto& example : examples) {
        nlohmann::json line = {{"prompt", example.prompt_text},
                               {"completion", example.completion_text},
                               {"shot", example.shot},
                               {"task_id", example.task_id}};
        os << line.dump() << '\n';
    }
}

}  // namespace iclog
