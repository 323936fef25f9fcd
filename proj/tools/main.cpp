#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <unordered_map>

#include <CLI11.hpp>
#include <json.hpp>

#include "iclog/config.hpp"
#include "iclog/csv.hpp"
#include "iclog/errors.hpp"
#include "iclog/evaluator.hpp"
#include "iclog/metatrain.hpp"
#include "iclog/pipeline.hpp"

namespace fs = std::filesystem;
using namespace iclog;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitEvalMismatch = 3;
constexpr int kExitBackend = 4;

struct CliOverrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> shots;
    std::optional<std::string> backend;
    std::optional<std::string> output;
};

RunConfig resolve_config(const CliOverrides& cli) {
    KeyValueConfig kv;
    if (!cli.config_path.empty()) kv = KeyValueConfig::parse_file(cli.config_path);
    RunConfig rc = load_run_config(kv);
    if (cli.seed) {
        rc.seed = *cli.seed;
        rc.sampler.seed = *cli.seed;
    }
    if (cli.shots) rc.shots = *cli.shots;
    if (cli.backend) {
        if (*cli.backend == "oracle") rc.backend.kind = BackendKind::Oracle;
        else if (*cli.backend == "http") rc.backend.kind = BackendKind::HttpChat;
        else throw ConfigError("--backend must be oracle or http");
    }
    if (cli.output) rc.output_dir = *cli.output;
    return rc;
}

std::ofstream open_output(const fs::path& path) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

void write_sampled_csv(const fs::path& path, const std::vector<LogRecord>& records) {
    auto out = open_output(path);
    write_csv_row(out, {"LineId", "Content"});
    for (const auto& rec : records) {
        write_csv_row(out, {std::to_string(rec.line_id), rec.content});
    }
}

std::vector<LogRecord> read_sampled_csv(const fs::path& path, const std::string& dataset) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open sampled set: " + path.string());
    CsvReader reader(in);
    auto header = reader.next_row();
    if (!header || header->size() < 2 || (*header)[0] != "LineId" || (*header)[1] != "Content") {
        throw IoError("sampled set lacks LineId,Content header: " + path.string());
    }
    std::vector<LogRecord> records;
    while (auto row = reader.next_row()) {
        if (row->size() < 2) continue;
        records.push_back({std::stoull((*row)[0]), (*row)[1], dataset});
    }
    return records;
}

std::unordered_map<std::size_t, std::string> truth_by_line(const std::vector<GroundTruthRow>& rows) {
    std::unordered_map<std::size_t, std::string> map;
    map.reserve(rows.size());
    for (const auto& row : rows) map[row.line_id] = row.template_text;
    return map;
}

std::unordered_map<std::string, std::string> truth_by_content(
    const std::vector<GroundTruthRow>& rows) {
    std::unordered_map<std::string, std::string> map;
    map.reserve(rows.size());
    for (const auto& row : rows) map.emplace(normalize(row.content), row.template_text);
    return map;
}

std::vector<GroundTruthRow> require_ground_truth(const RunConfig& rc) {
    if (!rc.dataset.ground_truth_path) {
        throw IoError("dataset.ground_truth is required for this command");
    }
    return load_ground_truth(*rc.dataset.ground_truth_path);
}

std::vector<Candidate> label_candidates(const std::vector<LogRecord>& records,
                                        const std::unordered_map<std::size_t, std::string>& truth,
                                        const fs::path& origin) {
    std::vector<Candidate> out;
    out.reserve(records.size());
    for (const auto& rec : records) {
        auto it = truth.find(rec.line_id);
        if (it == truth.end()) {
            throw IoError("no ground-truth template for line " + std::to_string(rec.line_id) +
                          " from " + origin.string());
        }
        out.push_back({rec, Template(it->second)});
    }
    return out;
}

int cmd_sample(const RunConfig& rc) {
    auto started = std::chrono::steady_clock::now();
    std::vector<LogRecord> records = load_dataset(rc.dataset);
    std::vector<LogRecord> deduped = deduplicate(records);
    SampledSets sets = sample(deduped, rc.sampler);
    double sample_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    write_sampled_csv(rc.output_dir / "meta_set.csv", sets.meta_set);
    write_sampled_csv(rc.output_dir / "inference_set.csv", sets.inference_set);

    nlohmann::json provenance = {
        {"dataset", rc.dataset.name},
        {"log_file", rc.dataset.log_file_path},
        {"seed", rc.sampler.seed},
        {"config",
         {{"epsilon", rc.sampler.epsilon},
          {"min_pts", rc.sampler.min_pts},
          {"sample_ratio", rc.sampler.sample_ratio},
          {"smoothing_factor", rc.sampler.smoothing_factor}}},
        {"input_lines", records.size()},
        {"deduped_lines", deduped.size()},
        {"meta_count", sets.meta_set.size()},
        {"inference_count", sets.inference_set.size()},
        {"sample_s", sample_s},
    };
    open_output(rc.output_dir / "sample_provenance.json") << provenance.dump(2) << '\n';

    std::cout << "sampled " << sets.meta_set.size() << " meta + " << sets.inference_set.size()
              << " inference logs from " << deduped.size() << " distinct lines ("
              << records.size() << " raw) in " << sample_s << "s\n";
    return kExitOk;
}

int cmd_emit_train(const RunConfig& rc, const std::string& meta_csv) {
    fs::path meta_path = meta_csv.empty() ? rc.output_dir / "meta_set.csv" : fs::path(meta_csv);
    std::vector<LogRecord> meta_records = read_sampled_csv(meta_path, rc.dataset.name);
    auto truth = truth_by_line(require_ground_truth(rc));
    std::vector<Candidate> meta_set = label_candidates(meta_records, truth, meta_path);

    std::size_t per_shot = rc.per_shot_count == 0 ? meta_set.size() : rc.per_shot_count;
    auto examples = emit_training_examples(meta_set, rc.max_shot, per_shot, rc.seed);

    auto out = open_output(rc.output_dir / "meta_train.jsonl");
    write_training_jsonl(examples, out);
    std::cout << "emitted " << examples.size() << " training examples across shot levels 0.."
              << rc.max_shot << '\n';
    return kExitOk;
}

int cmd_parse(const RunConfig& rc, const std::string& candidates_csv,
              const std::string& cache_in, const std::string& cache_out) {
    std::vector<LogRecord> records = load_dataset(rc.dataset);
    std::vector<GroundTruthRow> truth_rows;
    if (rc.dataset.ground_truth_path) truth_rows = load_ground_truth(*rc.dataset.ground_truth_path);

    // Candidate pool for demonstration retrieval; optional only without shots.
    std::unique_ptr<Bm25Index> index;
    if (rc.shots > 0) {
        fs::path pool_path =
            candidates_csv.empty() ? rc.output_dir / "inference_set.csv" : fs::path(candidates_csv);
        std::vector<LogRecord> pool = read_sampled_csv(pool_path, rc.dataset.name);
        auto by_line = truth_by_line(truth_rows);
        index = std::make_unique<Bm25Index>(label_candidates(pool, by_line, pool_path), rc.k1, rc.b);
    }

    std::unordered_map<std::string, std::string> answers;
    if (rc.backend.kind == BackendKind::Oracle) {
        if (truth_rows.empty()) {
            throw IoError("oracle backend requires dataset.ground_truth");
        }
        answers = truth_by_content(truth_rows);
    }
    std::unique_ptr<LlmBackend> backend = make_backend(rc.backend, std::move(answers));

    TemplateCache cache = [&] {
        if (cache_in.empty()) return TemplateCache(rc.cache);
        std::ifstream in(cache_in, std::ios::binary);
        if (!in) throw IoError("cannot open cache snapshot: " + cache_in);
        return TemplateCache::from_json(nlohmann::json::parse(in));
    }();

    ParseOptions options{rc.shots, rc.ascending_order, rc.instruction};
    StageTimings timings;
    std::vector<ParseResult> results =
        parse_stream(records, cache, index.get(), *backend, options, &timings);

    auto out = open_output(rc.output_dir / "parsed.csv");
    write_csv_row(out, {"LineId", "Content", "EventTemplate", "Source"});
    std::size_t lru_lines = 0, pattern_lines = 0, llm_lines = 0, fallbacks = 0;
    for (const auto& result : results) {
        switch (result.source) {
            case TemplateSource::Lru: ++lru_lines; break;
            case TemplateSource::Pattern: ++pattern_lines; break;
            case TemplateSource::Llm: ++llm_lines; break;
            case TemplateSource::Fallback: ++fallbacks; break;
        }
        write_csv_row(out, {std::to_string(result.line_id), result.content, result.tmpl.text(),
                            std::string(to_string(result.source))});
    }

    const CacheStats& stats = cache.stats();
    nlohmann::json meta = {
        {"timings",
         {{"sample_s", timings.sample_s},
          {"cache_s", timings.cache_s},
          {"llm_s", timings.llm_s},
          {"total_s", timings.total_s}}},
        {"cache_stats",
         {{"lru_hits", stats.lru_hits},
          {"pattern_hits", stats.pattern_hits},
          {"misses", stats.misses},
          {"evictions", stats.evictions}}},
        {"fallback_lines", fallbacks},
        {"total_lines", results.size()},
    };
    open_output(rc.output_dir / "parse_meta.json") << meta.dump(2) << '\n';

    if (!cache_out.empty()) {
        open_output(cache_out) << cache.to_json().dump(2) << '\n';
    }

    double hits = static_cast<double>(lru_lines + pattern_lines);
    double rate = results.empty() ? 0.0 : hits / static_cast<double>(results.size());
    std::cout << "parsed " << results.size() << " lines: " << lru_lines << " lru, "
              << pattern_lines << " pattern, " << llm_lines << " llm, " << fallbacks
              << " fallback; hit rate " << rate << "; cache " << timings.cache_s << "s, llm "
              << timings.llm_s << "s, total " << timings.total_s << "s\n";
    return fallbacks == 0 ? kExitOk : kExitBackend;
}

int cmd_eval(const RunConfig& rc, const std::string& parsed_csv, const std::string& truth_csv) {
    fs::path parsed_path = parsed_csv.empty() ? rc.output_dir / "parsed.csv" : fs::path(parsed_csv);
    std::ifstream in(parsed_path, std::ios::binary);
    if (!in) throw IoError("cannot open parsed output: " + parsed_path.string());

    CsvReader reader(in);
    auto header = reader.next_row();
    if (!header || header->size() < 4) {
        throw IoError("parsed output lacks LineId,Content,EventTemplate,Source header");
    }
    std::vector<ParseResult> results;
    while (auto row = reader.next_row()) {
        if (row->size() < 4) continue;
        auto source = template_source_from((*row)[3]);
        results.push_back({std::stoull((*row)[0]), (*row)[1], Template((*row)[2]),
                           source.value_or(TemplateSource::Llm)});
    }

    std::string truth_path = truth_csv;
    if (truth_path.empty()) {
        if (!rc.dataset.ground_truth_path) throw IoError("no ground truth path given");
        truth_path = *rc.dataset.ground_truth_path;
    }
    std::vector<GroundTruthRow> truth_rows = load_ground_truth(truth_path);
    if (truth_rows.size() != results.size()) {
        throw LengthMismatch("parsed output and ground truth differ in line count: " +
                             std::to_string(results.size()) + " vs " +
                             std::to_string(truth_rows.size()));
    }
    auto by_line = truth_by_line(truth_rows);
    std::vector<Template> truth;
    truth.reserve(results.size());
    for (const auto& result : results) {
        auto it = by_line.find(result.line_id);
        if (it == by_line.end()) {
            throw LengthMismatch("ground truth has no line " + std::to_string(result.line_id));
        }
        truth.emplace_back(it->second);
    }

    StageTimings timings;
    CacheStats stats;
    if (std::ifstream prov_in(rc.output_dir / "sample_provenance.json", std::ios::binary);
        prov_in) {
        nlohmann::json prov = nlohmann::json::parse(prov_in, nullptr, false);
        if (!prov.is_discarded()) timings.sample_s = prov.value("sample_s", 0.0);
    }
    fs::path meta_path = rc.output_dir / "parse_meta.json";
    if (std::ifstream meta_in(meta_path, std::ios::binary); meta_in) {
        nlohmann::json meta = nlohmann::json::parse(meta_in, nullptr, false);
        if (!meta.is_discarded()) {
            timings.cache_s = meta["timings"].value("cache_s", 0.0);
            timings.llm_s = meta["timings"].value("llm_s", 0.0);
            timings.total_s = meta["timings"].value("total_s", 0.0);
            stats.lru_hits = meta["cache_stats"].value("lru_hits", std::uint64_t{0});
            stats.pattern_hits = meta["cache_stats"].value("pattern_hits", std::uint64_t{0});
            stats.misses = meta["cache_stats"].value("misses", std::uint64_t{0});
            stats.evictions = meta["cache_stats"].value("evictions", std::uint64_t{0});
        }
    }

    EvalReport report = evaluate(results, truth, timings, stats);
    open_output(rc.output_dir / "eval_report.json") << report_to_json(report).dump(2) << '\n';
    open_output(rc.output_dir / "eval_report.txt") << report_to_table(report);
    auto mismatch_out = open_output(rc.output_dir / "eval_mismatches.csv");
    write_mismatch_csv(results, truth, mismatch_out);

    std::cout << report_to_table(report);
    return kExitOk;
}

int cmd_cache_stats(const RunConfig& rc, const std::string& cache_path) {
    fs::path path = cache_path.empty() ? rc.output_dir / "cache_snapshot.json" : fs::path(cache_path);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open cache snapshot: " + path.string());
    TemplateCache cache = TemplateCache::from_json(nlohmann::json::parse(in));
    const CacheStats& stats = cache.stats();
    std::cout << "lru entries      " << cache.lru_size() << " / " << cache.config().lru_capacity
              << "\npatterns         " << cache.pattern_count() << "\nlru hits         "
              << stats.lru_hits << "\npattern hits     " << stats.pattern_hits
              << "\nmisses           " << stats.misses << "\nevictions        "
              << stats.evictions << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"log template parser with a two-tier cache and ICL retrieval"};
    app.require_subcommand(1);

    CliOverrides cli;
    app.add_option("--config", cli.config_path, "key-value config file");
    app.add_option("--seed", cli.seed, "override the run seed");
    app.add_option("--shots", cli.shots, "demonstrations per prompt");
    app.add_option("--backend", cli.backend, "oracle or http")
        ->check(CLI::IsMember({"oracle", "http"}));
    app.add_option("--output", cli.output, "output directory");

    auto* sample_cmd = app.add_subcommand("sample", "draw meta and inference candidate sets");

    std::string meta_csv;
    auto* emit_cmd = app.add_subcommand("emit-train", "emit progressive training data");
    emit_cmd->add_option("--meta", meta_csv, "meta set CSV (default <output>/meta_set.csv)");

    std::string candidates_csv, cache_in, cache_out;
    auto* parse_cmd = app.add_subcommand("parse", "parse the dataset into templates");
    parse_cmd->add_option("--candidates", candidates_csv,
                          "labeled candidate CSV (default <output>/inference_set.csv)");
    parse_cmd->add_option("--cache-in", cache_in, "warm-start cache snapshot");
    parse_cmd->add_option("--cache-out", cache_out, "write cache snapshot here");

    std::string parsed_csv, truth_csv;
    auto* eval_cmd = app.add_subcommand("eval", "score parsed output against ground truth");
    eval_cmd->add_option("--parsed", parsed_csv, "parsed CSV (default <output>/parsed.csv)");
    eval_cmd->add_option("--truth", truth_csv, "ground truth CSV (default from config)");

    std::string cache_path;
    auto* stats_cmd = app.add_subcommand("cache-stats", "print cache snapshot statistics");
    stats_cmd->add_option("--cache", cache_path, "snapshot path (default <output>/cache_snapshot.json)");

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig rc = resolve_config(cli);
        if (sample_cmd->parsed()) return cmd_sample(rc);
        if (emit_cmd->parsed()) return cmd_emit_train(rc, meta_csv);
        if (parse_cmd->parsed()) return cmd_parse(rc, candidates_csv, cache_in, cache_out);
        if (eval_cmd->parsed()) return cmd_eval(rc, parsed_csv, truth_csv);
        if (stats_cmd->parsed()) return cmd_cache_stats(rc, cache_path);
    } catch (const LengthMismatch& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitEvalMismatch;
    } catch (const NetworkError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBackend;
    } catch (const AuthError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBackend;
    } catch (const OracleMiss& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBackend;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitOk;
}
