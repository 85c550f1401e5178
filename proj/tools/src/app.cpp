// Copyright 2026 The docclust Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "docclust/cli/app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "CLI11.hpp"
#include "docclust/bkc.hpp"
#include "docclust/buckshot.hpp"
#include "docclust/corpus.hpp"
#include "docclust/errors.hpp"
#include "docclust/kmeans.hpp"
#include "docclust/minimr/engine.hpp"
#include "docclust/synthetic.hpp"
#include "docclust/vector_io.hpp"

namespace docclust::cli {

namespace fs = std::filesystem;

void RunConfig::validate() const {
  if (algo != "kmeans" && algo != "bkc" && algo != "buckshot") {
    throw std::invalid_argument("unknown algorithm '" + algo + "' (expected kmeans, bkc or buckshot)");
  }
  if (k < 1) throw std::invalid_argument("--k must be >= 1");
  if (workers < 1) throw std::invalid_argument("--workers must be >= 1");
  if (maxIters < 1) throw std::invalid_argument("--max-iters must be >= 1");
  if (assignIters < 1 || assignIters > 3) throw std::invalid_argument("--assign-iters must be 1, 2 or 3");
  if (!std::isfinite(eps)) throw std::invalid_argument("--eps must be finite");
  if (format != "json" && format != "csv") throw std::invalid_argument("--format must be csv or json");
  if (bigK != 0 && bigK < k) throw std::invalid_argument("--big-k must be >= --k");
}

Json toJson(const RunConfig& c) {
  return Json{{"command", c.command}, {"algo", c.algo},         {"k", c.k},
              {"bigK", c.bigK},       {"partitions", c.partitions},
              {"assignIters", c.assignIters},                   {"workers", c.workers},
              {"seed", c.seed},       {"eps", c.eps},           {"maxIters", c.maxIters},
              {"minDf", c.minDf},     {"input", c.input},       {"output", c.output},
              {"labels", c.labels},   {"format", c.format}};
}

RunConfig runConfigFromJson(const Json& json) {
  const Json& j = json.contains("config") ? json.at("config") : json;
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  RunConfig c;
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  get("command", c.command);
  get("algo", c.algo);
  get("k", c.k);
  get("bigK", c.bigK);
  get("partitions", c.partitions);
  get("assignIters", c.assignIters);
  get("workers", c.workers);
  get("seed", c.seed);
  get("eps", c.eps);
  get("maxIters", c.maxIters);
  get("minDf", c.minDf);
  get("input", c.input);
  get("output", c.output);
  get("labels", c.labels);
  get("format", c.format);
  return c;
}

std::size_t defaultWorkers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::size_t resolveBigK(const RunConfig& config, std::size_t n) {
  if (config.bigK != 0) return config.bigK;
  return std::max(config.k, std::min(n, 5 * config.k));
}

ClusteringResult runAlgorithm(const RunConfig& config, std::span<const SparseVector> vectors) {
  config.validate();
  minimr::Engine engine(config.workers);
  ExecutionConfig exec;
  exec.workers = config.workers;
  if (config.algo == "kmeans") {
    kmeans::KMeansConfig kc;
    kc.k = config.k;
    kc.maxIterations = config.maxIters;
    kc.convergenceEps = config.eps;
    kc.seed = config.seed;
    return kmeans::runKMeans(engine, vectors, kc, exec);
  }
  if (config.algo == "bkc") {
    bkc::BkcConfig bc;
    bc.k = config.k;
    bc.bigK = resolveBigK(config, vectors.size());
    bc.seed = config.seed;
    return bkc::runBkc(engine, vectors, bc, exec);
  }
  buckshot::BuckshotConfig sc;
  sc.k = config.k;
  sc.assignmentIterations = config.assignIters;
  sc.partitions = config.partitions;
  sc.seed = config.seed;
  return buckshot::runBuckshot(engine, vectors, sc, exec);
}

namespace {

Json statsJson(const minimr::JobStats& s) {
  return Json{{"name", s.name},         {"inputRecords", s.inputRecords},
              {"mapTasks", s.mapTasks}, {"reduceTasks", s.reduceTasks},
              {"emitted", s.emitted},   {"shuffled", s.shuffled},
              {"groups", s.groups},     {"mapMs", s.mapMs},
              {"shuffleMs", s.shuffleMs}, {"reduceMs", s.reduceMs},
              {"totalMs", s.totalMs}};
}

}  // namespace

Json clusterReport(const RunConfig& config, const ClusteringResult& result,
                   std::span<const SparseVector> vectors, std::size_t numDims) {
  RunConfig resolved = config;
  const std::size_t n = vectors.size();
  if (config.algo == "bkc") resolved.bigK = resolveBigK(config, n);
  if (config.algo == "buckshot") resolved.partitions = static_cast<std::size_t>(result.info.at("partitions"));

  Json cfg = toJson(resolved);
  if (config.algo == "buckshot") cfg["sampleSize"] = buckshot::sampleSize(config.k, n);

  std::vector<std::size_t> sizes(result.centroids.size(), 0);
  for (auto l : result.labels) ++sizes[l];

  Json phases = Json::array();
  for (const auto& p : result.phases) phases.push_back(Json{{"name", p.name}, {"ms", p.ms}});
  Json jobs = Json::array();
  for (const auto& s : result.jobs) jobs.push_back(statsJson(s));
  Json info = Json::object();
  for (const auto& [key, value] : result.info) info[key] = value;

  Json body{{"algorithm", result.algorithm},
            {"n", n},
            {"dims", numDims},
            {"k", result.centroids.size()},
            {"rss", result.rss},
            {"iterations", result.iterations},
            {"objectiveHistory", result.objectiveHistory},
            {"clusterSizes", sizes},
            {"wallMs", result.wallMs},
            {"workers", result.workers},
            {"phases", phases},
            {"jobs", jobs},
            {"info", info}};
  return Json{{"config", cfg}, {"result", body}};
}

// ---- bench ---------------------------------------------------------------

std::vector<BenchRow> runBench(const BenchMatrix& matrix, std::span<const SparseVector> vectors) {
  std::vector<BenchRow> rows;
  for (const auto& algo : matrix.algos) {
    for (auto k : matrix.ks) {
      for (auto w : matrix.workers) {
        for (auto seed : matrix.seeds) {
          RunConfig c = matrix.base;
          c.algo = algo;
          c.k = k;
          c.workers = w;
          c.seed = seed;
          const auto r = runAlgorithm(c, vectors);
          rows.push_back(BenchRow{algo, vectors.size(), k, w, seed, r.rss, r.wallMs, r.iterations});
        }
      }
    }
  }
  return rows;
}

std::string benchCsv(std::span<const BenchRow> rows) {
  std::ostringstream out;
  out << kBenchCsvHeader << '\n';
  char buf[64];
  for (const auto& r : rows) {
    out << r.algo << ',' << r.k << ',' << r.workers << ',' << r.seed << ',';
    std::snprintf(buf, sizeof buf, "%.6f", r.rss);
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.3f", r.wallMs);
    out << buf << ',' << r.iters << '\n';
  }
  return out.str();
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

struct Cell {
  double rss = 0.0;
  double wallMs = 0.0;
  double iters = 0.0;
  std::size_t runs = 0;
};

}  // namespace

Json benchJson(const BenchMatrix& matrix, std::span<const BenchRow> rows) {
  using Key = std::tuple<std::string, std::size_t, std::size_t>;  // algo, k, workers
  std::vector<Key> order;
  std::map<Key, std::vector<const BenchRow*>> byCell;
  for (const auto& r : rows) {
    Key key{r.algo, r.k, r.workers};
    if (!byCell.count(key)) order.push_back(key);
    byCell[key].push_back(&r);
  }
  std::map<Key, Cell> cells;
  for (const auto& [key, members] : byCell) {
    std::vector<double> rss, wall, iters;
    for (const auto* r : members) {
      rss.push_back(r->rss);
      wall.push_back(r->wallMs);
      iters.push_back(static_cast<double>(r->iters));
    }
    cells[key] = Cell{median(rss), median(wall), median(iters), members.size()};
  }

  Json warnings = Json::array();
  const bool hasBaseline =
      std::find(matrix.algos.begin(), matrix.algos.end(), "kmeans") != matrix.algos.end();
  if (!hasBaseline) warnings.push_back("no kmeans baseline in the matrix; rssLossPct and timeImprovementPct omitted");

  Json out = Json::array();
  for (const auto& key : order) {
    const auto& [algo, k, w] = key;
    const Cell& c = cells.at(key);
    Json j{{"algo", algo}, {"n", rows.empty() ? 0 : rows.front().n},
           {"k", k},       {"workers", w},
           {"runs", c.runs}, {"rss", c.rss},
           {"wall_ms", c.wallMs}, {"iters", c.iters}};
    if (algo != "kmeans") {
      const auto base = cells.find(Key{"kmeans", k, w});
      if (base != cells.end()) {
        j["rssLossPct"] = 100.0 * (c.rss - base->second.rss) / base->second.rss;
        j["timeImprovementPct"] = 100.0 * (base->second.wallMs - c.wallMs) / base->second.wallMs;
      }
    }
    if (w != 1) {
      const auto one = cells.find(Key{algo, k, 1});
      if (one != cells.end()) j["speedup"] = one->second.wallMs / c.wallMs;
    }
    out.push_back(std::move(j));
  }

  Json rowsJson = Json::array();
  for (const auto& r : rows) {
    rowsJson.push_back(Json{{"algo", r.algo}, {"n", r.n}, {"k", r.k}, {"workers", r.workers},
                            {"seed", r.seed}, {"rss", r.rss}, {"wall_ms", r.wallMs},
                            {"iters", r.iters}});
  }
  return Json{{"config", toJson(matrix.base)},
              {"matrix", Json{{"algos", matrix.algos}, {"k", matrix.ks},
                              {"workers", matrix.workers}, {"seeds", matrix.seeds}}},
              {"rows", rowsJson},
              {"cells", out},
              {"warnings", warnings}};
}

// ---- commands ------------------------------------------------------------

namespace {

void writeText(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw DataError("cannot write '" + path.string() + "'");
}

Json readJsonFile(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DataError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

std::string csvRow(const RunConfig& c, const ClusteringResult& r) {
  const BenchRow row{c.algo, r.labels.size(), c.k, c.workers, c.seed, r.rss, r.wallMs, r.iterations};
  return benchCsv(std::span<const BenchRow>(&row, 1));
}

int cmdVectorize(const RunConfig& c, const std::string& vocabPath, std::ostream& out,
                 std::ostream& err) {
  if (c.input.empty() || c.output.empty()) throw std::invalid_argument("vectorize needs --input and --out");
  if (c.minDf < 1) throw std::invalid_argument("--min-df must be >= 1");
  auto ingested = ingestDirectory(c.input);
  for (const auto& w : ingested.warnings) err << "warning: " << w << '\n';
  const auto corpus = buildVectors(ingested.documents, c.minDf);
  writeVectors(c.output, corpus.vectors, corpus.vocabulary.size());
  const std::string vocab = vocabPath.empty() ? c.output + ".vocab" : vocabPath;
  writeVocabulary(vocab, corpus.vocabulary);
  out << Json{{"config", toJson(c)},
              {"documents", corpus.vectors.size()},
              {"skipped", ingested.skipped},
              {"vocabulary", corpus.vocabulary.size()},
              {"zeroVectors", corpus.zeroVectors},
              {"vectors", c.output},
              {"vocab", vocab}}
             .dump(2)
      << '\n';
  return kExitOk;
}

int cmdCluster(RunConfig c, std::ostream& out) {
  if (c.input.empty()) throw std::invalid_argument("cluster needs --input");
  c.validate();
  const auto file = readVectors(c.input);
  if (c.labels.empty() && !c.output.empty()) c.labels = c.output + ".labels.tsv";
  const auto result = runAlgorithm(c, file.vectors);

  if (!c.labels.empty()) {
    std::ostringstream labels;
    for (std::size_t i = 0; i < result.labels.size(); ++i) {
      labels << file.vectors[i].docId << '\t' << result.labels[i] << '\n';
    }
    writeText(c.labels, labels.str());
  }
  const std::string text = c.format == "csv" ? csvRow(c, result)
                                             : clusterReport(c, result, file.vectors, file.numDims).dump(2) + "\n";
  if (c.output.empty()) {
    out << text;
  } else {
    writeText(c.output, text);
    out << "rss " << result.rss << " iterations " << result.iterations << " wall_ms " << result.wallMs
        << '\n';
  }
  return kExitOk;
}

int cmdBench(const BenchMatrix& matrix, std::ostream& out, std::ostream& err) {
  const RunConfig& c = matrix.base;
  if (c.input.empty()) throw std::invalid_argument("bench needs --input");
  if (matrix.algos.empty() || matrix.ks.empty() || matrix.workers.empty() || matrix.seeds.empty()) {
    throw std::invalid_argument("bench matrix must not be empty");
  }
  for (const auto& a : matrix.algos) {
    RunConfig probe = c;
    probe.algo = a;
    probe.validate();
  }
  const auto file = readVectors(c.input);
  const auto rows = runBench(matrix, file.vectors);
  const auto json = benchJson(matrix, rows);
  for (const auto& w : json.at("warnings")) err << "warning: " << w.get<std::string>() << '\n';
  const std::string csv = benchCsv(rows);
  if (!c.output.empty()) {
    writeText(c.output + ".csv", csv);
    writeText(c.output + ".json", json.dump(2) + "\n");
  }
  out << (c.format == "csv" ? csv : json.dump(2) + "\n");
  return kExitOk;
}

int cmdScale(const RunConfig& c, std::size_t factor, std::ostream& out) {
  if (c.input.empty() || c.output.empty()) throw std::invalid_argument("scale needs --input and --out");
  const auto file = readVectors(c.input);
  const auto scaled = scaleCorpus(file.vectors, factor, c.seed);
  writeVectors(c.output, scaled, file.numDims);
  out << Json{{"config", toJson(c)}, {"factor", factor}, {"documents", scaled.size()}}.dump(2) << '\n';
  return kExitOk;
}

int cmdSynth(const RunConfig& c, const synthetic::NewsgroupsConfig& sc, std::ostream& out) {
  if (c.output.empty()) throw std::invalid_argument("synth needs --out");
  const auto postings = synthetic::generateNewsgroups(sc);
  synthetic::writePostings(c.output, postings);
  out << Json{{"documents", postings.size()}, {"groups", sc.groups}, {"seed", sc.seed},
              {"root", c.output}}
             .dump(2)
      << '\n';
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Document clustering: K-Means, BKC and Buckshot on a local map/reduce engine"};
  app.require_subcommand(1);

  RunConfig flags;
  flags.workers = defaultWorkers();
  std::string vocabPath;
  std::string replayPath;
  std::size_t factor = 1;
  synthetic::NewsgroupsConfig synth;
  BenchMatrix matrix;
  std::vector<std::size_t> benchWorkers;
  std::vector<std::size_t> benchKs;

  auto* vectorize = app.add_subcommand("vectorize", "Tokenize a corpus directory into tf-idf vectors");
  vectorize->add_option("--input", flags.input, "Corpus root directory")->required();
  vectorize->add_option("--out", flags.output, "Vector file to write")->required();
  vectorize->add_option("--vocab", vocabPath, "Vocabulary file (default <out>.vocab)");
  vectorize->add_option("--min-df", flags.minDf, "Minimum document frequency")->capture_default_str();

  // Options shared by cluster and bench, remembered so a replayed config can be overridden.
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> overrides;
  auto algoOptions = [&](CLI::App* cmd, bool single) {
    if (single) {
      overrides.emplace_back(cmd->add_option("--algo", flags.algo, "kmeans, bkc or buckshot"),
                             [&](RunConfig& c) { c.algo = flags.algo; });
      overrides.emplace_back(cmd->add_option("--k", flags.k, "Number of clusters"),
                             [&](RunConfig& c) { c.k = flags.k; });
      overrides.emplace_back(cmd->add_option("--workers", flags.workers, "Worker threads (default: cores)"),
                             [&](RunConfig& c) { c.workers = flags.workers; });
      overrides.emplace_back(cmd->add_option("--seed", flags.seed, "Random seed")->capture_default_str(),
                             [&](RunConfig& c) { c.seed = flags.seed; });
    }
    overrides.emplace_back(cmd->add_option("--input", flags.input, "Vector file"),
                           [&](RunConfig& c) { c.input = flags.input; });
    overrides.emplace_back(cmd->add_option("--big-k", flags.bigK, "BKC micro-clusters (default 5k)"),
                           [&](RunConfig& c) { c.bigK = flags.bigK; });
    overrides.emplace_back(cmd->add_option("--partitions", flags.partitions, "Buckshot HAC partitions (0: auto)"),
                           [&](RunConfig& c) { c.partitions = flags.partitions; });
    overrides.emplace_back(cmd->add_option("--assign-iters", flags.assignIters, "Buckshot assignment rounds")
                               ->capture_default_str(),
                           [&](RunConfig& c) { c.assignIters = flags.assignIters; });
    overrides.emplace_back(cmd->add_option("--eps", flags.eps, "K-Means relative-gain threshold")
                               ->capture_default_str(),
                           [&](RunConfig& c) { c.eps = flags.eps; });
    overrides.emplace_back(cmd->add_option("--max-iters", flags.maxIters, "K-Means iteration cap")
                               ->capture_default_str(),
                           [&](RunConfig& c) { c.maxIters = flags.maxIters; });
    overrides.emplace_back(cmd->add_option("--out", flags.output, "Output path"),
                           [&](RunConfig& c) {
                             c.output = flags.output;
                             c.labels.clear();  // back to <out>.labels.tsv unless --labels is given
                           });
    overrides.emplace_back(cmd->add_option("--format", flags.format, "csv or json")->capture_default_str(),
                           [&](RunConfig& c) { c.format = flags.format; });
  };

  auto* cluster = app.add_subcommand("cluster", "Cluster a vector file");
  algoOptions(cluster, true);
  overrides.emplace_back(cluster->add_option("--labels", flags.labels, "Labels file (default <out>.labels.tsv)"),
                         [&](RunConfig& c) { c.labels = flags.labels; });
  cluster->add_option("--config", replayPath, "Replay the config of an earlier report");

  auto* bench = app.add_subcommand("bench", "Run an algorithm x k x workers x seed matrix");
  algoOptions(bench, false);
  bench->add_option("--algo", matrix.algos, "Algorithms (comma separated)")
      ->delimiter(',')
      ->default_val(std::vector<std::string>{"kmeans", "bkc", "buckshot"});
  bench->add_option("--k", benchKs, "Cluster counts")->delimiter(',')->default_val(std::vector<std::size_t>{20});
  bench->add_option("--workers", benchWorkers, "Worker counts (default: cores)")->delimiter(',');
  bench->add_option("--seed", matrix.seeds, "Seeds")->delimiter(',')->default_val(std::vector<std::uint64_t>{1, 2, 3});

  auto* scale = app.add_subcommand("scale", "Replicate a vector file with jittered weights");
  scale->add_option("--input", flags.input, "Vector file")->required();
  scale->add_option("--out", flags.output, "Vector file to write")->required();
  scale->add_option("--factor", factor, "Number of copies")->required();
  scale->add_option("--seed", flags.seed, "Jitter seed")->capture_default_str();

  auto* synthCmd = app.add_subcommand("synth", "Write a synthetic corpus in newsgroup layout");
  synthCmd->add_option("--out", flags.output, "Corpus root to create")->required();
  synthCmd->add_option("--docs-per-group", synth.docsPerGroup, "Postings per group")->capture_default_str();
  synthCmd->add_option("--groups", synth.groups, "Number of groups (1-20)")->capture_default_str();
  synthCmd->add_option("--seed", synth.seed, "Random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*vectorize) {
      flags.command = "vectorize";
      return cmdVectorize(flags, vocabPath, out, err);
    }
    if (*cluster) {
      RunConfig c = flags;
      if (!replayPath.empty()) {
        c = runConfigFromJson(readJsonFile(replayPath));
        for (auto& [opt, apply] : overrides) {
          if (opt->count() > 0) apply(c);
        }
      }
      c.command = "cluster";
      return cmdCluster(c, out);
    }
    if (*bench) {
      flags.command = "bench";
      matrix.base = flags;
      matrix.ks = benchKs;
      matrix.workers = benchWorkers.empty() ? std::vector<std::size_t>{defaultWorkers()} : benchWorkers;
      return cmdBench(matrix, out, err);
    }
    if (*scale) {
      flags.command = "scale";
      return cmdScale(flags, factor, out);
    }
    flags.command = "synth";
    return cmdSynth(flags, synth, out);
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Json::exception& e) {
    err << "usage error: bad config: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace docclust::cli
