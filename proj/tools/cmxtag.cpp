// cmxtag.cpp
// Command-line front end: CMI analysis, CRF training, tagging, evaluation,
// grid search, corpus splitting, and synthetic corpus generation.
//
// Exit status: 0 success, 1 usage error, 2 data/model error.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cmx/cmx.hpp"

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string model;
  std::string gold;
  std::string pred;
  std::string manifest;
  std::string format = "tsv";
  std::string mode = "open";
  std::string langpair = "hi";
  bool strict = false;
  bool no_lang_feature = false;
  int window = 2;
  int max_ngram = 3;
  int min_count = 1;
  double c1 = 0.05;
  double c2 = 0.1;
  int max_iter = 200;
  double tol = 1e-5;
  int folds = 5;
  long long seed = 42;
  std::vector<double> c1_grid;
  std::vector<double> c2_grid;
  int num_utterances = 100;
  double mixing = 0.3;
};

cmx::TagsetMode parse_mode(const std::string& mode) {
  auto parsed = cmx::tagset_mode_from(mode);
  if (!parsed.has_value()) throw cmx::Error("unknown tagset mode '" + mode + "'");
  return *parsed;
}

cmx::Corpus read_corpus_file(const std::string& path, const Options& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cmx::Error("cannot open input file: " + path);
  std::vector<std::string> diagnostics;
  cmx::Corpus corpus = cmx::parse_corpus(in, parse_mode(opts.mode), opts.strict, &diagnostics);
  for (const std::string& d : diagnostics) std::cerr << path << ": " << d << "\n";
  return corpus;
}

void write_output(const std::string& content, const std::string& path) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cmx::Error("cannot open output file: " + path);
  out << content;
  if (!out) throw cmx::Error("failed to write output file: " + path);
}

cmx::CrfModel read_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cmx::Error("cannot open model file: " + path);
  return cmx::load_model(in);
}

void write_model_file(const cmx::CrfModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cmx::Error("cannot open model file for writing: " + path);
  cmx::save_model(model, out);
}

cmx::FeatureConfig feature_config(const Options& opts) {
  cmx::FeatureConfig config;
  config.window = opts.window;
  config.max_ngram = opts.max_ngram;
  config.min_count = opts.min_count;
  config.use_lang = !opts.no_lang_feature;
  return config;
}

cmx::TrainConfig train_config(const Options& opts) {
  cmx::TrainConfig config;
  config.c1 = opts.c1;
  config.c2 = opts.c2;
  config.max_iterations = opts.max_iter;
  config.tolerance = opts.tol;
  config.features = feature_config(opts);
  return config;
}

void run_cmi(const Options& opts) {
  cmx::Corpus corpus = read_corpus_file(opts.input, opts);
  cmx::CmiReport report = cmx::corpus_cmi_report(corpus);
  write_output(opts.format == "json" ? cmx::to_json(report) + "\n" : cmx::to_tsv(report),
               opts.output);
}

void run_train_single(const Options& opts) {
  cmx::Corpus corpus = read_corpus_file(opts.input, opts);
  cmx::TrainStats stats;
  cmx::CrfModel model = cmx::train(corpus, train_config(opts), &stats);
  write_model_file(model, opts.model);
  std::cerr << "trained " << stats.num_labels << " labels, " << stats.num_features
            << " features in " << stats.iterations << " iterations (objective "
            << stats.objective << (stats.converged ? ", converged" : "") << ")\n";
}

void run_train_manifest(const Options& opts) {
  std::ifstream in(opts.manifest);
  if (!in) throw cmx::Error("cannot open manifest file: " + opts.manifest);

  std::ostringstream out;
  out << "train\ttest\tmodel\tmode\tweighted_f1\n";
  long double sum = 0.0L;
  std::size_t rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (fields.size() != 4) {
      throw cmx::Error("manifest line " + std::to_string(line_no) +
                       ": expected 4 tab-separated fields (train, test, model, tag-column)");
    }
    Options row = opts;
    row.mode = fields[3];
    parse_mode(row.mode);  // validate early

    cmx::Corpus train_corpus = read_corpus_file(fields[0], row);
    cmx::Corpus test_corpus = read_corpus_file(fields[1], row);
    cmx::CrfModel model = cmx::train(train_corpus, train_config(row));
    write_model_file(model, fields[2]);
    cmx::Corpus predicted = cmx::tag_corpus(model, test_corpus);
    cmx::EvalReport report = cmx::evaluate(test_corpus, predicted);
    out << fields[0] << '\t' << fields[1] << '\t' << fields[2] << '\t' << fields[3] << '\t'
        << std::fixed << std::setprecision(4) << report.weighted_f1 << "\n";
    out.unsetf(std::ios_base::floatfield);
    sum += report.weighted_f1;
    ++rows;
  }
  if (rows == 0) throw cmx::Error("manifest has no rows");
  std::ostringstream overall;
  overall << std::fixed << std::setprecision(2)
          << 100.0 * static_cast<double>(sum / static_cast<long double>(rows));
  out << "overall\t" << overall.str() << "\n";
  write_output(out.str(), opts.output);
}

void run_tag(const Options& opts) {
  cmx::CrfModel model = read_model_file(opts.model);
  cmx::Corpus corpus = read_corpus_file(opts.input, opts);
  cmx::Corpus tagged = cmx::tag_corpus(model, corpus);
  write_output(cmx::write_corpus(tagged), opts.output);
}

void run_eval(const Options& opts) {
  cmx::Corpus gold = read_corpus_file(opts.gold, opts);
  cmx::Corpus pred = read_corpus_file(opts.pred, opts);
  cmx::EvalReport report = cmx::evaluate(gold, pred);
  write_output(opts.format == "json" ? cmx::to_json(report) + "\n" : cmx::to_tsv(report),
               opts.output);
}

void run_grid(const Options& opts) {
  cmx::Corpus corpus = read_corpus_file(opts.input, opts);
  cmx::GridSpec spec;
  if (!opts.c1_grid.empty()) spec.c1_values = opts.c1_grid;
  if (!opts.c2_grid.empty()) spec.c2_values = opts.c2_grid;
  spec.folds = opts.folds;
  spec.seed = static_cast<std::uint64_t>(opts.seed);
  cmx::GridResult result = cmx::grid_search(corpus, spec, train_config(opts));
  write_output(opts.format == "json" ? cmx::to_json(result) + "\n" : cmx::to_tsv(result),
               opts.output);
}

void run_split(const Options& opts) {
  cmx::Corpus corpus = read_corpus_file(opts.input, opts);
  auto pairs = cmx::split_corpus(corpus, opts.folds, static_cast<std::uint64_t>(opts.seed));
  for (std::size_t fold = 0; fold < pairs.size(); ++fold) {
    const std::string train_path = opts.output + ".fold" + std::to_string(fold) + ".train.tsv";
    const std::string heldout_path =
        opts.output + ".fold" + std::to_string(fold) + ".heldout.tsv";
    write_output(cmx::write_corpus(pairs[fold].train), train_path);
    write_output(cmx::write_corpus(pairs[fold].heldout), heldout_path);
    std::cout << train_path << "\n" << heldout_path << "\n";
  }
}

void run_synth(const Options& opts) {
  auto lang = cmx::language_tag_from(opts.langpair);
  if (!lang.has_value()) throw cmx::Error("unknown language pair '" + opts.langpair + "'");
  cmx::Corpus corpus = cmx::generate_synthetic_corpus(
      static_cast<std::uint64_t>(opts.seed), opts.num_utterances, *lang, opts.mixing);
  write_output(cmx::write_corpus(corpus), opts.output);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cmxtag: linear-chain CRF POS tagging and code-mixing analysis "
               "for code-mixed social-media text"};
  app.require_subcommand(1);
  Options opts;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"tsv", "json"}))
        ->capture_default_str();
  };
  auto add_parse_flags = [&](CLI::App* cmd) {
    cmd->add_option("--mode", opts.mode, "tagset mode")
        ->check(CLI::IsMember({"coarse", "fine", "open"}))
        ->capture_default_str();
    cmd->add_flag("--strict", opts.strict, "reject unknown language tags");
  };
  auto add_feature_flags = [&](CLI::App* cmd) {
    cmd->add_option("--window", opts.window, "context window size")
        ->check(CLI::Range(0, 16))
        ->capture_default_str();
    cmd->add_option("--max-ngram", opts.max_ngram, "character n-gram bound")
        ->check(CLI::Range(1, 16))
        ->capture_default_str();
    cmd->add_option("--min-count", opts.min_count, "feature pruning threshold")
        ->check(CLI::Range(1, 1 << 20))
        ->capture_default_str();
    cmd->add_flag("--no-lang-feature", opts.no_lang_feature, "disable language-tag features");
  };
  auto add_optimizer_flags = [&](CLI::App* cmd) {
    cmd->add_option("--max-iter", opts.max_iter, "optimizer iteration cap")
        ->check(CLI::Range(1, 1 << 20))
        ->capture_default_str();
    cmd->add_option("--tol", opts.tol, "relative objective-change tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };

  CLI::App* cmi = app.add_subcommand("cmi", "code-mixing statistics for a corpus");
  cmi->add_option("--input", opts.input, "corpus file")->required();
  cmi->add_option("--output", opts.output, "output file (default stdout)");
  add_format(cmi);
  add_parse_flags(cmi);

  CLI::App* train = app.add_subcommand("train", "train a CRF tagger");
  train->add_option("--input", opts.input, "training corpus (tokens need pos labels)");
  train->add_option("--model", opts.model, "model output path");
  train->add_option("--manifest", opts.manifest,
                    "TSV of (train, test, model, tag-column) rows; trains and "
                    "evaluates each row");
  train->add_option("--output", opts.output, "manifest results output (default stdout)");
  add_parse_flags(train);
  add_feature_flags(train);
  train->add_option("--c1", opts.c1, "L1 coefficient")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  train->add_option("--c2", opts.c2, "L2 coefficient")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_optimizer_flags(train);

  CLI::App* tag = app.add_subcommand("tag", "tag a corpus with a trained model");
  tag->add_option("--input", opts.input, "corpus file")->required();
  tag->add_option("--model", opts.model, "model file")->required();
  tag->add_option("--output", opts.output, "tagged corpus output (default stdout)");
  add_parse_flags(tag);

  CLI::App* eval = app.add_subcommand("eval", "score predictions against gold");
  eval->add_option("--gold", opts.gold, "gold corpus")->required();
  eval->add_option("--pred", opts.pred, "predicted corpus")->required();
  eval->add_option("--output", opts.output, "output file (default stdout)");
  add_format(eval);
  add_parse_flags(eval);

  CLI::App* grid = app.add_subcommand("grid", "grid-search c1/c2 by cross-validation");
  grid->add_option("--input", opts.input, "training corpus")->required();
  grid->add_option("--output", opts.output, "output file (default stdout)");
  grid->add_option("--c1-grid", opts.c1_grid, "comma-separated c1 values")->delimiter(',');
  grid->add_option("--c2-grid", opts.c2_grid, "comma-separated c2 values")->delimiter(',');
  grid->add_option("--folds", opts.folds, "cross-validation folds")
      ->check(CLI::Range(2, 1 << 20))
      ->capture_default_str();
  grid->add_option("--seed", opts.seed, "shuffle seed")->capture_default_str();
  add_format(grid);
  add_parse_flags(grid);
  add_feature_flags(grid);
  add_optimizer_flags(grid);

  CLI::App* split = app.add_subcommand("split", "write k-fold train/heldout files");
  split->add_option("--input", opts.input, "corpus file")->required();
  split->add_option("--output", opts.output, "output path prefix")->required();
  split->add_option("--folds", opts.folds, "number of folds")
      ->check(CLI::Range(2, 1 << 20))
      ->capture_default_str();
  split->add_option("--seed", opts.seed, "shuffle seed")->capture_default_str();
  add_parse_flags(split);

  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic code-mixed corpus");
  synth->add_option("--output", opts.output, "corpus output (default stdout)");
  synth->add_option("--seed", opts.seed, "generator seed")->capture_default_str();
  synth->add_option("--num-utterances", opts.num_utterances, "utterance count")
      ->check(CLI::Range(1, 1 << 24))
      ->capture_default_str();
  synth->add_option("--mixing", opts.mixing, "embedded-language probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  synth->add_option("--langpair", opts.langpair, "matrix language (paired with en)")
      ->check(CLI::IsMember({"hi", "bn", "te"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*cmi) {
      run_cmi(opts);
    } else if (*train) {
      if (!opts.manifest.empty()) {
        run_train_manifest(opts);
      } else {
        if (opts.input.empty() || opts.model.empty()) {
          std::cerr << "train requires --input and --model (or --manifest)\n"
                    << train->help();
          return 1;
        }
        run_train_single(opts);
      }
    } else if (*tag) {
      run_tag(opts);
    } else if (*eval) {
      run_eval(opts);
    } else if (*grid) {
      run_grid(opts);
    } else if (*split) {
      run_split(opts);
    } else if (*synth) {
      run_synth(opts);
    }
  } catch (const cmx::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
