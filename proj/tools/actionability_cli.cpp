#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "actionability/pipeline.hpp"
#include "actionability/rng.hpp"

namespace fs = std::filesystem;
using namespace actionability;

namespace {

struct CliOptions {
    RunConfig config;
    std::string emoticons;   // file, directory, or comma-separated list
    std::string techniques;  // comma-separated
    std::string strategy = "D";

    // lexicon subcommands
    std::string domain;
    std::string label = "actionable";
    std::size_t top_k = 25;
    std::string metric = "w";

    // classify
    std::string in_path;
    std::string out_path;

    // synth
    std::string scenario_path;
    std::string synth_out;
    std::string populations_out;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == ',') {
            if (!current.empty()) parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) parts.push_back(current);
    return parts;
}

void resolve_options(CliOptions& options) {
    RunConfig& config = options.config;
    config.emoticon_paths.clear();
    for (const std::string& entry : split_list(options.emoticons)) {
        if (fs::is_directory(entry)) {
            std::vector<std::string> files;
            for (const auto& file : fs::directory_iterator(entry)) {
                if (file.is_regular_file()) files.push_back(file.path().string());
            }
            std::sort(files.begin(), files.end());
            config.emoticon_paths.insert(config.emoticon_paths.end(), files.begin(),
                                         files.end());
        } else {
            config.emoticon_paths.push_back(entry);
        }
    }
    auto strategy = parse_strategy(options.strategy);
    if (!strategy) throw std::runtime_error("config: unknown strategy " + options.strategy);
    config.strategy = *strategy;
    if (!options.techniques.empty()) {
        config.techniques.clear();
        for (const std::string& name : split_list(options.techniques)) {
            auto technique = parse_technique(name);
            if (!technique) throw std::runtime_error("config: unknown technique " + name);
            config.techniques.push_back(*technique);
        }
        if (config.techniques.empty()) {
            throw std::runtime_error("config: empty technique list");
        }
    }
}

LabeledCorpus load_corpus(const RunConfig& config, IngestReport* report = nullptr) {
    if (config.corpus_path.empty()) {
        throw std::runtime_error("config: corpus path required (--corpus)");
    }
    IngestReport local;
    LabeledCorpus corpus = ingest_file(config.corpus_path, local);
    if (report) *report = local;
    return corpus;
}

void write_text(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

DomainKey parse_domain_arg(const std::string& text) {
    auto domain = DomainKey::parse(text);
    if (!domain) {
        throw std::runtime_error("bad domain key '" + text +
                                 "' (expected company,language,source with - for absent)");
    }
    return *domain;
}

int cmd_ingest(const CliOptions& options) {
    IngestReport report;
    load_corpus(options.config, &report);
    fs::path out = fs::path(options.config.report_dir) / "ingest_report.txt";
    write_text(out, report.summary());
    std::cout << report.summary();
    std::cout << "wrote " << out.string() << "\n";
    return 0;
}

int cmd_synth(const CliOptions& options) {
    if (options.scenario_path.empty()) {
        throw std::runtime_error("synth: --scenario required");
    }
    SyntheticScenario scenario = load_scenario_file(options.scenario_path);
    LabeledCorpus corpus = generate_synthetic(scenario, options.config.seed);
    std::string out_path = options.synth_out.empty() ? options.config.corpus_path
                                                     : options.synth_out;
    if (out_path.empty()) throw std::runtime_error("synth: --out or --corpus required");
    if (fs::path(out_path).has_parent_path()) {
        fs::create_directories(fs::path(out_path).parent_path());
    }
    write_corpus_file(corpus, out_path);
    std::cout << "wrote " << corpus.size() << " messages / " << corpus.index.size()
              << " domains to " << out_path << "\n";
    if (!options.populations_out.empty()) {
        write_populations_file(scenario_populations(scenario), options.populations_out);
        std::cout << "wrote populations to " << options.populations_out << "\n";
    }
    return 0;
}

PreparedCorpus prepare(const CliOptions& options) {
    LabeledCorpus corpus = load_corpus(options.config);
    return prepare_corpus(corpus, options.config);
}

int cmd_lexicon_build(const CliOptions& options) {
    PreparedCorpus prepared = prepare(options);
    fs::path out_dir = fs::path(options.config.report_dir) / "lexicons";
    fs::create_directories(out_dir);
    std::vector<DomainKey> domains;
    if (!options.domain.empty()) {
        domains.push_back(parse_domain_arg(options.domain));
    } else {
        for (const auto& [domain, indices] : prepared.train.index) {
            domains.push_back(domain);
        }
    }
    std::size_t written = 0;
    for (const DomainKey& domain : domains) {
        auto [lex_a, lex_n] = build_lexicons(prepared.train, domain,
                                             options.config.lexicon_min_doc_freq);
        save_lexicon_file(lex_a, (out_dir / (domain.url_safe() + ".actionable.tsv")).string(),
                          options.config.stamp);
        save_lexicon_file(lex_n,
                          (out_dir / (domain.url_safe() + ".non_actionable.tsv")).string(),
                          options.config.stamp);
        written += 2;
    }
    std::cout << "wrote " << written << " lexicon files to " << out_dir.string() << "\n";
    return 0;
}

int cmd_lexicon_dump(const CliOptions& options) {
    if (options.domain.empty()) throw std::runtime_error("lexicon dump: --domain required");
    PreparedCorpus prepared = prepare(options);
    DomainKey domain = parse_domain_arg(options.domain);
    auto label = parse_label(options.label);
    if (!label) throw std::runtime_error("lexicon dump: bad label " + options.label);

    std::map<std::string, double> scores;
    if (options.metric == "adf") {
        scores = compute_adf(build_term_stats(prepared.train, domain, *label));
    } else if (options.metric == "w") {
        auto [lex_a, lex_n] = build_lexicons(prepared.train, domain,
                                             options.config.lexicon_min_doc_freq);
        scores = (*label == Label::actionable ? lex_a : lex_n).scores;
    } else {
        throw std::runtime_error("lexicon dump: --metric must be w or adf");
    }
    std::string table = format_top_keywords(top_keywords(scores, options.top_k));
    std::cout << table;
    fs::path out = fs::path(options.config.report_dir) /
                   ("keywords_" + domain.url_safe() + "_" + options.label + "_" +
                    options.metric + ".tsv");
    write_text(out, table);
    std::cout << "wrote " << out.string() << "\n";
    return 0;
}

int cmd_lexicon_scatter(const CliOptions& options) {
    if (options.domain.empty()) {
        throw std::runtime_error("lexicon scatter: --domain required");
    }
    PreparedCorpus prepared = prepare(options);
    DomainKey domain = parse_domain_arg(options.domain);
    auto adf_a = compute_adf(build_term_stats(prepared.train, domain, Label::actionable));
    auto adf_n =
        compute_adf(build_term_stats(prepared.train, domain, Label::non_actionable));
    std::string rows = format_scatter(export_scatter(adf_a, adf_n));
    fs::path out = fs::path(options.config.report_dir) /
                   ("scatter_" + domain.url_safe() + ".tsv");
    write_text(out, rows);
    std::cout << "wrote " << out.string() << "\n";
    return 0;
}

int cmd_train(const CliOptions& options) {
    PreparedCorpus prepared = prepare(options);
    GlobalResources resources = load_global_resources(options.config);
    TextTable table({"Domain", "Technique", "CV F"});
    for (const auto& [domain, indices] : prepared.train.index) {
        auto [count_a, count_n] = prepared.train.class_counts(domain);
        if (count_a < static_cast<std::size_t>(options.config.cv_folds) ||
            count_n < static_cast<std::size_t>(options.config.cv_folds)) {
            continue;
        }
        auto [lex_a, lex_n] = build_lexicons(prepared.train, domain,
                                             options.config.lexicon_min_doc_freq);
        DomainResources domain_resources;
        domain_resources.actionable = lex_a;
        domain_resources.non_actionable = lex_n;
        domain_resources.sentiment = &resources.sentiment;
        domain_resources.catalogs = &resources.catalogs;
        domain_resources.easy_words = &resources.easy_words;
        std::vector<LabeledExample> examples;
        for (std::size_t i : indices) {
            const Message& message = prepared.train.messages[i];
            examples.push_back(
                LabeledExample::from(extract(message, domain_resources), message.label));
        }
        for (Technique technique : options.config.techniques) {
            double f = cross_validate(technique, options.config.hyperparameters, examples,
                                      options.config.cv_folds,
                                      derive_seed(options.config.seed,
                                                  "cv:" + domain.machine()));
            table.add_row({domain.display(), to_string(technique), format_fixed(f, 4)});
        }
    }
    fs::path out = fs::path(options.config.report_dir) / "train_report.txt";
    write_text(out, table.aligned());
    write_text(fs::path(options.config.report_dir) / "train_report.tsv", table.tsv());
    std::cout << table.aligned();
    std::cout << "wrote " << out.string() << "\n";
    return 0;
}

int cmd_select(const CliOptions& options) {
    PreparedCorpus prepared = prepare(options);
    GlobalResources resources = load_global_resources(options.config);
    SelectionRun run = run_selection(prepared, resources, options.config);
    if (run.registry.models.empty()) {
        throw std::runtime_error("select: no domain produced a selectable model");
    }
    persist_registry(run.registry, options.config.registry_dir);
    SelectionCensus census = selection_census(run.selections);
    fs::path report_dir(options.config.report_dir);
    write_text(report_dir / "census.txt", census.format());
    write_text(report_dir / "census.tsv", census.tsv());
    std::cout << census.format();
    for (const DomainKey& domain : run.skipped_targets) {
        std::cout << "skipped " << domain.display() << " (insufficient candidates)\n";
    }
    std::cout << "registry: " << run.registry.models.size() << " models under "
              << options.config.registry_dir << "\n";
    return 0;
}

int cmd_evaluate(const CliOptions& options) {
    PreparedCorpus prepared = prepare(options);
    GlobalResources resources = load_global_resources(options.config);
    ModelRegistry registry = load_registry(options.config.registry_dir);
    std::vector<SelectedModel> selections;
    for (const auto& [target, selected] : registry.models) {
        selections.push_back(selected);
    }
    EvaluationReport report = evaluate_selections(selections, prepared.train,
                                                  prepared.eval, prepared.populations,
                                                  resources);
    std::string title = "Held-out Evaluation (strategy " +
                        to_string(options.config.strategy) + ")";
    fs::path report_dir(options.config.report_dir);
    write_text(report_dir / "evaluation.txt", format_evaluation(report, title));
    write_text(report_dir / "evaluation.tsv", evaluation_tsv(report));
    std::cout << format_evaluation(report, title);
    return 0;
}

int cmd_classify(const CliOptions& options) {
    if (options.in_path.empty() || options.out_path.empty()) {
        throw std::runtime_error("classify: --in and --out required");
    }
    GlobalResources resources = load_global_resources(options.config);
    ModelRegistry registry = load_registry(options.config.registry_dir);

    std::vector<Message> messages;
    std::ifstream in(options.in_path);
    if (!in) throw std::runtime_error("classify: cannot open " + options.in_path);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    if (!content.empty()) {
        // Records may omit the label; default it so ingest accepts them.
        std::istringstream lines(content);
        std::ostringstream patched;
        std::string line;
        while (std::getline(lines, line)) {
            if (line.empty()) continue;
            if (line.find("\"label\"") == std::string::npos) {
                std::size_t brace = line.rfind('}');
                if (brace != std::string::npos) {
                    line.insert(brace, ",\"label\":\"non_actionable\"");
                }
            }
            patched << line << "\n";
        }
        std::istringstream stream(patched.str());
        IngestReport report;
        messages = ingest(stream, report).messages;
    }

    std::vector<ClassifiedRow> rows = classify_messages(registry, messages, resources);
    if (fs::path(options.out_path).has_parent_path()) {
        fs::create_directories(fs::path(options.out_path).parent_path());
    }
    std::ofstream out(options.out_path);
    if (!out) throw std::runtime_error("classify: cannot write " + options.out_path);
    std::size_t unmatched = 0;
    for (const ClassifiedRow& row : rows) {
        if (!row.label) {
            ++unmatched;
            continue;
        }
        out << row.id << "\t" << to_string(*row.label) << "\t"
            << format_fixed(row.score, 6) << "\n";
    }
    std::cout << "classified " << (rows.size() - unmatched) << " messages";
    if (unmatched) std::cout << " (" << unmatched << " without a registry model)";
    std::cout << " -> " << options.out_path << "\n";
    return 0;
}

int cmd_report_mi(const CliOptions& options) {
    PreparedCorpus prepared = prepare(options);
    GlobalResources resources = load_global_resources(options.config);
    std::vector<MiReportRow> rows = mi_report(prepared, resources, options.config);
    fs::path report_dir(options.config.report_dir);
    write_text(report_dir / "mi_report.txt", format_mi_report(rows));
    write_text(report_dir / "mi_report.tsv", mi_report_tsv(rows));
    std::cout << format_mi_report(rows);
    return 0;
}

int cmd_report_census(const CliOptions& options) {
    ModelRegistry registry = load_registry(options.config.registry_dir);
    std::vector<SelectedModel> selections;
    for (const auto& [target, selected] : registry.models) {
        selections.push_back(selected);
    }
    SelectionCensus census = selection_census(selections);
    write_text(fs::path(options.config.report_dir) / "census.txt", census.format());
    write_text(fs::path(options.config.report_dir) / "census.tsv", census.tsv());
    std::cout << census.format();
    return 0;
}

int cmd_report_strategy(const CliOptions& options) {
    PreparedCorpus prepared = prepare(options);
    GlobalResources resources = load_global_resources(options.config);
    SelectionRun run = run_selection(prepared, resources, options.config);
    if (run.candidate_sets.empty()) {
        throw std::runtime_error("report strategy: no candidate sets trained");
    }

    // Restrict to targets every strategy can serve so the aggregates compare
    // like for like.
    std::map<DomainKey, std::map<Strategy, SelectedModel>> per_target;
    for (Strategy strategy : {Strategy::A, Strategy::B, Strategy::C, Strategy::D}) {
        for (const SelectedModel& selected : reselect(run, strategy)) {
            per_target[selected.target][strategy] = selected;
        }
    }
    std::vector<DomainKey> excluded;
    std::map<Strategy, std::vector<SelectedModel>> by_strategy;
    for (const auto& [target, selections] : per_target) {
        if (selections.size() != 4) {
            excluded.push_back(target);
            continue;
        }
        for (const auto& [strategy, selected] : selections) {
            by_strategy[strategy].push_back(selected);
        }
    }
    if (by_strategy.empty()) {
        throw std::runtime_error("report strategy: no target supports all strategies");
    }

    std::ostringstream body;
    body << "Strategy Performance Model Breakdown\n";
    TextTable table({"S", "P", "T", "F", "A", "F^W", "A^W"});
    for (const auto& [strategy, selections] : by_strategy) {
        EvaluationReport report = evaluate_selections(
            selections, prepared.train, prepared.eval, prepared.populations, resources);
        std::size_t population = 0;
        std::size_t training = 0;
        for (const DomainReport& domain : report.domains) {
            population += domain.population;
            training += domain.training_size;
        }
        table.add_row({to_string(strategy), std::to_string(population),
                       std::to_string(training), format_fixed(report.f_mean, 3),
                       format_fixed(report.accuracy_mean, 3),
                       format_fixed(report.weighted.f_weighted, 3),
                       format_fixed(report.weighted.accuracy_weighted, 3)});
    }
    body << table.aligned();
    for (const DomainKey& domain : excluded) {
        body << "excluded " << domain.display() << " (not all strategies available)\n";
    }
    write_text(fs::path(options.config.report_dir) / "strategy_report.txt", body.str());
    write_text(fs::path(options.config.report_dir) / "strategy_report.tsv", table.tsv());
    std::cout << body.str();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CliOptions options;
    CLI::App app{"Domain-aware actionability classification toolkit"};
    app.set_config("--config", "", "flat key=value config file");
    app.option_defaults()->configurable()->multi_option_policy(
        CLI::MultiOptionPolicy::TakeLast);

    RunConfig& config = options.config;
    app.add_option("--corpus", config.corpus_path, "newline-delimited corpus file");
    app.add_option("--sentiment", config.sentiment_path, "sentiment lexicon file");
    app.add_option("--easy-words", config.easy_words_path, "easy word list");
    app.add_option("--emoticons", options.emoticons,
                   "emoticon catalog file, directory, or comma-separated list");
    app.add_option("--registry", config.registry_dir, "model registry directory");
    app.add_option("--reports", config.report_dir, "report output directory");
    app.add_option("--populations", config.populations_path,
                   "domain<TAB>count population sidecar");
    app.add_option("--seed", config.seed, "global random seed");
    app.add_option("--eval-fraction", config.eval_fraction, "held-out fraction");
    app.add_option("--cv-folds", config.cv_folds, "cross-validation folds");
    app.add_option("--strategy", options.strategy, "selection strategy A|B|C|D");
    app.add_option("--techniques", options.techniques, "comma-separated technique list");
    app.add_option("--min-class", config.min_class_size,
                   "per-class floor for candidate domains");
    app.add_option("--min-doc-freq", config.lexicon_min_doc_freq,
                   "lexicon document-frequency floor");
    app.add_option("--stamp", config.stamp, "build stamp recorded in artifacts");
    Hyperparameters& hp = config.hyperparameters;
    app.add_option("--epochs", hp.epochs, "training epochs");
    app.add_option("--pa-c", hp.pa_c, "PA aggressiveness");
    app.add_option("--cw-eta", hp.cw_eta, "CW/SCW confidence");
    app.add_option("--scw-c", hp.scw_c, "SCW cost");
    app.add_option("--arow-r", hp.arow_r, "AROW regularizer");
    app.add_option("--logistic-rate", hp.logistic_rate, "logistic learning rate");
    app.add_option("--logistic-l2", hp.logistic_l2, "logistic L2 weight");
    app.add_option("--adagrad-rate", hp.adagrad_rate, "AdaGrad-RDA base rate");
    app.add_option("--adagrad-l1", hp.adagrad_l1, "AdaGrad-RDA L1 weight");

    // Global flags remain usable after the command name.
    app.fallthrough();
    auto* ingest_cmd = app.add_subcommand("ingest", "validate and summarize a corpus");
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic corpus");
    synth_cmd->add_option("--scenario", options.scenario_path, "scenario JSON file");
    synth_cmd->add_option("--out", options.synth_out, "output corpus path");
    synth_cmd->add_option("--populations-out", options.populations_out,
                          "write per-domain populations here");
    auto* lexicon_cmd = app.add_subcommand("lexicon", "lexicon operations");
    auto* lexicon_build = lexicon_cmd->add_subcommand("build", "build and persist lexicons");
    lexicon_build->add_option("--domain", options.domain, "single (possibly generalized) domain");
    auto* lexicon_dump = lexicon_cmd->add_subcommand("dump", "top keywords for a domain");
    lexicon_dump->add_option("--domain", options.domain, "domain key");
    lexicon_dump->add_option("--label", options.label, "actionable|non_actionable");
    lexicon_dump->add_option("--top", options.top_k, "how many keywords");
    lexicon_dump->add_option("--metric", options.metric, "w|adf");
    auto* lexicon_scatter = lexicon_cmd->add_subcommand("scatter", "cross-label adf rows");
    lexicon_scatter->add_option("--domain", options.domain, "domain key");
    lexicon_cmd->require_subcommand(1);
    auto* train_cmd = app.add_subcommand("train", "per-domain technique comparison");
    auto* select_cmd = app.add_subcommand("select", "train candidates, select, persist registry");
    auto* evaluate_cmd = app.add_subcommand("evaluate", "held-out evaluation of the registry");
    auto* classify_cmd = app.add_subcommand("classify", "label a message file");
    classify_cmd->add_option("--in", options.in_path, "input message file");
    classify_cmd->add_option("--out", options.out_path, "output id<TAB>label<TAB>score");
    auto* report_cmd = app.add_subcommand("report", "analysis reports");
    auto* report_mi = report_cmd->add_subcommand("mi", "mutual information and coverage");
    auto* report_census = report_cmd->add_subcommand("census", "selection census from registry");
    auto* report_strategy = report_cmd->add_subcommand("strategy", "strategy A-D comparison");
    report_cmd->require_subcommand(1);
    app.require_subcommand(1);
    for (CLI::App* sub : {ingest_cmd, synth_cmd, lexicon_cmd, lexicon_build, lexicon_dump,
                          lexicon_scatter, train_cmd, select_cmd, evaluate_cmd,
                          classify_cmd, report_cmd, report_mi, report_census,
                          report_strategy}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return 2;
    }

    try {
        resolve_options(options);
        if (*ingest_cmd) return cmd_ingest(options);
        if (*synth_cmd) return cmd_synth(options);
        if (*lexicon_cmd) {
            if (*lexicon_build) return cmd_lexicon_build(options);
            if (*lexicon_dump) return cmd_lexicon_dump(options);
            if (*lexicon_scatter) return cmd_lexicon_scatter(options);
        }
        if (*train_cmd) return cmd_train(options);
        if (*select_cmd) return cmd_select(options);
        if (*evaluate_cmd) return cmd_evaluate(options);
        if (*classify_cmd) return cmd_classify(options);
        if (*report_cmd) {
            if (*report_mi) return cmd_report_mi(options);
            if (*report_census) return cmd_report_census(options);
            if (*report_strategy) return cmd_report_strategy(options);
        }
        std::cerr << "error: usage: no command\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
