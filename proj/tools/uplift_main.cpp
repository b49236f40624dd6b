#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uplift/bench.hpp"
#include "uplift/engine.hpp"
#include "uplift/errors.hpp"
#include "uplift/legal.hpp"
#include "uplift/mapping.hpp"
#include "uplift/rdf.hpp"
#include "uplift/xml.hpp"

namespace fs = std::filesystem;
using namespace uplift;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kExecutionError = 2;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error("cannot read " + path.string());
  return std::move(buf).str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  out.flush();
  if (!out) throw Error("cannot write " + path.string());
}

// Directories expand to their *.xml files; explicit files are taken as-is.
std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& input : inputs) {
    fs::path p(input);
    if (fs::is_directory(p)) {
      std::vector<fs::path> dir_files;
      for (const auto& entry : fs::directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path().extension() == ".xml") {
          dir_files.push_back(entry.path());
        }
      }
      std::sort(dir_files.begin(), dir_files.end());
      files.insert(files.end(), dir_files.begin(), dir_files.end());
    } else if (fs::is_regular_file(p)) {
      files.push_back(p);
    } else {
      throw Error("input " + input + " is neither a file nor a directory");
    }
  }
  return files;
}

rml::MappingDocument load_valid_mapping(const fs::path& path) {
  rml::MappingDocument mapping = rml::parse_mapping(read_file(path));
  std::vector<std::string> diagnostics = rml::validate_mapping(mapping);
  if (!diagnostics.empty()) {
    std::string message = "mapping " + path.string() + " does not validate:";
    for (const auto& d : diagnostics) message += "\n  " + d;
    throw Error(message);
  }
  return mapping;
}

struct MapOptions {
  std::string mapping_path;
  std::vector<std::string> inputs;
  std::string out_path;
  bool strict = false;
  unsigned workers = 0;
};

int cmd_map(const MapOptions& opt) {
  rml::MappingDocument mapping;
  try {
    mapping = load_valid_mapping(opt.mapping_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }

  std::vector<fs::path> files;
  try {
    files = expand_inputs(opt.inputs);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }

  std::vector<xml::XmlDocument> parsed;
  std::vector<engine::InputDocument> docs;
  parsed.reserve(files.size());
  for (const auto& file : files) {
    std::string text;
    try {
      text = read_file(file);
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kInputError;
    }
    try {
      parsed.push_back(xml::parse_xml(text));
      docs.push_back(engine::InputDocument{parsed.back().get(), file.filename().string()});
    } catch (const Error& e) {
      if (opt.strict) {
        std::cerr << "error: " << file.string() << ": " << e.what() << "\n";
        return kExecutionError;
      }
      std::cerr << "warning: skipping " << file.string() << ": " << e.what() << "\n";
    }
  }

  engine::EngineConfig config;
  config.strict = opt.strict;
  config.workers = opt.workers;
  fn::FunctionRegistry registry;
  engine::ExecutionResult result;
  try {
    result = engine::execute_mapping(mapping, docs, registry, config);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExecutionError;
  }
  for (const auto& w : result.warnings) {
    std::cerr << "warning: " << w.document << " / " << w.triples_map << ": " << w.message << "\n";
  }

  std::string ntriples = rdf::serialize_ntriples(result.graph);
  if (opt.out_path.empty()) {
    std::cout << ntriples;
  } else {
    try {
      write_file(opt.out_path, ntriples);
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kInputError;
    }
  }
  std::cerr << "wrote " << result.graph.size() << " triples from " << docs.size() << " documents\n";
  return kOk;
}

struct GenerateOptions {
  std::uint64_t seed = 1;
  std::size_t count = 10;
  std::string out_dir;
};

int cmd_generate(const GenerateOptions& opt) {
  try {
    fs::path dir(opt.out_dir);
    fs::create_directories(dir);
    legal::TaxonomyFixture taxonomy = legal::builtin_taxonomy();
    std::vector<legal::LegalDocument> corpus = legal::generate_corpus(opt.seed, opt.count, taxonomy);
    for (const auto& d : corpus) {
      write_file(dir / ("doc-" + d.id + ".xml"), legal::serialize_document(d));
    }
    write_file(dir / "taxonomy.nt", legal::serialize_taxonomy(taxonomy));
    write_file(dir / "mapping.rml.ttl", legal::reference_mapping_text());
    std::cerr << "wrote " << corpus.size() << " documents, taxonomy.nt and mapping.rml.ttl to "
              << dir.string() << "\n";
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}

struct BenchOptions {
  std::vector<std::size_t> sizes{1000, 10000, 50000};
  std::size_t runs = 10;
  std::uint64_t seed = 1;
  std::string out_path;
  unsigned workers = 0;
};

int cmd_bench(const BenchOptions& opt) {
  bench::BenchConfig config;
  config.corpus_sizes = opt.sizes;
  config.runs = opt.runs;
  config.seed = opt.seed;
  config.workers = opt.workers;
  if (config.runs < 2) {
    std::cerr << "error: --runs must be at least 2\n";
    return kInputError;
  }
  for (std::size_t s : config.corpus_sizes) {
    if (s < 1) {
      std::cerr << "error: --sizes entries must be at least 1\n";
      return kInputError;
    }
  }

  bench::BenchReport report;
  try {
    report = bench::run_benchmark(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExecutionError;
  }

  std::cout << bench::report_to_table(report);
  if (!opt.out_path.empty()) {
    try {
      write_file(opt.out_path, bench::report_to_json(report));
      std::cerr << "wrote report to " << opt.out_path << "\n";
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kInputError;
    }
  }
  return kOk;
}

struct QueryOptions {
  std::string graph_path;
  std::string concept_iri;
  bool narrower = false;
};

int cmd_query(const QueryOptions& opt) {
  if (auto violation = rdf::find_iri_violation(opt.concept_iri)) {
    std::cerr << "error: invalid concept IRI (position " << violation->position << "): "
              << violation->reason << "\n";
    return kInputError;
  }
  rdf::Graph graph;
  try {
    graph = rdf::parse_ntriples(read_file(opt.graph_path));
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  for (const auto& doc : legal::documents_for_concept(graph, opt.concept_iri, opt.narrower)) {
    std::cout << doc << "\n";
  }
  return kOk;
}

int cmd_validate(const std::string& mapping_path) {
  rml::MappingDocument mapping;
  try {
    mapping = rml::parse_mapping(read_file(mapping_path));
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  std::vector<std::string> diagnostics = rml::validate_mapping(mapping);
  for (const auto& d : diagnostics) std::cout << d << "\n";
  if (!diagnostics.empty()) return kInputError;
  std::cerr << "mapping is valid\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"XML-to-RDF knowledge graph construction toolkit"};
  app.require_subcommand(1);

  MapOptions map_opt;
  CLI::App* map_cmd = app.add_subcommand("map", "Execute a mapping over XML documents");
  map_cmd->add_option("--mapping", map_opt.mapping_path, "Mapping file (Turtle)")->required();
  map_cmd->add_option("--input", map_opt.inputs, "XML file or directory (repeatable)")->required();
  map_cmd->add_option("--out", map_opt.out_path, "Output N-Triples file (default: stdout)");
  map_cmd->add_flag("--strict", map_opt.strict, "Abort on the first term error instead of skipping");
  map_cmd->add_option("--workers", map_opt.workers, "Worker threads (default: all cores)");

  GenerateOptions gen_opt;
  CLI::App* gen_cmd = app.add_subcommand("generate", "Generate a synthetic document corpus");
  gen_cmd->add_option("--seed", gen_opt.seed, "Corpus seed (default 1)");
  gen_cmd->add_option("--count", gen_opt.count, "Number of documents (default 10)");
  gen_cmd->add_option("--out", gen_opt.out_dir, "Output directory")->required();

  BenchOptions bench_opt;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Benchmark the engine against the ad-hoc parser");
  bench_cmd->add_option("--sizes", bench_opt.sizes, "Corpus sizes (default 1000,10000,50000)")
      ->delimiter(',');
  bench_cmd->add_option("--runs", bench_opt.runs, "Timed runs per subject (default 10)");
  bench_cmd->add_option("--seed", bench_opt.seed, "Corpus seed (default 1)");
  bench_cmd->add_option("--out", bench_opt.out_path, "JSON report path");
  bench_cmd->add_option("--workers", bench_opt.workers, "Engine worker threads (default: all cores)");

  QueryOptions query_opt;
  CLI::App* query_cmd = app.add_subcommand("query", "Find documents annotated with a concept");
  query_cmd->add_option("--graph", query_opt.graph_path, "N-Triples graph file")->required();
  query_cmd->add_option("--concept", query_opt.concept_iri, "Concept IRI")->required();
  query_cmd->add_flag("--narrower", query_opt.narrower, "Also match one-hop narrower concepts");

  std::string validate_mapping_path;
  CLI::App* validate_cmd = app.add_subcommand("validate", "Check a mapping file");
  validate_cmd->add_option("--mapping", validate_mapping_path, "Mapping file (Turtle)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (map_cmd->parsed()) return cmd_map(map_opt);
    if (gen_cmd->parsed()) return cmd_generate(gen_opt);
    if (bench_cmd->parsed()) return cmd_bench(bench_opt);
    if (query_cmd->parsed()) return cmd_query(query_opt);
    if (validate_cmd->parsed()) return cmd_validate(validate_mapping_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExecutionError;
  }
  return kInputError;
}
