// Acceptance suite: end-to-end checks of the release criteria. Each criterion
// prints one [PASS]/[FAIL] line; the process exits non-zero if any fail.
//
// Usage: acceptance_tests <path-to-uplift-cli>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "uplift/bench.hpp"
#include "uplift/engine.hpp"
#include "uplift/errors.hpp"
#include "uplift/functions.hpp"
#include "uplift/legal.hpp"
#include "uplift/mapping.hpp"
#include "uplift/rdf.hpp"
#include "uplift/xml.hpp"

namespace fs = std::filesystem;
using namespace uplift;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  std::string name;
  bool ok = true;
  std::vector<std::string> failures;

  void check(bool cond, const std::string& msg) {
    if (!cond) {
      ok = false;
      failures.push_back(msg);
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct ParsedCorpus {
  std::vector<xml::XmlDocument> storage;
  std::vector<engine::InputDocument> inputs;
};

ParsedCorpus parse_corpus(const std::vector<legal::LegalDocument>& corpus) {
  ParsedCorpus out;
  for (const auto& d : corpus) {
    out.storage.push_back(xml::parse_xml(legal::serialize_document(d)));
    out.inputs.push_back(engine::InputDocument{out.storage.back().get(), "doc-" + d.id});
  }
  return out;
}

rdf::Graph engine_graph(const ParsedCorpus& parsed, const engine::EngineConfig& config = {}) {
  rml::MappingDocument mapping = legal::reference_mapping();
  fn::FunctionRegistry registry;
  return std::move(engine::execute_mapping(mapping, parsed.inputs, registry, config).graph);
}

rdf::Graph adhoc_union(const ParsedCorpus& parsed) {
  rdf::Graph g;
  for (const auto& input : parsed.inputs) g.merge(legal::adhoc_parse(*input.root));
  return g;
}

// Independent string-value + whitespace-normalization oracle (coded here, not
// shared with the engine's path or function machinery).
void oracle_collect_text(const xml::XmlNode& n, std::string& out) {
  for (const auto& c : n.children) {
    if (c->kind == xml::NodeKind::Text) out += c->value;
    if (c->kind == xml::NodeKind::Element) oracle_collect_text(*c, out);
  }
}

std::string oracle_normalize_ws(const std::string& s) {
  std::string out;
  bool pending = false;
  for (char ch : s) {
    bool ws = ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '\f' || ch == '\v';
    if (ws) {
      pending = !out.empty();
    } else {
      if (pending) out += ' ';
      pending = false;
      out += ch;
    }
  }
  return out;
}

std::size_t count_matches(const rdf::Graph& g, const std::string& s, const std::string& p) {
  std::size_t n = 0;
  for (const auto& t : g) {
    if (t.subject.kind == rdf::TermKind::Iri && t.subject.value == s && t.predicate.value == p) ++n;
  }
  return n;
}

// --- criterion 1: engine output equals the hand-coded baseline --------------

void criterion_oracle_equivalence(Criterion& c) {
  auto start = Clock::now();
  legal::TaxonomyFixture tax = legal::builtin_taxonomy();
  for (std::uint64_t seed : {1, 2, 3}) {
    for (std::size_t size : {10, 100, 1000}) {
      std::vector<legal::LegalDocument> corpus = legal::generate_corpus(seed, size, tax);
      ParsedCorpus parsed = parse_corpus(corpus);
      rdf::Graph engine_g = engine_graph(parsed);
      rdf::Graph adhoc_g = adhoc_union(parsed);
      std::string where = "seed " + std::to_string(seed) + ", size " + std::to_string(size);
      c.check(engine_g.size() == adhoc_g.size(), where + ": triple counts differ (" +
                                                     std::to_string(engine_g.size()) + " vs " +
                                                     std::to_string(adhoc_g.size()) + ")");
      c.check(rdf::graph_equal(engine_g, adhoc_g), where + ": graphs are not equal");
    }
  }
  double elapsed = seconds_since(start);
  c.check(elapsed < 60.0, "equivalence sweep took " + std::to_string(elapsed) + " s (limit 60)");
}

// --- criterion 2: requirements R1-R6 ----------------------------------------

void criterion_requirements(Criterion& c) {
  legal::TaxonomyFixture tax = legal::builtin_taxonomy();
  fn::FunctionRegistry registry;
  rml::MappingDocument mapping = legal::reference_mapping();

  // R1: every generated document is well-formed XML
  for (const auto& d : legal::generate_corpus(5, 200, tax)) {
    try {
      xml::XmlDocument doc = xml::parse_xml(legal::serialize_document(d));
      (void)doc;
    } catch (const Error& e) {
      c.check(false, std::string("R1: generated document failed to parse: ") + e.what());
      return;
    }
  }

  // R2: nested markup maps to exactly one content literal with the full
  // string value (not one literal per direct text node)
  {
    std::string text =
        "<document id=\"900\"><metadata><keyword>k</keyword></metadata>"
        "<fragment id=\"f1\" type=\"tenor\">"
        "<content>Der <em>Vertrag</em> endet<ref target=\"doc-2\"/> sofort.</content>"
        "</fragment></document>";
    xml::XmlDocument doc = xml::parse_xml(text);
    const xml::XmlNode* content = doc->children[1]->children[0].get();
    std::string raw;
    oracle_collect_text(*content, raw);
    std::string expected = oracle_normalize_ws(raw);
    c.check(expected == "Der Vertrag endet sofort.", "R2: oracle sanity");

    engine::InputDocument input{doc.get(), "r2"};
    rdf::Graph g = engine::execute_mapping(mapping, {&input, 1}, registry).graph;
    const std::string sf = "http://data.example/doc/900/fragment/f1";
    std::size_t n = count_matches(g, sf, legal::vocab::has_content);
    c.check(n == 1, "R2: expected one content literal, got " + std::to_string(n));
    c.check(g.contains(rdf::make_triple(rdf::make_iri(sf), rdf::make_iri(legal::vocab::has_content),
                                        rdf::make_literal(expected))),
            "R2: content literal does not match the string value");
  }

  // R3: the same XML maps under a different vocabulary binding with no
  // engine change (only the mapping text differs)
  {
    std::vector<legal::LegalDocument> corpus = legal::generate_corpus(6, 5, tax);
    ParsedCorpus parsed = parse_corpus(corpus);
    const std::string alt_ns = "http://alt-vocab.example/core/";
    std::string alt_text = legal::reference_mapping_text();
    for (std::size_t at = alt_text.find(legal::vocab::pcicore_ns); at != std::string::npos;
         at = alt_text.find(legal::vocab::pcicore_ns, at)) {
      alt_text.replace(at, legal::vocab::pcicore_ns.size(), alt_ns);
    }
    rml::MappingDocument alt_mapping = rml::parse_mapping(alt_text);
    c.check(rml::validate_mapping(alt_mapping).empty(), "R3: rebound mapping must validate");

    rdf::Graph base = engine_graph(parsed);
    rdf::Graph rebound =
        std::move(engine::execute_mapping(alt_mapping, parsed.inputs, registry).graph);
    c.check(base.size() == rebound.size(), "R3: triple counts differ under rebinding");

    std::string renamed = rdf::serialize_ntriples(base);
    for (std::size_t at = renamed.find(legal::vocab::pcicore_ns); at != std::string::npos;
         at = renamed.find(legal::vocab::pcicore_ns, at)) {
      renamed.replace(at, legal::vocab::pcicore_ns.size(), alt_ns);
    }
    c.check(rdf::serialize_ntriples(rdf::parse_ntriples(renamed)) == rdf::serialize_ntriples(rebound),
            "R3: rebinding must only rename vocabulary IRIs");
  }

  // R4: in-mapping normalizeSpace yields whitespace-normalized literals
  {
    std::string text =
        "<document id=\"901\"><metadata><keyword>  fristlose \n\t K\xC3\xBCndigung  </keyword>"
        "</metadata></document>";
    xml::XmlDocument doc = xml::parse_xml(text);
    engine::InputDocument input{doc.get(), "r4"};
    rdf::Graph g = engine::execute_mapping(mapping, {&input, 1}, registry).graph;
    const std::string sd = "http://data.example/doc/901";
    c.check(g.contains(rdf::make_triple(rdf::make_iri(sd), rdf::make_iri(legal::vocab::has_keyword),
                                        rdf::make_literal("fristlose K\xC3\xBCndigung"))),
            "R4: normalized keyword literal missing");
    c.check(count_matches(g, sd, legal::vocab::has_keyword) == 1, "R4: expected one keyword literal");
  }

  // R5: k keyword elements yield exactly k keyword triples
  for (std::size_t k = 0; k <= 20; ++k) {
    std::string text = "<document id=\"902\"><metadata>";
    for (std::size_t i = 0; i < k; ++i) {
      text += "<keyword>kw" + std::to_string(i) + "</keyword>";
    }
    text += "</metadata></document>";
    xml::XmlDocument doc = xml::parse_xml(text);
    engine::InputDocument input{doc.get(), "r5"};
    rdf::Graph g = engine::execute_mapping(mapping, {&input, 1}, registry).graph;
    std::size_t n = count_matches(g, "http://data.example/doc/902", legal::vocab::has_keyword);
    c.check(n == k, "R5: k=" + std::to_string(k) + " produced " + std::to_string(n) + " triples");
  }

  // R6: attribute strings become validated IRI objects; a malformed IRI is
  // skipped in lenient mode and aborts in strict mode
  {
    std::string text =
        "<document id=\"903\"><metadata>"
        "<concept uri=\"http://taxonomy.wolterskluwer.de/law/10000\"/>"
        "<concept uri=\"not an iri\"/>"
        "</metadata></document>";
    xml::XmlDocument doc = xml::parse_xml(text);
    engine::InputDocument input{doc.get(), "r6"};

    engine::ExecutionResult lenient = engine::execute_mapping(mapping, {&input, 1}, registry);
    const std::string sd = "http://data.example/doc/903";
    c.check(lenient.graph.contains(rdf::make_triple(
                rdf::make_iri(sd), rdf::make_iri(legal::vocab::subject),
                rdf::make_iri("http://taxonomy.wolterskluwer.de/law/10000"))),
            "R6: valid concept IRI missing");
    c.check(count_matches(lenient.graph, sd, legal::vocab::subject) == 1,
            "R6: malformed concept must be skipped");
    c.check(lenient.warnings.size() == 1, "R6: expected one warning, got " +
                                              std::to_string(lenient.warnings.size()));

    engine::EngineConfig strict;
    strict.strict = true;
    bool aborted = false;
    try {
      engine::execute_mapping(mapping, {&input, 1}, registry, strict);
    } catch (const MappingExecutionError&) {
      aborted = true;
    }
    c.check(aborted, "R6: strict mode must abort on the malformed IRI");
  }
}

// --- criterion 3: statistics -------------------------------------------------

void criterion_statistics(Criterion& c) {
  bench::WelchResult r1k = bench::welch_t_test(4.85, 1.33, 10, 4.09, 0.47, 10);
  c.check(r1k.p > 0.107 && r1k.p < 0.127,
          "1k-row p outside [0.107, 0.127]: " + std::to_string(r1k.p));
  c.check(!r1k.significant, "1k-row must not be significant at 0.05");

  // published two-sided 0.05 critical values: upper tail mass 0.025
  c.check(std::abs(bench::student_t_sf(2.570582, 5.0) - 0.025) < 1e-4, "t-table df=5");
  c.check(std::abs(bench::student_t_sf(2.200985, 11.0) - 0.025) < 1e-4, "t-table df=11");
  c.check(std::abs(bench::student_t_sf(2.100922, 18.0) - 0.025) < 1e-4, "t-table df=18");
  c.check(std::abs(bench::student_t_sf(2.042272, 30.0) - 0.025) < 1e-4, "t-table df=30");

  bench::WelchResult r10k = bench::welch_t_test(43.3, 3.9, 10, 38.7, 3.95, 10);
  c.check(std::abs(r10k.p - 0.017334) < 1e-4,
          "10k-row p should be ~0.0173, got " + std::to_string(r10k.p));
  bench::WelchResult r50k = bench::welch_t_test(242.5, 30.9, 10, 212.8, 30.01, 10);
  c.check(std::abs(r50k.p - 0.042755) < 1e-4,
          "50k-row p should be ~0.0428, got " + std::to_string(r50k.p));

  // the JSON report documents those re-derived values next to the published ones
  bench::BenchReport empty_report;
  empty_report.environment = "n/a";
  std::string json = bench::report_to_json(empty_report);
  c.check(json.find("reference_statistics") != std::string::npos,
          "report must carry the reference statistics block");
  c.check(json.find("0.0173") != std::string::npos, "report must show the re-derived 10k p-value");
}

// --- criterion 4: relative performance ---------------------------------------

void criterion_performance(Criterion& c) {
  auto start = Clock::now();
  bench::BenchConfig config;
  config.corpus_sizes = {1000, 10000};
  config.runs = 3;
  config.seed = 1;

  bench::BenchReport report;
  try {
    report = bench::run_benchmark(config);
  } catch (const std::exception& e) {
    c.check(false, std::string("benchmark failed: ") + e.what());
    return;
  }

  double engine_1k = 0.0, engine_10k = 0.0, adhoc_10k = 0.0;
  for (const auto& size : report.sizes) {
    for (const auto& st : size.subjects) {
      if (st.subject == bench::Subject::Engine && size.corpus_size == 1000) engine_1k = st.stats.mean;
      if (st.subject == bench::Subject::Engine && size.corpus_size == 10000) engine_10k = st.stats.mean;
      if (st.subject == bench::Subject::Adhoc && size.corpus_size == 10000) adhoc_10k = st.stats.mean;
    }
  }
  c.check(engine_1k > 0.0 && engine_10k > 0.0 && adhoc_10k > 0.0, "missing timings in the report");
  if (engine_1k > 0.0 && engine_10k > 0.0 && adhoc_10k > 0.0) {
    c.check(engine_10k <= 2.0 * adhoc_10k,
            "engine 10k mean " + std::to_string(engine_10k) + " s exceeds 2.0x the baseline " +
                std::to_string(adhoc_10k) + " s");
    double scaling = engine_10k / engine_1k;
    c.check(scaling >= 5.0 && scaling <= 20.0,
            "engine 10k/1k ratio " + std::to_string(scaling) + " outside [5, 20]");
  }
  double elapsed = seconds_since(start);
  c.check(elapsed < 900.0, "bench took " + std::to_string(elapsed) + " s (limit 900)");
}

// --- criterion 5: query fidelity ----------------------------------------------

// Brute-force evaluation of the concept query: the fragment pattern joined
// with four UNION branches (document/fragment annotation, each with and
// without one narrower hop).
std::set<std::string> brute_force_query(const rdf::Graph& g, const std::string& concept_iri,
                                        bool include_narrower) {
  const std::string rdf_type = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
  std::set<std::string> narrower_children;
  if (include_narrower) {
    for (const auto& t : g) {
      if (t.predicate.value == legal::vocab::narrower && t.subject.kind == rdf::TermKind::Iri &&
          t.subject.value == concept_iri && t.object.kind == rdf::TermKind::Iri) {
        narrower_children.insert(t.object.value);
      }
    }
  }
  auto annotated_with = [&](const std::string& node, const std::string& target) {
    for (const auto& t : g) {
      if (t.subject.kind == rdf::TermKind::Iri && t.subject.value == node &&
          t.predicate.value == legal::vocab::subject && t.object.kind == rdf::TermKind::Iri &&
          t.object.value == target) {
        return true;
      }
    }
    return false;
  };

  std::set<std::string> out;
  for (const auto& tf : g) {
    if (tf.predicate.value != rdf_type || tf.object.kind != rdf::TermKind::Iri ||
        tf.object.value != legal::vocab::fragment || tf.subject.kind != rdf::TermKind::Iri) {
      continue;
    }
    const std::string& fragment = tf.subject.value;
    for (const auto& td : g) {
      if (td.subject.kind != rdf::TermKind::Iri || td.subject.value != fragment ||
          td.predicate.value != legal::vocab::is_fragment_of ||
          td.object.kind != rdf::TermKind::Iri) {
        continue;
      }
      const std::string& document = td.object.value;
      bool hit = annotated_with(document, concept_iri) || annotated_with(fragment, concept_iri);
      for (const auto& child : narrower_children) {
        if (hit) break;
        hit = annotated_with(document, child) || annotated_with(fragment, child);
      }
      if (hit) out.insert(document);
    }
  }
  return out;
}

void criterion_query_fidelity(Criterion& c) {
  legal::TaxonomyFixture tax = legal::builtin_taxonomy();
  std::mt19937 rng(4242);

  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    std::vector<legal::LegalDocument> corpus = legal::generate_corpus(seed, 60, tax);
    ParsedCorpus parsed = parse_corpus(corpus);
    rdf::Graph g = engine_graph(parsed);
    rdf::Graph tax_copy = rdf::parse_ntriples(legal::serialize_taxonomy(tax));
    g.merge(std::move(tax_copy));

    for (int i = 0; i < 20; ++i) {
      const std::string& concept_iri = tax.concepts[rng() % tax.concepts.size()];
      for (bool narrower : {false, true}) {
        std::set<std::string> fast = legal::documents_for_concept(g, concept_iri, narrower);
        std::set<std::string> slow = brute_force_query(g, concept_iri, narrower);
        c.check(fast == slow, "seed " + std::to_string(seed) + ", concept " + concept_iri +
                                  (narrower ? " (narrower)" : "") + ": query results differ");
      }
      std::set<std::string> direct = legal::documents_for_concept(g, concept_iri, false);
      std::set<std::string> expanded = legal::documents_for_concept(g, concept_iri, true);
      c.check(std::includes(expanded.begin(), expanded.end(), direct.begin(), direct.end()),
              "narrower=false must be a subset of narrower=true for " + concept_iri);
    }
  }
}

// --- criterion 6: round-trip and determinism -----------------------------------

void criterion_roundtrip_determinism(Criterion& c, const std::string& cli) {
  legal::TaxonomyFixture tax = legal::builtin_taxonomy();

  // serialize/parse round-trip on generated graphs
  for (std::uint64_t seed : {21, 22}) {
    std::vector<legal::LegalDocument> corpus = legal::generate_corpus(seed, 80, tax);
    ParsedCorpus parsed = parse_corpus(corpus);
    rdf::Graph g = engine_graph(parsed);
    std::string nt = rdf::serialize_ntriples(g);
    rdf::Graph back = rdf::parse_ntriples(nt);
    c.check(rdf::graph_equal(g, back), "seed " + std::to_string(seed) + ": round-trip changed the graph");
    c.check(rdf::serialize_ntriples(back) == nt,
            "seed " + std::to_string(seed) + ": round-trip changed the serialization");
  }

  // the command-line transform is byte-identical across worker counts
  if (cli.empty()) {
    c.check(false, "no CLI binary path given");
    return;
  }
  fs::path dir = fs::temp_directory_path() / "uplift-acceptance";
  std::error_code ec;
  fs::remove_all(dir, ec);
  fs::create_directories(dir / "corpus");
  for (const auto& d : legal::generate_corpus(9, 40, tax)) {
    std::ofstream out(dir / "corpus" / ("doc-" + d.id + ".xml"), std::ios::binary);
    out << legal::serialize_document(d);
  }
  {
    std::ofstream out(dir / "mapping.rml.ttl", std::ios::binary);
    out << legal::reference_mapping_text();
  }

  auto run_map = [&](int workers, const fs::path& out_path) {
    std::string cmd = "\"" + cli + "\" map --mapping \"" + (dir / "mapping.rml.ttl").string() +
                      "\" --input \"" + (dir / "corpus").string() + "\" --out \"" + out_path.string() +
                      "\" --workers " + std::to_string(workers) + " 2>/dev/null";
    return std::system(cmd.c_str());
  };
  int rc1 = run_map(1, dir / "out1.nt");
  int rc8 = run_map(8, dir / "out8.nt");
  c.check(rc1 == 0, "CLI run with --workers 1 exited with " + std::to_string(rc1));
  c.check(rc8 == 0, "CLI run with --workers 8 exited with " + std::to_string(rc8));

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  std::string out1 = slurp(dir / "out1.nt");
  std::string out8 = slurp(dir / "out8.nt");
  c.check(!out1.empty(), "CLI produced an empty graph");
  c.check(out1 == out8, "outputs differ between --workers 1 and --workers 8");

  fs::remove_all(dir, ec);
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";

  std::vector<Criterion> criteria;
  auto run = [&criteria](const std::string& name, auto&& fn) {
    Criterion c;
    c.name = name;
    auto start = Clock::now();
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.check(false, std::string("unexpected exception: ") + e.what());
    }
    double elapsed = seconds_since(start);
    std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << c.name << "  (" << elapsed << " s)\n";
    for (const auto& f : c.failures) std::cout << "       - " << f << "\n";
    criteria.push_back(std::move(c));
  };

  run("1. engine output equals the hand-coded baseline (seeds 1-3, sizes 10/100/1000)",
      [](Criterion& c) { criterion_oracle_equivalence(c); });
  run("2. requirements R1-R6", [](Criterion& c) { criterion_requirements(c); });
  run("3. statistics (Welch test and t-distribution tail)",
      [](Criterion& c) { criterion_statistics(c); });
  run("4. relative performance at 10k documents",
      [](Criterion& c) { criterion_performance(c); });
  run("5. concept query matches the brute-force evaluation",
      [](Criterion& c) { criterion_query_fidelity(c); });
  run("6. round-trip and worker-count determinism",
      [&cli](Criterion& c) { criterion_roundtrip_determinism(c, cli); });

  int failed = 0;
  for (const auto& c : criteria) failed += c.ok ? 0 : 1;
  if (failed == 0) {
    std::cout << "all " << criteria.size() << " acceptance criteria passed\n";
  } else {
    std::cout << failed << " of " << criteria.size() << " acceptance criteria failed\n";
  }
  return failed == 0 ? 0 : 1;
}
