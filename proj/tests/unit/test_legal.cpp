#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "uplift/engine.hpp"
#include "uplift/legal.hpp"
#include "uplift/mapping.hpp"
#include "uplift/rdf.hpp"
#include "uplift/xml.hpp"

using namespace uplift;
using namespace uplift::legal;

namespace {

rdf::Triple t_iri(const std::string& s, const std::string& p, const std::string& o) {
  return rdf::make_triple(rdf::make_iri(s), rdf::make_iri(p), rdf::make_iri(o));
}

rdf::Triple t_lit(const std::string& s, const std::string& p, const std::string& o) {
  return rdf::make_triple(rdf::make_iri(s), rdf::make_iri(p), rdf::make_literal(o));
}

const std::string kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

rdf::Graph engine_graph(const std::vector<LegalDocument>& corpus) {
  rml::MappingDocument mapping = reference_mapping();
  std::vector<std::string> texts;
  std::vector<xml::XmlDocument> parsed;
  std::vector<engine::InputDocument> inputs;
  for (const auto& d : corpus) texts.push_back(serialize_document(d));
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    parsed.push_back(xml::parse_xml(texts[i]));
    inputs.push_back(engine::InputDocument{parsed.back().get(), "doc-" + corpus[i].id});
  }
  fn::FunctionRegistry registry;
  engine::ExecutionResult result = engine::execute_mapping(mapping, inputs, registry);
  REQUIRE(result.warnings.empty());
  return std::move(result.graph);
}

rdf::Graph adhoc_graph(const std::vector<LegalDocument>& corpus) {
  rdf::Graph g;
  for (const auto& d : corpus) {
    xml::XmlDocument doc = xml::parse_xml(serialize_document(d));
    g.merge(adhoc_parse(*doc));
  }
  return g;
}

}  // namespace

TEST_CASE("reference mapping is executable") {
  rml::MappingDocument doc = reference_mapping();
  CHECK(doc.triples_maps.size() == 3);
  CHECK(rml::validate_mapping(doc).empty());
}

TEST_CASE("builtin taxonomy shape") {
  TaxonomyFixture t = builtin_taxonomy();
  CHECK(t.concepts.size() == 50);
  CHECK(t.narrower_edges.size() == 60);
  CHECK(std::find(t.concepts.begin(), t.concepts.end(),
                  "http://taxonomy.wolterskluwer.de/law/10046") != t.concepts.end());
  // every edge endpoint is a known concept
  std::set<std::string> known(t.concepts.begin(), t.concepts.end());
  for (const auto& [broader, narrower] : t.narrower_edges) {
    CHECK(known.count(broader) == 1);
    CHECK(known.count(narrower) == 1);
    CHECK(broader != narrower);
  }
  // no duplicate edges
  std::set<std::pair<std::string, std::string>> edges(t.narrower_edges.begin(), t.narrower_edges.end());
  CHECK(edges.size() == t.narrower_edges.size());
}

TEST_CASE("taxonomy serialization round-trips") {
  TaxonomyFixture t = builtin_taxonomy();
  std::string nt = serialize_taxonomy(t);
  TaxonomyFixture back = load_taxonomy(nt);
  std::set<std::string> c1(t.concepts.begin(), t.concepts.end());
  std::set<std::string> c2(back.concepts.begin(), back.concepts.end());
  CHECK(c1 == c2);
  std::set<std::pair<std::string, std::string>> e1(t.narrower_edges.begin(), t.narrower_edges.end());
  std::set<std::pair<std::string, std::string>> e2(back.narrower_edges.begin(), back.narrower_edges.end());
  CHECK(e1 == e2);
}

TEST_CASE("taxonomy loading reverses broader edges and rejects cycles") {
  std::string nt =
      "<http://t/a> <" + kRdfType + "> <" + vocab::concept_class + "> .\n" +
      "<http://t/b> <" + kRdfType + "> <" + vocab::concept_class + "> .\n" +
      "<http://t/b> <" + vocab::broader + "> <http://t/a> .\n";
  TaxonomyFixture t = load_taxonomy(nt);
  CHECK(t.concepts.size() == 2);
  REQUIRE(t.narrower_edges.size() == 1);
  CHECK(t.narrower_edges[0].first == "http://t/a");
  CHECK(t.narrower_edges[0].second == "http://t/b");

  std::string cyclic =
      "<http://t/a> <" + kRdfType + "> <" + vocab::concept_class + "> .\n" +
      "<http://t/b> <" + kRdfType + "> <" + vocab::concept_class + "> .\n" +
      "<http://t/a> <" + vocab::narrower + "> <http://t/b> .\n" +
      "<http://t/b> <" + vocab::narrower + "> <http://t/a> .\n";
  CHECK_THROWS_AS(load_taxonomy(cyclic), CycleError);
}

TEST_CASE("corpus generation is deterministic and in-spec") {
  TaxonomyFixture tax = builtin_taxonomy();
  std::vector<LegalDocument> a = generate_corpus(42, 40, tax);
  std::vector<LegalDocument> b = generate_corpus(42, 40, tax);
  REQUIRE(a.size() == 40);
  CHECK(a == b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(serialize_document(a[i]) == serialize_document(b[i]));
  }

  CHECK(generate_corpus(42, 0, tax).empty());
  // a different seed changes the corpus
  CHECK(generate_corpus(43, 40, tax) != a);

  std::set<std::string> known(tax.concepts.begin(), tax.concepts.end());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const LegalDocument& d = a[i];
    CHECK(d.id == std::to_string(100000 + i));
    CHECK(d.keywords.size() >= 1);
    CHECK(d.keywords.size() <= 8);
    CHECK(d.concepts.size() <= 5);
    CHECK(d.fragments.size() >= 1);
    CHECK(d.fragments.size() <= 12);
    for (const auto& c : d.concepts) CHECK(known.count(c) == 1);
    for (std::size_t j = 0; j < d.fragments.size(); ++j) {
      const Fragment& f = d.fragments[j];
      CHECK(f.id == "f" + std::to_string(j + 1));
      bool known_type = f.type_code == "tenor" || f.type_code == "tatbestand" ||
                        f.type_code == "gruende" || f.type_code == "leitsatz";
      CHECK(known_type);
      CHECK(f.keywords.size() <= 4);
      CHECK(f.concepts.size() <= 3);
      CHECK(f.content.size() >= 50);
      CHECK(f.content.size() <= 2000);
      for (const auto& c : f.concepts) CHECK(known.count(c) == 1);
    }
  }
}

TEST_CASE("every generated document parses as XML") {
  TaxonomyFixture tax = builtin_taxonomy();
  for (const auto& d : generate_corpus(7, 30, tax)) {
    xml::XmlDocument doc = xml::parse_xml(serialize_document(d));
    CHECK(doc->name == "document");
    CHECK_NOTHROW(adhoc_parse(*doc));
  }
}

TEST_CASE("adhoc parser emits the document model") {
  LegalDocument d;
  d.id = "77";
  d.keywords = {"  fristlose   K\xC3\xBCndigung ", "Urteil"};
  d.concepts = {"http://taxonomy.wolterskluwer.de/law/10001"};
  Fragment f;
  f.id = "f1";
  f.type_code = "tenor";
  f.keywords = {"Revision"};
  f.concepts = {"http://taxonomy.wolterskluwer.de/law/10002"};
  f.content = "A<em>B</em>C";
  d.fragments = {f};

  xml::XmlDocument doc = xml::parse_xml(serialize_document(d));
  rdf::Graph g = adhoc_parse(*doc);

  const std::string sd = "http://data.example/doc/77";
  const std::string sf = sd + "/fragment/f1";
  const std::string st = "http://data.example/fragment-type/tenor";
  CHECK(g.contains(t_iri(sd, kRdfType, vocab::manifestation)));
  CHECK(g.contains(t_lit(sd, vocab::has_keyword, "fristlose K\xC3\xBCndigung")));
  CHECK(g.contains(t_lit(sd, vocab::has_keyword, "Urteil")));
  CHECK(g.contains(t_iri(sd, vocab::subject, "http://taxonomy.wolterskluwer.de/law/10001")));
  CHECK(g.contains(t_iri(sd, vocab::has_fragment, sf)));
  CHECK(g.contains(t_iri(sf, kRdfType, vocab::fragment)));
  CHECK(g.contains(t_iri(sf, vocab::is_fragment_of, sd)));
  // nested markup contributes its text to the single content literal
  CHECK(g.contains(t_lit(sf, vocab::has_content, "ABC")));
  CHECK(g.contains(t_lit(sf, vocab::has_keyword, "Revision")));
  CHECK(g.contains(t_iri(sf, vocab::subject, "http://taxonomy.wolterskluwer.de/law/10002")));
  CHECK(g.contains(t_iri(sf, vocab::type, st)));
  CHECK(g.contains(t_iri(st, kRdfType, vocab::fragment_type)));
  CHECK(g.size() == 12);
}

TEST_CASE("adhoc parser rejects nonconforming input") {
  auto parse_and_run = [](const std::string& text) {
    xml::XmlDocument doc = xml::parse_xml(text);
    return adhoc_parse(*doc);
  };
  CHECK_THROWS_AS(parse_and_run("<notdocument id=\"1\"/>"), SchemaViolationError);
  CHECK_THROWS_AS(parse_and_run("<document/>"), SchemaViolationError);
  CHECK_THROWS_AS(parse_and_run("<document id=\"1\"><metadata/><metadata/><fragment id=\"f1\" type=\"tenor\"/></document>"),
                  SchemaViolationError);
  CHECK_THROWS_AS(parse_and_run("<document id=\"1\"><metadata/><surprise/></document>"),
                  SchemaViolationError);
  CHECK_THROWS_AS(parse_and_run("<document id=\"1\"><metadata/><fragment type=\"tenor\"/></document>"),
                  SchemaViolationError);
  CHECK_THROWS_AS(
      parse_and_run("<document id=\"1\"><metadata><concept uri=\"not an iri\"/></metadata>"
                    "<fragment id=\"f1\" type=\"tenor\"/></document>"),
      SchemaViolationError);
}

TEST_CASE("engine output equals the adhoc baseline") {
  TaxonomyFixture tax = builtin_taxonomy();
  std::vector<LegalDocument> corpus = generate_corpus(11, 25, tax);
  rdf::Graph engine_g = engine_graph(corpus);
  rdf::Graph adhoc_g = adhoc_graph(corpus);
  CHECK(engine_g.size() == adhoc_g.size());
  CHECK(rdf::graph_equal(engine_g, adhoc_g));
  CHECK(rdf::serialize_ntriples(engine_g) == rdf::serialize_ntriples(adhoc_g));
}

TEST_CASE("match_pattern filters on any combination of constants") {
  rdf::Graph g;
  g.insert(t_iri("http://s/1", "http://p/1", "http://o/1"));
  g.insert(t_iri("http://s/1", "http://p/2", "http://o/2"));
  g.insert(t_lit("http://s/2", "http://p/1", "v"));

  CHECK(match_pattern(g, std::nullopt, std::nullopt, std::nullopt).size() == 3);
  CHECK(match_pattern(g, rdf::make_iri("http://s/1"), std::nullopt, std::nullopt).size() == 2);
  CHECK(match_pattern(g, std::nullopt, rdf::make_iri("http://p/1"), std::nullopt).size() == 2);
  CHECK(match_pattern(g, std::nullopt, std::nullopt, rdf::make_literal("v")).size() == 1);
  CHECK(match_pattern(g, rdf::make_iri("http://s/1"), rdf::make_iri("http://p/2"),
                      rdf::make_iri("http://o/2")).size() == 1);
  CHECK(match_pattern(g, rdf::make_iri("http://s/9"), std::nullopt, std::nullopt).empty());

  // results are deterministically ordered
  auto all = match_pattern(g, std::nullopt, std::nullopt, std::nullopt);
  auto again = match_pattern(g, std::nullopt, std::nullopt, std::nullopt);
  CHECK(all == again);
  CHECK(rdf::to_ntriples(all[0].subject) <= rdf::to_ntriples(all[1].subject));
}

TEST_CASE("documents_for_concept follows the published query shape") {
  rdf::Graph g;
  const std::string c1 = "http://t/c1";
  const std::string c2 = "http://t/c2";
  auto frag = [&](const std::string& f, const std::string& d) {
    g.insert(t_iri(f, kRdfType, vocab::fragment));
    g.insert(t_iri(f, vocab::is_fragment_of, d));
  };
  // d1: fragment-level annotation
  frag("http://x/f1", "http://x/d1");
  g.insert(t_iri("http://x/f1", vocab::subject, c1));
  // d2: document-level annotation
  frag("http://x/f2", "http://x/d2");
  g.insert(t_iri("http://x/d2", vocab::subject, c1));
  // d3: fragment annotated with the narrower concept only
  frag("http://x/f3", "http://x/d3");
  g.insert(t_iri("http://x/f3", vocab::subject, c2));
  g.insert(t_iri(c1, vocab::narrower, c2));
  // d4: annotated but has no fragment -> never matches the query
  g.insert(t_iri("http://x/d4", vocab::subject, c1));
  // d5: annotated fragment that lacks the Fragment type -> not matched
  g.insert(t_iri("http://x/f5", vocab::is_fragment_of, "http://x/d5"));
  g.insert(t_iri("http://x/f5", vocab::subject, c1));

  std::set<std::string> direct = documents_for_concept(g, c1, false);
  CHECK(direct == std::set<std::string>{"http://x/d1", "http://x/d2"});

  std::set<std::string> expanded = documents_for_concept(g, c1, true);
  CHECK(expanded == std::set<std::string>{"http://x/d1", "http://x/d2", "http://x/d3"});

  // narrower=false is always a subset of narrower=true
  CHECK(std::includes(expanded.begin(), expanded.end(), direct.begin(), direct.end()));

  CHECK(documents_for_concept(g, "http://t/unused", false).empty());
  // expansion is one hop only: c2's own children would need a c2 edge
  CHECK(documents_for_concept(g, c2, true) == std::set<std::string>{"http://x/d3"});
}
