#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uplift/mapping.hpp"
#include "uplift/rdf.hpp"
#include "uplift/xml.hpp"

namespace uplift::legal {

// Vocabulary of the legal-document model.
namespace vocab {
inline const std::string pcicore_ns = "http://onto.wolterskluwer.com/pci/core/";
inline const std::string dcterms_ns = "http://purl.org/dc/terms/";
inline const std::string skos_ns = "http://www.w3.org/2004/02/skos/core#";
inline const std::string frbr_ns = "http://purl.org/vocab/frbr/core#";
inline const std::string wkd_law_ns = "http://taxonomy.wolterskluwer.de/law/";

inline const std::string fragment = pcicore_ns + "Fragment";
inline const std::string fragment_type = pcicore_ns + "FragmentType";
inline const std::string has_content = pcicore_ns + "hasContent";
inline const std::string is_fragment_of = pcicore_ns + "isFragmentOf";
inline const std::string has_fragment = pcicore_ns + "hasFragment";
inline const std::string has_keyword = pcicore_ns + "hasKeyword";
inline const std::string subject = dcterms_ns + "subject";
inline const std::string type = dcterms_ns + "type";
inline const std::string concept_class = skos_ns + "Concept";
inline const std::string narrower = skos_ns + "narrower";
inline const std::string broader = skos_ns + "broader";
inline const std::string manifestation = frbr_ns + "Manifestation";

// instance namespaces used by the reference mapping
inline const std::string doc_base = "http://data.example/doc/";
inline const std::string fragment_type_base = "http://data.example/fragment-type/";
}  // namespace vocab

struct Fragment {
  std::string id;         // unique within its document
  std::string type_code;  // e.g. "tenor", "tatbestand"
  std::vector<std::string> keywords;
  std::vector<std::string> concepts;  // concept IRIs
  std::string content;                // marked-up text with inline <em>/<ref>

  friend bool operator==(const Fragment&, const Fragment&) = default;
};

struct LegalDocument {
  std::string id;  // unique within a corpus
  std::vector<std::string> keywords;
  std::vector<std::string> concepts;  // concept IRIs
  std::vector<Fragment> fragments;

  friend bool operator==(const LegalDocument&, const LegalDocument&) = default;
};

struct TaxonomyFixture {
  std::vector<std::string> concepts;                                // concept IRIs
  std::vector<std::pair<std::string, std::string>> narrower_edges;  // (broader, narrower)

  friend bool operator==(const TaxonomyFixture&, const TaxonomyFixture&) = default;
};

// The mapping that realizes the document model: a document map
// (frbr:Manifestation subjects with keywords, concept annotations, and
// fragment links), a fragment map (pcicore:Fragment subjects with content,
// keywords, annotations, the isFragmentOf backlink, and a join-based link to
// the fragment-type resource), and a fragment-type map.
const std::string& reference_mapping_text();  // Turtle source
rml::MappingDocument reference_mapping();

// 50 concepts under the wkd-law namespace, 60 narrower edges, three levels.
TaxonomyFixture builtin_taxonomy();

// Deterministic synthetic corpus: per document 1-8 keywords, 0-5 concept
// annotations, 1-12 typed fragments with mixed-markup content and irregular
// whitespace. The same (seed, n_docs, taxonomy) always yields the same
// corpus.
std::vector<LegalDocument> generate_corpus(std::uint64_t seed, std::size_t n_docs,
                                           const TaxonomyFixture& taxonomy);

std::string serialize_document(const LegalDocument& d);

// Hand-coded baseline parser: emits exactly the triples the reference
// mapping specifies, computed by direct traversal with no mapping/XPath
// machinery. Serves as the oracle for engine equivalence and as the
// benchmark baseline. Throws SchemaViolationError on nonconforming input.
rdf::Graph adhoc_parse(const xml::XmlNode& doc);

// Taxonomy round-trip via N-Triples: concepts are the subjects typed
// skos:Concept; skos:narrower triples contribute edges, skos:broader the
// reversed edge. Throws CycleError when the edges are cyclic.
TaxonomyFixture load_taxonomy(std::string_view ntriples);
std::string serialize_taxonomy(const TaxonomyFixture& t);

// All triples matching the given constants (absent = wildcard).
std::vector<rdf::Triple> match_pattern(const rdf::Graph& g, const std::optional<rdf::RdfTerm>& s,
                                       const std::optional<rdf::RdfTerm>& p,
                                       const std::optional<rdf::RdfTerm>& o);

// The concept-search query: document IRIs d with a Fragment-typed f where
// (f isFragmentOf d) and either f or d is annotated (dcterms:subject) with
// the concept — or, when include_narrower is set, with any one-hop
// skos:narrower child of it present in the graph.
std::set<std::string> documents_for_concept(const rdf::Graph& g, const std::string& concept_iri,
                                            bool include_narrower);

}  // namespace uplift::legal
