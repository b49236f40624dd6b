#include "uplift/legal.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace uplift::legal {

// --- reference mapping -------------------------------------------------------

const std::string& reference_mapping_text() {
  static const std::string text = R"ttl(@prefix rr: <http://www.w3.org/ns/r2rml#> .
@prefix rml: <http://semweb.mmlab.be/ns/rml#> .
@prefix ql: <http://semweb.mmlab.be/ns/ql#> .
@prefix map: <http://data.example/mapping/> .
@prefix pcicore: <http://onto.wolterskluwer.com/pci/core/> .
@prefix dcterms: <http://purl.org/dc/terms/> .
@prefix frbr: <http://purl.org/vocab/frbr/core#> .
@prefix ufn: <http://uplift.example/fn/> .

map:document
  rml:logicalSource [
    rml:source "corpus" ;
    rml:referenceFormulation ql:XPath ;
    rml:iterator "/document"
  ] ;
  rr:subjectMap [
    rr:template "http://data.example/doc/{@id}" ;
    rr:class frbr:Manifestation
  ] ;
  rr:predicateObjectMap [
    rr:predicate pcicore:hasKeyword ;
    rr:objectMap [
      rml:functionValue [
        rml:function ufn:normalizeSpace ;
        rml:parameter [ rml:reference "metadata/keyword/text()" ]
      ]
    ]
  ] ;
  rr:predicateObjectMap [
    rr:predicate dcterms:subject ;
    rr:objectMap [ rml:reference "metadata/concept/@uri" ; rr:termType rr:IRI ]
  ] ;
  rr:predicateObjectMap [
    rr:predicate pcicore:hasFragment ;
    rr:objectMap [ rr:template "http://data.example/doc/{@id}/fragment/{fragment/@id}" ]
  ] .

map:fragment
  rml:logicalSource [
    rml:source "corpus" ;
    rml:referenceFormulation ql:XPath ;
    rml:iterator "/document/fragment"
  ] ;
  rr:subjectMap [
    rr:template "http://data.example/doc/{/document/@id}/fragment/{@id}" ;
    rr:class pcicore:Fragment
  ] ;
  rr:predicateObjectMap [
    rr:predicate pcicore:isFragmentOf ;
    rr:objectMap [ rr:template "http://data.example/doc/{/document/@id}" ]
  ] ;
  rr:predicateObjectMap [
    rr:predicate pcicore:hasContent ;
    rr:objectMap [
      rml:functionValue [
        rml:function ufn:normalizeSpace ;
        rml:parameter [ rml:reference "content/string()" ]
      ]
    ]
  ] ;
  rr:predicateObjectMap [
    rr:predicate pcicore:hasKeyword ;
    rr:objectMap [
      rml:functionValue [
        rml:function ufn:normalizeSpace ;
        rml:parameter [ rml:reference "keyword/text()" ]
      ]
    ]
  ] ;
  rr:predicateObjectMap [
    rr:predicate dcterms:subject ;
    rr:objectMap [ rml:reference "concept/@uri" ; rr:termType rr:IRI ]
  ] ;
  rr:predicateObjectMap [
    rr:predicate dcterms:type ;
    rr:objectMap [
      rr:parentTriplesMap map:fragmentType ;
      rr:joinCondition [ rr:child "@type" ; rr:parent "@type" ]
    ]
  ] .

map:fragmentType
  rml:logicalSource [
    rml:source "corpus" ;
    rml:referenceFormulation ql:XPath ;
    rml:iterator "/document/fragment"
  ] ;
  rr:subjectMap [
    rr:template "http://data.example/fragment-type/{@type}" ;
    rr:class pcicore:FragmentType
  ] .
)ttl";
  return text;
}

rml::MappingDocument reference_mapping() { return rml::parse_mapping(reference_mapping_text()); }

// --- taxonomy ----------------------------------------------------------------

TaxonomyFixture builtin_taxonomy() {
  TaxonomyFixture t;
  auto iri = [](int n) { return vocab::wkd_law_ns + std::to_string(n); };
  for (int i = 0; i < 10; ++i) t.concepts.push_back(iri(10000 + i));  // top level
  for (int i = 0; i < 20; ++i) t.concepts.push_back(iri(10010 + i));  // middle level
  for (int i = 0; i < 20; ++i) t.concepts.push_back(iri(10030 + i));  // leaf level
  for (int i = 0; i < 20; ++i) t.narrower_edges.emplace_back(iri(10000 + i % 10), iri(10010 + i));
  for (int i = 0; i < 20; ++i) t.narrower_edges.emplace_back(iri(10010 + i), iri(10030 + i));
  for (int i = 0; i < 20; ++i) t.narrower_edges.emplace_back(iri(10010 + i), iri(10030 + (i + 7) % 20));
  return t;
}

namespace {

void check_acyclic(const std::vector<std::pair<std::string, std::string>>& edges) {
  std::unordered_map<std::string, std::vector<const std::string*>> adj;
  std::unordered_set<std::string> nodes;
  for (const auto& [from, to] : edges) {
    adj[from].push_back(&to);
    nodes.insert(from);
    nodes.insert(to);
  }
  // iterative DFS, 0 = unseen, 1 = on stack, 2 = done
  std::unordered_map<std::string, int> state;
  for (const auto& start : nodes) {
    if (state[start] != 0) continue;
    std::vector<std::pair<const std::string*, std::size_t>> stack{{&start, 0}};
    state[start] = 1;
    while (!stack.empty()) {
      auto& [node, child] = stack.back();
      auto it = adj.find(*node);
      if (it == adj.end() || child >= it->second.size()) {
        state[*node] = 2;
        stack.pop_back();
        continue;
      }
      const std::string* nxt = it->second[child++];
      int s = state[*nxt];
      if (s == 1) throw CycleError("taxonomy edges form a cycle through " + *nxt);
      if (s == 0) {
        state[*nxt] = 1;
        stack.emplace_back(nxt, 0);
      }
    }
  }
}

}  // namespace

TaxonomyFixture load_taxonomy(std::string_view ntriples) {
  rdf::Graph g = rdf::parse_ntriples(ntriples);
  const rdf::RdfTerm type_pred{rdf::TermKind::Iri, rml::vocab::rdf_type, "", ""};
  const rdf::RdfTerm concept_class{rdf::TermKind::Iri, vocab::concept_class, "", ""};
  const rdf::RdfTerm narrower_pred{rdf::TermKind::Iri, vocab::narrower, "", ""};
  const rdf::RdfTerm broader_pred{rdf::TermKind::Iri, vocab::broader, "", ""};

  TaxonomyFixture t;
  for (const rdf::Triple& tr : g) {
    if (tr.subject.kind != rdf::TermKind::Iri) continue;
    if (tr.predicate == type_pred && tr.object == concept_class) {
      t.concepts.push_back(tr.subject.value);
    } else if (tr.object.kind == rdf::TermKind::Iri) {
      if (tr.predicate == narrower_pred) {
        t.narrower_edges.emplace_back(tr.subject.value, tr.object.value);
      } else if (tr.predicate == broader_pred) {
        t.narrower_edges.emplace_back(tr.object.value, tr.subject.value);
      }
    }
  }
  std::sort(t.concepts.begin(), t.concepts.end());
  t.concepts.erase(std::unique(t.concepts.begin(), t.concepts.end()), t.concepts.end());
  std::sort(t.narrower_edges.begin(), t.narrower_edges.end());
  t.narrower_edges.erase(std::unique(t.narrower_edges.begin(), t.narrower_edges.end()),
                         t.narrower_edges.end());
  check_acyclic(t.narrower_edges);
  return t;
}

std::string serialize_taxonomy(const TaxonomyFixture& t) {
  rdf::Graph g;
  const rdf::RdfTerm type_pred = rdf::make_iri(rml::vocab::rdf_type);
  const rdf::RdfTerm concept_class = rdf::make_iri(vocab::concept_class);
  const rdf::RdfTerm narrower_pred = rdf::make_iri(vocab::narrower);
  for (const auto& c : t.concepts) {
    g.insert(rdf::Triple{rdf::make_iri(c), type_pred, concept_class});
  }
  for (const auto& [broader, narrower] : t.narrower_edges) {
    g.insert(rdf::Triple{rdf::make_iri(broader), narrower_pred, rdf::make_iri(narrower)});
  }
  return rdf::serialize_ntriples(g);
}

// --- corpus generator ---------------------------------------------------------

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Deterministic sampling helper. std::mt19937_64's output sequence is fixed
// by the standard; the distributions here are hand-rolled because the
// standard library's are not portable across implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) {  // uniform in [0, n)
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  bool chance(std::uint64_t percent) { return below(100) < percent; }

 private:
  std::mt19937_64 engine_;
};

const std::vector<std::string>& word_pool() {
  static const std::vector<std::string> words = {
      "Kündigung",    "fristlos",       "Urteil",            "Berufung",       "Revision",
      "Mietvertrag",  "Arbeitsverhältnis", "Klägerin",       "Beklagte",       "Schadensersatz",
      "Vertragsverletzung", "Widerruf", "Vollstreckung",     "Gericht",        "Senat",
      "Beschluss",    "Verhandlung",    "Anspruch",          "Frist",          "Zustellung",
      "Räumung",      "Abmahnung",      "Widerspruch",       "Rechtsmittel",   "Tatbestand",
      "Entscheidungsgründe", "Kostenentscheidung", "Streitwert", "Sicherheitsleistung", "vorläufig",
      "vollstreckbar", "Paragraph",     "Absatz",            "Gesetzbuch",     "Verfahren",
      "Antragsteller", "Antragsgegner", "Nebenkosten",       "Betriebskosten", "Wohnraum",
      "Zahlungsverzug", "Mahnung",      "Auflösung",         "unwirksam",      "rechtskräftig",
      "Einspruch",    "Klage",          "Verjährung"};
  return words;
}

const std::vector<std::string>& fragment_types() {
  static const std::vector<std::string> types = {"tenor", "tatbestand", "gruende", "leitsatz"};
  return types;
}

const std::string& pick_word(Rng& rng) {
  const auto& pool = word_pool();
  return pool[rng.below(pool.size())];
}

// whitespace runs, mostly a single space
std::string pick_separator(Rng& rng) {
  std::uint64_t roll = rng.below(100);
  if (roll < 78) return " ";
  if (roll < 86) return "  ";
  if (roll < 93) return " \n   ";
  if (roll < 97) return "\t";
  return "\n\t ";
}

std::string make_keyword(Rng& rng) {
  std::string out;
  if (rng.chance(25)) out += "  ";
  std::uint64_t words = rng.range(1, 3);
  for (std::uint64_t i = 0; i < words; ++i) {
    if (i > 0) out += pick_separator(rng);
    out += pick_word(rng);
  }
  if (rng.chance(25)) out += " \n";
  return out;
}

std::string make_content(Rng& rng) {
  const std::uint64_t target = rng.range(120, 1880);  // bytes, incl. markup
  std::string out = pick_word(rng);
  while (out.size() < target) {
    out += pick_separator(rng);
    std::uint64_t roll = rng.below(100);
    if (roll < 10) {
      out += "<em>" + pick_word(rng);
      if (rng.chance(40)) out += " " + pick_word(rng);
      out += "</em>";
    } else if (roll < 16) {
      std::string num = std::to_string(rng.below(100000));
      if (rng.chance(50)) {
        out += "<ref target=\"doc-" + num + "\"/>";
      } else {
        out += "<ref target=\"doc-" + num + "\">" + pick_word(rng) + "</ref>";
      }
    } else {
      out += pick_word(rng);
    }
  }
  if (rng.chance(20)) out.insert(0, " \n  ");
  if (rng.chance(20)) out += "  \n";
  return out;
}

std::vector<std::string> pick_concepts(Rng& rng, const TaxonomyFixture& taxonomy, std::uint64_t max_count) {
  std::vector<std::string> out;
  if (taxonomy.concepts.empty()) return out;
  std::uint64_t count = std::min<std::uint64_t>(rng.below(max_count + 1), taxonomy.concepts.size());
  std::vector<std::size_t> idx(taxonomy.concepts.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::uint64_t k = 0; k < count; ++k) {
    std::size_t j = k + rng.below(idx.size() - k);
    std::swap(idx[k], idx[j]);
    out.push_back(taxonomy.concepts[idx[k]]);
  }
  return out;
}

LegalDocument make_document(std::uint64_t seed, std::uint64_t index, const TaxonomyFixture& taxonomy) {
  Rng rng(mix64(seed + (index + 1) * 0x9E3779B97F4A7C15ull));
  LegalDocument d;
  d.id = std::to_string(100000 + index);

  std::uint64_t n_keywords = rng.range(1, 8);
  for (std::uint64_t i = 0; i < n_keywords; ++i) d.keywords.push_back(make_keyword(rng));
  d.concepts = pick_concepts(rng, taxonomy, 5);

  std::uint64_t n_fragments = rng.range(1, 12);
  for (std::uint64_t i = 0; i < n_fragments; ++i) {
    Fragment f;
    f.id = "f" + std::to_string(i + 1);
    f.type_code = fragment_types()[rng.below(fragment_types().size())];
    std::uint64_t fk = rng.below(5);
    for (std::uint64_t k = 0; k < fk; ++k) f.keywords.push_back(make_keyword(rng));
    f.concepts = pick_concepts(rng, taxonomy, 3);
    f.content = make_content(rng);
    d.fragments.push_back(std::move(f));
  }
  return d;
}

}  // namespace

std::vector<LegalDocument> generate_corpus(std::uint64_t seed, std::size_t n_docs,
                                           const TaxonomyFixture& taxonomy) {
  std::vector<LegalDocument> corpus;
  corpus.reserve(n_docs);
  for (std::size_t i = 0; i < n_docs; ++i) {
    corpus.push_back(make_document(seed, i, taxonomy));
  }
  return corpus;
}

// --- XML serialization ---------------------------------------------------------

namespace {

void escape_text_into(const std::string& in, std::string& out) {
  for (char c : in) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
}

void escape_attr_into(const std::string& in, std::string& out) {
  for (char c : in) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
}

}  // namespace

std::string serialize_document(const LegalDocument& d) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<document id=\"";
  escape_attr_into(d.id, out);
  out += "\">\n  <metadata>\n";
  for (const auto& k : d.keywords) {
    out += "    <keyword>";
    escape_text_into(k, out);
    out += "</keyword>\n";
  }
  for (const auto& c : d.concepts) {
    out += "    <concept uri=\"";
    escape_attr_into(c, out);
    out += "\"/>\n";
  }
  out += "  </metadata>\n";
  for (const auto& f : d.fragments) {
    out += "  <fragment id=\"";
    escape_attr_into(f.id, out);
    out += "\" type=\"";
    escape_attr_into(f.type_code, out);
    out += "\">\n";
    for (const auto& k : f.keywords) {
      out += "    <keyword>";
      escape_text_into(k, out);
      out += "</keyword>\n";
    }
    for (const auto& c : f.concepts) {
      out += "    <concept uri=\"";
      escape_attr_into(c, out);
      out += "\"/>\n";
    }
    out += "    <content>" + f.content + "</content>\n  </fragment>\n";
  }
  out += "</document>\n";
  return out;
}

// --- ad-hoc baseline parser ----------------------------------------------------

namespace {

// The baseline deliberately reimplements value handling with plain loops so
// it shares no selection/normalization code with the mapping engine.

bool plain_name_chars(const std::string& s) {
  if (s.empty()) return false;
  for (unsigned char c : s) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
              c == '-' || c == '.' || c == '_' || c == '~';
    if (!ok) return false;
  }
  return true;
}

std::string squeeze_whitespace(const std::string& in) {
  std::string out;
  out.reserve(in.size());
  bool pending = false;
  for (char c : in) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      pending = !out.empty();
      continue;
    }
    if (pending) out += ' ';
    pending = false;
    out += c;
  }
  return out;
}

void collect_text(const xml::XmlNode& node, std::string& out) {
  for (const auto& child : node.children) {
    if (child->kind == xml::NodeKind::Text) {
      out += child->value;
    } else if (child->kind == xml::NodeKind::Element) {
      collect_text(*child, out);
    }
  }
}

std::string required_attr(const xml::XmlNode& el, const char* name) {
  const xml::XmlNode* attr = el.attribute(name);
  if (attr == nullptr) {
    throw SchemaViolationError("<" + el.name + "> lacks the " + name + " attribute");
  }
  if (!plain_name_chars(attr->value)) {
    throw SchemaViolationError("<" + el.name + "> has a malformed " + name + " attribute: \"" +
                               attr->value + "\"");
  }
  return attr->value;
}

struct ModelTerms {
  rdf::RdfTerm rdf_type = rdf::make_iri(rml::vocab::rdf_type);
  rdf::RdfTerm manifestation = rdf::make_iri(vocab::manifestation);
  rdf::RdfTerm fragment = rdf::make_iri(vocab::fragment);
  rdf::RdfTerm fragment_type = rdf::make_iri(vocab::fragment_type);
  rdf::RdfTerm has_keyword = rdf::make_iri(vocab::has_keyword);
  rdf::RdfTerm has_content = rdf::make_iri(vocab::has_content);
  rdf::RdfTerm has_fragment = rdf::make_iri(vocab::has_fragment);
  rdf::RdfTerm is_fragment_of = rdf::make_iri(vocab::is_fragment_of);
  rdf::RdfTerm subject = rdf::make_iri(vocab::subject);
  rdf::RdfTerm type = rdf::make_iri(vocab::type);
};

const ModelTerms& model_terms() {
  static const ModelTerms terms;
  return terms;
}

rdf::RdfTerm concept_iri(const xml::XmlNode& concept_el) {
  const xml::XmlNode* uri = concept_el.attribute("uri");
  if (uri == nullptr) throw SchemaViolationError("<concept> lacks the uri attribute");
  try {
    return rdf::make_iri(uri->value);
  } catch (const Error& e) {
    throw SchemaViolationError("<concept> uri is not an IRI: " + std::string(e.what()));
  }
}

void emit_keywords(const xml::XmlNode& parent, const rdf::RdfTerm& subject, rdf::Graph& g) {
  const ModelTerms& m = model_terms();
  for (const auto& child : parent.children) {
    if (child->kind != xml::NodeKind::Element || child->name != "keyword") continue;
    for (const auto& text : child->children) {
      if (text->kind != xml::NodeKind::Text) continue;
      g.insert(rdf::Triple{subject, m.has_keyword, rdf::make_literal(squeeze_whitespace(text->value))});
    }
  }
}

void emit_concepts(const xml::XmlNode& parent, const rdf::RdfTerm& subject, rdf::Graph& g) {
  const ModelTerms& m = model_terms();
  for (const auto& child : parent.children) {
    if (child->kind != xml::NodeKind::Element || child->name != "concept") continue;
    g.insert(rdf::Triple{subject, m.subject, concept_iri(*child)});
  }
}

}  // namespace

rdf::Graph adhoc_parse(const xml::XmlNode& doc) {
  const ModelTerms& m = model_terms();
  rdf::Graph g;

  if (doc.kind != xml::NodeKind::Element || doc.name != "document") {
    throw SchemaViolationError("root element must be <document>");
  }
  const std::string doc_id = required_attr(doc, "id");
  const rdf::RdfTerm doc_subject = rdf::make_iri(vocab::doc_base + doc_id);
  g.insert(rdf::Triple{doc_subject, m.rdf_type, m.manifestation});

  bool saw_metadata = false;
  for (const auto& child : doc.children) {
    if (child->kind != xml::NodeKind::Element) continue;
    if (child->name == "metadata") {
      if (saw_metadata) throw SchemaViolationError("more than one <metadata> element");
      saw_metadata = true;
      emit_keywords(*child, doc_subject, g);
      emit_concepts(*child, doc_subject, g);
    } else if (child->name == "fragment") {
      const std::string frag_id = required_attr(*child, "id");
      const std::string type_code = required_attr(*child, "type");
      const rdf::RdfTerm frag_subject =
          rdf::make_iri(vocab::doc_base + doc_id + "/fragment/" + frag_id);
      const rdf::RdfTerm type_subject = rdf::make_iri(vocab::fragment_type_base + type_code);

      g.insert(rdf::Triple{doc_subject, m.has_fragment, frag_subject});
      g.insert(rdf::Triple{frag_subject, m.rdf_type, m.fragment});
      g.insert(rdf::Triple{frag_subject, m.is_fragment_of, doc_subject});
      g.insert(rdf::Triple{frag_subject, m.type, type_subject});
      g.insert(rdf::Triple{type_subject, m.rdf_type, m.fragment_type});

      emit_keywords(*child, frag_subject, g);
      emit_concepts(*child, frag_subject, g);
      for (const auto& sub : child->children) {
        if (sub->kind != xml::NodeKind::Element || sub->name != "content") continue;
        std::string text;
        collect_text(*sub, text);
        g.insert(rdf::Triple{frag_subject, m.has_content, rdf::make_literal(squeeze_whitespace(text))});
      }
    } else {
      throw SchemaViolationError("unexpected element <" + child->name + "> under <document>");
    }
  }
  if (!saw_metadata) throw SchemaViolationError("missing <metadata> element");
  return g;
}

// --- graph queries -------------------------------------------------------------

std::vector<rdf::Triple> match_pattern(const rdf::Graph& g, const std::optional<rdf::RdfTerm>& s,
                                       const std::optional<rdf::RdfTerm>& p,
                                       const std::optional<rdf::RdfTerm>& o) {
  std::vector<rdf::Triple> out;
  for (const rdf::Triple& t : g) {
    if (s && !(t.subject == *s)) continue;
    if (p && !(t.predicate == *p)) continue;
    if (o && !(t.object == *o)) continue;
    out.push_back(t);
  }
  auto key = [](const rdf::Triple& t) {
    return rdf::to_ntriples(t.subject) + " " + rdf::to_ntriples(t.predicate) + " " +
           rdf::to_ntriples(t.object);
  };
  std::sort(out.begin(), out.end(),
            [&](const rdf::Triple& a, const rdf::Triple& b) { return key(a) < key(b); });
  return out;
}

std::set<std::string> documents_for_concept(const rdf::Graph& g, const std::string& concept_iri,
                                            bool include_narrower) {
  const ModelTerms& m = model_terms();
  const rdf::RdfTerm wanted{rdf::TermKind::Iri, concept_iri, "", ""};

  std::unordered_set<rdf::RdfTerm, rdf::TermHash> targets;
  targets.insert(wanted);
  if (include_narrower) {
    const rdf::RdfTerm narrower_pred{rdf::TermKind::Iri, vocab::narrower, "", ""};
    for (const rdf::Triple& t : g) {
      if (t.predicate == narrower_pred && t.subject == wanted) targets.insert(t.object);
    }
  }

  std::unordered_set<rdf::RdfTerm, rdf::TermHash> fragments;  // typed pcicore:Fragment
  std::unordered_set<rdf::RdfTerm, rdf::TermHash> annotated;  // carry dcterms:subject in targets
  std::vector<std::pair<const rdf::RdfTerm*, const rdf::RdfTerm*>> fragment_of;  // (fragment, document)
  for (const rdf::Triple& t : g) {
    if (t.predicate == m.rdf_type && t.object == m.fragment) {
      fragments.insert(t.subject);
    } else if (t.predicate == m.is_fragment_of) {
      fragment_of.emplace_back(&t.subject, &t.object);
    } else if (t.predicate == m.subject && targets.contains(t.object)) {
      annotated.insert(t.subject);
    }
  }

  std::set<std::string> out;
  for (const auto& [frag, doc] : fragment_of) {
    if (doc->kind != rdf::TermKind::Iri) continue;
    if (!fragments.contains(*frag)) continue;
    if (annotated.contains(*frag) || annotated.contains(*doc)) out.insert(doc->value);
  }
  return out;
}

}  // namespace uplift::legal
