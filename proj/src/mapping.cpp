#include "uplift/mapping.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

#include "uplift/template.hpp"
#include "uplift/xpath.hpp"

namespace uplift::rml {

bool operator==(const TermMap& a, const TermMap& b) {
  if (a.kind != b.kind || a.constant != b.constant || a.reference != b.reference ||
      a.template_text != b.template_text || a.term_type != b.term_type || a.datatype != b.datatype ||
      a.language != b.language) {
    return false;
  }
  if (static_cast<bool>(a.function_call) != static_cast<bool>(b.function_call)) return false;
  if (a.function_call && !(*a.function_call == *b.function_call)) return false;
  return true;
}

const TriplesMap* MappingDocument::find_triples_map(std::string_view id) const {
  for (const auto& tm : triples_maps) {
    if (tm.id == id) return &tm;
  }
  return nullptr;
}

namespace {

using turtle::Statement;

const std::string kRdfType = vocab::rdf_type;

std::string rml(const char* local) { return vocab::rml_ns + local; }
std::string rr(const char* local) { return vocab::rr_ns + local; }

bool in_mapping_namespaces(const std::string& iri) {
  return iri.starts_with(vocab::rml_ns) || iri.starts_with(vocab::rr_ns);
}

std::string node_key(const rdf::RdfTerm& t) {
  return (t.kind == rdf::TermKind::Iri ? "I" : "B") + t.value;
}

enum class Role { Subject, Predicate, Object, Parameter };

// Indexed view over the parsed statements, preserving document order.
class Extractor {
 public:
  explicit Extractor(const turtle::TurtleDocument& doc) : doc_(doc) {
    for (const auto& st : doc.statements) {
      by_subject_[node_key(st.subject)].push_back(&st);
    }
  }

  MappingDocument extract() {
    MappingDocument out;
    out.prefixes = doc_.prefixes;

    // Triples maps are subjects carrying rml:logicalSource, in document order.
    std::vector<const rdf::RdfTerm*> map_nodes;
    std::unordered_set<std::string> seen;
    for (const auto& st : doc_.statements) {
      if (st.predicate.value == rml("logicalSource") || st.predicate.value == rr("subjectMap")) {
        if (seen.insert(node_key(st.subject)).second) map_nodes.push_back(&st.subject);
      }
    }
    for (const rdf::RdfTerm* node : map_nodes) {
      out.triples_maps.push_back(extract_triples_map(*node));
    }
    return out;
  }

 private:
  std::vector<const Statement*> statements_of(const rdf::RdfTerm& node) const {
    auto it = by_subject_.find(node_key(node));
    if (it == by_subject_.end()) return {};
    return it->second;
  }

  std::vector<const rdf::RdfTerm*> objects_of(const rdf::RdfTerm& node, const std::string& predicate) const {
    std::vector<const rdf::RdfTerm*> out;
    for (const Statement* st : statements_of(node)) {
      if (st->predicate.value == predicate) out.push_back(&st->object);
    }
    return out;
  }

  const rdf::RdfTerm* optional_object(const rdf::RdfTerm& node, const std::string& predicate,
                                      const std::string& what) const {
    auto objs = objects_of(node, predicate);
    if (objs.empty()) return nullptr;
    if (objs.size() > 1) throw StructuralError("more than one " + what);
    return objs[0];
  }

  static std::string require_string(const rdf::RdfTerm& t, const std::string& what) {
    if (t.kind != rdf::TermKind::Literal) throw StructuralError(what + " must be a string literal");
    return t.value;
  }

  static std::string require_iri(const rdf::RdfTerm& t, const std::string& what) {
    if (t.kind != rdf::TermKind::Iri) throw StructuralError(what + " must be an IRI");
    return t.value;
  }

  // Rejects unsupported rr:/rml: properties on a structural node.
  void check_vocabulary(const rdf::RdfTerm& node, std::initializer_list<std::string> accepted) const {
    for (const Statement* st : statements_of(node)) {
      const std::string& p = st->predicate.value;
      if (p == kRdfType) continue;
      if (!in_mapping_namespaces(p)) continue;  // foreign annotations are tolerated
      if (std::find(accepted.begin(), accepted.end(), p) == accepted.end()) {
        throw UnknownVocabularyTermError(p);
      }
    }
  }

  TriplesMap extract_triples_map(const rdf::RdfTerm& node) {
    check_vocabulary(node, {rml("logicalSource"), rr("subjectMap"), rr("predicateObjectMap")});

    TriplesMap tm;
    tm.id = node.value;

    const rdf::RdfTerm* ls = optional_object(node, rml("logicalSource"), "logical source");
    if (ls == nullptr) throw StructuralError("triples map " + tm.id + ": missing logical source");
    tm.logical_source = extract_logical_source(*ls);

    const rdf::RdfTerm* sm = optional_object(node, rr("subjectMap"), "subject map");
    if (sm == nullptr) throw StructuralError("triples map " + tm.id + ": missing subject map");
    tm.subject_map = extract_term_map(*sm, Role::Subject);
    for (const rdf::RdfTerm* cls : objects_of(*sm, rr("class"))) {
      tm.subject_classes.push_back(require_iri(*cls, "rr:class"));
    }

    for (const rdf::RdfTerm* pom : objects_of(node, rr("predicateObjectMap"))) {
      tm.predicate_object_maps.push_back(extract_predicate_object_map(*pom));
    }
    return tm;
  }

  LogicalSource extract_logical_source(const rdf::RdfTerm& node) {
    check_vocabulary(node, {rml("source"), rml("iterator"), rml("referenceFormulation")});
    LogicalSource ls;
    const rdf::RdfTerm* source = optional_object(node, rml("source"), "rml:source");
    if (source == nullptr) throw StructuralError("logical source: missing rml:source");
    ls.source = require_string(*source, "rml:source");

    const rdf::RdfTerm* iterator = optional_object(node, rml("iterator"), "rml:iterator");
    if (iterator == nullptr) throw StructuralError("logical source: missing rml:iterator");
    ls.iterator = require_string(*iterator, "rml:iterator");

    const rdf::RdfTerm* formulation = optional_object(node, rml("referenceFormulation"), "rml:referenceFormulation");
    if (formulation == nullptr) {
      ls.reference_formulation = "XPath";
    } else if (require_iri(*formulation, "rml:referenceFormulation") == vocab::ql_xpath) {
      ls.reference_formulation = "XPath";
    } else {
      throw StructuralError("unsupported reference formulation " + formulation->value);
    }
    return ls;
  }

  PredicateObjectMap extract_predicate_object_map(const rdf::RdfTerm& node) {
    check_vocabulary(node, {rr("predicate"), rr("predicateMap"), rr("object"), rr("objectMap")});
    PredicateObjectMap pom;

    for (const rdf::RdfTerm* p : objects_of(node, rr("predicate"))) {
      TermMap tmap;
      tmap.kind = TermMapKind::Constant;
      tmap.constant = rdf::RdfTerm{rdf::TermKind::Iri, require_iri(*p, "rr:predicate"), "", ""};
      tmap.term_type = TermType::Iri;
      pom.predicate_maps.push_back(std::move(tmap));
    }
    for (const rdf::RdfTerm* pm : objects_of(node, rr("predicateMap"))) {
      pom.predicate_maps.push_back(extract_term_map(*pm, Role::Predicate));
    }

    for (const rdf::RdfTerm* o : objects_of(node, rr("object"))) {
      TermMap tmap;
      tmap.kind = TermMapKind::Constant;
      tmap.constant = *o;
      tmap.term_type = o->kind == rdf::TermKind::Literal ? TermType::Literal : TermType::Iri;
      pom.object_maps.emplace_back(std::move(tmap));
    }
    for (const rdf::RdfTerm* om : objects_of(node, rr("objectMap"))) {
      if (!objects_of(*om, rr("parentTriplesMap")).empty()) {
        pom.object_maps.emplace_back(extract_ref_object_map(*om));
      } else {
        pom.object_maps.emplace_back(extract_term_map(*om, Role::Object));
      }
    }

    if (pom.predicate_maps.empty()) throw StructuralError("predicate-object map without a predicate map");
    if (pom.object_maps.empty()) throw StructuralError("predicate-object map without an object map");
    return pom;
  }

  RefObjectMap extract_ref_object_map(const rdf::RdfTerm& node) {
    check_vocabulary(node, {rr("parentTriplesMap"), rr("joinCondition")});
    RefObjectMap rom;
    const rdf::RdfTerm* parent = optional_object(node, rr("parentTriplesMap"), "rr:parentTriplesMap");
    if (parent->kind == rdf::TermKind::Literal) {
      throw StructuralError("rr:parentTriplesMap must be an IRI or blank node");
    }
    rom.parent_triples_map = parent->value;
    for (const rdf::RdfTerm* jc : objects_of(node, rr("joinCondition"))) {
      check_vocabulary(*jc, {rr("child"), rr("parent")});
      const rdf::RdfTerm* child = optional_object(*jc, rr("child"), "rr:child");
      const rdf::RdfTerm* par = optional_object(*jc, rr("parent"), "rr:parent");
      if (child == nullptr || par == nullptr) {
        throw StructuralError("join condition needs both rr:child and rr:parent");
      }
      rom.join_conditions.push_back(
          JoinCondition{require_string(*child, "rr:child"), require_string(*par, "rr:parent")});
    }
    return rom;
  }

  TermMap extract_term_map(const rdf::RdfTerm& node, Role role) {
    if (role == Role::Subject) {
      check_vocabulary(node, {rr("constant"), rml("reference"), rr("template"), rml("functionValue"),
                              rr("termType"), rr("class")});
    } else {
      check_vocabulary(node, {rr("constant"), rml("reference"), rr("template"), rml("functionValue"),
                              rr("termType"), rr("datatype"), rr("language")});
    }

    TermMap tmap;
    const rdf::RdfTerm* constant = optional_object(node, rr("constant"), "rr:constant");
    const rdf::RdfTerm* reference = optional_object(node, rml("reference"), "rml:reference");
    const rdf::RdfTerm* template_o = optional_object(node, rr("template"), "rr:template");
    const rdf::RdfTerm* function = optional_object(node, rml("functionValue"), "rml:functionValue");

    int forms = (constant != nullptr) + (reference != nullptr) + (template_o != nullptr) + (function != nullptr);
    if (forms != 1) {
      throw StructuralError("term map must have exactly one of rr:constant, rml:reference, rr:template, "
                            "rml:functionValue (found " + std::to_string(forms) + ")");
    }

    if (constant != nullptr) {
      tmap.kind = TermMapKind::Constant;
      tmap.constant = *constant;
    } else if (reference != nullptr) {
      tmap.kind = TermMapKind::Reference;
      tmap.reference = require_string(*reference, "rml:reference");
    } else if (template_o != nullptr) {
      tmap.kind = TermMapKind::Template;
      tmap.template_text = require_string(*template_o, "rr:template");
    } else {
      tmap.kind = TermMapKind::Function;
      tmap.function_call = std::make_shared<FunctionCall>(extract_function_call(*function));
    }

    const rdf::RdfTerm* term_type = optional_object(node, rr("termType"), "rr:termType");
    if (term_type != nullptr) {
      const std::string& tt = require_iri(*term_type, "rr:termType");
      if (tt == rr("IRI")) tmap.term_type = TermType::Iri;
      else if (tt == rr("BlankNode")) tmap.term_type = TermType::BlankNode;
      else if (tt == rr("Literal")) tmap.term_type = TermType::Literal;
      else throw StructuralError("unknown term type " + tt);
    } else {
      tmap.term_type = default_term_type(tmap, role);
    }

    const rdf::RdfTerm* datatype = optional_object(node, rr("datatype"), "rr:datatype");
    const rdf::RdfTerm* language = optional_object(node, rr("language"), "rr:language");
    if (datatype != nullptr && language != nullptr) {
      throw StructuralError("term map cannot carry both rr:datatype and rr:language");
    }
    if ((datatype != nullptr || language != nullptr) && tmap.term_type != TermType::Literal) {
      throw StructuralError("rr:datatype/rr:language require a Literal term type");
    }
    if (datatype != nullptr) tmap.datatype = require_iri(*datatype, "rr:datatype");
    if (language != nullptr) tmap.language = require_string(*language, "rr:language");

    if (role == Role::Subject && tmap.term_type == TermType::Literal) {
      throw StructuralError("subject map cannot have a Literal term type");
    }
    if (role == Role::Predicate && tmap.term_type != TermType::Iri) {
      throw StructuralError("predicate map must have an IRI term type");
    }
    if (tmap.kind == TermMapKind::Constant) {
      if (role == Role::Subject && tmap.constant.kind == rdf::TermKind::Literal) {
        throw StructuralError("subject map constant cannot be a literal");
      }
      if (role == Role::Predicate && tmap.constant.kind != rdf::TermKind::Iri) {
        throw StructuralError("predicate map constant must be an IRI");
      }
    }
    return tmap;
  }

  static TermType default_term_type(const TermMap& tmap, Role role) {
    if (role == Role::Subject || role == Role::Predicate) return TermType::Iri;
    switch (tmap.kind) {
      case TermMapKind::Constant:
        switch (tmap.constant.kind) {
          case rdf::TermKind::Iri: return TermType::Iri;
          case rdf::TermKind::BlankNode: return TermType::BlankNode;
          case rdf::TermKind::Literal: return TermType::Literal;
        }
        return TermType::Iri;
      case TermMapKind::Reference:
      case TermMapKind::Function:
        return TermType::Literal;
      case TermMapKind::Template:
        return TermType::Iri;
    }
    return TermType::Iri;
  }

  FunctionCall extract_function_call(const rdf::RdfTerm& node) {
    check_vocabulary(node, {rml("function"), rml("parameter")});
    FunctionCall call;
    const rdf::RdfTerm* function = optional_object(node, rml("function"), "rml:function");
    if (function == nullptr) throw StructuralError("function value: missing rml:function");
    call.function_iri = require_iri(*function, "rml:function");
    for (const rdf::RdfTerm* param : objects_of(node, rml("parameter"))) {
      call.parameters.push_back(extract_term_map(*param, Role::Parameter));
    }
    return call;
  }

  const turtle::TurtleDocument& doc_;
  std::unordered_map<std::string, std::vector<const Statement*>> by_subject_;
};

}  // namespace

MappingDocument parse_mapping(std::string_view turtle_text) {
  turtle::TurtleDocument doc = turtle::parse_turtle(turtle_text);
  Extractor ex(doc);
  MappingDocument out = ex.extract();
  if (out.triples_maps.empty() && !doc.statements.empty()) {
    throw StructuralError("no triples maps found");
  }
  return out;
}

// --- validation -------------------------------------------------------------

namespace {

bool valid_language_tag(const std::string& tag) {
  std::size_t i = 0;
  auto run = [&](bool first) {
    std::size_t len = 0;
    while (i < tag.size() && tag[i] != '-') {
      char c = tag[i];
      bool ok = first ? std::isalpha(static_cast<unsigned char>(c)) != 0
                      : std::isalnum(static_cast<unsigned char>(c)) != 0;
      if (!ok) return false;
      ++len;
      ++i;
    }
    return len >= 1 && len <= 8;
  };
  if (!run(true)) return false;
  while (i < tag.size()) {
    ++i;  // skip '-'
    if (!run(false)) return false;
  }
  return true;
}

class Validator {
 public:
  explicit Validator(const MappingDocument& doc) : doc_(doc) {}

  std::vector<std::string> run() {
    std::unordered_set<std::string> ids;
    for (const auto& tm : doc_.triples_maps) {
      if (!ids.insert(tm.id).second) {
        note(tm.id, "duplicate triples map id");
      }
    }
    for (const auto& tm : doc_.triples_maps) {
      validate_triples_map(tm);
    }
    return std::move(diagnostics_);
  }

 private:
  void note(const std::string& where, const std::string& message) {
    diagnostics_.push_back(where.empty() ? message : where + ": " + message);
  }

  void check_path(const std::string& where, const std::string& what, const std::string& path) {
    try {
      xpath::compile_path(path);
    } catch (const PathSyntaxError& e) {
      note(where, what + " \"" + path + "\" does not compile: " + e.what());
    }
  }

  void validate_triples_map(const TriplesMap& tm) {
    const std::string& where = tm.id;
    if (tm.logical_source.reference_formulation != "XPath") {
      note(where, "reference formulation must be XPath");
    }
    if (tm.logical_source.iterator.empty()) {
      note(where, "empty iterator");
    } else {
      check_path(where, "iterator", tm.logical_source.iterator);
    }
    validate_term_map(where, tm.subject_map, true);
    for (const auto& cls : tm.subject_classes) {
      if (auto v = rdf::find_iri_violation(cls)) note(where, "rr:class " + cls + ": " + v->reason);
    }
    for (const auto& pom : tm.predicate_object_maps) {
      if (pom.predicate_maps.empty()) note(where, "predicate-object map without predicate maps");
      if (pom.object_maps.empty()) note(where, "predicate-object map without object maps");
      for (const auto& pm : pom.predicate_maps) validate_term_map(where, pm, false);
      for (const auto& om : pom.object_maps) {
        if (const TermMap* tmap = std::get_if<TermMap>(&om)) {
          validate_term_map(where, *tmap, false);
        } else {
          validate_ref_object_map(where, tm, std::get<RefObjectMap>(om));
        }
      }
    }
  }

  void validate_ref_object_map(const std::string& where, const TriplesMap& child, const RefObjectMap& rom) {
    const TriplesMap* parent = doc_.find_triples_map(rom.parent_triples_map);
    if (parent == nullptr) {
      note(where, "parentTriplesMap " + rom.parent_triples_map + " does not exist");
      return;
    }
    if (rom.join_conditions.empty()) {
      if (!(parent->logical_source == child.logical_source)) {
        note(where, "referencing object map without join conditions requires identical logical sources");
      }
    }
    for (const auto& jc : rom.join_conditions) {
      check_path(where, "join child", jc.child);
      check_path(where, "join parent", jc.parent);
    }
  }

  void validate_term_map(const std::string& where, const TermMap& tmap, bool is_subject) {
    int forms = (tmap.kind == TermMapKind::Constant) +
                !tmap.reference.empty() + !tmap.template_text.empty() +
                static_cast<bool>(tmap.function_call);
    // kind Constant carries its value in `constant`; other kinds must have
    // exactly their own form populated.
    switch (tmap.kind) {
      case TermMapKind::Constant:
        if (forms != 1) note(where, "constant term map carries extra value forms");
        break;
      case TermMapKind::Reference:
        if (tmap.reference.empty()) note(where, "reference term map without a reference");
        else check_path(where, "reference", tmap.reference);
        if (!tmap.template_text.empty() || tmap.function_call) note(where, "reference term map carries extra value forms");
        break;
      case TermMapKind::Template: {
        if (tmap.template_text.empty()) {
          note(where, "template term map without a template");
          break;
        }
        if (!tmap.reference.empty() || tmap.function_call) note(where, "template term map carries extra value forms");
        try {
          TemplateParts parts = parse_template(tmap.template_text);
          if (parts.placeholders() == 0) note(where, "template has no placeholders");
          for (const auto& part : parts.parts) {
            if (part.placeholder) check_path(where, "template placeholder", part.text);
          }
        } catch (const Error& e) {
          note(where, std::string("template does not parse: ") + e.what());
        }
        break;
      }
      case TermMapKind::Function: {
        if (!tmap.function_call) {
          note(where, "function term map without a function call");
          break;
        }
        if (!tmap.reference.empty() || !tmap.template_text.empty()) note(where, "function term map carries extra value forms");
        validate_function_call(where, *tmap.function_call);
        break;
      }
    }

    if (is_subject && tmap.term_type == TermType::Literal) {
      note(where, "subject map cannot have Literal term type");
    }
    if (!tmap.datatype.empty() && !tmap.language.empty()) {
      note(where, "term map carries both datatype and language");
    }
    if ((!tmap.datatype.empty() || !tmap.language.empty()) && tmap.term_type != TermType::Literal) {
      note(where, "datatype/language on a non-Literal term map");
    }
    if (!tmap.datatype.empty()) {
      if (auto v = rdf::find_iri_violation(tmap.datatype)) note(where, "datatype " + tmap.datatype + ": " + v->reason);
    }
    if (!tmap.language.empty() && !valid_language_tag(tmap.language)) {
      note(where, "malformed language tag \"" + tmap.language + "\"");
    }
  }

  void validate_function_call(const std::string& where, const FunctionCall& call) {
    if (auto v = rdf::find_iri_violation(call.function_iri)) {
      note(where, "function IRI " + call.function_iri + ": " + v->reason);
    }
    for (const auto& p : call.parameters) validate_term_map(where, p, false);
  }

  const MappingDocument& doc_;
  std::vector<std::string> diagnostics_;
};

}  // namespace

std::vector<std::string> validate_mapping(const MappingDocument& doc) {
  Validator v(doc);
  return v.run();
}

// --- serialization ----------------------------------------------------------

namespace {

std::string quoted(const std::string& s) {
  return rdf::to_ntriples(rdf::make_literal(s));
}

std::string term_ref(const rdf::RdfTerm& t) {
  return rdf::to_ntriples(t);
}

void write_term_map(std::string& out, const TermMap& tmap, int indent);

void write_function_call(std::string& out, const FunctionCall& call, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  out += "[\n" + pad + "  <" + vocab::rml_ns + "function> <" + call.function_iri + ">";
  for (const auto& p : call.parameters) {
    out += " ;\n" + pad + "  <" + vocab::rml_ns + "parameter> ";
    write_term_map(out, p, indent + 2);
  }
  out += "\n" + pad + "]";
}

void write_term_map(std::string& out, const TermMap& tmap, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  out += "[\n" + pad + "  ";
  switch (tmap.kind) {
    case TermMapKind::Constant:
      out += "<" + vocab::rr_ns + "constant> " + term_ref(tmap.constant);
      break;
    case TermMapKind::Reference:
      out += "<" + vocab::rml_ns + "reference> " + quoted(tmap.reference);
      break;
    case TermMapKind::Template:
      out += "<" + vocab::rr_ns + "template> " + quoted(tmap.template_text);
      break;
    case TermMapKind::Function:
      out += "<" + vocab::rml_ns + "functionValue> ";
      write_function_call(out, *tmap.function_call, indent + 2);
      break;
  }
  out += " ;\n" + pad + "  <" + vocab::rr_ns + "termType> <" + vocab::rr_ns;
  switch (tmap.term_type) {
    case TermType::Iri: out += "IRI"; break;
    case TermType::BlankNode: out += "BlankNode"; break;
    case TermType::Literal: out += "Literal"; break;
  }
  out += ">";
  if (!tmap.datatype.empty()) {
    out += " ;\n" + pad + "  <" + vocab::rr_ns + "datatype> <" + tmap.datatype + ">";
  }
  if (!tmap.language.empty()) {
    out += " ;\n" + pad + "  <" + vocab::rr_ns + "language> " + quoted(tmap.language);
  }
  out += "\n" + pad + "]";
}

std::string subject_ref(const std::string& id) {
  // Triples map ids are absolute IRIs or blank labels.
  if (rdf::find_iri_violation(id) == std::nullopt) return "<" + id + ">";
  return "_:" + id;
}

}  // namespace

std::string serialize_mapping(const MappingDocument& doc) {
  std::string out;
  for (const auto& [label, ns] : doc.prefixes) {
    out += "@prefix " + label + ": <" + ns + "> .\n";
  }
  if (!doc.prefixes.empty()) out += "\n";

  for (const auto& tm : doc.triples_maps) {
    out += subject_ref(tm.id) + "\n";
    out += "  <" + vocab::rml_ns + "logicalSource> [\n";
    out += "    <" + vocab::rml_ns + "source> " + quoted(tm.logical_source.source) + " ;\n";
    out += "    <" + vocab::rml_ns + "referenceFormulation> <" + vocab::ql_xpath + "> ;\n";
    out += "    <" + vocab::rml_ns + "iterator> " + quoted(tm.logical_source.iterator) + "\n";
    out += "  ] ;\n";
    out += "  <" + vocab::rr_ns + "subjectMap> ";
    {
      // subject map with its classes folded into the same property list
      std::string sm;
      write_term_map(sm, tm.subject_map, 2);
      if (!tm.subject_classes.empty()) {
        sm.erase(sm.size() - 4);  // strip "\n  ]"
        for (const auto& cls : tm.subject_classes) {
          sm += " ;\n    <" + vocab::rr_ns + "class> <" + cls + ">";
        }
        sm += "\n  ]";
      }
      out += sm;
    }
    for (const auto& pom : tm.predicate_object_maps) {
      out += " ;\n  <" + vocab::rr_ns + "predicateObjectMap> [\n";
      bool first = true;
      for (const auto& pm : pom.predicate_maps) {
        out += first ? "    " : " ;\n    ";
        first = false;
        out += "<" + vocab::rr_ns + "predicateMap> ";
        write_term_map(out, pm, 4);
      }
      for (const auto& om : pom.object_maps) {
        out += first ? "    " : " ;\n    ";
        first = false;
        out += "<" + vocab::rr_ns + "objectMap> ";
        if (const TermMap* tmap = std::get_if<TermMap>(&om)) {
          write_term_map(out, *tmap, 4);
        } else {
          const RefObjectMap& rom = std::get<RefObjectMap>(om);
          out += "[\n      <" + vocab::rr_ns + "parentTriplesMap> " + subject_ref(rom.parent_triples_map);
          for (const auto& jc : rom.join_conditions) {
            out += " ;\n      <" + vocab::rr_ns + "joinCondition> [ <" + vocab::rr_ns + "child> " +
                   quoted(jc.child) + " ; <" + vocab::rr_ns + "parent> " + quoted(jc.parent) + " ]";
          }
          out += "\n    ]";
        }
      }
      out += "\n  ]";
    }
    out += " .\n\n";
  }
  return out;
}

}  // namespace uplift::rml
