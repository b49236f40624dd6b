#include "uplift/engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "uplift/template.hpp"
#include "uplift/xpath.hpp"

namespace uplift::engine {

std::string iri_safe_encode(std::string_view value) {
  static const char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(value.size());
  for (unsigned char c : value) {
    bool unreserved = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                      c == '-' || c == '.' || c == '_' || c == '~';
    if (unreserved) {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 0xF];
    }
  }
  return out;
}

std::optional<std::string> expand_template(std::string_view template_text,
                                           const std::unordered_map<std::string, std::string>& values) {
  TemplateParts parts = parse_template(template_text);
  std::string out;
  for (const auto& part : parts.parts) {
    if (!part.placeholder) {
      out += part.text;
      continue;
    }
    auto it = values.find(part.text);
    if (it == values.end()) return std::nullopt;
    out += iri_safe_encode(it->second);
  }
  return out;
}

namespace {

// A term map with every path expression pre-compiled.
struct CompiledTermMap {
  const rml::TermMap* src = nullptr;
  xpath::PathExpr reference;                         // Reference kind
  TemplateParts template_parts;                      // Template kind
  std::vector<xpath::PathExpr> placeholder_paths;    // paths of the placeholders, in order
  std::vector<CompiledTermMap> parameters;           // Function kind
};

CompiledTermMap compile_term_map(const rml::TermMap& tm) {
  CompiledTermMap out;
  out.src = &tm;
  switch (tm.kind) {
    case rml::TermMapKind::Constant:
      break;
    case rml::TermMapKind::Reference:
      out.reference = xpath::compile_path(tm.reference);
      break;
    case rml::TermMapKind::Template:
      out.template_parts = parse_template(tm.template_text);
      for (const auto& part : out.template_parts.parts) {
        if (part.placeholder) out.placeholder_paths.push_back(xpath::compile_path(part.text));
      }
      break;
    case rml::TermMapKind::Function:
      for (const auto& p : tm.function_call->parameters) {
        out.parameters.push_back(compile_term_map(p));
      }
      break;
  }
  return out;
}

// Walks every combination of one value per slot, first slot slowest.
template <typename Fn>
void for_each_combination(const std::vector<std::vector<std::string>>& slots, Fn&& fn) {
  std::vector<std::size_t> pick(slots.size(), 0);
  while (true) {
    fn(pick);
    std::size_t i = slots.size();
    while (i > 0) {
      --i;
      if (++pick[i] < slots[i].size()) break;
      pick[i] = 0;
      if (i == 0) return;
    }
    if (slots.empty()) return;
  }
}

// Produces the lexical values of a term map in one context. Multi-valued
// references fan out; templates and function calls fan out over the cross
// product of their parts. A part with no value contributes no combinations.
std::vector<std::string> generate_values(const CompiledTermMap& c, const BindingContext& ctx,
                                         const fn::FunctionRegistry& registry) {
  switch (c.src->kind) {
    case rml::TermMapKind::Constant:
      return {c.src->constant.value};
    case rml::TermMapKind::Reference:
      return xpath::select_values(*ctx.iterator_node, c.reference);
    case rml::TermMapKind::Template: {
      std::vector<std::vector<std::string>> slots;
      slots.reserve(c.placeholder_paths.size());
      for (const auto& path : c.placeholder_paths) {
        slots.push_back(xpath::select_values(*ctx.iterator_node, path));
        if (slots.back().empty()) return {};
      }
      std::vector<std::string> out;
      for_each_combination(slots, [&](const std::vector<std::size_t>& pick) {
        std::string s;
        std::size_t slot = 0;
        for (const auto& part : c.template_parts.parts) {
          if (part.placeholder) {
            s += iri_safe_encode(slots[slot][pick[slot]]);
            ++slot;
          } else {
            s += part.text;
          }
        }
        out.push_back(std::move(s));
      });
      return out;
    }
    case rml::TermMapKind::Function: {
      std::vector<std::vector<std::string>> slots;
      slots.reserve(c.parameters.size());
      for (const auto& p : c.parameters) {
        slots.push_back(generate_values(p, ctx, registry));
        if (slots.back().empty()) return {};
      }
      std::vector<std::string> out;
      for_each_combination(slots, [&](const std::vector<std::size_t>& pick) {
        std::vector<std::string> args;
        args.reserve(slots.size());
        for (std::size_t i = 0; i < slots.size(); ++i) args.push_back(slots[i][pick[i]]);
        out.push_back(registry.apply(c.src->function_call->function_iri, args));
      });
      return out;
    }
  }
  return {};
}

rdf::RdfTerm apply_term_type(const rml::TermMap& tm, const std::string& value) {
  switch (tm.term_type) {
    case rml::TermType::Iri:
      return rdf::make_iri(value);
    case rml::TermType::BlankNode:
      return rdf::make_blank_node(value);
    case rml::TermType::Literal:
      return rdf::make_literal(value,
                               tm.datatype.empty() ? std::nullopt : std::optional<std::string>(tm.datatype),
                               tm.language.empty() ? std::nullopt : std::optional<std::string>(tm.language));
  }
  throw Error("unreachable term type");
}

std::vector<rdf::RdfTerm> generate_terms_compiled(const CompiledTermMap& c, const BindingContext& ctx,
                                                  const fn::FunctionRegistry& registry) {
  if (c.src->kind == rml::TermMapKind::Constant) return {c.src->constant};
  std::vector<std::string> values = generate_values(c, ctx, registry);
  std::vector<rdf::RdfTerm> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(apply_term_type(*c.src, v));
  return out;
}

struct CompiledRefObjectMap {
  const rml::RefObjectMap* src = nullptr;
  std::size_t parent_index = 0;  // into CompiledMapping::maps
  bool same_source = false;      // no join conditions: parent shares the context
  std::vector<std::pair<xpath::PathExpr, xpath::PathExpr>> joins;  // child, parent
};

struct CompiledObjectMap {
  // exactly one of term/ref is active
  std::optional<CompiledTermMap> term;
  std::optional<CompiledRefObjectMap> ref;
};

struct CompiledPom {
  std::vector<CompiledTermMap> predicates;
  std::vector<CompiledObjectMap> objects;
};

struct CompiledTriplesMap {
  const rml::TriplesMap* src = nullptr;
  xpath::PathExpr iterator;
  CompiledTermMap subject;
  std::vector<rdf::RdfTerm> class_terms;  // pre-built rdf:type objects
  std::vector<CompiledPom> poms;
  bool has_ref_parents = false;  // some other map joins into this one
};

struct CompiledMapping {
  std::vector<CompiledTriplesMap> maps;
  rdf::RdfTerm rdf_type;
};

CompiledMapping compile_mapping(const rml::MappingDocument& mapping) {
  CompiledMapping out;
  out.rdf_type = rdf::make_iri(rml::vocab::rdf_type);
  out.maps.reserve(mapping.triples_maps.size());

  auto index_of = [&](const std::string& id) -> std::size_t {
    for (std::size_t i = 0; i < mapping.triples_maps.size(); ++i) {
      if (mapping.triples_maps[i].id == id) return i;
    }
    throw MappingExecutionError(id, "", "parent triples map does not exist");
  };

  for (const auto& tm : mapping.triples_maps) {
    CompiledTriplesMap c;
    c.src = &tm;
    try {
      c.iterator = xpath::compile_path(tm.logical_source.iterator);
      c.subject = compile_term_map(tm.subject_map);
      for (const auto& cls : tm.subject_classes) c.class_terms.push_back(rdf::make_iri(cls));
      for (const auto& pom : tm.predicate_object_maps) {
        CompiledPom cp;
        for (const auto& pm : pom.predicate_maps) cp.predicates.push_back(compile_term_map(pm));
        for (const auto& om : pom.object_maps) {
          CompiledObjectMap co;
          if (const rml::TermMap* t = std::get_if<rml::TermMap>(&om)) {
            co.term = compile_term_map(*t);
          } else {
            const auto& rom = std::get<rml::RefObjectMap>(om);
            CompiledRefObjectMap cr;
            cr.src = &rom;
            cr.parent_index = index_of(rom.parent_triples_map);
            cr.same_source = rom.join_conditions.empty();
            for (const auto& jc : rom.join_conditions) {
              cr.joins.emplace_back(xpath::compile_path(jc.child), xpath::compile_path(jc.parent));
            }
            co.ref = std::move(cr);
          }
          cp.objects.push_back(std::move(co));
        }
        c.poms.push_back(std::move(cp));
      }
    } catch (const MappingExecutionError&) {
      throw;
    } catch (const Error& e) {
      throw MappingExecutionError(tm.id, "", std::string("mapping does not compile: ") + e.what());
    }
    out.maps.push_back(std::move(c));
  }
  for (const auto& c : out.maps) {
    for (const auto& pom : c.poms) {
      for (const auto& o : pom.objects) {
        if (o.ref) out.maps[o.ref->parent_index].has_ref_parents = true;
      }
    }
  }
  return out;
}

// Per-document execution state for one triples map.
struct MapState {
  xpath::NodeSet contexts;
  std::vector<std::vector<rdf::RdfTerm>> subjects;  // per context
};

class DocumentRun {
 public:
  DocumentRun(const CompiledMapping& cm, const InputDocument& doc, const fn::FunctionRegistry& registry,
              const EngineConfig& config, rdf::Graph& graph, std::vector<Warning>& warnings)
      : cm_(cm), doc_(doc), registry_(registry), config_(config), graph_(graph), warnings_(warnings) {}

  void run() {
    states_.resize(cm_.maps.size());
    for (std::size_t i = 0; i < cm_.maps.size(); ++i) {
      const CompiledTriplesMap& c = cm_.maps[i];
      MapState& st = states_[i];
      st.contexts = xpath::eval_xpath(*doc_.root, c.iterator);
      st.subjects.resize(st.contexts.size());
      for (std::size_t k = 0; k < st.contexts.size(); ++k) {
        BindingContext ctx{doc_.root, st.contexts[k]};
        st.subjects[k] = guarded_terms(c.subject, ctx, c.src->id, "subject map");
      }
    }
    for (std::size_t i = 0; i < cm_.maps.size(); ++i) emit_triples_map(i);
  }

 private:
  std::vector<rdf::RdfTerm> guarded_terms(const CompiledTermMap& c, const BindingContext& ctx,
                                          const std::string& map_id, const char* role) {
    try {
      if (c.src->kind == rml::TermMapKind::Constant) return {c.src->constant};
      std::vector<std::string> values = generate_values(c, ctx, registry_);
      std::vector<rdf::RdfTerm> out;
      out.reserve(values.size());
      for (const auto& v : values) {
        try {
          out.push_back(apply_term_type(*c.src, v));
        } catch (const Error& e) {
          report(map_id, role, e.what());
        }
      }
      return out;
    } catch (const MappingExecutionError&) {
      throw;
    } catch (const Error& e) {
      report(map_id, role, e.what());
      return {};
    }
  }

  void report(const std::string& map_id, const char* role, const std::string& reason) {
    std::string message = std::string(role) + ": " + reason;
    if (config_.strict) throw MappingExecutionError(map_id, doc_.name, message);
    if (config_.emit_warnings) warnings_.push_back(Warning{doc_.name, map_id, message});
  }

  void emit_triples_map(std::size_t index) {
    const CompiledTriplesMap& c = cm_.maps[index];
    const MapState& st = states_[index];
    for (std::size_t k = 0; k < st.contexts.size(); ++k) {
      const std::vector<rdf::RdfTerm>& subjects = st.subjects[k];
      if (subjects.empty()) continue;
      BindingContext ctx{doc_.root, st.contexts[k]};

      for (const rdf::RdfTerm& s : subjects) {
        for (const rdf::RdfTerm& cls : c.class_terms) {
          graph_.insert(rdf::Triple{s, cm_.rdf_type, cls});
        }
      }

      for (const auto& pom : c.poms) {
        std::vector<rdf::RdfTerm> predicates;
        for (const auto& pm : pom.predicates) {
          auto terms = guarded_terms(pm, ctx, c.src->id, "predicate map");
          predicates.insert(predicates.end(), terms.begin(), terms.end());
        }
        if (predicates.empty()) continue;

        std::vector<rdf::RdfTerm> objects;
        for (const auto& om : pom.objects) {
          if (om.term) {
            auto terms = guarded_terms(*om.term, ctx, c.src->id, "object map");
            objects.insert(objects.end(), terms.begin(), terms.end());
          } else {
            collect_ref_objects(*om.ref, index, k, objects);
          }
        }

        for (const rdf::RdfTerm& s : subjects) {
          for (const rdf::RdfTerm& p : predicates) {
            for (const rdf::RdfTerm& o : objects) {
              graph_.insert(rdf::Triple{s, p, o});
            }
          }
        }
      }
    }
  }

  void collect_ref_objects(const CompiledRefObjectMap& ref, std::size_t child_index, std::size_t context_index,
                           std::vector<rdf::RdfTerm>& out) {
    const MapState& parent = states_[ref.parent_index];
    if (ref.same_source) {
      // identical logical source: the parent iterates the same context nodes
      if (context_index < parent.subjects.size()) {
        const auto& subjects = parent.subjects[context_index];
        out.insert(out.end(), subjects.begin(), subjects.end());
      }
      return;
    }

    const JoinIndex& index = join_index(ref, child_index);
    const MapState& child = states_[child_index];
    const xml::XmlNode* node = child.contexts[context_index];

    std::vector<std::size_t> matches;
    bool first = true;
    for (std::size_t j = 0; j < ref.joins.size(); ++j) {
      std::vector<std::string> child_values = xpath::select_values(*node, ref.joins[j].first);
      std::vector<std::size_t> found;
      for (const auto& v : child_values) {
        auto it = index.by_condition[j].find(v);
        if (it == index.by_condition[j].end()) continue;
        found.insert(found.end(), it->second.begin(), it->second.end());
      }
      std::sort(found.begin(), found.end());
      found.erase(std::unique(found.begin(), found.end()), found.end());
      if (first) {
        matches = std::move(found);
        first = false;
      } else {
        std::vector<std::size_t> merged;
        std::set_intersection(matches.begin(), matches.end(), found.begin(), found.end(),
                              std::back_inserter(merged));
        matches = std::move(merged);
      }
      if (matches.empty()) return;
    }
    for (std::size_t j : matches) {
      const auto& subjects = parent.subjects[j];
      out.insert(out.end(), subjects.begin(), subjects.end());
    }
  }

  // value → parent context indices, one map per join condition
  struct JoinIndex {
    std::vector<std::unordered_map<std::string, std::vector<std::size_t>>> by_condition;
  };

  const JoinIndex& join_index(const CompiledRefObjectMap& ref, std::size_t child_index) {
    auto key = std::make_pair(child_index, ref.src);
    auto it = join_indexes_.find(key);
    if (it != join_indexes_.end()) return it->second;

    JoinIndex index;
    index.by_condition.resize(ref.joins.size());
    const MapState& parent = states_[ref.parent_index];
    for (std::size_t j = 0; j < ref.joins.size(); ++j) {
      for (std::size_t pc = 0; pc < parent.contexts.size(); ++pc) {
        if (parent.subjects[pc].empty()) continue;
        for (const auto& v : xpath::select_values(*parent.contexts[pc], ref.joins[j].second)) {
          auto& bucket = index.by_condition[j][v];
          if (bucket.empty() || bucket.back() != pc) bucket.push_back(pc);
        }
      }
    }
    return join_indexes_.emplace(key, std::move(index)).first->second;
  }

  struct PairHash {
    std::size_t operator()(const std::pair<std::size_t, const rml::RefObjectMap*>& p) const noexcept {
      return std::hash<std::size_t>()(p.first) ^ (std::hash<const void*>()(p.second) << 1);
    }
  };

  const CompiledMapping& cm_;
  const InputDocument& doc_;
  const fn::FunctionRegistry& registry_;
  const EngineConfig& config_;
  rdf::Graph& graph_;
  std::vector<Warning>& warnings_;
  std::vector<MapState> states_;
  std::unordered_map<std::pair<std::size_t, const rml::RefObjectMap*>, JoinIndex, PairHash> join_indexes_;
};

}  // namespace

std::vector<rdf::RdfTerm> generate_terms(const rml::TermMap& term_map, const BindingContext& ctx,
                                         const fn::FunctionRegistry& registry) {
  CompiledTermMap c = compile_term_map(term_map);
  return generate_terms_compiled(c, ctx, registry);
}

ExecutionResult execute_mapping(const rml::MappingDocument& mapping,
                                std::span<const InputDocument> documents,
                                const fn::FunctionRegistry& registry, const EngineConfig& config) {
  ExecutionResult result;
  if (documents.empty()) return result;

  CompiledMapping cm = compile_mapping(mapping);

  unsigned workers = config.workers;
  if (workers == 0) {
    workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
  }
  workers = std::min<unsigned>(workers, static_cast<unsigned>(documents.size()));
  if (workers == 0) workers = 1;

  std::vector<std::vector<Warning>> warnings_per_doc(documents.size());
  std::vector<std::exception_ptr> errors(documents.size());
  std::vector<rdf::Graph> worker_graphs(workers);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};

  auto work = [&](unsigned worker_id) {
    while (!abort.load(std::memory_order_relaxed)) {
      std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= documents.size()) break;
      try {
        DocumentRun run(cm, documents[i], registry, config, worker_graphs[worker_id], warnings_per_doc[i]);
        run.run();
      } catch (...) {
        errors[i] = std::current_exception();
        abort.store(true, std::memory_order_relaxed);
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }

  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  result.graph = std::move(worker_graphs[0]);
  for (unsigned w = 1; w < workers; ++w) result.graph.merge(std::move(worker_graphs[w]));
  for (auto& list : warnings_per_doc) {
    for (auto& w : list) result.warnings.push_back(std::move(w));
  }
  return result;
}

}  // namespace uplift::engine
