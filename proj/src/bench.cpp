#include "uplift/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

#include <json.hpp>

#include "uplift/engine.hpp"
#include "uplift/legal.hpp"
#include "uplift/xml.hpp"

namespace uplift::bench {

std::string subject_name(Subject s) { return s == Subject::Engine ? "engine" : "adhoc"; }

SummaryStats summary_stats(const std::vector<double>& samples) {
  if (samples.size() < 2) {
    throw TooFewSamplesError("summary statistics need at least 2 samples, got " +
                             std::to_string(samples.size()));
  }
  double sum = 0.0;
  for (double s : samples) sum += s;
  const double mean = sum / static_cast<double>(samples.size());
  double sq = 0.0;
  for (double s : samples) sq += (s - mean) * (s - mean);
  const double variance = sq / static_cast<double>(samples.size() - 1);
  return SummaryStats{mean, std::sqrt(variance)};
}

namespace {

// Continued-fraction kernel for the regularized incomplete beta function
// (modified Lentz method).
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIterations = 500;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

// I_x(a, b)
double reg_inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - ln_beta);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(a, b, x) / a;
  }
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

}  // namespace

double student_t_sf(double t, double df) {
  if (t == 0.0) return 0.5;
  const double x = df / (df + t * t);
  const double tail = 0.5 * reg_inc_beta(df / 2.0, 0.5, x);
  return t > 0.0 ? tail : 1.0 - tail;
}

WelchResult welch_t_test(double m1, double s1, std::size_t n1, double m2, double s2, std::size_t n2) {
  if (n1 < 2 || n2 < 2) {
    throw TooFewSamplesError("Welch's t-test needs at least 2 samples per group");
  }
  if (s1 == 0.0 && s2 == 0.0) {
    throw DegenerateVarianceError("both groups have zero variance");
  }
  const double v1 = s1 * s1 / static_cast<double>(n1);
  const double v2 = s2 * s2 / static_cast<double>(n2);
  WelchResult r;
  r.t = (m1 - m2) / std::sqrt(v1 + v2);
  r.df = (v1 + v2) * (v1 + v2) /
         (v1 * v1 / static_cast<double>(n1 - 1) + v2 * v2 / static_cast<double>(n2 - 1));
  r.p = 2.0 * student_t_sf(std::fabs(r.t), r.df);
  r.significant = r.p < 0.05;
  return r;
}

const std::vector<ReferenceRow>& reference_rows() {
  static const std::vector<ReferenceRow> rows = {
      {"1k", 4.85, 1.33, 4.09, 0.47, 10, 0.12},
      {"10k", 43.3, 3.9, 38.7, 3.95, 10, 0.04},
      {"50k", 242.5, 30.9, 212.8, 30.01, 10, 0.01},
  };
  return rows;
}

namespace {

struct TransformOutput {
  rdf::Graph graph;
  std::size_t serialized_bytes = 0;
};

// Shared per-size fixture: the corpus as serialized XML.
struct CorpusFixture {
  std::vector<std::string> xml;
};

TransformOutput run_engine(const CorpusFixture& fixture, const rml::MappingDocument& mapping,
                           const fn::FunctionRegistry& registry, unsigned workers) {
  std::vector<xml::XmlDocument> parsed;
  parsed.reserve(fixture.xml.size());
  std::vector<engine::InputDocument> inputs;
  inputs.reserve(fixture.xml.size());
  for (std::size_t i = 0; i < fixture.xml.size(); ++i) {
    parsed.push_back(xml::parse_xml(fixture.xml[i]));
    inputs.push_back(engine::InputDocument{parsed.back().get(), "doc-" + std::to_string(i)});
  }
  engine::EngineConfig config;
  config.workers = workers;
  engine::ExecutionResult result = engine::execute_mapping(mapping, inputs, registry, config);
  TransformOutput out;
  out.serialized_bytes = rdf::serialize_ntriples(result.graph).size();
  out.graph = std::move(result.graph);
  return out;
}

TransformOutput run_adhoc(const CorpusFixture& fixture) {
  rdf::Graph graph;
  for (const std::string& text : fixture.xml) {
    xml::XmlDocument doc = xml::parse_xml(text);
    graph.merge(legal::adhoc_parse(*doc));
  }
  TransformOutput out;
  out.serialized_bytes = rdf::serialize_ntriples(graph).size();
  out.graph = std::move(graph);
  return out;
}

std::string environment_note(unsigned workers) {
  std::string os =
#if defined(__linux__)
      "linux";
#elif defined(__APPLE__)
      "darwin";
#else
      "unknown-os";
#endif
  return os + ", " + std::to_string(std::thread::hardware_concurrency()) +
         " hardware threads, engine pool " + std::to_string(workers);
}

}  // namespace

BenchReport run_benchmark(const BenchConfig& cfg) {
  if (cfg.runs < 2) throw Error("bench config: runs must be at least 2");
  for (std::size_t size : cfg.corpus_sizes) {
    if (size < 1) throw Error("bench config: corpus sizes must be at least 1");
  }
  if (cfg.subjects.empty()) throw Error("bench config: no subjects selected");

  const rml::MappingDocument mapping = legal::reference_mapping();
  const fn::FunctionRegistry registry;
  const legal::TaxonomyFixture taxonomy = legal::builtin_taxonomy();

  unsigned workers = cfg.workers;
  if (workers == 0) {
    workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
  }

  const bool has_engine =
      std::find(cfg.subjects.begin(), cfg.subjects.end(), Subject::Engine) != cfg.subjects.end();
  const bool has_adhoc =
      std::find(cfg.subjects.begin(), cfg.subjects.end(), Subject::Adhoc) != cfg.subjects.end();

  BenchReport report;
  report.config = cfg;
  report.workers_used = workers;
  report.environment = environment_note(workers);

  for (std::size_t size : cfg.corpus_sizes) {
    SizeResult sr;
    sr.corpus_size = size;

    CorpusFixture fixture;
    {
      std::vector<legal::LegalDocument> corpus = legal::generate_corpus(cfg.seed, size, taxonomy);
      fixture.xml.reserve(corpus.size());
      for (const auto& d : corpus) fixture.xml.push_back(legal::serialize_document(d));
    }

    // Untimed verification pass; doubles as the warm-up for both subjects.
    if (has_engine && has_adhoc) {
      TransformOutput engine_out = run_engine(fixture, mapping, registry, workers);
      TransformOutput adhoc_out = run_adhoc(fixture);
      if (!rdf::graph_equal(engine_out.graph, adhoc_out.graph)) {
        throw Error("benchmark aborted: subjects produced different graphs at size " +
                    std::to_string(size));
      }
      sr.triples = engine_out.graph.size();
    } else if (has_engine) {
      sr.triples = run_engine(fixture, mapping, registry, workers).graph.size();
    } else if (has_adhoc) {
      sr.triples = run_adhoc(fixture).graph.size();
    }

    for (Subject subject : cfg.subjects) {
      SubjectTimings timings;
      timings.subject = subject;
      for (std::size_t run = 0; run < cfg.runs; ++run) {
        const auto start = std::chrono::steady_clock::now();
        TransformOutput out = subject == Subject::Engine
                                  ? run_engine(fixture, mapping, registry, workers)
                                  : run_adhoc(fixture);
        const auto stop = std::chrono::steady_clock::now();
        if (out.serialized_bytes == 0 && out.graph.size() != 0) {
          throw Error("empty serialization of a non-empty graph");
        }
        timings.seconds.push_back(std::chrono::duration<double>(stop - start).count());
      }
      timings.stats = summary_stats(timings.seconds);
      sr.subjects.push_back(std::move(timings));
    }

    if (has_engine && has_adhoc) {
      const SubjectTimings* eng = nullptr;
      const SubjectTimings* adh = nullptr;
      for (const auto& st : sr.subjects) {
        (st.subject == Subject::Engine ? eng : adh) = &st;
      }
      sr.welch = welch_t_test(eng->stats.mean, eng->stats.stddev, eng->seconds.size(),
                              adh->stats.mean, adh->stats.stddev, adh->seconds.size());
    }
    report.sizes.push_back(std::move(sr));
  }
  return report;
}

std::string report_to_json(const BenchReport& report) {
  nlohmann::json j;
  j["config"]["corpus_sizes"] = report.config.corpus_sizes;
  j["config"]["runs"] = report.config.runs;
  j["config"]["seed"] = report.config.seed;
  {
    std::vector<std::string> names;
    for (Subject s : report.config.subjects) names.push_back(subject_name(s));
    j["config"]["subjects"] = names;
  }
  j["environment"] = report.environment;
  j["workers"] = report.workers_used;

  j["results"] = nlohmann::json::array();
  for (const auto& sr : report.sizes) {
    nlohmann::json js;
    js["corpus_size"] = sr.corpus_size;
    js["triples"] = sr.triples;
    for (const auto& st : sr.subjects) {
      nlohmann::json jt;
      jt["raw_seconds"] = st.seconds;
      jt["mean"] = st.stats.mean;
      jt["std"] = st.stats.stddev;
      js["subjects"][subject_name(st.subject)] = jt;
    }
    if (sr.welch) {
      js["welch"] = {{"t", sr.welch->t},
                     {"df", sr.welch->df},
                     {"p", sr.welch->p},
                     {"significant", sr.welch->significant}};
    }
    j["results"].push_back(js);
  }

  // Recomputation of the statistics over the published reference rows; the
  // printed p-values for the larger sizes do not match what the formula
  // yields from the printed means and standard deviations.
  j["reference_statistics"] = nlohmann::json::array();
  for (const auto& row : reference_rows()) {
    WelchResult w = welch_t_test(row.engine_mean, row.engine_std, row.runs, row.adhoc_mean,
                                 row.adhoc_std, row.runs);
    j["reference_statistics"].push_back({{"label", row.label},
                                         {"engine_mean", row.engine_mean},
                                         {"engine_std", row.engine_std},
                                         {"adhoc_mean", row.adhoc_mean},
                                         {"adhoc_std", row.adhoc_std},
                                         {"runs", row.runs},
                                         {"computed_p", w.p},
                                         {"published_p", row.reported_p},
                                         {"matches_published",
                                          std::fabs(w.p - row.reported_p) < 0.005}});
  }
  j["reference_note"] =
      "Welch p-values recomputed from the published reference summary rows are ~0.116 (1k), "
      "~0.017 (10k) and ~0.043 (50k); the source that printed these rows reported 0.12, 0.04 "
      "and 0.01. The 1k figure agrees after rounding, the 10k/50k figures do not follow from "
      "the printed means and standard deviations (plausibly swapped, or computed from unrounded "
      "raw data). This report asserts the formula values.";
  return j.dump(2) + "\n";
}

namespace {

std::string format_double(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

std::string size_label(std::size_t n) {
  if (n % 1000 == 0 && n >= 1000) return std::to_string(n / 1000) + "k";
  return std::to_string(n);
}

}  // namespace

std::string report_to_table(const BenchReport& report) {
  // One AVG/STD column pair per corpus size, one row per subject, then the
  // Welch line comparing the subjects.
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"approach"};
  for (const auto& sr : report.sizes) {
    header.push_back(size_label(sr.corpus_size) + " AVG");
    header.push_back(size_label(sr.corpus_size) + " STD");
  }
  cells.push_back(header);

  for (Subject subject : report.config.subjects) {
    std::vector<std::string> row{subject_name(subject) == "adhoc" ? "ad hoc parser" : "mapping engine"};
    for (const auto& sr : report.sizes) {
      const SubjectTimings* st = nullptr;
      for (const auto& cand : sr.subjects) {
        if (cand.subject == subject) st = &cand;
      }
      if (st == nullptr) {
        row.push_back("-");
        row.push_back("-");
      } else {
        row.push_back(format_double(st->stats.mean, 3));
        row.push_back(format_double(st->stats.stddev, 3));
      }
    }
    cells.push_back(row);
  }

  bool any_welch = false;
  std::vector<std::string> welch_row{"Welch p (two-sided)"};
  for (const auto& sr : report.sizes) {
    if (sr.welch) {
      any_welch = true;
      welch_row.push_back(format_double(sr.welch->p, 4));
      welch_row.push_back(sr.welch->significant ? "sig." : "n.s.");
    } else {
      welch_row.push_back("-");
      welch_row.push_back("-");
    }
  }
  if (any_welch) cells.push_back(welch_row);

  std::vector<std::size_t> widths(cells[0].size(), 0);
  for (const auto& row : cells) {
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  }
  std::string out;
  for (const auto& row : cells) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += row[i];
      if (i + 1 < row.size()) out += std::string(widths[i] - row[i].size() + 2, ' ');
    }
    out += "\n";
  }
  out += "(" + std::to_string(report.config.runs) + " runs per cell, seconds; " +
         report.environment + ")\n";
  return out;
}

}  // namespace uplift::bench
