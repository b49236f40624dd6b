#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uplift/errors.hpp"

namespace uplift::bench {

enum class Subject { Engine, Adhoc };

std::string subject_name(Subject s);

struct BenchConfig {
  std::vector<std::size_t> corpus_sizes = {1000, 10000, 50000};
  std::size_t runs = 10;
  std::uint64_t seed = 1;
  std::vector<Subject> subjects = {Subject::Engine, Subject::Adhoc};
  unsigned workers = 0;  // engine worker pool; 0 = pick from hardware
};

struct SummaryStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n-1)
};

// Throws TooFewSamplesError for fewer than two samples.
SummaryStats summary_stats(const std::vector<double>& samples);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;  // Welch-Satterthwaite
  double p = 1.0;   // two-sided
  bool significant = false;  // p < 0.05
};

// Unequal-variance two-sample t-test from summary statistics. Throws
// DegenerateVarianceError when both standard deviations are zero.
WelchResult welch_t_test(double m1, double s1, std::size_t n1, double m2, double s2, std::size_t n2);

// Upper-tail probability P(T > t) of the Student-t distribution, evaluated
// through the regularized incomplete beta function (continued fraction);
// absolute error at most 1e-8.
double student_t_sf(double t, double df);

struct SubjectTimings {
  Subject subject = Subject::Engine;
  std::vector<double> seconds;  // raw run times
  SummaryStats stats;
};

struct SizeResult {
  std::size_t corpus_size = 0;
  std::size_t triples = 0;  // output graph size, for context
  std::vector<SubjectTimings> subjects;
  std::optional<WelchResult> welch;  // engine vs. ad-hoc, when both ran
};

struct BenchReport {
  BenchConfig config;
  std::string environment;
  unsigned workers_used = 1;
  std::vector<SizeResult> sizes;
};

// One published external measurement pair (same methodology, different
// hardware), kept for sanity-checking the statistics implementation.
struct ReferenceRow {
  std::string label;
  double engine_mean, engine_std;
  double adhoc_mean, adhoc_std;
  std::size_t runs;
  double reported_p;  // p-value printed alongside the published rows
};

const std::vector<ReferenceRow>& reference_rows();

// Generates a corpus per size, verifies once that both subjects produce
// graph_equal output, then times `runs` full transforms (XML parse + graph
// construction + N-Triples serialization) per subject with a monotonic
// clock; the verification pass doubles as the untimed warm-up. Throws Error
// when the subjects' outputs differ.
BenchReport run_benchmark(const BenchConfig& cfg);

std::string report_to_json(const BenchReport& report);
std::string report_to_table(const BenchReport& report);

}  // namespace uplift::bench
