// Acceptance gate: one PASS/FAIL line per criterion. Criteria 1-11 are the suite rows tagged with
// that criterion, each within its time limit; criterion 12 compares serialized suite reports.

#include <cstdio>
#include <map>
#include <string>

#include "goelab/repro_suite.hpp"

using namespace goelab;

namespace {

struct Criterion {
  int id;
  const char* label;
  double limit_seconds;  // 0 means no limit
};

const Criterion kCriteria[] = {
    {1, "elementary rules: surjective iff pre-injective", 10},
    {2, "rule 102 verdicts and two preimages per word", 1},
    {3, "rule 232 GOE word and ME pair", 1},
    {4, "golden mean onto even shift", 1},
    {5, "even and ternary shift examples", 2},
    {6, "Perron and Ledrappier entropies", 5},
    {7, "image entropy bound", 10},
    {8, "n0 bound", 5},
    {9, "free group growth and Folner defects", 5},
    {10, "free group threshold and linear rules", 10},
    {11, "linear duality and pairing identity", 10},
    {12, "deterministic suite report", 0},
};

std::string serialized(unsigned workers) {
  parallel::set_worker_count(workers);
  SuiteOptions opt;
  SuiteResult r = run_suite(opt);
  parallel::set_worker_count(0);
  return suite_to_json(r, opt, false).dump();
}

}  // namespace

int main() {
  parallel::set_worker_count(1);
  SuiteOptions opt;
  SuiteResult first = run_suite(opt);
  parallel::set_worker_count(0);
  const std::string a = suite_to_json(first, opt, false).dump();

  struct Tally {
    std::size_t rows = 0, passed = 0;
    double seconds = 0;
    std::string failed;
  };
  std::map<int, Tally> by;
  for (const auto& row : first.rows) {
    if (row.criterion == 0) continue;
    Tally& t = by[row.criterion];
    ++t.rows;
    t.seconds += row.seconds;
    if (row.pass) ++t.passed;
    else t.failed += (t.failed.empty() ? "" : ",") + row.id;
  }

  int failures = 0;
  for (const Criterion& c : kCriteria) {
    bool pass = false;
    char detail[256];
    if (c.id == 12) {
      const std::string b = serialized(1), n = serialized(4);
      pass = a == b && a == n;
      std::snprintf(detail, sizeof detail, "repeat %s, 1 vs 4 threads %s", a == b ? "identical" : "differs",
                    a == n ? "identical" : "differs");
    } else {
      const Tally& t = by[c.id];
      bool in_time = t.seconds < c.limit_seconds;
      pass = t.rows > 0 && t.passed == t.rows && in_time;
      std::snprintf(detail, sizeof detail, "%zu/%zu rows, %.2fs of %.0fs%s%s", t.passed, t.rows, t.seconds,
                    c.limit_seconds, t.failed.empty() ? "" : ", failed: ", t.failed.c_str());
    }
    if (!pass) ++failures;
    std::printf("%s  [%02d] %-48s %s\n", pass ? "PASS" : "FAIL", c.id, c.label, detail);
  }
  std::printf("%d/12 criteria pass\n", 12 - failures);
  return failures == 0 ? 0 : 1;
}
