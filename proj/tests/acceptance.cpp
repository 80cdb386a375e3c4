// Acceptance gate: one line per criterion on the canonical shell, default seed.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "lscont/verify.hpp"

using namespace lscont;

namespace {

struct Criterion {
  int number;
  const char* title;
  const char* prefix;
};

const Criterion kCriteria[] = {
    {1, "free-limit collapse", "free."},
    {2, "parity and conjugation identities", "symmetry."},
    {3, "S-matrix unitarity", "smatrix."},
    {4, "no zeros and bounded 1/J+ in the upper half plane", "prop1."},
    {5, "pole certificate", "poles."},
    {6, "transform unitarity and diagonalization", "transforms."},
    {7, "Moller isometry and intertwining", "moller."},
    {8, "bra and ket eigenequations", "prop2."},
    {9, "growth bounds of the continued transforms", "prop3."},
    {10, "residue consistency", "residues."},
    {11, "contour evolution equals group evolution", "prop4."},
    {12, "quadrant limits", "quadrant."},
    {13, "norm inequality", "norms."},
    {14, "Young inequality sweep", "young."},
};

double badness(const CheckEntry& e) {
  if (!std::isfinite(e.metric)) return std::numeric_limits<double>::infinity();
  if (e.tolerance > 0.0) return e.metric / e.tolerance;
  return e.metric > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const VerificationReport rep = run_all(PhysicalConfig::canonical());
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  int failed = 0;
  for (const Criterion& c : kCriteria) {
    int total = 0, pass = 0, fail = 0;
    const CheckEntry* worst = nullptr;
    for (const CheckEntry& e : rep.entries) {
      if (e.check_id.rfind(c.prefix, 0) != 0) continue;
      ++total;
      if (e.status == CheckStatus::pass) ++pass;
      if (e.status == CheckStatus::fail) ++fail;
      if (e.status != CheckStatus::skipped && (!worst || badness(e) > badness(*worst))) worst = &e;
    }
    const bool ok = total > 0 && fail == 0 && pass > 0;
    if (!ok) ++failed;
    std::printf("criterion %2d %s  %-52s %d/%d checks pass", c.number, ok ? "PASS" : "FAIL", c.title, pass, total);
    if (worst)
      std::printf("; worst %s metric %.3g tol %.3g", worst->check_id.c_str(), worst->metric, worst->tolerance);
    std::printf("\n");
    if (!ok)
      for (const CheckEntry& e : rep.entries)
        if (e.check_id.rfind(c.prefix, 0) == 0 && e.status == CheckStatus::fail)
          std::printf("    %s: %s\n", e.check_id.c_str(), e.note.c_str());
  }

  int extra = 0, extra_fail = 0;
  for (const CheckEntry& e : rep.entries) {
    bool covered = false;
    for (const Criterion& c : kCriteria) covered = covered || e.check_id.rfind(c.prefix, 0) == 0;
    if (covered) continue;
    ++extra;
    if (e.status == CheckStatus::fail) {
      ++extra_fail;
      std::printf("    additional check %s failed: %s\n", e.check_id.c_str(), e.note.c_str());
    }
  }
  std::printf("%d of 14 criteria pass; additional checks: %d, failed %d; seed %llu; %.1f s\n", 14 - failed, extra,
              extra_fail, static_cast<unsigned long long>(rep.seed), elapsed);
  return failed == 0 && extra_fail == 0 ? 0 : 1;
}
