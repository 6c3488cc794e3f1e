// Acceptance run: one PASS/FAIL line per criterion. With an argument N only
// criterion N runs (ctest registers each one separately).

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "nbl/io.hpp"
#include "nbl/verify.hpp"

#ifndef NBL_TEST_DATA
#define NBL_TEST_DATA "tests/data"
#endif

using namespace nbl;

namespace {

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;  // 0: none
  std::function<bool(std::vector<std::string>&)> run;
};

bool suite(const std::string& name, std::vector<std::string>& info, const VerifyOptions& o = {}) {
  const SuiteResult r = run_suite(name, o);
  info.push_back(name + ": " + std::to_string(r.checks) + " checks, " + std::to_string(r.failures) + " failures");
  for (const auto& n : r.notes) info.push_back(n);
  for (const auto& f : r.failed) info.push_back("failed: " + f);
  return r.passed;
}

bool frozen_cpfv(std::vector<std::string>& info) {
  const std::string path = std::string(NBL_TEST_DATA) + "/a4_cpfv_r4_6.json";
  std::ifstream in(path);
  if (!in) {
    info.push_back("missing " + path);
    return false;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const CentralExtension e = builtin_a4_extension();
  EnumerationSpec s;
  bool ok = true;
  for (unsigned threads : {1U, 2U}) {
    OrbitOptions o;
    o.threads = threads;
    const std::string fresh = cpfv_to_json("A4", e, cpfv_probe(e.base(), e, s, 4, 6, o)).dump(2) + "\n";
    if (fresh != buf.str()) {
      info.push_back("regenerated table differs from " + path + " (threads=" + std::to_string(threads) + ")");
      ok = false;
    }
  }
  if (ok) info.push_back("table regenerated byte-identically, sha256 " + sha256_hex(buf.str()).substr(0, 16));
  return ok;
}

std::vector<Criterion> criteria() {
  return {
      {1, "braid-group axioms on sampled tuples (S3, A4, D5)", 10,
       [](auto& info) { return suite("braid-relations", info); }},
      {2, "orbit partition equals naive union-find", 60, [](auto& info) { return suite("orbit-oracle", info); }},
      {3, "Clebsch connectivity for (d,r) in {(3,4),(3,6),(4,6),(5,6)}", 120,
       [](auto& info) { return suite("clebsch", info); }},
      {4, "S3 transpositions, affine, r=8: generating tail witness in every orbit", 60,
       [](auto& info) { return suite("generating-tail", info); }},
      {5, "stabilization: periodic connected counts for D5 and S3, oracle-exact", 0,
       [](auto& info) { return suite("stabilization", info); }},
      {6, "inner automorphisms realized by braids (S3 r<=6, A4 r<=4)", 0,
       [](auto& info) { return suite("inner-braids", info); }},
      {7, "monoid laws and commutation over S3 components", 60, [](auto& info) { return suite("monoid", info); }},
      {8, "singleton twist set whenever <H,K> = HK", 0, [](auto& info) { return suite("twist", info); }},
      {9, "hf counts for A3 in S3 and the constant control", 0, [](auto& info) { return suite("hf", info); }},
      {10, "lifting invariant and the A4 cpfv table", 0,
       [](auto& info) {
         const bool a = suite("lifting", info);
         const bool b = frozen_cpfv(info);
         return a && b;
       }},
      {11, "rationality examples", 0, [](auto& info) { return suite("rationality", info); }},
  };
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "-v") {
      verbose = true;
    } else {
      only = std::atoi(argv[i]);
    }
  }
  bool all_ok = true;
  for (const Criterion& c : criteria()) {
    if (only && c.number != only) continue;
    std::vector<std::string> info;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run(info);
    } catch (const std::exception& e) {
      info.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
      info.push_back("over the time limit of " + std::to_string(static_cast<int>(c.limit_seconds)) + " s");
      ok = false;
    }
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << c.number << "  " << c.title << "  ("
              << std::fixed << std::setprecision(2) << secs << " s)\n";
    if (!ok || verbose || only) {
      for (const auto& line : info) std::cout << "      " << line << '\n';
    }
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
