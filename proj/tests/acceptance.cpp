// One PASS/FAIL line per acceptance criterion.
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "simptor/chain.hpp"
#include "simptor/verify.hpp"

using namespace simptor;

#ifndef SIMPTOR_CLI_PATH
#error "SIMPTOR_CLI_PATH must point at the command-line binary"
#endif

namespace {

constexpr std::uint64_t kSeed = 7;

std::string object_of(const CheckResult& r) { return r.id.substr(0, r.id.find('/')); }

// Nothing when every result passed and at least `min_cases` ran.
std::optional<std::string> all_pass(const std::vector<CheckResult>& rs, std::size_t min_cases) {
  std::size_t pass = 0;
  for (const auto& r : rs) {
    if (r.status == Status::kPass) {
      ++pass;
      continue;
    }
    return status_name(r.status) + " " + r.suite + " " + r.id + (r.reason.empty() ? "" : " (" + r.reason + ")");
  }
  if (pass < min_cases) return std::to_string(pass) + " cases, expected at least " + std::to_string(min_cases);
  return std::nullopt;
}

std::optional<std::string> distinct_objects(const std::vector<CheckResult>& rs, std::size_t min_objects) {
  std::set<std::string> objects;
  for (const auto& r : rs) objects.insert(object_of(r));
  if (objects.size() < min_objects)
    return std::to_string(objects.size()) + " objects, expected at least " + std::to_string(min_objects);
  return std::nullopt;
}

std::optional<std::string> first_of(std::initializer_list<std::optional<std::string>> checks) {
  for (const auto& c : checks)
    if (c) return c;
  return std::nullopt;
}

std::string run_cli(const std::string& args) {
  std::string cmd = std::string(SIMPTOR_CLI_PATH) + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  pclose(pipe);
  return out;
}

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;
  std::function<std::optional<std::string>()> check;
};

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  Corpus corpus = build_corpus(kSeed);
  double corpus_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::size_t proper_random = 0;
  bool small = true;
  for (const auto& nc : corpus.complexes) {
    if (nc.name.rfind("rand-", 0) != 0) continue;
    proper_random += nc.complex.proper();
    small = small && nc.complex.degree_bound() <= 3;
    for (const auto& g : nc.complex.objects()) small = small && g.order() <= 16;
  }

  std::vector<Criterion> criteria = {
      {1, "D4 counterexample: cot_0(ker eta) has order 2", 1.0,
       [&]() -> std::optional<std::string> {
         auto rep = d4_counterexample();
         if (rep.cot0_of_kernel_order != 2 || !rep.nontrivial)
           return "cot_0(ker eta) order " + std::to_string(rep.cot0_of_kernel_order);
         std::vector<CheckResult> d4;
         for (auto& r : suite_counterexample(corpus))
           if (r.id == "d4") d4.push_back(r);
         return all_pass(d4, 1);
       }},
      {2, "H_n and K_n isomorphic on every proper corpus complex", 30.0,
       [&]() -> std::optional<std::string> {
         if (proper_random < 50 || !small) return "corpus has " + std::to_string(proper_random) + " proper random complexes";
         auto rs = suite_homology(corpus, {}, {"H=K"});
         return first_of({all_pass(rs, 1), distinct_objects(rs, 50)});
       }},
      {3, "homology table parts 1-6 and the H_n to K_n comparison", 60.0,
       [&]() -> std::optional<std::string> {
         auto rs = suite_homology(corpus, {}, {"part-1", "part-2", "part-3", "part-4", "part-5", "part-6", "homo"});
         return first_of({all_pass(rs, 1), distinct_objects(rs, 50)});
       }},
      {4, "lattice inclusions on chain and simplicial objects", 60.0,
       [&]() { return all_pass(suite_lattice(corpus), corpus.complexes.size() + corpus.simplicials.size()); }},
      {5, "K(A,n) levels, Moore complex and homotopy", 30.0,
       [&]() { return all_pass(suite_simplicial_theorems(corpus, {}, {"eilenberg-maclane"}), 8); }},
      {6, "Moore complex commutes with Cot_n and Cosk_n", 120.0,
       [&]() {
         auto rs = suite_simplicial_theorems(corpus, {}, {"cotnorm", "norcosk"});
         return first_of({all_pass(rs, 2), distinct_objects(rs, corpus.simplicials.size())});
       }},
      {7, "fundamental homotopy tables and the K(pi,n+1) corollary", 120.0,
       [&]() {
         auto rs = suite_simplicial_theorems(
             corpus, {}, {"funsimgrp-1", "funsimgrp-2", "funsimgrp-3", "funsimgrp-4", "funsimgrp-5", "funsimgrp-6", "kanEL"});
         return all_pass(rs, 7);
       }},
      {8, "TT1: the only chain map torsion -> torsion-free is zero", 120.0,
       [&]() { return all_pass(suite_tt1(corpus), 1); }},
      {9, "semidirect order identity", 10.0,
       [&]() {
         auto rs = suite_simplicial_theorems(corpus, {}, {"semidirect"});
         return first_of({all_pass(rs, 1), distinct_objects(rs, corpus.simplicials.size())});
       }},
      {10, "verify --suite all --seed 7 is byte-identical across runs", 600.0,
       [&]() -> std::optional<std::string> {
         auto a = run_cli("--format json verify --suite all --seed 7");
         auto b = run_cli("--format json verify --suite all --seed 7");
         if (a.empty()) return "empty report";
         if (a != b) return "reports differ";
         return std::nullopt;
       }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::optional<std::string> problem;
    try {
      problem = c.check();
    } catch (const std::exception& e) {
      problem = std::string("threw ") + e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.number != 10) seconds += corpus_seconds;
    if (!problem && seconds >= c.limit_seconds) {
      std::ostringstream s;
      s << "took " << seconds << " s, limit " << c.limit_seconds << " s";
      problem = s.str();
    }
    std::printf("%s [%d] %s (%.3f s)%s%s\n", problem ? "FAIL" : "PASS", c.number, c.title.c_str(), seconds,
                problem ? ": " : "", problem ? problem->c_str() : "");
    failed += problem.has_value();
  }
  return failed == 0 ? 0 : 1;
}
