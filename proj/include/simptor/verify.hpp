#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "simptor/caps.hpp"
#include "simptor/chain.hpp"
#include "simptor/io.hpp"
#include "simptor/simplicial.hpp"

namespace simptor {

struct NamedComplex {
  std::string name;
  BoundedChainComplex complex;
};

struct NamedSimplicial {
  std::string name;
  TruncatedSimplicialGroup object;
};

struct Corpus {
  std::uint64_t seed = 0;
  std::vector<NamedComplex> complexes;     // proper and non-proper, D <= 3
  std::vector<NamedSimplicial> simplicials;  // D <= 4
};

// Random proper complexes over groups of order <= 16, plus the named examples.
std::vector<NamedComplex> chain_corpus(std::uint64_t seed, const Caps& caps = {});
// Discrete, indiscrete, Eilenberg-MacLane, crossed-module nerves and products.
std::vector<NamedSimplicial> simplicial_corpus(std::uint64_t seed, const Caps& caps = {});
Corpus build_corpus(std::uint64_t seed, const Caps& caps = {});

// Number of random proper complexes in chain_corpus.
inline constexpr std::size_t kRandomComplexes = 60;

enum class Status { kPass, kFail, kSkipped };

struct CheckResult {
  std::string suite;
  std::string id;
  Status status = Status::kPass;
  std::string reason;  // skipped only
  json witness;        // fail only
};

json to_json(const CheckResult& r);
std::string status_name(Status s);

// Claim filter for the suites below: empty means every claim.
using Claims = std::set<std::string>;

std::vector<CheckResult> suite_tt1(const Corpus& corpus, const Caps& caps = {});
std::vector<CheckResult> suite_ses_exactness(const Corpus& corpus, const Caps& caps = {});
std::vector<CheckResult> suite_homology(const Corpus& corpus, const Caps& caps = {}, const Claims& claims = {});
std::vector<CheckResult> suite_lattice(const Corpus& corpus, const Caps& caps = {});
std::vector<CheckResult> suite_simplicial_theorems(const Corpus& corpus, const Caps& caps = {},
                                                   const Claims& claims = {});
std::vector<CheckResult> suite_counterexample(const Corpus& corpus, const Caps& caps = {});

// "tt1", "ses", "homology", "lattice", "simplicial", "counterexample".
const std::vector<std::string>& suite_names();
// True when the suite reads the simplicial part of the corpus.
bool suite_needs_simplicial(const std::string& suite);
bool suite_needs_chain(const std::string& suite);
std::vector<CheckResult> run_suite(const std::string& name, const Corpus& corpus, const Caps& caps = {});

// {"seed", "results": [...], "summary": {suite: {"pass", "fail", "skipped"}}}.
json report_json(const std::vector<CheckResult>& results, std::uint64_t seed);
bool any_failed(const std::vector<CheckResult>& results);

}  // namespace simptor
