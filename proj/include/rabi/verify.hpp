#pragma once

// Numerical self-checks behind `rabi verify`. Suite 0 collects the per-module
// invariants; suites 1-7 are the identity, spectral, oracle, figure-feature
// and symmetry suites.

#include <string>
#include <vector>

#include "rabi/models.hpp"

namespace rabi::verify {

enum class Relation { below, at_most, above, at_least };

struct Check {
  std::string name;
  int suite = 0;
  double value = 0.0;
  double threshold = 0.0;
  Relation relation = Relation::below;
  bool pass = false;
};

Check make_check(std::string name, int suite, double value, double threshold,
                 Relation relation = Relation::below);

constexpr int kFirstSuite = 0;
constexpr int kLastSuite = 7;

std::string suite_title(int suite);

/// Cutoff and guard are taken from `p` for suites 0-2 and 7; suites 3-6 use
/// the default cutoff of each initial state. Throws InvalidArgument for an
/// unknown suite id.
std::vector<Check> run_suite(int suite, const ModelParams& p = {});

/// CHECK <name> value=<v> threshold=<t> PASS|FAIL
std::string format_check(const Check& c);

bool all_pass(const std::vector<Check>& checks);

}  // namespace rabi::verify
