#pragma once

#include <string>
#include <vector>

#include "cantor/certificate.hpp"
#include "cantor/rational.hpp"
#include "cantor/region.hpp"

namespace cantor {

// Every decimal printed in the construction, regenerated from the exact
// rational closed form.  `match` means the exact value reproduces the
// printed digits (truncation or half-even at the printed precision); for
// window bounds it means the printed strict outer bound is certified, since
// the source prints low-precision bounds rather than the exact extremes.
// Rows whose printed digits are demonstrable slips carry a note and an
// honest false flag.
struct ConstantRow {
  std::string id;
  std::string printed;
  Rational value;
  bool match;
  std::string note;  // nonempty only for documented discrepancies
};

std::vector<ConstantRow> constants_table();

enum class VerifyMode { Sample, Rigorous };

// Printed inequality windows and exact identities of the six rescue cases.
Certificate verify_cases();

// Recurrence of the three-interval family on [s1, s2]: well-ordering,
// projection covering, bad-component rescues, paving induction, corner
// windows.  Sample mode sweeps `grid` s-values; rigorous mode certifies
// s-subintervals by adaptive bisection (all comparisons affine in s).
Certificate verify_lemma1(VerifyMode mode, int grid = 1024);

// Recurrence of (-s, 1) on the two outer s-bands via the margin-free paving.
Certificate verify_lemma2(VerifyMode mode, int grid = 256);

// The full recurrence certificate: thickness product, scale ordering,
// lattice identities, both lemmas, the long operators and the boundary
// lattice moves.
Certificate verify_theorem2(VerifyMode mode, int grid = 1024);

struct OracleReport {
  int total = 0;
  int steered = 0;
  int max_cycles_used = 0;
  size_t max_word_length = 0;
  std::vector<std::string> failures;  // "s=...,t=..." for unsteered points
};

// Empirical recurrence check: steer every grid configuration of the region
// into its interior with at most `max_cycles` return cycles (boundary
// scales first take the gamma^+-1 lattice move).
OracleReport oracle_recurrence(int grid_s, int grid_t, int max_cycles = 3);

}  // namespace cantor
