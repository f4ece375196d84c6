#pragma once

#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "asl/symbols.hpp"

namespace asl {

struct Betas {
  double beta1 = 0, beta2 = 0, beta3 = 0;
};

/// Throws if (beta1, beta2, beta3) violate the exponent constraint block
/// 0 < beta3 <= beta1, beta1 + beta2 <= r0, -2 <= beta2 < 0.
void check_beta_constraints(const Betas& b, double r0);

using BSequence = std::function<std::array<int, 2>(int)>;  // j >= 1

BSequence mg_default_sequence();    // b^(j) = (j^2, j)
BSequence sipm_default_sequence();  // b^(j) = j

struct ConditionSweep {
  int a = 1;
  std::string sequence_name;
  BSequence sequence;
  Betas betas;
  int j_max = 20;
  int n_max = 200;
};

struct ConditionVerdict {
  bool holds = false;
  std::string witness;
};

/// Per-condition verdicts for (C1)-(C6) with the fitted constants. The
/// constants are exhibited, not assumed: Ctilde1 is the measured max of
/// T^_d / (|b|^beta1 n^beta2), Ctilde2 the measured min of
/// T^_d(b,a) T^_d(b,2a) / |b|^(2 beta3).
struct ConditionReport {
  int a = 1;
  std::string sequence_name;
  Betas betas;
  int j_max = 0, n_max = 0;
  std::map<std::string, ConditionVerdict> verdicts;
  double Ctilde1 = 0, Ctilde2 = 0;
  bool Ctilde1_stable = false, Ctilde2_stable = false;

  struct Row {
    std::string condition;
    int j = 0;
    double b_norm = 0;
    double value = 0;      // measured quantity for this (condition, j)
    double reference = 0;  // bound / comparison value, 0 when n/a
    bool holds = false;
  };
  std::vector<Row> rows;

  bool all_hold() const;
  std::string summary() const;
};

ConditionReport verify_conditions(const MultiplierSymbol& sym,
                                  const ConditionSweep& sweep);

/// Flat CSV: one row per (condition, j) witness, then a summary comment line.
void write_condition_csv(const ConditionReport& rep, std::ostream& os);

}  // namespace asl
