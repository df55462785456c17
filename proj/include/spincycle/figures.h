#pragma once

#include <vector>

#include "spincycle/csv.h"

namespace spincycle {

// Curve datasets behind the `figure` command.  All values in units of pi.

// Geometric phase of the dark single-qubit gate versus omega1/omega0.
struct Fig1Point {
  double ratio;
  double gamma_over_pi;
};
std::vector<Fig1Point> fig1_dataset(const std::vector<double>& ratios);

// Conditional geometric phases on the two-qubit dark manifold versus omega1/J.
struct Fig2Point {
  double ratio;
  double gamma0_over_pi;
  double gamma1_over_pi;
};
std::vector<Fig2Point> fig2_dataset(const std::vector<double>& ratios);

// Loop-2 fields and conditional geometric phases of the two-loop plans
// versus the loop-1 drive frequency.
struct Fig3Point {
  double omega;
  bool ok;
  double omega_prime = 0.0;
  double omega0_prime = 0.0;
  double omega1_prime = 0.0;
  double gamma0_over_pi = 0.0;
  double gamma1_over_pi = 0.0;
};
std::vector<Fig3Point> fig3_dataset(double omega0, double omega1, double coupling,
                                    const std::vector<double>& omega_grid);

CsvWriter fig1_csv(const std::vector<Fig1Point>& points);
CsvWriter fig2_csv(const std::vector<Fig2Point>& points);
CsvWriter fig3a_csv(const std::vector<Fig3Point>& points);
CsvWriter fig3b_csv(const std::vector<Fig3Point>& points);

}  // namespace spincycle
