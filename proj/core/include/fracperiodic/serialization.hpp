#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fracperiodic/bifurcation.hpp"
#include "fracperiodic/diagnostics.hpp"
#include "fracperiodic/linear.hpp"
#include "fracperiodic/periodic_function.hpp"
#include "fracperiodic/semilinear.hpp"

namespace fracperiodic::io {

// PeriodicFunction JSON:
//
//   {"T": 8.0, "N": 3, "odd": true, "a": [a_1, ..., a_N], "b": [b_0, ..., b_N]}
//
// a holds the sine and b the cosine coefficients. Readers also accept an
// `a` array of length N + 1 whose first entry is the (ignored) a_0 slot, and
// ignore keys they do not know, so a solution document is a valid function
// document. Malformed input raises InvalidArgument.

std::string to_json(const PeriodicFunction& u);
PeriodicFunction function_from_json(const std::string& text);
PeriodicFunction read_function(const std::string& path);

const char* to_string(Classification c) noexcept;

/// Function JSON plus residual, J, E, amplitude and classification.
std::string solution_to_json(const SemilinearSolution& sol);

/// Function JSON of the solution plus residual and stability_constant.
std::string linear_solution_to_json(const CoerciveSolution& sol);
/// Function JSON of the solution plus residual, unique and the kernel basis
/// as an array of function objects.
std::string linear_solution_to_json(const FredholmResult& sol);

/// JSON array of {lambda, amplitude, residual, sigma_min, u} per branch point.
std::string branch_points_to_json(const Branch& branch);

/// 17 significant digits; "nan", "inf" and "-inf" for non-finite values.
std::string format_double(double v);

/// Comma-separated rows under a fixed header. Doubles go through format_double.
class CsvWriter {
public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);

  CsvWriter& operator<<(double v);
  CsvWriter& operator<<(int v);
  CsvWriter& operator<<(const std::string& v);
  /// Terminates the current row; throws InvalidArgument on a column count mismatch.
  void end_row();

private:
  void separator();

  std::ostream& out_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

// Per-command tables. Headers are part of the public interface.

/// index,lambda
void write_eigen_csv(std::ostream& out, const std::vector<EigenPair>& pairs);
/// lambda,amplitude,residual,sigma_min
void write_branch_csv(std::ostream& out, const Branch& branch);
/// lambda,T,amplitude,residual_rescaled,residual_original
void write_t0_csv(std::ostream& out, const T0BoundReport& report);
/// x,w,F,deviation
void write_hamiltonian_csv(std::ostream& out, const HamiltonianReport& report);
/// x,y,v
void write_modica_csv(std::ostream& out, const ModicaReport& report);
/// T,J,slope_so_far,E,sigma,amplitude,residual
void write_scan_csv(std::ostream& out, const EnergyScanReport& report);
/// region,value,bound,constant
void write_test_function_csv(std::ostream& out, const TestFunctionReport& report);

}  // namespace fracperiodic::io
