#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fendec {

// Dense row-major matrix. Instance sizes here are small enough that sparse
// storage buys nothing.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  const std::vector<double>& data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct FirstStage {
  std::vector<double> c;  // n1
  Matrix A;               // m1 x n1
  std::vector<double> b;  // m1

  std::size_t n1() const { return c.size(); }
  std::size_t m1() const { return b.size(); }
  bool operator==(const FirstStage&) const = default;
};

struct Scenario {
  double p = 0.0;
  std::vector<double> q;  // n2
  std::vector<double> h;  // m2
  Matrix T;               // m2 x n1
  bool operator==(const Scenario&) const = default;
};

// Two-stage SMIP: max c'x + sum_w p_w max{q_w'y : W y <= h_w - T_w x, 0 <= y <= u, y integer},
// with x binary and A x <= b.
struct TwoStageInstance {
  std::string name;
  FirstStage first;
  Matrix W;                 // m2 x n2, nonnegative
  std::vector<double> u;    // n2, integral upper bounds >= 1
  std::vector<Scenario> scenarios;

  std::size_t n1() const { return first.n1(); }
  std::size_t m1() const { return first.m1(); }
  std::size_t n2() const { return W.cols(); }
  std::size_t m2() const { return W.rows(); }
  bool operator==(const TwoStageInstance&) const = default;
};

enum class Severity { Error, Warning };

struct Finding {
  Severity severity;
  std::string message;
};

// Checks dimensions and the structural assumptions: probabilities sum to one,
// W >= 0, finite integral u >= 1, nonempty scenario list (errors); x = 0
// first-stage feasible and tau >= 0 at the all-zeros and all-ones x (warnings).
std::vector<Finding> validate(const TwoStageInstance& inst);

bool has_errors(const std::vector<Finding>& findings);

// Deterministic equivalent as one pure-integer program. Column layout is
// [x (n1), y(w_0) (n2), y(w_1) (n2), ...]; every row is <=.
struct DepModel {
  std::vector<double> objective;
  Matrix rows;
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<bool> integer;
};

// Throws std::invalid_argument on dimension mismatch.
DepModel build_dep(const TwoStageInstance& inst);

// tau = h_w - T_w x for scenario w; rho is q_w.
struct SubproblemData {
  std::vector<double> rho;
  std::vector<double> tau;
};

SubproblemData subproblem_data(const TwoStageInstance& inst, std::span<const double> x,
                               std::size_t scenario);

std::vector<double> scenario_tau(const TwoStageInstance& inst, std::span<const double> x,
                                 std::size_t scenario);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// SIPX text format. Reading throws ParseError (with line number) on malformed
// input and std::runtime_error when the file cannot be opened.
TwoStageInstance read_instance(const std::string& path);
TwoStageInstance parse_instance(const std::string& text, const std::string& name = "");
void write_instance(const TwoStageInstance& inst, const std::string& path);
std::string format_instance(const TwoStageInstance& inst);

}  // namespace fendec
