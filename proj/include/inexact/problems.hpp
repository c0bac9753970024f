#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "inexact/bits.hpp"

namespace inexact {

enum class ProblemKind {
  Or,
  UnaryEvaluation,
  BinaryEvaluation,
  Tribes,
  Comparison,
  Sorting,
  CustomTable,
};

std::string to_string(ProblemKind kind);
/// Accepts the short names used on the command line: or, ue, be, tribes,
/// comparison, sorting, custom.
ProblemKind problem_kind_from_string(std::string_view name);

/// Parameters for build_problem. Only the fields relevant to `kind` are read:
///   Or, UnaryEvaluation, BinaryEvaluation: n
///   Tribes: n, tribes
///   Comparison: word_bits (k); n is 2k
///   Sorting: word_count (L), word_bits (k); n is L*k
///   CustomTable: table (2^n outputs, row index order)
struct ProblemSpec {
  ProblemKind kind = ProblemKind::Or;
  int n = 0;
  int tribes = 2;
  int word_bits = 0;
  int word_count = 0;
  std::vector<std::int64_t> table;
  std::string name;
};

/// An integer-valued function of n input bits.
///
/// Operand layout for the multi-word problems: word w occupies bits
/// [w*k, (w+1)*k) with its least significant bit at w*k. For Comparison,
/// word 0 is x and word 1 is y, and the output is sign(x - y). For Sorting
/// the output is the non-decreasing sequence of words packed back into an
/// integer in the same layout (smallest word in the lowest k bits).
class BooleanProblem {
 public:
  const std::string& name() const { return name_; }
  ProblemKind kind() const { return kind_; }
  int n() const { return n_; }
  int tribe_count() const { return tribes_; }
  int word_bits() const { return word_bits_; }
  int word_count() const { return word_count_; }
  std::int64_t output_bound() const { return output_bound_; }

  /// f(row) for a packed row; bits above n are ignored.
  std::int64_t evaluate(Row row) const;

  /// Checked variant: throws invalid_input_error unless bits has n 0/1 entries.
  std::int64_t evaluate(std::span<const std::uint8_t> bits) const;

  /// Word values for Comparison and Sorting (x, y, ... in layout order).
  std::vector<std::int64_t> words(Row row) const;

  /// True for kinds whose value is invariant under any input-bit permutation.
  bool symmetric_function() const;

  const std::vector<std::int64_t>& table() const { return table_; }

 private:
  friend BooleanProblem build_problem(const ProblemSpec& spec);
  BooleanProblem() = default;

  std::string name_;
  ProblemKind kind_ = ProblemKind::Or;
  int n_ = 0;
  int tribes_ = 0;
  int word_bits_ = 0;
  int word_count_ = 0;
  std::int64_t output_bound_ = 0;
  std::vector<std::int64_t> table_;
};

/// Throws invalid_input_error with an explanation on bad parameters.
BooleanProblem build_problem(const ProblemSpec& spec);

BooleanProblem make_or(int n);
BooleanProblem make_unary_evaluation(int n);
BooleanProblem make_binary_evaluation(int n);
BooleanProblem make_tribes(int n, int tribes = 2);
BooleanProblem make_comparison(int k);
BooleanProblem make_sorting(int count, int k);
BooleanProblem make_custom(int n, std::vector<std::int64_t> table, std::string name = "custom");

/// Custom table whose output depends only on the number of ones:
/// f(row) = signature[popcount(row)]. signature has n+1 entries.
BooleanProblem make_symmetric_function(int n, std::span<const std::int64_t> signature);

inline constexpr int kMaxTruthTableBits = 20;
inline constexpr int kMaxCustomTableBits = 14;

/// T_f: outputs[i] = f(i) with row index i encoding b_0 as its low bit.
struct TruthTable {
  int n = 0;
  std::vector<std::int64_t> outputs;

  std::size_t rows() const { return outputs.size(); }
  /// c(i, j) for j < n is an input bit, c(i, n) the output.
  std::int64_t cell(std::size_t i, int j) const;
};

/// Throws resource_limit_error when n > kMaxTruthTableBits.
TruthTable truth_table(const BooleanProblem& problem);

}  // namespace inexact
