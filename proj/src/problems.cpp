#include "inexact/problems.hpp"

#include <algorithm>
#include <cstdlib>

#include "inexact/error.hpp"

namespace inexact {

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Or: return "or";
    case ProblemKind::UnaryEvaluation: return "ue";
    case ProblemKind::BinaryEvaluation: return "be";
    case ProblemKind::Tribes: return "tribes";
    case ProblemKind::Comparison: return "comparison";
    case ProblemKind::Sorting: return "sorting";
    case ProblemKind::CustomTable: return "custom";
  }
  return "unknown";
}

ProblemKind problem_kind_from_string(std::string_view name) {
  if (name == "or") return ProblemKind::Or;
  if (name == "ue" || name == "unary") return ProblemKind::UnaryEvaluation;
  if (name == "be" || name == "binary") return ProblemKind::BinaryEvaluation;
  if (name == "tribes") return ProblemKind::Tribes;
  if (name == "comparison") return ProblemKind::Comparison;
  if (name == "sorting") return ProblemKind::Sorting;
  if (name == "custom") return ProblemKind::CustomTable;
  throw invalid_input_error("unknown problem kind '" + std::string(name) + "'");
}

namespace {

void require_bits(int n, int limit, const char* what) {
  if (n < 1) throw invalid_input_error(std::string(what) + ": n must be at least 1");
  if (n > limit) {
    throw invalid_input_error(std::string(what) + ": n must be at most " + std::to_string(limit));
  }
}

std::int64_t word_at(Row row, int index, int k) {
  return static_cast<std::int64_t>((row >> (index * k)) & low_mask(k));
}

}  // namespace

std::int64_t BooleanProblem::evaluate(Row row) const {
  row &= low_mask(n_);
  switch (kind_) {
    case ProblemKind::Or:
      return row != 0 ? 1 : 0;
    case ProblemKind::UnaryEvaluation:
      return popcount(row);
    case ProblemKind::BinaryEvaluation:
      return static_cast<std::int64_t>(row);
    case ProblemKind::Tribes: {
      int width = n_ / tribes_;
      Row tribe = low_mask(width);
      for (int t = 0; t < tribes_; ++t) {
        if (((row >> (t * width)) & tribe) == tribe) return 1;
      }
      return 0;
    }
    case ProblemKind::Comparison: {
      std::int64_t x = word_at(row, 0, word_bits_);
      std::int64_t y = word_at(row, 1, word_bits_);
      return x > y ? 1 : (x < y ? -1 : 0);
    }
    case ProblemKind::Sorting: {
      auto values = words(row);
      std::sort(values.begin(), values.end());
      std::int64_t packed = 0;
      for (int w = 0; w < word_count_; ++w) {
        packed |= values[static_cast<std::size_t>(w)] << (w * word_bits_);
      }
      return packed;
    }
    case ProblemKind::CustomTable:
      return table_[static_cast<std::size_t>(row)];
  }
  return 0;
}

std::int64_t BooleanProblem::evaluate(std::span<const std::uint8_t> bits) const {
  if (bits.size() != static_cast<std::size_t>(n_)) {
    throw invalid_input_error(name_ + " expects " + std::to_string(n_) + " bits, got " +
                              std::to_string(bits.size()));
  }
  return evaluate(pack_bits(bits));
}

std::vector<std::int64_t> BooleanProblem::words(Row row) const {
  if (kind_ != ProblemKind::Comparison && kind_ != ProblemKind::Sorting) {
    throw invalid_input_error(name_ + " has no word structure");
  }
  std::vector<std::int64_t> out(static_cast<std::size_t>(word_count_));
  for (int w = 0; w < word_count_; ++w) out[static_cast<std::size_t>(w)] = word_at(row, w, word_bits_);
  return out;
}

bool BooleanProblem::symmetric_function() const {
  switch (kind_) {
    case ProblemKind::Or:
    case ProblemKind::UnaryEvaluation:
      return true;
    case ProblemKind::CustomTable: {
      // Symmetric iff the output depends on popcount alone.
      std::vector<std::int64_t> seen(static_cast<std::size_t>(n_) + 1);
      std::vector<bool> set(static_cast<std::size_t>(n_) + 1, false);
      for (std::size_t i = 0; i < table_.size(); ++i) {
        auto c = static_cast<std::size_t>(popcount(i));
        if (!set[c]) {
          set[c] = true;
          seen[c] = table_[i];
        } else if (seen[c] != table_[i]) {
          return false;
        }
      }
      return true;
    }
    default:
      return n_ == 1 && kind_ != ProblemKind::Comparison && kind_ != ProblemKind::Sorting;
  }
}

BooleanProblem build_problem(const ProblemSpec& spec) {
  BooleanProblem p;
  p.kind_ = spec.kind;
  switch (spec.kind) {
    case ProblemKind::Or:
      require_bits(spec.n, kMaxBits, "or");
      p.n_ = spec.n;
      p.output_bound_ = 1;
      break;
    case ProblemKind::UnaryEvaluation:
      require_bits(spec.n, kMaxBits, "ue");
      p.n_ = spec.n;
      p.output_bound_ = spec.n;
      break;
    case ProblemKind::BinaryEvaluation:
      require_bits(spec.n, kMaxBits, "be");
      p.n_ = spec.n;
      p.output_bound_ = static_cast<std::int64_t>(low_mask(spec.n));
      break;
    case ProblemKind::Tribes:
      require_bits(spec.n, kMaxBits, "tribes");
      if (spec.tribes < 1 || spec.n % spec.tribes != 0) {
        throw invalid_input_error("tribes: tribe count " + std::to_string(spec.tribes) +
                                  " must be positive and divide n = " + std::to_string(spec.n));
      }
      p.n_ = spec.n;
      p.tribes_ = spec.tribes;
      p.output_bound_ = 1;
      break;
    case ProblemKind::Comparison: {
      int k = spec.word_bits;
      if (k < 1 && spec.n > 0) {
        if (spec.n % 2 != 0) throw invalid_input_error("comparison: n must be even");
        k = spec.n / 2;
      }
      if (k < 1) throw invalid_input_error("comparison: k must be at least 1");
      if (spec.n != 0 && spec.n != 2 * k) {
        throw invalid_input_error("comparison: n must equal 2k");
      }
      require_bits(2 * k, kMaxBits, "comparison");
      p.n_ = 2 * k;
      p.word_bits_ = k;
      p.word_count_ = 2;
      p.output_bound_ = 1;
      break;
    }
    case ProblemKind::Sorting: {
      int count = spec.word_count;
      int k = spec.word_bits;
      if (count < 1 || k < 1) throw invalid_input_error("sorting: L and k must be at least 1");
      if (spec.n != 0 && spec.n != count * k) {
        throw invalid_input_error("sorting: n must equal L*k");
      }
      require_bits(count * k, kMaxBits, "sorting");
      p.n_ = count * k;
      p.word_bits_ = k;
      p.word_count_ = count;
      p.output_bound_ = static_cast<std::int64_t>(low_mask(p.n_));
      break;
    }
    case ProblemKind::CustomTable: {
      require_bits(spec.n, kMaxCustomTableBits, "custom");
      if (spec.table.size() != (std::size_t{1} << spec.n)) {
        throw invalid_input_error("custom: table must have 2^n = " +
                                  std::to_string(std::size_t{1} << spec.n) + " entries");
      }
      p.n_ = spec.n;
      p.table_ = spec.table;
      for (auto v : p.table_) p.output_bound_ = std::max(p.output_bound_, v < 0 ? -v : v);
      break;
    }
  }
  if (!spec.name.empty()) {
    p.name_ = spec.name;
  } else if (spec.kind == ProblemKind::Sorting) {
    p.name_ = "sorting(L=" + std::to_string(p.word_count_) + ",k=" + std::to_string(p.word_bits_) + ")";
  } else {
    p.name_ = to_string(spec.kind) + "(" + std::to_string(p.n_) + ")";
  }
  return p;
}

BooleanProblem make_or(int n) { return build_problem({.kind = ProblemKind::Or, .n = n}); }
BooleanProblem make_unary_evaluation(int n) {
  return build_problem({.kind = ProblemKind::UnaryEvaluation, .n = n});
}
BooleanProblem make_binary_evaluation(int n) {
  return build_problem({.kind = ProblemKind::BinaryEvaluation, .n = n});
}
BooleanProblem make_tribes(int n, int tribes) {
  return build_problem({.kind = ProblemKind::Tribes, .n = n, .tribes = tribes});
}
BooleanProblem make_comparison(int k) {
  return build_problem({.kind = ProblemKind::Comparison, .word_bits = k});
}
BooleanProblem make_sorting(int count, int k) {
  return build_problem({.kind = ProblemKind::Sorting, .word_bits = k, .word_count = count});
}
BooleanProblem make_custom(int n, std::vector<std::int64_t> table, std::string name) {
  return build_problem(
      {.kind = ProblemKind::CustomTable, .n = n, .table = std::move(table), .name = std::move(name)});
}

BooleanProblem make_symmetric_function(int n, std::span<const std::int64_t> signature) {
  if (n < 1 || n > kMaxCustomTableBits) throw invalid_input_error("symmetric function: bad n");
  if (signature.size() != static_cast<std::size_t>(n) + 1) {
    throw invalid_input_error("symmetric function: signature needs n+1 entries");
  }
  std::vector<std::int64_t> table(std::size_t{1} << n);
  for (std::size_t i = 0; i < table.size(); ++i) {
    table[i] = signature[static_cast<std::size_t>(popcount(i))];
  }
  std::string name = "sym(";
  for (std::size_t c = 0; c < signature.size(); ++c) {
    if (c) name += ',';
    name += std::to_string(signature[c]);
  }
  name += ")";
  return make_custom(n, std::move(table), std::move(name));
}

std::int64_t TruthTable::cell(std::size_t i, int j) const {
  if (j == n) return outputs.at(i);
  if (j < 0 || j > n) throw invalid_input_error("truth table column out of range");
  return bit_of(i, j) ? 1 : 0;
}

TruthTable truth_table(const BooleanProblem& problem) {
  if (problem.n() > kMaxTruthTableBits) {
    throw resource_limit_error("truth table for n = " + std::to_string(problem.n()) +
                               " exceeds the 2^" + std::to_string(kMaxTruthTableBits) + " row guard");
  }
  TruthTable t;
  t.n = problem.n();
  t.outputs.resize(std::size_t{1} << t.n);
  for (std::size_t i = 0; i < t.outputs.size(); ++i) t.outputs[i] = problem.evaluate(static_cast<Row>(i));
  return t;
}

}  // namespace inexact
