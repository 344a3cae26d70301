// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace noise_sieve {

/// counts[actual][predicted] over an ordered label set.
struct ConfusionMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> counts;

  std::size_t total() const;
  std::size_t correct() const;
  std::size_t support(std::size_t label) const;  // row sum

  bool operator==(const ConfusionMatrix&) const = default;
};

struct PrecisionRecallF {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;

  bool operator==(const PrecisionRecallF&) const = default;
};

enum class Averaging { weighted, macro, micro };

/// Throws std::invalid_argument on mismatched or empty inputs and
/// UnknownNameError on a label outside `labels`.
ConfusionMatrix confusion(const std::vector<std::string>& predicted, const std::vector<std::string>& actual,
                          const std::vector<std::string>& labels);

/// Precision and recall from raw counts, F as their harmonic mean; every 0/0
/// is defined as 0.
PrecisionRecallF prf_from_counts(std::size_t true_positive, std::size_t false_positive, std::size_t false_negative);
double f_measure(double precision, double recall);

PrecisionRecallF precision_recall_f(const ConfusionMatrix& matrix, std::string_view label);
PrecisionRecallF precision_recall_f(const ConfusionMatrix& matrix, std::size_t label_index);

/// weighted: per-class values averaged with actual-class support as weight;
/// macro: unweighted mean over labels; micro: from pooled TP/FP/FN.
PrecisionRecallF aggregate(const ConfusionMatrix& matrix, Averaging averaging = Averaging::weighted);

std::string to_string(Averaging averaging);
Averaging averaging_from_string(std::string_view text);

void to_json(nlohmann::json& out, const ConfusionMatrix& matrix);
void from_json(const nlohmann::json& in, ConfusionMatrix& matrix);
void to_json(nlohmann::json& out, const PrecisionRecallF& prf);
void from_json(const nlohmann::json& in, PrecisionRecallF& prf);

}  // namespace noise_sieve
