// Apache License, Version 2.0, refer to LICENSE.txt

#include "noise_sieve/metrics.hpp"

#include <numeric>
#include <stdexcept>

#include "noise_sieve/error.hpp"

namespace noise_sieve {

namespace {

double ratio(std::size_t numerator, std::size_t denominator) {
  return denominator == 0 ? 0.0 : static_cast<double>(numerator) / static_cast<double>(denominator);
}

std::size_t column_sum(const ConfusionMatrix& matrix, std::size_t column) {
  std::size_t sum = 0;
  for (const auto& row : matrix.counts) sum += row[column];
  return sum;
}

}  // namespace

std::size_t ConfusionMatrix::total() const {
  std::size_t sum = 0;
  for (const auto& row : counts) sum = std::accumulate(row.begin(), row.end(), sum);
  return sum;
}

std::size_t ConfusionMatrix::correct() const {
  std::size_t trace = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) trace += counts[i][i];
  return trace;
}

std::size_t ConfusionMatrix::support(std::size_t label) const {
  const auto& row = counts.at(label);
  return std::accumulate(row.begin(), row.end(), std::size_t{0});
}

ConfusionMatrix confusion(const std::vector<std::string>& predicted, const std::vector<std::string>& actual,
                          const std::vector<std::string>& labels) {
  if (predicted.size() != actual.size()) {
    throw std::invalid_argument("confusion: " + std::to_string(predicted.size()) + " predictions for " +
                                std::to_string(actual.size()) + " actual labels");
  }
  if (predicted.empty()) throw std::invalid_argument("confusion: no predictions");
  ConfusionMatrix matrix{labels, std::vector<std::vector<std::size_t>>(labels.size(),
                                                                       std::vector<std::size_t>(labels.size(), 0))};
  auto index_of = [&](const std::string& label) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == label) return i;
    }
    throw UnknownNameError("confusion: unknown label '" + label + "'");
  };
  for (std::size_t i = 0; i < predicted.size(); ++i) ++matrix.counts[index_of(actual[i])][index_of(predicted[i])];
  return matrix;
}

double f_measure(double precision, double recall) {
  const double sum = precision + recall;
  return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

PrecisionRecallF prf_from_counts(std::size_t true_positive, std::size_t false_positive, std::size_t false_negative) {
  PrecisionRecallF out;
  out.precision = ratio(true_positive, true_positive + false_positive);
  out.recall = ratio(true_positive, true_positive + false_negative);
  out.f_measure = f_measure(out.precision, out.recall);
  return out;
}

PrecisionRecallF precision_recall_f(const ConfusionMatrix& matrix, std::size_t label_index) {
  if (label_index >= matrix.labels.size()) throw UnknownNameError("label index out of range");
  const std::size_t tp = matrix.counts[label_index][label_index];
  return prf_from_counts(tp, column_sum(matrix, label_index) - tp, matrix.support(label_index) - tp);
}

PrecisionRecallF precision_recall_f(const ConfusionMatrix& matrix, std::string_view label) {
  for (std::size_t i = 0; i < matrix.labels.size(); ++i) {
    if (matrix.labels[i] == label) return precision_recall_f(matrix, i);
  }
  throw UnknownNameError("unknown label '" + std::string(label) + "'");
}

PrecisionRecallF aggregate(const ConfusionMatrix& matrix, Averaging averaging) {
  const std::size_t labels = matrix.labels.size();
  if (labels == 0) throw std::invalid_argument("aggregate: empty confusion matrix");
  PrecisionRecallF out;
  switch (averaging) {
    case Averaging::micro: {
      std::size_t tp = 0, fp = 0, fn = 0;
      for (std::size_t i = 0; i < labels; ++i) {
        const std::size_t diag = matrix.counts[i][i];
        tp += diag;
        fp += column_sum(matrix, i) - diag;
        fn += matrix.support(i) - diag;
      }
      return prf_from_counts(tp, fp, fn);
    }
    case Averaging::macro: {
      for (std::size_t i = 0; i < labels; ++i) {
        const auto per_class = precision_recall_f(matrix, i);
        out.precision += per_class.precision;
        out.recall += per_class.recall;
        out.f_measure += per_class.f_measure;
      }
      const double n = static_cast<double>(labels);
      out.precision /= n;
      out.recall /= n;
      out.f_measure /= n;
      return out;
    }
    case Averaging::weighted: {
      const std::size_t total = matrix.total();
      if (total == 0) return out;
      for (std::size_t i = 0; i < labels; ++i) {
        const double weight = ratio(matrix.support(i), total);
        if (weight == 0.0) continue;
        const auto per_class = precision_recall_f(matrix, i);
        out.precision += weight * per_class.precision;
        out.recall += weight * per_class.recall;
        out.f_measure += weight * per_class.f_measure;
      }
      return out;
    }
  }
  return out;
}

std::string to_string(Averaging averaging) {
  switch (averaging) {
    case Averaging::weighted:
      return "weighted";
    case Averaging::macro:
      return "macro";
    case Averaging::micro:
      return "micro";
  }
  return "weighted";
}

Averaging averaging_from_string(std::string_view text) {
  if (text == "weighted" || text == "w") return Averaging::weighted;
  if (text == "macro") return Averaging::macro;
  if (text == "micro") return Averaging::micro;
  throw ConfigError("unknown averaging scheme '" + std::string(text) + "'");
}

void to_json(nlohmann::json& out, const ConfusionMatrix& matrix) {
  out = {{"labels", matrix.labels}, {"counts", matrix.counts}};
}

void from_json(const nlohmann::json& in, ConfusionMatrix& matrix) {
  in.at("labels").get_to(matrix.labels);
  in.at("counts").get_to(matrix.counts);
}

void to_json(nlohmann::json& out, const PrecisionRecallF& prf) {
  out = {{"precision", prf.precision}, {"recall", prf.recall}, {"f_measure", prf.f_measure}};
}

void from_json(const nlohmann::json& in, PrecisionRecallF& prf) {
  in.at("precision").get_to(prf.precision);
  in.at("recall").get_to(prf.recall);
  in.at("f_measure").get_to(prf.f_measure);
}

}  // namespace noise_sieve
