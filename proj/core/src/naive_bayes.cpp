// Apache License, Version 2.0, refer to LICENSE.txt

#include "noise_sieve/naive_bayes.hpp"

#include <stdexcept>

#include "noise_sieve/error.hpp"

namespace noise_sieve {

double laplace(std::size_t count, std::size_t group_total, std::size_t cardinality, double k) {
  if (cardinality < 1) throw std::invalid_argument("laplace: cardinality must be >= 1");
  if (!(k > 0.0)) throw std::invalid_argument("laplace: k must be positive");
  if (count > group_total) throw std::invalid_argument("laplace: count exceeds group total");
  return (static_cast<double>(count) + k) /
         (static_cast<double>(group_total) + static_cast<double>(cardinality) * k);
}

NaiveBayesModel NaiveBayesModel::fit(const Dataset& dataset) {
  if (dataset.empty()) throw EmptyDatasetError("cannot fit naive Bayes on an empty dataset");
  const auto& schema = dataset.schema();
  NaiveBayesModel model(schema);
  const std::size_t labels = schema.label_count();
  model.class_counts_.assign(labels, 0);
  model.value_counts_.resize(schema.attribute_count());

  for (const auto& row : dataset.rows()) {
    const std::size_t label = schema.label_index(row.label);
    ++model.class_counts_[label];
    for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
      auto& per_label = model.value_counts_[a][row.instance.values[a]];
      if (per_label.empty()) per_label.assign(labels, 0);
      ++per_label[label];
    }
  }
  model.total_ = dataset.size();

  model.cardinality_.resize(schema.attribute_count());
  for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
    std::size_t cardinality = model.value_counts_[a].size();
    if (const auto& declared = schema.attributes()[a].declared_values) {
      for (const auto& value : *declared) {
        if (!model.value_counts_[a].contains(value)) ++cardinality;
      }
    }
    model.cardinality_[a] = cardinality;
  }
  return model;
}

std::size_t NaiveBayesModel::class_count(std::string_view label) const {
  return class_counts_[schema_.label_index(label)];
}

std::size_t NaiveBayesModel::count_of(std::size_t attribute, std::string_view value, std::size_t label) const {
  const auto& counts = value_counts_[attribute];
  auto it = counts.find(value);
  return it == counts.end() ? 0 : it->second[label];
}

std::size_t NaiveBayesModel::cond_count(std::size_t attribute, std::string_view value, std::size_t label) const {
  if (attribute >= schema_.attribute_count()) throw UnknownNameError("attribute index out of range");
  if (label >= schema_.label_count()) throw UnknownNameError("label index out of range");
  return count_of(attribute, value, label);
}

std::size_t NaiveBayesModel::cond_count(std::string_view attribute, std::string_view value,
                                        std::string_view label) const {
  return count_of(schema_.attribute_index(attribute), value, schema_.label_index(label));
}

std::size_t NaiveBayesModel::value_cardinality(std::string_view attribute) const {
  return cardinality_[schema_.attribute_index(attribute)];
}

double NaiveBayesModel::prior(std::size_t label_index) const {
  if (label_index >= schema_.label_count()) throw UnknownNameError("label index out of range");
  return static_cast<double>(class_counts_[label_index]) / static_cast<double>(total_);
}

double NaiveBayesModel::prior(std::string_view label) const { return prior(schema_.label_index(label)); }

double NaiveBayesModel::smoothed_conditional(std::size_t attribute, std::string_view value, std::size_t label,
                                             double k) const {
  return laplace(count_of(attribute, value, label), class_counts_[label], cardinality_[attribute], k);
}

double NaiveBayesModel::conditional(std::size_t attribute, std::string_view value, std::size_t label,
                                    const SmoothingPolicy& policy) const {
  if (attribute >= schema_.attribute_count()) throw UnknownNameError("attribute index out of range");
  if (label >= schema_.label_count()) throw UnknownNameError("label index out of range");
  if (policy.mode == SmoothingMode::laplace_always) return smoothed_conditional(attribute, value, label, policy.k);
  const std::size_t group = class_counts_[label];
  if (group == 0) return 0.0;
  return static_cast<double>(count_of(attribute, value, label)) / static_cast<double>(group);
}

double NaiveBayesModel::conditional(std::string_view attribute, std::string_view value, std::string_view label,
                                    const SmoothingPolicy& policy) const {
  return conditional(schema_.attribute_index(attribute), value, schema_.label_index(label), policy);
}

void NaiveBayesModel::check_instance(const Instance& instance) const {
  if (instance.values.size() != schema_.attribute_count()) {
    throw SchemaError("instance has " + std::to_string(instance.values.size()) + " values, schema expects " +
                      std::to_string(schema_.attribute_count()));
  }
}

bool NaiveBayesModel::needs_smoothing(const Instance& instance) const {
  check_instance(instance);
  for (std::size_t c = 0; c < schema_.label_count(); ++c) {
    if (class_counts_[c] == 0) continue;
    for (std::size_t a = 0; a < schema_.attribute_count(); ++a) {
      if (count_of(a, instance.values[a], c) == 0) return true;
    }
  }
  return false;
}

std::vector<double> NaiveBayesModel::likelihoods(const Instance& instance, const SmoothingPolicy& policy) const {
  check_instance(instance);
  if (policy.mode != SmoothingMode::none && !(policy.k > 0.0)) {
    throw std::invalid_argument("smoothing k must be positive");
  }
  const bool smooth = policy.mode == SmoothingMode::laplace_always ||
                      (policy.mode == SmoothingMode::laplace_on_zero && needs_smoothing(instance));
  std::vector<double> out(schema_.label_count(), 1.0);
  for (std::size_t c = 0; c < schema_.label_count(); ++c) {
    for (std::size_t a = 0; a < schema_.attribute_count(); ++a) {
      const auto& value = instance.values[a];
      if (smooth) {
        out[c] *= smoothed_conditional(a, value, c, policy.k);
      } else {
        out[c] *= conditional(a, value, c, SmoothingPolicy{SmoothingMode::none, policy.k});
      }
    }
  }
  return out;
}

double NaiveBayesModel::likelihood(const Instance& instance, std::string_view label,
                                   const SmoothingPolicy& policy) const {
  const std::size_t index = schema_.label_index(label);
  return likelihoods(instance, policy)[index];
}

double NaiveBayesModel::posterior_score(const Instance& instance, std::string_view label,
                                        const SmoothingPolicy& policy) const {
  const std::size_t index = schema_.label_index(label);
  return likelihoods(instance, policy)[index] * prior(index);
}

Prediction NaiveBayesModel::predict(const Instance& instance, const SmoothingPolicy& policy) const {
  Prediction prediction;
  prediction.likelihoods = likelihoods(instance, policy);
  prediction.scores.resize(prediction.likelihoods.size());
  for (std::size_t c = 0; c < prediction.scores.size(); ++c) {
    prediction.scores[c] = prediction.likelihoods[c] * prior(c);
    if (prediction.scores[c] > prediction.scores[prediction.label_index]) prediction.label_index = c;
  }
  prediction.label = schema_.class_labels()[prediction.label_index];
  return prediction;
}

}  // namespace noise_sieve
