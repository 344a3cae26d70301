// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "noise_sieve/dataset.hpp"

namespace noise_sieve {

enum class SmoothingMode {
  none,             // raw count ratios; zero factors allowed
  laplace_on_zero,  // raw, unless some class's raw product hits an exact zero count
  laplace_always,
};

struct SmoothingPolicy {
  SmoothingMode mode = SmoothingMode::laplace_on_zero;
  double k = 1.0;
};

/// Add-k estimate (count + k) / (group_total + cardinality * k).
///
/// Throws std::invalid_argument if cardinality < 1, k <= 0 or
/// count > group_total.
double laplace(std::size_t count, std::size_t group_total, std::size_t cardinality, double k = 1.0);

struct Prediction {
  std::string label;
  std::size_t label_index = 0;
  // Indexed like schema().class_labels().
  std::vector<double> likelihoods;  // P(X|C)
  std::vector<double> scores;       // P(X|C) P(C), unnormalised
};

/// Count-based categorical naive Bayes.
///
/// Holds only integer counts; every probability is derived on demand. When
/// smoothing attribute conditionals, the Laplace denominator uses the
/// attribute's distinct-value cardinality (observed values plus declared
/// ones), so the smoothed conditionals of an (attribute, class) pair sum to 1
/// over that value set.
class NaiveBayesModel {
 public:
  /// Single pass over the rows. Throws EmptyDatasetError on an empty dataset.
  static NaiveBayesModel fit(const Dataset& dataset);

  const AttributeSchema& schema() const { return schema_; }
  std::size_t total() const { return total_; }
  std::size_t class_count(std::string_view label) const;
  std::size_t class_count(std::size_t label_index) const { return class_counts_.at(label_index); }
  std::size_t cond_count(std::string_view attribute, std::string_view value, std::string_view label) const;
  std::size_t cond_count(std::size_t attribute, std::string_view value, std::size_t label) const;
  std::size_t value_cardinality(std::string_view attribute) const;
  std::size_t value_cardinality(std::size_t attribute) const { return cardinality_.at(attribute); }
  // Values seen for an attribute during fit, with per-label counts.
  const std::map<std::string, std::vector<std::size_t>, std::less<>>& value_counts(std::size_t attribute) const {
    return value_counts_.at(attribute);
  }

  double prior(std::string_view label) const;
  double prior(std::size_t label_index) const;

  /// P(value | label). Mode none and laplace_on_zero give the raw ratio
  /// (0 for an empty class); laplace_always gives the add-k estimate. The
  /// zero-count fallback of laplace_on_zero is decided per instance, see
  /// likelihoods(). Unseen values count as 0.
  double conditional(std::string_view attribute, std::string_view value, std::string_view label,
                     const SmoothingPolicy& policy) const;
  double conditional(std::size_t attribute, std::string_view value, std::size_t label,
                     const SmoothingPolicy& policy) const;
  double smoothed_conditional(std::size_t attribute, std::string_view value, std::size_t label, double k) const;

  /// P(X | C) for every class label, in schema order.
  ///
  /// Under laplace_on_zero, if any factor of any supported class (class_count
  /// > 0) has a zero count, all classes are recomputed with smoothed factors
  /// so the returned values stay comparable.
  std::vector<double> likelihoods(const Instance& instance, const SmoothingPolicy& policy) const;
  double likelihood(const Instance& instance, std::string_view label, const SmoothingPolicy& policy) const;

  /// Whether laplace_on_zero would fall back to smoothing for this instance.
  bool needs_smoothing(const Instance& instance) const;

  double posterior_score(const Instance& instance, std::string_view label, const SmoothingPolicy& policy) const;

  /// Maximum posteriori label; ties go to the earliest schema label.
  Prediction predict(const Instance& instance, const SmoothingPolicy& policy) const;

 private:
  explicit NaiveBayesModel(AttributeSchema schema) : schema_(std::move(schema)) {}

  void check_instance(const Instance& instance) const;
  std::size_t count_of(std::size_t attribute, std::string_view value, std::size_t label) const;

  AttributeSchema schema_;
  std::size_t total_ = 0;
  std::vector<std::size_t> class_counts_;
  // Per attribute: value -> count per label index.
  std::vector<std::map<std::string, std::vector<std::size_t>, std::less<>>> value_counts_;
  std::vector<std::size_t> cardinality_;
};

}  // namespace noise_sieve
