// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <string>

#include "noise_sieve/dataset.hpp"
#include "noise_sieve/synth.hpp"

namespace noise_sieve::testing {

std::string data_path(const std::string& name);

// The nine-row call-behaviour sample, ids 1..9.
Dataset call_sample();

// Call-behaviour rule table shared by the synthetic experiments.
GeneratorConfig call_behavior_generator(std::size_t n, std::uint64_t seed);

// Random generator config: 2-5 attributes with 2-6 values, random rule table.
GeneratorConfig random_generator(std::uint64_t seed, std::size_t min_rows, std::size_t max_rows);

}  // namespace noise_sieve::testing
