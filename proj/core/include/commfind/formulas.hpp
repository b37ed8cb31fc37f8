#pragma once

#include <cstddef>

#include "commfind/params.hpp"

// Derived quantities of the detection procedures. Logarithms are natural;
// counts round up, size caps round down. Sampling probabilities include
// sample_prob_scale and starting-node counts include trial_count_scale.
// Functions returning a probability throw InvalidParamsError, naming the
// formula, when the value leaves (0, 1].
namespace commfind::formulas {

std::size_t clique_starting_nodes(const DetectorParams& p, std::size_t n);
double clique_sample_prob(const DetectorParams& p);
/// Adjusted probability for maximal-clique enumeration.
double clique_maximal_sample_prob(const DetectorParams& p);

std::size_t dense_starting_nodes(const DetectorParams& p, std::size_t n);
double dense_sample_prob(const DetectorParams& p);

std::size_t robust_seed_size(const DetectorParams& p);
double robust_sample_prob(const DetectorParams& p, std::size_t t);

std::size_t any_size_dense_seed_size(const DetectorParams& p);

std::size_t any_size_clique_seed_size(const DetectorParams& p);
std::size_t any_size_clique_starting_nodes(const DetectorParams& p, std::size_t n, double l);
double any_size_clique_sample_prob(const DetectorParams& p, std::size_t t, double l);

/// floor(2 * p * size).
std::size_t size_cap(double p, double size);

/// eps^2 / (6 ln(d / (delta gamma))); requires d / (delta gamma) > 1.
double gap_clique_epsilon_prime(const DetectorParams& p);
/// eps^2 / (10 ln(d / (delta gamma))); requires d / (delta gamma) > 1.
double gap_dense_epsilon_prime(const DetectorParams& p);

/// ceil(b^2 / 2).
std::size_t square_threshold(double b);

}  // namespace commfind::formulas
