#include "commfind/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "commfind/errors.hpp"

namespace commfind::formulas {

namespace {

constexpr double kRoundSlack = 1e-9;

std::size_t round_up(double x) {
  if (!(x > 0.0)) return 0;
  return static_cast<std::size_t>(std::ceil(x - kRoundSlack));
}

double checked_prob(double p, const char* formula) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw InvalidParamsError(std::string(formula) + " evaluates to " + std::to_string(p) +
                             ", not a positive probability");
  }
  if (p > 1.0) {
    throw InvalidParamsError(std::string(formula) + " evaluates to " + std::to_string(p) +
                             " > 1; lower sample_prob_scale or raise k");
  }
  return p;
}

double dk(const DetectorParams& p) {
  if (p.k == 0) throw InvalidParamsError("k must be at least 1");
  return p.delta * static_cast<double>(p.k);
}

double log_ratio_for_epsilon_prime(const DetectorParams& p) {
  const double ratio = static_cast<double>(p.d) / (p.delta * p.gamma);
  if (!(ratio > 1.0 + kRoundSlack)) {
    throw InvalidParamsError("epsilon' needs d / (delta * gamma) > 1, got " +
                             std::to_string(ratio));
  }
  return std::log(ratio);
}

}  // namespace

std::size_t clique_starting_nodes(const DetectorParams& p, std::size_t n) {
  return round_up(9.0 * static_cast<double>(n) / dk(p) * p.trial_count_scale);
}

double clique_sample_prob(const DetectorParams& p) {
  const double edg = p.epsilon * p.delta * p.gamma;
  return checked_prob(std::log(12.0 * static_cast<double>(p.d) / edg) / (p.epsilon * dk(p)) *
                          p.sample_prob_scale,
                      "clique sampling probability ln(12d/(eps*delta*gamma))/(delta*eps*k)"
                      " * sample_prob_scale");
}

double clique_maximal_sample_prob(const DetectorParams& p) {
  const double edg = p.epsilon * p.delta * p.gamma;
  const double d = static_cast<double>(p.d);
  return checked_prob(std::log(24.0 * d * std::log(d / edg) / edg) / (p.epsilon * dk(p)) *
                          p.sample_prob_scale,
                      "maximal-clique sampling probability"
                      " ln(24d*ln(d/(eps*delta*gamma))/(eps*delta*gamma))/(delta*eps*k)"
                      " * sample_prob_scale");
}

std::size_t dense_starting_nodes(const DetectorParams& p, std::size_t n) {
  return round_up(100.0 * static_cast<double>(n) / dk(p) * p.trial_count_scale);
}

double dense_sample_prob(const DetectorParams& p) {
  const double a = p.alpha;
  const double e = p.epsilon;
  return checked_prob(2.0 * std::log(30.0 * static_cast<double>(p.d) / (a * e * p.delta * p.gamma)) /
                          (a * a * e * e * dk(p)) * p.sample_prob_scale,
                      "dense sampling probability"
                      " 2ln(30d/(alpha*eps*delta*gamma))/(alpha^2*delta*eps^2*k)"
                      " * sample_prob_scale");
}

std::size_t robust_seed_size(const DetectorParams& p) {
  if (p.t_override) return *p.t_override;
  return std::max<std::size_t>(1, round_up(2.0 * std::log(10.0 / p.epsilon) / p.alpha));
}

double robust_sample_prob(const DetectorParams& p, std::size_t t) {
  const double e = p.epsilon;
  return checked_prob(p.robust_p_constant *
                          std::log(120.0 * static_cast<double>(t) * static_cast<double>(p.d) /
                                   (e * p.delta * p.gamma)) /
                          (p.alpha * e * e * dk(p)) * p.sample_prob_scale,
                      "robust sampling probability"
                      " c*ln(120Td/(eps*delta*gamma))/(alpha*delta*eps^2*k)"
                      " * sample_prob_scale");
}

std::size_t any_size_dense_seed_size(const DetectorParams& p) {
  if (p.t_override) return *p.t_override;
  const double x = 100.0 * std::log(static_cast<double>(p.k * p.d) / p.gamma) /
                   (p.alpha_min * p.epsilon * p.epsilon);
  return std::max<std::size_t>(1, round_up(x));
}

std::size_t any_size_clique_seed_size(const DetectorParams& p) {
  if (p.t_override) return *p.t_override;
  return std::max<std::size_t>(1, round_up(std::log(2.0 / p.epsilon) / p.beta));
}

std::size_t any_size_clique_starting_nodes(const DetectorParams& p, std::size_t n, double l) {
  const double nd = static_cast<double>(n);
  return round_up(100.0 * nd * std::log(nd) / l * p.trial_count_scale);
}

double any_size_clique_sample_prob(const DetectorParams& p, std::size_t t, double l) {
  return checked_prob(4.0 *
                          std::log(30.0 * static_cast<double>(t) * static_cast<double>(p.d) /
                                   (p.epsilon * p.gamma)) /
                          (p.epsilon * l) * p.sample_prob_scale,
                      "any-size clique sampling probability 4ln(30Td/(eps*gamma))/(eps*l)"
                      " * sample_prob_scale");
}

std::size_t size_cap(double p, double size) {
  return static_cast<std::size_t>(std::floor(2.0 * p * size + kRoundSlack));
}

double gap_clique_epsilon_prime(const DetectorParams& p) {
  if (p.epsilon_prime) return *p.epsilon_prime;
  return p.epsilon * p.epsilon / (6.0 * log_ratio_for_epsilon_prime(p));
}

double gap_dense_epsilon_prime(const DetectorParams& p) {
  if (p.epsilon_prime) return *p.epsilon_prime;
  return p.epsilon * p.epsilon / (10.0 * log_ratio_for_epsilon_prime(p));
}

std::size_t square_threshold(double b) {
  if (!(b > 0.0)) throw InvalidParamsError("square_transform needs b > 0");
  return round_up(b * b / 2.0);
}

}  // namespace commfind::formulas
