#include "kign/pricing.hpp"

#include <cmath>

#include "kign/closed_form.hpp"
#include "kign/core_math.hpp"
#include "kign/errors.hpp"

namespace kign {

void MarketModel::validate() const {
  if (!std::isfinite(mu) || !std::isfinite(r) || !std::isfinite(sigma)) throw DomainError("market: non-finite input");
  if (!(sigma > 0.0)) throw DomainError("market: sigma must be positive");
}

void CorridorClaim::validate() const {
  if (!(a > 0.0)) throw DomainError("corridor: a must be positive");
  if (!(b > a) || !std::isfinite(b)) throw DomainError("corridor: need a < b < inf");
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("corridor: T must be positive");
}

BrownianCorridor map_claim_to_bm(const CorridorClaim& claim, const MarketModel& market) {
  claim.validate();
  market.validate();
  const double drift = (market.mu - 0.5 * market.sigma * market.sigma) * claim.T;
  const double a_B = (std::log(claim.a) - drift) / market.sigma;
  const double b_B = (std::log(claim.b) - drift) / market.sigma;
  return {a_B, b_B, 0.5 * (a_B + b_B)};
}

double corridor_center_direct(const CorridorClaim& claim, const MarketModel& market) {
  claim.validate();
  market.validate();
  const double s = market.sigma;
  return std::log(claim.a * claim.b) / (2.0 * s) - (market.mu - 0.5 * s * s) * claim.T / s;
}

namespace {

void require_k(double k) {
  if (!(k >= 0.0) || !std::isfinite(k)) throw DomainError("pricing: k must be finite and >= 0");
}

}  // namespace

double upper_price(const CorridorClaim& claim, const MarketModel& market, double k, double t, double b_t) {
  require_k(k);
  const auto bm = map_claim_to_bm(claim, market);
  return indicator_Y(KIgnoranceModel(k, claim.T), t, b_t, bm.a_B, bm.b_B);
}

double lower_price(const CorridorClaim& claim, const MarketModel& market, double k, double t, double b_t) {
  require_k(k);
  const auto bm = map_claim_to_bm(claim, market);
  const double tau = KIgnoranceModel(k, claim.T).horizon_from(t);
  const double sq = std::sqrt(tau);
  const double half = std::log(claim.b / claim.a) / (2.0 * market.sigma);
  const double m = std::abs(b_t - bm.c);
  return normal_cdf(-(m + k * tau - half) / sq) -
         std::exp(k * std::log(claim.b / claim.a) / market.sigma) * normal_cdf(-(m + k * tau + half) / sq);
}

double upper_price_t0(const CorridorClaim& claim, const MarketModel& market, double k) {
  require_k(k);
  const auto bm = map_claim_to_bm(claim, market);
  const double T = claim.T;
  const double sq = std::sqrt(T);
  const double half = std::log(claim.b / claim.a) / (2.0 * market.sigma);
  const double m = std::abs(bm.c);
  return normal_cdf(-(m - k * T - half) / sq) -
         std::exp(-k * std::log(claim.b / claim.a) / market.sigma) * normal_cdf(-(m - k * T + half) / sq);
}

double lower_price_t0(const CorridorClaim& claim, const MarketModel& market, double k) {
  require_k(k);
  const auto bm = map_claim_to_bm(claim, market);
  const double T = claim.T;
  const double sq = std::sqrt(T);
  const double half = std::log(claim.b / claim.a) / (2.0 * market.sigma);
  const double m = std::abs(bm.c);
  return normal_cdf(-(m + k * T - half) / sq) -
         std::exp(k * std::log(claim.b / claim.a) / market.sigma) * normal_cdf(-(m + k * T + half) / sq);
}

PriceQuote quote(const CorridorClaim& claim, const MarketModel& market, double k, double t, double b_t) {
  return {upper_price(claim, market, k, t, b_t), lower_price(claim, market, k, t, b_t), t, b_t};
}

double bs_reference_digital(const CorridorClaim& claim, const MarketModel& market) {
  claim.validate();
  market.validate();
  const double s = market.sigma;
  const double T = claim.T;
  const double drift = (2.0 * market.mu - market.r - 0.5 * s * s) * T;
  const double den = s * std::sqrt(T);
  return std::exp(-market.r * T) *
         (normal_cdf((std::log(claim.b) - drift) / den) - normal_cdf((std::log(claim.a) - drift) / den));
}

}  // namespace kign
