#pragma once

// Robust prices of a corridor claim I{a <= S_T <= b} on
// S_t = exp((mu - sigma^2/2) t + sigma B_t) when the drift of B is only
// known to lie in [-k, k]. Quotes are undiscounted.

namespace kign {

struct MarketModel {
  double mu = 0.0;
  double sigma = 0.2;
  double r = 0.0;
  // DomainError unless sigma > 0 and all fields finite.
  void validate() const;
};

struct CorridorClaim {
  double a = 0.9;
  double b = 1.1;
  double T = 1.0;
  // DomainError unless 0 < a < b and T > 0.
  void validate() const;
};

struct BrownianCorridor {
  double a_B;
  double b_B;
  double c;
};

struct PriceQuote {
  double upper;
  double lower;
  double t;
  double b_t;
};

// Barriers in Brownian coordinates, c = (a_B + b_B) / 2.
BrownianCorridor map_claim_to_bm(const CorridorClaim& claim, const MarketModel& market);
// c written as ln(ab) / (2 sigma) - (mu - sigma^2/2) T / sigma.
double corridor_center_direct(const CorridorClaim& claim, const MarketModel& market);

// Upper price at time t with B_t = b_t: the k-ignorance indicator solution
// on the mapped barriers. k >= 0.
double upper_price(const CorridorClaim& claim, const MarketModel& market, double k, double t, double b_t);
// Lower price: the same expression with the drift toward c reversed.
double lower_price(const CorridorClaim& claim, const MarketModel& market, double k, double t, double b_t);
// The t = 0, B_0 = 0 specializations written out directly.
double upper_price_t0(const CorridorClaim& claim, const MarketModel& market, double k);
double lower_price_t0(const CorridorClaim& claim, const MarketModel& market, double k);

PriceQuote quote(const CorridorClaim& claim, const MarketModel& market, double k, double t = 0.0, double b_t = 0.0);

// Discounted digital reference price with drift term (2 mu - r - sigma^2/2) T,
// kept exactly in that form. It reduces to the standard risk-neutral
// corridor price when r = mu.
double bs_reference_digital(const CorridorClaim& claim, const MarketModel& market);

}  // namespace kign
