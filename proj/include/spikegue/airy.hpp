#pragma once

namespace spikegue {

struct AiryPair {
  double ai = 0.0;
  double aip = 0.0;
};

// Ai and Ai' on the real axis, |x| <= 40: Maclaurin series summed in
// compensated double-double arithmetic for |x| <= 8 (plain doubles lose
// five digits to cancellation near the boundary), Poincare asymptotics
// beyond. Throws config_error outside the supported range.
AiryPair airy(double x);
double airy_ai(double x);
double airy_ai_prime(double x);

}  // namespace spikegue
