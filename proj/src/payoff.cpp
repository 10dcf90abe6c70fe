#include "wiretap/payoff.hpp"

#include <algorithm>
#include <cmath>

namespace wiretap {

int cell_index(ActionPair ap) {
  return (ap.alice == AliceAction::A ? 2 : 0) + (ap.eve == EveAction::J ? 1 : 0);
}

PayoffMatrix PayoffMatrix::exact(double fe, double fj, double ae, double aj) {
  PayoffMatrix R;
  R.FE = {fe, 0.0, 0};
  R.FJ = {fj, 0.0, 0};
  R.AE = {ae, 0.0, 0};
  R.AJ = {aj, 0.0, 0};
  return R;
}

const RateEstimate& PayoffMatrix::cell(AliceAction a, EveAction e) const {
  if (a == AliceAction::F) return e == EveAction::E ? FE : FJ;
  return e == EveAction::E ? AE : AJ;
}

double PayoffMatrix::diff_std_err(ActionPair x, ActionPair y) const {
  const int i = cell_index(x);
  const int j = cell_index(y);
  const double var = cov[i][i] + cov[j][j] - 2.0 * cov[i][j];
  return std::sqrt(std::max(var, 0.0));
}

}  // namespace wiretap
