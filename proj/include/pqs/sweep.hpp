#pragma once

#include <string>
#include <vector>

#include "pqs/common.hpp"

namespace pqs {

struct SweepRow {
  double p = 0.0;
  long d = 0;
  long k = 0;
  long m = 0;
  bool ppt_analytic = false;
  double min_eig_pt = 0.0;
  double block_norm_formula = 0.0;
  double block_norm_numeric = 0.0;
  double success_prob = 0.0;
  double dw_rate = 0.0;
  bool skipped = false;  // dense columns unavailable under the dimension cap
};

// One row per grid tuple in (p, d, k, m) nested order. Closed-form columns are
// always filled; the dense columns (block_norm_numeric, dw_rate) require the
// output dimension to stay within the cap, otherwise the row is marked skipped.
std::vector<SweepRow> family_sweep(const std::vector<double>& ps,
                                   const std::vector<long>& ds,
                                   const std::vector<long>& ks,
                                   const std::vector<long>& ms,
                                   const Options& opt = {});

// Header p,d,k,m,ppt_analytic,min_eig_pt,block_norm_formula,
// block_norm_numeric,success_prob,dw_rate; reals at 12 significant digits;
// skipped rows carry the marker in the dense cells.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace pqs
