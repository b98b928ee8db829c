#include "pqs/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "pqs/family.hpp"
#include "pqs/rates.hpp"
#include "pqs/security.hpp"

namespace pqs {

namespace {

constexpr long kDenseCap = 1024;

std::string real12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

long output_dim(long d, long k, long m) {
  double dim = 4.0 * std::pow(static_cast<double>(d), 2.0 * k * m);
  if (dim > 1e15) return -1;
  return static_cast<long>(dim);
}

}  // namespace

std::vector<SweepRow> family_sweep(const std::vector<double>& ps,
                                   const std::vector<long>& ds,
                                   const std::vector<long>& ks,
                                   const std::vector<long>& ms,
                                   const Options& opt) {
  std::vector<SweepRow> rows;
  for (double p : ps)
    for (long d : ds)
      for (long k : ks)
        for (long m : ms) {
          FamilyParams params{p, d, k, m};
          params.validate();
          SweepRow row;
          row.p = p;
          row.d = d;
          row.k = k;
          row.m = m;
          row.ppt_analytic = ppt_condition(p, d, k);
          row.min_eig_pt = recurrence_pt_min_eig(p, d, k, m);
          row.block_norm_formula = recurrence_block_norm(p, k, m);
          row.success_prob = recurrence_success(p, m);

          long dim = output_dim(d, k, m);
          long cap = std::min(opt.max_dim, kDenseCap);
          if (dim < 0 || dim > cap) {
            row.skipped = true;
          } else {
            DensityMatrix out = recurrence_output(p, d, k, m, opt);
            row.block_norm_numeric = block_norm_key_quality(out);
            row.dw_rate = dw_rate(ccq_of(out));
          }
          rows.push_back(row);
        }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "p,d,k,m,ppt_analytic,min_eig_pt,block_norm_formula,"
         "block_norm_numeric,success_prob,dw_rate\n";
  for (const SweepRow& r : rows) {
    out << real12(r.p) << ',' << r.d << ',' << r.k << ',' << r.m << ','
        << (r.ppt_analytic ? "true" : "false") << ',' << real12(r.min_eig_pt)
        << ',' << real12(r.block_norm_formula) << ',';
    if (r.skipped)
      out << "skipped," << real12(r.success_prob) << ",skipped\n";
    else
      out << real12(r.block_norm_numeric) << ',' << real12(r.success_prob)
          << ',' << real12(r.dw_rate) << '\n';
  }
  return out.str();
}

}  // namespace pqs
