#pragma once

#include <array>
#include <functional>
#include <vector>

#include "mdap/primetables.hpp"

namespace mdap {

// theta = a/q + beta with the scale X and H = 1 + |beta| X.
struct ThetaApprox {
  double theta;
  u64 a;
  u64 q;
  double beta;
  double X;
  double H;
};

ThetaApprox make_theta(u64 a, u64 q, double beta, double X);
ThetaApprox dirichlet_approx(double theta, u64 Q, double X);

// ||m theta|| computed from the rational part exactly when beta = 0.
double dist_to_int(u64 m, const ThetaApprox& ta);

cplx lambda_hat(const PrimeTables& t, u64 X, u64 d, u64 c, double theta);
// Lambda-hat_{d,c}(-s/X) for every s in [0, X).
std::vector<cplx> lambda_hat_table(const PrimeTables& t, u64 X, u64 d, u64 c,
                                   const std::function<bool(u64)>& extra = {});

enum class MinSumMode { linear, hyperbola };

struct MinSumResult {
  double value;
  double bound;
};
// linear:    sum_{m<=M} min(cap, 1/||m theta||)
// hyperbola: sum_{m<=M} min(cap/m + 1, 1/||m theta||)   (cap = X)
MinSumResult min_sum(MinSumMode mode, u64 M, double cap, const ThetaApprox& ta);

// Finitely supported weight sequence: value[i] is the weight at start + i.
struct WeightSeq {
  u64 start = 1;
  std::vector<double> values;
  double at(u64 n) const {
    return n >= start && n - start < values.size() ? values[n - start] : 0.0;
  }
  u64 last() const { return start + values.size() - 1; }
  double l2() const;
};

struct BilinearResult {
  cplx value;
  double norm1;
  double norm2;
  double bound;
  double ratio;
};
BilinearResult bilinear_sum(const WeightSeq& a1, const WeightSeq& a2, u64 X,
                            const ThetaApprox& ta, u64 d = 1, u64 c = 0);

struct VaughanParts {
  std::array<cplx, 5> S;  // S1..S5
  cplx direct;
  double residual;        // |direct - (S1 + S2 - S3 - S4 + S5)|
};
VaughanParts vaughan_decompose(const PrimeTables& t, u64 X, u64 U, u64 d, u64 c, double theta);

struct MikawaResult {
  double W;
  double bound;
  double ratio;
};
MikawaResult mikawa_W(const PrimeTables& t, u64 M, u64 N, u64 X, const ThetaApprox& ta);

enum class TypeIMode { fixed_residue, max_over_residue };

struct TypeIWeights {
  std::vector<double> sigma;  // sigma[d] for d in [1, D]; index 0 unused
  std::vector<u64> residue;   // c_d, used in fixed_residue mode
};
cplx typeI_sum(const TypeIWeights& w, TypeIMode mode, u64 M, const WeightSeq& alpha, int j,
               u64 X, double theta);

}  // namespace mdap
