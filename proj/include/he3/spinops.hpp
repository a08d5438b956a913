#pragma once

#include <Eigen/Dense>
#include <vector>

namespace he3::spinops {

// Tensor-product basis of angular momenta. Slot i carries j = tj[i]/2;
// kets are enumerated row-major over the doubled projections, each
// running from +tj down to -tj.
class ProductBasis {
  public:
    explicit ProductBasis(std::vector<int> tj);
    int dim() const { return dim_; }
    int slots() const { return int(tj_.size()); }
    int tj(int slot) const { return tj_[slot]; }
    std::vector<int> tm(int index) const;
    int index(const std::vector<int>& tms) const;

  private:
    std::vector<int> tj_;
    int dim_;
};

// Angular momentum operators on one slot (hbar = 1), dense real matrices.
Eigen::MatrixXd jz(const ProductBasis& b, int slot);
Eigen::MatrixXd jplus(const ProductBasis& b, int slot);
Eigen::MatrixXd jminus(const ProductBasis& b, int slot);
Eigen::MatrixXd jsq(const ProductBasis& b, int slot);

// A . B between two slots (or sums of slots): Az Bz + (A+ B- + A- B+)/2.
Eigen::MatrixXd dot(const Eigen::MatrixXd& az, const Eigen::MatrixXd& ap,
                    const Eigen::MatrixXd& am, const Eigen::MatrixXd& bz,
                    const Eigen::MatrixXd& bp, const Eigen::MatrixXd& bm);
Eigen::MatrixXd dot(const ProductBasis& b, int slotA, int slotB);

// Spherical vector components built from ladder operators:
// V_{+1} = -V+/sqrt(2), V_0 = Vz, V_{-1} = V-/sqrt(2).
struct SphericalVector {
    Eigen::MatrixXd q[3];  // index 0,1,2 -> q = -1, 0, +1
    const Eigen::MatrixXd& operator()(int qq) const { return q[qq + 1]; }
};
SphericalVector spherical(const Eigen::MatrixXd& vz, const Eigen::MatrixXd& vp,
                          const Eigen::MatrixXd& vm);

// Rank-2 spherical tensor C^(2)_q on one slot (unit Racah tensor
// C^(k) = sqrt(4 pi/(2k+1)) Y_k acting on the orbital degree of freedom).
struct RankTwoTensor {
    Eigen::MatrixXd q[5];  // q = -2..+2
    const Eigen::MatrixXd& operator()(int qq) const { return q[qq + 2]; }
};
RankTwoTensor c2_tensor(const ProductBasis& b, int slot);

// Scalar I . {V C2}^(1) where the compound rank-1 tensor is
// {V C2}^(1)_q = sum_{q1 q2} <1 q1; 2 q2|1 q> V_q1 C2_q2.
Eigen::MatrixXd dot_compound(const SphericalVector& I, const SphericalVector& V,
                             const RankTwoTensor& C2);

}  // namespace he3::spinops
