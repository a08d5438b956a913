#include "he3/spinops.hpp"

#include <cmath>
#include <stdexcept>

#include "he3/angular.hpp"

namespace he3::spinops {

ProductBasis::ProductBasis(std::vector<int> tj) : tj_(std::move(tj)) {
    dim_ = 1;
    for (int t : tj_) {
        if (t < 0) throw std::invalid_argument("negative angular momentum");
        dim_ *= t + 1;
    }
}

std::vector<int> ProductBasis::tm(int index) const {
    std::vector<int> out(tj_.size());
    for (int s = int(tj_.size()) - 1; s >= 0; --s) {
        int n = tj_[s] + 1;
        int k = index % n;
        out[s] = tj_[s] - 2 * k;
        index /= n;
    }
    return out;
}

int ProductBasis::index(const std::vector<int>& tms) const {
    int idx = 0;
    for (std::size_t s = 0; s < tj_.size(); ++s) {
        int k = (tj_[s] - tms[s]) / 2;
        idx = idx * (tj_[s] + 1) + k;
    }
    return idx;
}

Eigen::MatrixXd jz(const ProductBasis& b, int slot) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(b.dim(), b.dim());
    for (int i = 0; i < b.dim(); ++i) m(i, i) = 0.5 * b.tm(i)[slot];
    return m;
}

Eigen::MatrixXd jplus(const ProductBasis& b, int slot) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(b.dim(), b.dim());
    double j = 0.5 * b.tj(slot);
    for (int i = 0; i < b.dim(); ++i) {
        auto tms = b.tm(i);
        double mm = 0.5 * tms[slot];
        if (tms[slot] + 2 > b.tj(slot)) continue;
        auto up = tms;
        up[slot] += 2;
        m(b.index(up), i) = std::sqrt(j * (j + 1) - mm * (mm + 1));
    }
    return m;
}

Eigen::MatrixXd jminus(const ProductBasis& b, int slot) {
    return jplus(b, slot).transpose();
}

Eigen::MatrixXd jsq(const ProductBasis& b, int slot) {
    double j = 0.5 * b.tj(slot);
    return j * (j + 1) * Eigen::MatrixXd::Identity(b.dim(), b.dim());
}

Eigen::MatrixXd dot(const Eigen::MatrixXd& az, const Eigen::MatrixXd& ap,
                    const Eigen::MatrixXd& am, const Eigen::MatrixXd& bz,
                    const Eigen::MatrixXd& bp, const Eigen::MatrixXd& bm) {
    return az * bz + 0.5 * (ap * bm + am * bp);
}

Eigen::MatrixXd dot(const ProductBasis& b, int slotA, int slotB) {
    return dot(jz(b, slotA), jplus(b, slotA), jminus(b, slotA), jz(b, slotB),
               jplus(b, slotB), jminus(b, slotB));
}

SphericalVector spherical(const Eigen::MatrixXd& vz, const Eigen::MatrixXd& vp,
                          const Eigen::MatrixXd& vm) {
    SphericalVector out;
    out.q[0] = vm / std::sqrt(2.0);
    out.q[1] = vz;
    out.q[2] = -vp / std::sqrt(2.0);
    return out;
}

RankTwoTensor c2_tensor(const ProductBasis& b, int slot) {
    using he3::angular::wigner3j;
    int tl = b.tj(slot);
    int l = tl / 2;
    // <l||C^(2)||l> = (-1)^l (2l+1) 3j(l 2 l; 0 0 0)
    double red = ((l % 2) ? -1.0 : 1.0) * (tl + 1) * wigner3j(tl, 4, tl, 0, 0, 0);
    RankTwoTensor out;
    for (int q = -2; q <= 2; ++q) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(b.dim(), b.dim());
        for (int i = 0; i < b.dim(); ++i) {
            auto tms = b.tm(i);
            auto bra = tms;
            bra[slot] = tms[slot] + 2 * q;
            if (std::abs(bra[slot]) > tl) continue;
            int sign = (((tl - bra[slot]) / 2) % 2) ? -1 : 1;
            m(b.index(bra), i) =
                sign * wigner3j(tl, 4, tl, -bra[slot], 2 * q, tms[slot]) * red;
        }
        out.q[q + 2] = m;
    }
    return out;
}

Eigen::MatrixXd dot_compound(const SphericalVector& I, const SphericalVector& V,
                             const RankTwoTensor& C2) {
    using he3::angular::clebsch_gordan;
    int n = I(0).rows();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    for (int q = -1; q <= 1; ++q) {
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
        for (int q1 = -1; q1 <= 1; ++q1) {
            int q2 = q - q1;
            if (std::abs(q2) > 2) continue;
            double cg = clebsch_gordan(2, 2 * q1, 4, 2 * q2, 2, 2 * q);
            if (cg != 0.0) t += cg * V(q1) * C2(q2);
        }
        double sign = (q % 2) ? -1.0 : 1.0;
        out += sign * I(-q) * t;
    }
    return out;
}

}  // namespace he3::spinops
