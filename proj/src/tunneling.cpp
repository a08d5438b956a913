#include "he3/tunneling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numeric>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "he3/constants.hpp"
#include "he3/error.hpp"

namespace he3::tunneling {

namespace constants = he3::constants;

double DoubleWellSpec::waist_m() const {
    if (NA > 0.0) return 0.61 * lambda_m / NA;
    return w0_m;
}

double DoubleWellSpec::rayleigh_m() const {
    const double w0 = waist_m();
    return M_PI * w0 * w0 / lambda_m;
}

double DoubleWellSpec::recoil_Hz() const {
    return constants::h / (2.0 * mass_kg * lambda_m * lambda_m);
}

namespace {

void validate(const DoubleWellSpec& spec) {
    if (spec.lambda_m <= 0.0 || spec.mass_kg <= 0.0 || spec.V0_Hz <= 0.0 ||
        spec.d_m < 0.0 || spec.waist_m() <= 0.0)
        throw Error("bad-argument", "tunneling: nonpositive trap parameter");
}

// Single-tweezer Gaussian-beam envelope at (rho, z), peak 1 at the focus.
double envelope(double rho2, double z, double w0, double zR) {
    const double s = 1.0 + (z / zR) * (z / zR);
    return std::exp(-2.0 * rho2 / (w0 * w0 * s)) / s;
}

// ---------------------------------------------------------------------------
// Two-pass Lanczos for the lowest eigenpair of a symmetric operator,
// restricted by an optional projector (parity / deflation).
// ---------------------------------------------------------------------------

using Vec = std::vector<double>;
using MatVec = std::function<void(const Vec&, Vec&)>;
using Project = std::function<void(Vec&)>;

void fill_seed(Vec& v, std::uint64_t salt) {
    // Deterministic pseudo-random start vector; the salt gives each
    // deflation stage a start vector with generic overlap on the
    // remaining spectrum (same-seed restarts can be accidentally
    // orthogonal to the partner of a quasi-degenerate pair).
    std::uint64_t s = 0x9e3779b97f4a7c15ull ^ (salt * 0xbf58476d1ce4e5b9ull);
    for (double& x : v) {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        x = double(s % 100000) / 50000.0 - 1.0;
    }
}

double norm(const Vec& v) {
    long double acc = 0.0L;
    for (double x : v) acc += (long double)x * x;
    return std::sqrt(double(acc));
}

double dot(const Vec& a, const Vec& b) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) acc += (long double)a[i] * b[i];
    return double(acc);
}

void axpy(double a, const Vec& x, Vec& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

void scale(Vec& v, double a) {
    for (double& x : v) x *= a;
}

struct LanczosResult {
    double value = 0.0;
    double residual = 0.0;
    Vec vector;
};

LanczosResult lanczos_lowest(const MatVec& apply, std::size_t n,
                             const Project& project, int maxit, double tol,
                             std::uint64_t salt) {
    std::vector<double> alpha, beta;
    Eigen::VectorXd ritz;
    double theta = 0.0;

    // First pass: build the tridiagonal coefficients.
    Vec q(n), q_prev(n, 0.0), w(n);
    fill_seed(q, salt);
    project(q);
    double nq = norm(q);
    if (nq == 0.0)
        throw Error("no-convergence", "tunneling: start vector annihilated");
    scale(q, 1.0 / nq);
    const Vec q0 = q;

    int k = 0;
    bool converged = false;
    for (; k < maxit; ++k) {
        apply(q, w);
        const double a = dot(q, w);
        alpha.push_back(a);
        axpy(-a, q, w);
        if (k > 0) axpy(-beta.back(), q_prev, w);
        project(w);
        const double b = norm(w);

        // Lowest Ritz pair of the current tridiagonal matrix.
        const int m = int(alpha.size());
        if (k >= 4 && (k % 8 == 0 || b < 1e-14)) {
            Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
            for (int i = 0; i < m; ++i) {
                T(i, i) = alpha[std::size_t(i)];
                if (i > 0) T(i, i - 1) = T(i - 1, i) = beta[std::size_t(i - 1)];
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
            theta = es.eigenvalues()(0);
            ritz = es.eigenvectors().col(0);
            const double bound = b * std::abs(ritz(m - 1));
            if (bound < tol * std::max(std::abs(theta), 1e-30)) {
                converged = true;
                beta.push_back(b);
                break;
            }
        }
        beta.push_back(b);
        if (b < 1e-14) break;
        q_prev.swap(q);
        q = w;
        scale(q, 1.0 / b);
    }
    if (!converged && ritz.size() == 0)
        throw Error("no-convergence", "tunneling: Lanczos did not converge");

    // Second pass: rebuild the Krylov basis and accumulate the Ritz vector.
    const int m = int(ritz.size());
    Vec v(n, 0.0);
    q = q0;
    std::fill(q_prev.begin(), q_prev.end(), 0.0);
    for (int i = 0; i < m; ++i) {
        axpy(ritz(i), q, v);
        if (i + 1 == m) break;
        apply(q, w);
        axpy(-alpha[std::size_t(i)], q, w);
        if (i > 0) axpy(-beta[std::size_t(i - 1)], q_prev, w);
        project(w);
        const double b = beta[std::size_t(i)];
        if (b < 1e-14) break;
        q_prev.swap(q);
        q = w;
        scale(q, 1.0 / b);
    }
    const double nv = norm(v);
    scale(v, 1.0 / nv);
    apply(v, w);
    axpy(-theta, v, w);

    LanczosResult res;
    res.value = theta;
    res.residual = norm(w) / std::max(std::abs(theta), 1e-30);
    res.vector = std::move(v);
    return res;
}

// ---------------------------------------------------------------------------
// 3D grid Hamiltonian (7-point stencil, Dirichlet boundaries).
// ---------------------------------------------------------------------------

struct Grid3D {
    int nx, ny, nz;
    double dx, dy, dz;
    Vec V;  // potential in Hz, x fastest

    std::size_t size() const { return std::size_t(nx) * ny * nz; }

    // H psi in Hz units: T = -hbar^2 / (2 m h) Laplacian.
    void apply(double mass_kg, const Vec& in, Vec& out) const {
        const double t = constants::hbar * constants::hbar /
                         (2.0 * mass_kg * constants::h);
        const double cx = t / (dx * dx), cy = t / (dy * dy), cz = t / (dz * dz);
        const double diag = 2.0 * (cx + cy + cz);
        const std::size_t sx = 1, sy = std::size_t(nx),
                          sz = std::size_t(nx) * ny;

        auto slab = [&](int z0, int z1) {
            for (int iz = z0; iz < z1; ++iz)
                for (int iy = 0; iy < ny; ++iy) {
                    const std::size_t base = iz * sz + iy * sy;
                    for (int ix = 0; ix < nx; ++ix) {
                        const std::size_t i = base + ix;
                        double acc = (diag + V[i]) * in[i];
                        if (ix > 0) acc -= cx * in[i - sx];
                        if (ix < nx - 1) acc -= cx * in[i + sx];
                        if (iy > 0) acc -= cy * in[i - sy];
                        if (iy < ny - 1) acc -= cy * in[i + sy];
                        if (iz > 0) acc -= cz * in[i - sz];
                        if (iz < nz - 1) acc -= cz * in[i + sz];
                        out[i] = acc;
                    }
                }
        };

        const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
        const int nthreads = int(std::min<unsigned>(hw, 8));
        if (nthreads <= 1 || nz < 2 * nthreads) {
            slab(0, nz);
            return;
        }
        std::vector<std::thread> pool;
        const int chunk = (nz + nthreads - 1) / nthreads;
        for (int tix = 0; tix < nthreads; ++tix) {
            const int z0 = tix * chunk, z1 = std::min(nz, z0 + chunk);
            if (z0 < z1) pool.emplace_back(slab, z0, z1);
        }
        for (auto& th : pool) th.join();
    }

    // (v +/- mirror_x v) / 2
    void parity_project(int sign, Vec& v) const {
        const std::size_t sy = std::size_t(nx), sz = std::size_t(nx) * ny;
        for (int iz = 0; iz < nz; ++iz)
            for (int iy = 0; iy < ny; ++iy) {
                const std::size_t base = iz * sz + iy * sy;
                for (int ix = 0; ix < nx / 2 + 1; ++ix) {
                    const std::size_t i = base + ix;
                    const std::size_t j = base + (nx - 1 - ix);
                    const double a = v[i], b = v[j];
                    v[i] = 0.5 * (a + sign * b);
                    v[j] = sign * v[i];
                }
            }
    }
};

Grid3D build_grid(const DoubleWellSpec& spec) {
    if (spec.nx < 3 || spec.ny < 3 || spec.nz < 3 || spec.nx % 2 == 0)
        throw Error("bad-argument", "tunneling: bad grid (nx must be odd >= 3)");
    const double w0 = spec.waist_m(), zR = spec.rayleigh_m();
    const double Lx = spec.box_x * spec.d_m, Ly = spec.box_y * w0,
                 Lz = spec.box_z * zR;
    if (Lx <= 0.0 || Ly <= 0.0 || Lz <= 0.0)
        throw Error("bad-argument", "tunneling: degenerate simulation box");

    Grid3D g;
    g.nx = spec.nx;
    g.ny = spec.ny;
    g.nz = spec.nz;
    g.dx = Lx / (spec.nx - 1);
    g.dy = Ly / (spec.ny - 1);
    g.dz = Lz / (spec.nz - 1);
    g.V.resize(g.size());
    std::size_t i = 0;
    for (int iz = 0; iz < g.nz; ++iz) {
        const double z = -0.5 * Lz + iz * g.dz;
        for (int iy = 0; iy < g.ny; ++iy) {
            const double y = -0.5 * Ly + iy * g.dy;
            for (int ix = 0; ix < g.nx; ++ix) {
                const double x = -0.5 * Lx + ix * g.dx;
                g.V[i++] = potential(spec, x, y, z);
            }
        }
    }
    // Enforce exact numerical x-mirror symmetry of the sampled potential.
    const std::size_t sy = std::size_t(g.nx), sz = std::size_t(g.nx) * g.ny;
    for (int iz = 0; iz < g.nz; ++iz)
        for (int iy = 0; iy < g.ny; ++iy) {
            const std::size_t base = iz * sz + iy * sy;
            for (int ix = 0; ix < g.nx / 2; ++ix) {
                const double m =
                    0.5 * (g.V[base + ix] + g.V[base + (g.nx - 1 - ix)]);
                g.V[base + ix] = g.V[base + (g.nx - 1 - ix)] = m;
            }
        }
    return g;
}

}  // namespace

double potential(const DoubleWellSpec& spec, double x, double y, double z) {
    validate(spec);
    const double w0 = spec.waist_m(), zR = spec.rayleigh_m();
    const double xm = x - 0.5 * spec.d_m, xp = x + 0.5 * spec.d_m;
    const double sum = envelope(xm * xm + y * y, z, w0, zR) +
                       envelope(xp * xp + y * y, z, w0, zR);
    // Blue detuning traps at the minima of the inverted profile; after
    // dropping the uniform background offset the well shape is the same.
    return -spec.V0_Hz * sum;
}

SpectrumResult lowest_eigenpairs(const DoubleWellSpec& spec, int k) {
    validate(spec);
    if (k < 1 || k > 4)
        throw Error("bad-argument", "tunneling: k must be in [1, 4]");
    if (spec.d_m < 1.3 * spec.waist_m())
        std::fprintf(stderr,
                     "warning: code=overlapping-wells msg=separation below "
                     "1.3 waists; independent-beam potential is approximate\n");

    const Grid3D g = build_grid(spec);
    const std::size_t n = g.size();
    MatVec apply = [&](const Vec& in, Vec& out) {
        out.resize(n);
        g.apply(spec.mass_kg, in, out);
    };

    const double tol = 1e-10;
    const int maxit = 1500;
    struct Pair {
        double E, res;
        int parity;
    };
    std::vector<Pair> pairs;
    const int per_sector = (k + 1) / 2;
    for (int sign : {+1, -1}) {
        std::vector<Vec> found;
        for (int j = 0; j < per_sector; ++j) {
            Project project = [&](Vec& v) {
                g.parity_project(sign, v);
                for (const Vec& f : found) axpy(-dot(f, v), f, v);
            };
            LanczosResult r = lanczos_lowest(apply, n, project, maxit, tol,
                                             std::uint64_t(j));
            pairs.push_back({r.value, r.residual, sign});
            found.push_back(std::move(r.vector));
        }
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const Pair& a, const Pair& b) { return a.E < b.E; });

    SpectrumResult out;
    for (int i = 0; i < k; ++i) {
        out.E_Hz.push_back(pairs[std::size_t(i)].E);
        out.residual.push_back(pairs[std::size_t(i)].res);
        out.parity.push_back(pairs[std::size_t(i)].parity);
    }
    if (k >= 2) out.J_Hz = 0.5 * (out.E_Hz[1] - out.E_Hz[0]);
    out.barrier_Hz = potential(spec, 0.0, 0.0, 0.0);
    out.merged = (k >= 2) && (out.E_Hz[1] > out.barrier_Hz);
    out.nx = g.nx;
    out.ny = g.ny;
    out.nz = g.nz;
    out.dx_m = g.dx;
    out.dy_m = g.dy;
    out.dz_m = g.dz;
    return out;
}

std::vector<JMapEntry> j_map(const DoubleWellSpec& base,
                             const std::vector<double>& V0_Hz,
                             const std::vector<double>& d_m) {
    std::vector<JMapEntry> out;
    for (double d : d_m)
        for (double V0 : V0_Hz) {
            DoubleWellSpec s = base;
            s.V0_Hz = V0;
            s.d_m = d;
            const SpectrumResult r = lowest_eigenpairs(s, 2);
            out.push_back({V0, d, r.J_Hz, r.merged});
        }
    return out;
}

std::vector<double> lowest_eigen_1d(const std::vector<double>& V_Hz,
                                    double dx_m, double mass_kg, int k) {
    const std::size_t n = V_Hz.size();
    if (n < 3 || dx_m <= 0.0 || mass_kg <= 0.0 || k < 1 || int(n) < k)
        throw Error("bad-argument", "tunneling: bad 1D spectrum request");
    const double t =
        constants::hbar * constants::hbar / (2.0 * mass_kg * constants::h);
    const double c = t / (dx_m * dx_m);
    MatVec apply = [&](const Vec& in, Vec& out) {
        out.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            double acc = (2.0 * c + V_Hz[i]) * in[i];
            if (i > 0) acc -= c * in[i - 1];
            if (i + 1 < n) acc -= c * in[i + 1];
            out[i] = acc;
        }
    };
    std::vector<Vec> found;
    std::vector<double> evs;
    for (int j = 0; j < k; ++j) {
        Project project = [&](Vec& v) {
            for (const Vec& f : found) axpy(-dot(f, v), f, v);
        };
        LanczosResult r = lanczos_lowest(apply, n, project, 4000, 1e-12,
                                         std::uint64_t(j));
        evs.push_back(r.value);
        found.push_back(std::move(r.vector));
    }
    std::sort(evs.begin(), evs.end());
    return evs;
}

}  // namespace he3::tunneling
