#pragma once

// Problem coefficients f, g, l, h with first and second x-derivatives.
//
//   f(t,x,u) : drift, R^n            g(t,x,u) : diffusion, one column per noise
//   l(t,x,u) : running cost          h(x)     : terminal cost
//
// Second derivatives are exposed as bilinear-form actions
//   f_xx(t,x,u)(xi (x) zeta) in R^n,  component k = sum_ab d2f_k/dx_a dx_b xi_a zeta_b
// which is all the variation equations need; full Hessian matrices for l and h
// are exposed directly.  Evaluators write into caller-owned buffers so the
// simulation inner loops stay allocation-free.

#include "core.hpp"

#include <memory>

namespace smpforge {

class CoefficientSet {
public:
    virtual ~CoefficientSet() = default;

    virtual int state_dim() const = 0;
    virtual int noise_dim() const = 0;
    virtual int control_dim() const = 0;

    virtual void f(double t, const Vec& x, const Vec& u, Vec& out) const = 0;
    virtual void g(double t, const Vec& x, const Vec& u, DiffusionMat& out) const = 0;
    virtual double l(double t, const Vec& x, const Vec& u) const = 0;
    virtual double h(const Vec& x) const = 0;

    // Jacobians: (f_x)_{k,a} = df_k/dx_a; g_x(i) likewise for column i of g.
    virtual void f_x(double t, const Vec& x, const Vec& u, Mat& out) const = 0;
    virtual void g_x(double t, const Vec& x, const Vec& u, int i, Mat& out) const = 0;
    virtual void l_x(double t, const Vec& x, const Vec& u, Vec& out) const = 0;
    virtual void l_xx(double t, const Vec& x, const Vec& u, Mat& out) const = 0;
    virtual void h_x(const Vec& x, Vec& out) const = 0;
    virtual void h_xx(const Vec& x, Mat& out) const = 0;

    // Bilinear second-derivative actions; identically zero by default (exact
    // for coefficients at most linear in x).
    virtual void f_xx_apply(double /*t*/, const Vec& /*x*/, const Vec& /*u*/,
                            const Vec& /*xi*/, const Vec& /*zeta*/, Vec& out) const {
        out.setZero();
    }
    virtual void g_xx_apply(double /*t*/, const Vec& /*x*/, const Vec& /*u*/, int /*i*/,
                            const Vec& /*xi*/, const Vec& /*zeta*/, Vec& out) const {
        out.setZero();
    }

    // Growth / derivative bound and Lipschitz constant of the instance.
    virtual double growth_bound() const = 0;    // M0
    virtual double lipschitz_bound() const = 0; // M1
};

// ---------------------------------------------------------------------------
// Control set U: either an explicit finite set of points (possibly nonconvex)
// or a box.  |u|_U is the Euclidean distance to the distinguished reference
// element.
// ---------------------------------------------------------------------------

class ControlModel {
public:
    enum class Kind { finite_set, box };

    static ControlModel finite_set(std::vector<Vec> points, int reference_index = 0) {
        require(!points.empty(), "ControlModel: finite set must be nonempty");
        ControlModel m;
        m.kind_ = Kind::finite_set;
        m.points_ = std::move(points);
        require(reference_index >= 0 &&
                    reference_index < static_cast<int>(m.points_.size()),
                "ControlModel: reference index out of range");
        m.reference_ = m.points_[static_cast<std::size_t>(reference_index)];
        m.dim_ = static_cast<int>(m.reference_.size());
        for (const Vec& p : m.points_)
            require(p.size() == m.dim_, "ControlModel: inconsistent point dimension");
        return m;
    }

    static ControlModel box(Vec lower, Vec upper) {
        require(lower.size() == upper.size() && lower.size() >= 1,
                "ControlModel: bad box bounds");
        require((lower.array() <= upper.array()).all(),
                "ControlModel: lower must not exceed upper");
        ControlModel m;
        m.kind_ = Kind::box;
        m.lower_ = std::move(lower);
        m.upper_ = std::move(upper);
        m.dim_ = static_cast<int>(m.lower_.size());
        // reference element: the point of the box closest to the origin
        m.reference_ = m.lower_.cwiseMax(Vec::Zero(m.dim_).cwiseMin(m.upper_));
        for (int k = 0; k < m.dim_; ++k)
            m.reference_[k] = std::min(std::max(0.0, m.lower_[k]), m.upper_[k]);
        return m;
    }

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    const Vec& reference_point() const { return reference_; }
    const std::vector<Vec>& points() const { return points_; }
    const Vec& lower() const { return lower_; }
    const Vec& upper() const { return upper_; }

    double norm(const Vec& u) const { return (u - reference_).norm(); }

    bool contains(const Vec& u, double tol = 1e-9) const {
        if (u.size() != dim_) return false;
        if (kind_ == Kind::box)
            return (u.array() >= lower_.array() - tol).all() &&
                   (u.array() <= upper_.array() + tol).all();
        for (const Vec& p : points_)
            if ((u - p).norm() <= tol) return true;
        return false;
    }

    // Candidate sweep for the variational-inequality check.  Finite sets are
    // enumerated exhaustively; boxes are sampled on a per-axis lattice and the
    // sweep is then only partial (flagged by the caller).
    std::vector<Vec> candidates(int lattice_per_axis = 9) const {
        if (kind_ == Kind::finite_set) return points_;
        require(lattice_per_axis >= 2, "ControlModel: lattice needs >= 2 points");
        std::vector<Vec> out;
        std::vector<int> idx(static_cast<std::size_t>(dim_), 0);
        const std::int64_t total = [&] {
            std::int64_t t = 1;
            for (int k = 0; k < dim_; ++k) t *= lattice_per_axis;
            return t;
        }();
        out.reserve(static_cast<std::size_t>(total));
        for (std::int64_t flat = 0; flat < total; ++flat) {
            std::int64_t rem = flat;
            Vec u(dim_);
            for (int k = 0; k < dim_; ++k) {
                const int ik = static_cast<int>(rem % lattice_per_axis);
                rem /= lattice_per_axis;
                u[k] = lower_[k] + (upper_[k] - lower_[k]) * ik / (lattice_per_axis - 1);
            }
            out.push_back(std::move(u));
        }
        return out;
    }

private:
    Kind kind_ = Kind::box;
    int dim_ = 0;
    std::vector<Vec> points_;
    Vec lower_, upper_, reference_;
};

// ---------------------------------------------------------------------------
// Linear-affine coefficient set
//   f = F x + B u,   g_i = C_i x + D_i u + sigma_i,
//   l = 1/2 <Q_l x, x> + 1/2 <R u, u>,   h = 1/2 <G_h x, x>.
// Exact derivatives; all second x-derivatives of f and g vanish.
// ---------------------------------------------------------------------------

struct LinearQuadraticData {
    Mat F;                  // n x n
    Mat B;                  // n x d_u
    std::vector<Mat> C;     // m matrices, n x n
    std::vector<Mat> D;     // m matrices, n x d_u
    std::vector<Vec> sigma; // m vectors, n
    Mat Q_l;                // n x n, PSD
    Mat R;                  // d_u x d_u, PD
    Mat G_h;                // n x n, PSD
};

class LinearQuadraticCoefficients final : public CoefficientSet {
public:
    explicit LinearQuadraticCoefficients(LinearQuadraticData d) : d_(std::move(d)) {
        n_ = static_cast<int>(d_.F.rows());
        m_ = static_cast<int>(d_.C.size());
        du_ = static_cast<int>(d_.B.cols());
        require(d_.F.cols() == n_ && d_.B.rows() == n_, "LQ: bad F/B shape");
        require(static_cast<int>(d_.D.size()) == m_ &&
                    static_cast<int>(d_.sigma.size()) == m_,
                "LQ: C/D/sigma must have one entry per noise");
        for (int i = 0; i < m_; ++i) {
            require(d_.C[i].rows() == n_ && d_.C[i].cols() == n_, "LQ: bad C shape");
            require(d_.D[i].rows() == n_ && d_.D[i].cols() == du_, "LQ: bad D shape");
            require(d_.sigma[i].size() == n_, "LQ: bad sigma shape");
        }
        require(d_.Q_l.rows() == n_ && d_.R.rows() == du_ && d_.G_h.rows() == n_,
                "LQ: bad cost shapes");
        m0_ = std::max({d_.F.norm(), d_.Q_l.norm(), d_.G_h.norm(), d_.R.norm(), 1.0});
        for (int i = 0; i < m_; ++i) m0_ = std::max(m0_, d_.C[i].norm());
    }

    const LinearQuadraticData& data() const { return d_; }

    int state_dim() const override { return n_; }
    int noise_dim() const override { return m_; }
    int control_dim() const override { return du_; }

    void f(double, const Vec& x, const Vec& u, Vec& out) const override {
        out.noalias() = d_.F * x;
        out.noalias() += d_.B * u;
    }
    void g(double, const Vec& x, const Vec& u, DiffusionMat& out) const override {
        for (int i = 0; i < m_; ++i) {
            out.col(i) = d_.sigma[i];
            out.col(i).noalias() += d_.C[i] * x;
            out.col(i).noalias() += d_.D[i] * u;
        }
    }
    double l(double, const Vec& x, const Vec& u) const override {
        return 0.5 * x.dot(d_.Q_l * x) + 0.5 * u.dot(d_.R * u);
    }
    double h(const Vec& x) const override { return 0.5 * x.dot(d_.G_h * x); }

    void f_x(double, const Vec&, const Vec&, Mat& out) const override { out = d_.F; }
    void g_x(double, const Vec&, const Vec&, int i, Mat& out) const override {
        out = d_.C[static_cast<std::size_t>(i)];
    }
    void l_x(double, const Vec& x, const Vec&, Vec& out) const override {
        out.noalias() = d_.Q_l * x;
    }
    void l_xx(double, const Vec&, const Vec&, Mat& out) const override { out = d_.Q_l; }
    void h_x(const Vec& x, Vec& out) const override { out.noalias() = d_.G_h * x; }
    void h_xx(const Vec&, Mat& out) const override { out = d_.G_h; }

    double growth_bound() const override { return m0_; }
    double lipschitz_bound() const override { return m0_; }

private:
    LinearQuadraticData d_;
    int n_ = 0, m_ = 0, du_ = 0;
    double m0_ = 1.0;
};

} // namespace smpforge
