#include "curvefem/fields.hpp"

#include "curvefem/errors.hpp"
#include "curvefem/fem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace curvefem {

CoefficientField CoefficientField::identity() { return {}; }

CoefficientField CoefficientField::meyers(double mu) {
    if (!(mu > 0.0 && mu < 1.0))
        throw std::invalid_argument("meyers coefficient: mu must lie in (0,1)");
    CoefficientField f;
    f.kind_ = Kind::Meyers;
    f.mu_ = mu;
    return f;
}

CoefficientField CoefficientField::smooth_perturbation(double amplitude, double frequency) {
    if (!(std::fabs(amplitude) < 1.0))
        throw std::invalid_argument("smooth_perturbation: |amplitude| must be < 1");
    CoefficientField f;
    f.kind_ = Kind::SmoothPerturbation;
    f.amplitude_ = amplitude;
    f.frequency_ = frequency;
    return f;
}

CoefficientField CoefficientField::tabulated(Vec2 lo, Vec2 hi, int nx, int ny,
                                             std::vector<Matrix2> values) {
    if (nx < 2 || ny < 2 || values.size() != static_cast<size_t>(nx) * ny)
        throw std::invalid_argument("tabulated coefficient: grid mismatch");
    CoefficientField f;
    f.kind_ = Kind::Tabulated;
    f.lo_ = lo;
    f.hi_ = hi;
    f.nx_ = nx;
    f.ny_ = ny;
    f.table_ = std::move(values);
    return f;
}

CoefficientField CoefficientField::parse(const std::string& spec) {
    if (spec == "identity") return identity();
    if (spec.rfind("meyers:", 0) == 0) return meyers(std::stod(spec.substr(7)));
    if (spec.rfind("perturbation:", 0) == 0) {
        auto rest = spec.substr(13);
        auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("perturbation spec needs amplitude,frequency");
        return smooth_perturbation(std::stod(rest.substr(0, comma)),
                                   std::stod(rest.substr(comma + 1)));
    }
    throw std::invalid_argument("unknown coefficient spec: " + spec);
}

std::string CoefficientField::name() const {
    switch (kind_) {
        case Kind::Identity: return "identity";
        case Kind::Meyers: return "meyers:" + std::to_string(mu_);
        case Kind::SmoothPerturbation:
            return "perturbation:" + std::to_string(amplitude_) + "," + std::to_string(frequency_);
        case Kind::Tabulated: return "tabulated";
    }
    return "?";
}

Matrix2 CoefficientField::operator()(Vec2 x) const {
    switch (kind_) {
        case Kind::Identity: return Matrix2::identity();
        case Kind::Meyers: {
            double r2 = x.x * x.x + x.y * x.y;
            if (r2 < 1e-24) return Matrix2::identity(); // removable point
            double c = (1.0 - mu_ * mu_) / r2;
            return {1.0 - c * x.y * x.y, c * x.x * x.y, c * x.x * x.y, 1.0 - c * x.x * x.x};
        }
        case Kind::SmoothPerturbation: {
            double s = 1.0 + amplitude_ * std::sin(frequency_ * x.x) * std::sin(frequency_ * x.y);
            return {s, 0.0, 0.0, s};
        }
        case Kind::Tabulated: {
            double fx = (x.x - lo_.x) / (hi_.x - lo_.x) * (nx_ - 1);
            double fy = (x.y - lo_.y) / (hi_.y - lo_.y) * (ny_ - 1);
            int ix = std::clamp(static_cast<int>(fx), 0, nx_ - 2);
            int iy = std::clamp(static_cast<int>(fy), 0, ny_ - 2);
            double tx = std::clamp(fx - ix, 0.0, 1.0), ty = std::clamp(fy - iy, 0.0, 1.0);
            auto at = [&](int i, int j) -> const Matrix2& { return table_[j * nx_ + i]; };
            auto lerp = [&](double a, double b, double t) { return a + t * (b - a); };
            const Matrix2 &m00 = at(ix, iy), &m10 = at(ix + 1, iy), &m01 = at(ix, iy + 1),
                          &m11 = at(ix + 1, iy + 1);
            Matrix2 out;
            out.a11 = lerp(lerp(m00.a11, m10.a11, tx), lerp(m01.a11, m11.a11, tx), ty);
            out.a12 = lerp(lerp(m00.a12, m10.a12, tx), lerp(m01.a12, m11.a12, tx), ty);
            out.a21 = lerp(lerp(m00.a21, m10.a21, tx), lerp(m01.a21, m11.a21, tx), ty);
            out.a22 = lerp(lerp(m00.a22, m10.a22, tx), lerp(m01.a22, m11.a22, tx), ty);
            return out;
        }
    }
    return Matrix2::identity();
}

CoefficientField meyers_coefficient(double mu) { return CoefficientField::meyers(mu); }

EllipticityReport validate_coefficient(const CoefficientField& field,
                                       const std::vector<Vec2>& sample_points) {
    if (sample_points.empty())
        throw std::invalid_argument("validate_coefficient: empty sample set");
    EllipticityReport rep;
    rep.min_eigenvalue = std::numeric_limits<double>::max();
    for (const auto& x : sample_points) {
        Matrix2 a = field(x);
        if (!std::isfinite(a.a11) || !std::isfinite(a.a12) || !std::isfinite(a.a21) ||
            !std::isfinite(a.a22))
            throw DataError("validate_coefficient: non-finite entries");
        rep.min_eigenvalue = std::min(rep.min_eigenvalue, a.min_eigenvalue());
        rep.max_norm = std::max(rep.max_norm, a.max_eigenvalue());
        rep.symmetry_defect = std::max(rep.symmetry_defect, a.symmetry_defect());
        ++rep.sample_count;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Density fields

DensityField DensityField::constant(double q) {
    DensityField f;
    f.kind_ = Kind::Constant;
    f.q_ = q;
    return f;
}

DensityField DensityField::on_curve(std::vector<double> arclengths, std::vector<double> values,
                                    double period, double holder_alpha) {
    if (arclengths.size() != values.size() || arclengths.size() < 2)
        throw std::invalid_argument("density on_curve: need matching sample tables");
    if (!(period > 0.0)) throw std::invalid_argument("density on_curve: period must be positive");
    for (double v : values)
        if (!std::isfinite(v)) throw DataError("density on_curve: non-finite sample");
    DensityField f;
    f.kind_ = Kind::OnCurve;
    f.period_ = period;
    f.alpha_ = holder_alpha;
    f.s_ = std::move(arclengths);
    f.v_ = std::move(values);
    return f;
}

double DensityField::operator()(double s) const {
    if (kind_ == Kind::Constant) return q_;
    s = std::fmod(s, period_);
    if (s < 0.0) s += period_;
    auto it = std::upper_bound(s_.begin(), s_.end(), s);
    int k = static_cast<int>(it - s_.begin()) - 1;
    const int n = static_cast<int>(s_.size());
    double s0, s1, v0, v1;
    if (k < 0) { // before the first sample: wrap from the last one
        s0 = s_.back() - period_;
        v0 = v_.back();
        s1 = s_.front();
        v1 = v_.front();
    } else if (k == n - 1) {
        s0 = s_.back();
        v0 = v_.back();
        s1 = s_.front() + period_;
        v1 = v_.front();
    } else {
        s0 = s_[k];
        v0 = v_[k];
        s1 = s_[k + 1];
        v1 = v_[k + 1];
    }
    double t = s1 > s0 ? (s - s0) / (s1 - s0) : 0.0;
    return v0 + t * (v1 - v0);
}

double DensityField::at_point(const InterfaceCurve& curve, Vec2 x) const {
    if (kind_ == Kind::Constant) return q_;
    return (*this)(curve.project_arclength(x));
}

// ---------------------------------------------------------------------------
// Counterexample density from one-sided traces of the annulus solve

DensityField meyers_density(double mu, const SolutionField& u2_solution) {
    if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("meyers_density: mu in (0,1)");
    const auto& mesh = *u2_solution.mesh;
    if (mesh.interface_edges.empty())
        throw std::invalid_argument("meyers_density: solution mesh carries no interface");
    CoefficientField A = CoefficientField::meyers(mu);

    std::vector<double> s, q;
    s.reserve(mesh.interface_edges.size());
    q.reserve(mesh.interface_edges.size());
    double period = 0.0;
    for (const auto& e : mesh.interface_edges) {
        if (e.outside_tri < 0) throw std::invalid_argument("meyers_density: missing outside element");
        Vec2 mid = 0.5 * (mesh.vertices[e.a] + mesh.vertices[e.b]);
        Vec2 g = u2_solution.gradient[e.outside_tri];
        Vec2 flux = A(mid) * g;
        s.push_back(e.s_mid);
        q.push_back(-dot(flux, e.normal));
        period = std::max(period, e.s_b);
    }
    // interface edges walk the curve ccw; sort by arclength for interpolation
    std::vector<size_t> order(s.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return s[a] < s[b]; });
    std::vector<double> ss(s.size()), qq(s.size());
    for (size_t i = 0; i < order.size(); ++i) {
        ss[i] = s[order[i]];
        qq[i] = q[order[i]];
    }
    double L = 2.0 * std::numbers::pi; // unit circle
    return DensityField::on_curve(std::move(ss), std::move(qq), L, 1.0);
}

} // namespace curvefem
