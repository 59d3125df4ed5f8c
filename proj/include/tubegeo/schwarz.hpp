#pragma once

// Evaluation of f(lambda) = (1/2pi) int_T (xi + lambda)/(xi - lambda) g(xi) dL(xi) + i Im f(0)
// for boundary profiles g, i.e. recovery of the geodesic from its boundary data.
//
// Three quadrature paths, chosen by the structure of g:
//  - smooth profiles: uniform trapezoid grid = discrete Fourier transform of g,
//    then Horner evaluation of f(lambda) = ghat_0 + 2 sum_k ghat_k lambda^k
//    (spectrally accurate once the coefficient tail has decayed);
//  - profiles with (near-)singular angles: composite 16-point Gauss-Legendre
//    panels between the singular angles, split dyadically at evaluation time
//    until each panel is shorter than its distance to lambda;
//  - piecewise-constant two-arc profiles: exact closed-form arc integrals,
//    S(lambda; t0, t1) = -(t1 - t0) - 2i [Log(e^{it} - lambda)]_{t0}^{t1},
//    exact at any representable |lambda| < 1 (one ulp off the circle).

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <memory>
#include <utility>
#include <vector>

#include "tubegeo/geodesic_family.hpp"
#include "tubegeo/types.hpp"

namespace tubegeo {

struct EvalOptions {
  double r_max = 1.0 - 1e-13;      // quadrature radius cap (the two-arc path ignores it)
  double tol = 1e-9;               // absolute accuracy target for f
  Index min_grid = 512;            // first uniform grid on the smooth path
  Index max_grid = 1 << 17;        // last uniform grid before falling back to panels
  double panel_threshold = 1e-3;   // min |F~| under which the panel path takes over
};

namespace detail {

inline constexpr double kGl16Nodes[8] = {
    0.0950125098376374401853193, 0.2816035507792589132304605, 0.4580167776572273863424194,
    0.6178762444026437484466718, 0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
inline constexpr double kGl16Weights[8] = {
    0.1894506104550684962853967, 0.1826034150449235888667637, 0.1691565193950025381893121,
    0.1495959888165767320815017, 0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

// Distance from lambda to the arc {e^{it} : t in [t0, t1]}.
inline double dist_to_arc(double t0, double t1, Complex lambda) {
  const double r = std::abs(lambda);
  const double phi = std::arg(lambda);
  double psi = std::numeric_limits<double>::infinity();
  // smallest |wrap(phi - t)| over t in [t0, t1]
  const double span = t1 - t0;
  double rel = wrap_angle(phi - t0);
  if (rel <= span) {
    psi = 0.0;
  } else {
    psi = std::min(rel - span, 2.0 * kPi - rel);
  }
  const double s = std::sin(0.5 * std::min(psi, kPi));
  const double one_minus_r = 1.0 - r;
  return std::sqrt(one_minus_r * one_minus_r + 4.0 * r * s * s);
}

// 1 - lambda e^{-it} from polar data; the split (1 - r) + 2 r sin^2(delta/2)
// avoids the cancellation near the circle, where 1 - |lambda| and the angular
// offset can both be tiny.
inline Complex one_minus_rotated(double r, double delta) {
  const double s = std::sin(0.5 * delta);
  return Complex((1.0 - r) + 2.0 * r * s * s, -r * std::sin(delta));
}

// int over the arc from t0 of length span of (e^{it} + lambda)/(e^{it} - lambda) dt,
// exact: Log(e^{it} - lambda) = it + Log(1 - lambda e^{-it}), whose second term
// has positive real part for |lambda| < 1, so its principal branch is already
// the continuous one and the winding sits in the explicit span term. t_end is
// the end angle, possibly reduced mod 2pi (one_minus_rotated is exactly
// periodic, so the reduction costs nothing).
inline Complex schwarz_arc_integral(double t0, double t_end, double span, Complex lambda) {
  const double r = std::abs(lambda);
  const double phi = std::arg(lambda);
  return Complex(span, 0.0) -
         2.0 * Complex(0.0, 1.0) *
             (std::log(one_minus_rotated(r, phi - t_end)) - std::log(one_minus_rotated(r, phi - t0)));
}

struct Panel {
  double t0 = 0.0, t1 = 0.0;
  Mat g;  // n x 16 cached samples at the Gauss-Legendre nodes
};

inline void gl16_angles(double t0, double t1, double* out /* 16 */) {
  const double c = 0.5 * (t0 + t1), h = 0.5 * (t1 - t0);
  for (int k = 0; k < 8; ++k) {
    out[2 * k] = c - h * kGl16Nodes[k];
    out[2 * k + 1] = c + h * kGl16Nodes[k];
  }
}

inline Mat sample_panel(const std::function<Vec(double)>& g, Index n, double t0, double t1) {
  double ang[16];
  gl16_angles(t0, t1, ang);
  Mat m(n, 16);
  for (int k = 0; k < 16; ++k) m.col(k) = g(ang[k]);
  return m;
}

// int over the panel of w(t) g(t) dt for scalar complex weight w.
inline CVec gl16_integral(const Mat& g, double t0, double t1,
                          const std::function<Complex(double)>& w) {
  double ang[16];
  gl16_angles(t0, t1, ang);
  const double h = 0.5 * (t1 - t0);
  CVec acc = CVec::Zero(g.rows());
  for (int k = 0; k < 16; ++k)
    acc += (h * kGl16Weights[k / 2] * w(ang[k])) * g.col(k).cast<Complex>();
  return acc;
}

inline Vec gl16_integral_real(const Mat& g, double t0, double t1) {
  const double h = 0.5 * (t1 - t0);
  Vec acc = Vec::Zero(g.rows());
  for (int k = 0; k < 16; ++k) acc += (h * kGl16Weights[k / 2]) * g.col(k);
  return acc;
}

}  // namespace detail

class GeodesicEvaluator {
 public:
  // Boundary data of a geodesic of T_Omega with the given parameters.
  GeodesicEvaluator(const BaseDomain& dom, const GeodesicParams& params, EvalOptions opts = {})
      : opts_(opts), im_f0_(params.im_f0), n_(params.dim()) {
    label_ = classify_case(params);
    singular_ = singular_points(params);
    BaseDomain dom_copy = dom;
    GeodesicParams p = params;
    sampler_ = [dom_copy, p](double t) { return support_point(dom_copy, f_tilde(p, t)); };
    if (label_ == FCaseLabel::kTwoAntipodalValues) {
      const double mid = 0.5 * (singular_[0] + singular_[1]);
      x_plus_ = support_point(dom, f_tilde(params, mid));
      x_minus_ = support_point(dom, f_tilde(params, detail::wrap_angle(mid + kPi)));
      mode_ = Mode::kTwoArc;
      mean_ = ((singular_[1] - singular_[0]) * x_plus_ +
               (2.0 * kPi - singular_[1] + singular_[0]) * x_minus_) /
              (2.0 * kPi);
      return;
    }
    double min_norm = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 2048; ++k)
      min_norm = std::min(min_norm, f_tilde(params, 2.0 * kPi * k / 2048.0).norm());
    if (singular_.empty() && min_norm >= opts_.panel_threshold && build_fourier_()) return;
    build_panels_();
  }

  // Raw profile data (sampled values, explicit arcs, or a sampler).
  GeodesicEvaluator(const BoundaryProfile& profile, Vec im_f0, EvalOptions opts = {})
      : opts_(opts), im_f0_(std::move(im_f0)), n_(profile.dim()) {
    if (im_f0_.size() == 0) im_f0_ = Vec::Zero(n_);
    if (im_f0_.size() != n_) throw ArgumentError("schwarz evaluator: im_f0 size mismatch");
    label_ = profile.label;
    singular_ = profile.singular_angles;
    if (profile.piecewise_constant) {
      if (singular_.size() != 2) throw ArgumentError("schwarz evaluator: two-arc profile needs two angles");
      x_plus_ = profile.x_plus;
      x_minus_ = profile.x_minus;
      mode_ = Mode::kTwoArc;
      mean_ = ((singular_[1] - singular_[0]) * x_plus_ +
               (2.0 * kPi - singular_[1] + singular_[0]) * x_minus_) /
              (2.0 * kPi);
      return;
    }
    if (profile.sampler) {
      sampler_ = profile.sampler;
      if (singular_.empty() && build_fourier_()) return;
      build_panels_();
      return;
    }
    if (!singular_.empty())
      throw ArgumentError("schwarz evaluator: singular profile requires a sampler for quadrature");
    // Uniform samples only: their DFT is the trapezoid quadrature on the stored grid.
    for (bool hv : profile.has_value)
      if (!hv) throw ArgumentError("schwarz evaluator: sampled profile has gaps");
    fourier_from_grid_(profile.values);
    mode_ = Mode::kFourier;
  }

  Index dim() const { return n_; }
  FCaseLabel label() const { return label_; }
  const std::vector<double>& singular_angles() const { return singular_; }
  const Vec& im_f0() const { return im_f0_; }

  // Re f(0), the average of g over the circle.
  Vec mean() const { return mean_; }

  // Two-arc data when present.
  bool piecewise_constant() const { return mode_ == Mode::kTwoArc; }
  const Vec& x_plus() const { return x_plus_; }
  const Vec& x_minus() const { return x_minus_; }

  // The boundary profile g at angle t.
  Vec boundary_value(double t) const {
    if (sampler_) return sampler_(t);
    if (mode_ == Mode::kTwoArc) {
      const double rel = detail::wrap_angle(t - singular_[0]);
      return rel <= singular_[1] - singular_[0] ? x_plus_ : x_minus_;
    }
    // Stored Fourier data: evaluate the series on the circle.
    const Complex xi(std::cos(t), std::sin(t));
    CVec acc = CVec::Zero(n_);
    for (Index k = coeffs_.cols() - 1; k >= 1; --k) acc = acc * xi + coeffs_.col(k);
    return (coeffs_.col(0) + 2.0 * xi * acc).real();
  }

  // f(conj-symmetrized): value (f(lambda) + conj(f(conj lambda))) / 2.
  GeodesicEvaluator symmetrized() const {
    GeodesicEvaluator e = *this;
    e.symmetrized_ = true;
    return e;
  }
  bool is_symmetrized() const { return symmetrized_; }

  CVec operator()(Complex lambda) const {
    const double r = std::abs(lambda);
    if (r >= 1.0) throw ArgumentError("schwarz evaluator: |lambda| must be < 1");
    if (mode_ != Mode::kTwoArc && r > opts_.r_max + 1e-15)
      throw ArgumentError("schwarz evaluator: |lambda| exceeds the configured radius cap");
    if (!symmetrized_) return raw_(lambda);
    return 0.5 * (raw_(lambda) + raw_(std::conj(lambda)).conjugate());
  }

 private:
  enum class Mode { kFourier, kPanels, kTwoArc };

  CVec raw_(Complex lambda) const {
    switch (mode_) {
      case Mode::kTwoArc: {
        const double t0 = singular_[0], t1 = singular_[1];
        const Complex s_plus = detail::schwarz_arc_integral(t0, t1, t1 - t0, lambda);
        const Complex s_minus = detail::schwarz_arc_integral(t1, t0, 2.0 * kPi - (t1 - t0), lambda);
        CVec f = (x_plus_.cast<Complex>() * s_plus + x_minus_.cast<Complex>() * s_minus) / (2.0 * kPi);
        f += Complex(0.0, 1.0) * im_f0_.cast<Complex>();
        return f;
      }
      case Mode::kFourier: {
        CVec acc = CVec::Zero(n_);
        for (Index k = coeffs_.cols() - 1; k >= 1; --k) acc = acc * lambda + coeffs_.col(k);
        CVec f = coeffs_.col(0) + 2.0 * lambda * acc;
        f += Complex(0.0, 1.0) * im_f0_.cast<Complex>();
        return f;
      }
      case Mode::kPanels: {
        CVec acc = CVec::Zero(n_);
        for (const detail::Panel& p : panels_) acc += panel_value_(p.t0, p.t1, lambda, &p.g);
        CVec f = acc / (2.0 * kPi);
        f += Complex(0.0, 1.0) * im_f0_.cast<Complex>();
        return f;
      }
    }
    return CVec::Zero(n_);
  }

  // int over [t0, t1] of kernel * g, splitting until panels clear lambda.
  CVec panel_value_(double t0, double t1, Complex lambda, const Mat* cached, int depth = 0) const {
    const double len = t1 - t0;
    const double d = detail::dist_to_arc(t0, t1, lambda);
    const auto kernel = [lambda](double t) {
      const Complex xi(std::cos(t), std::sin(t));
      return (xi + lambda) / (xi - lambda);
    };
    if (len <= d) {
      const Mat g = cached ? *cached : detail::sample_panel(sampler_, n_, t0, t1);
      return detail::gl16_integral(g, t0, t1, kernel);
    }
    if (len < 1e-12 || depth >= 60) {
      // Unresolvable sliver: freeze g at the midpoint and integrate the kernel exactly.
      const Vec gm = sampler_(0.5 * (t0 + t1));
      return gm.cast<Complex>() * detail::schwarz_arc_integral(t0, t1, len, lambda);
    }
    const double tm = 0.5 * (t0 + t1);
    return panel_value_(t0, tm, lambda, nullptr, depth + 1) +
           panel_value_(tm, t1, lambda, nullptr, depth + 1);
  }

  bool build_fourier_() {
    Eigen::FFT<double> fft;
    for (Index m = opts_.min_grid; m <= opts_.max_grid; m *= 2) {
      Mat samples(n_, m);
      for (Index j = 0; j < m; ++j) samples.col(j) = sampler_(2.0 * kPi * j / static_cast<double>(m));
      Eigen::MatrixXcd coeffs(n_, m);
      std::vector<double> in(static_cast<size_t>(m));
      std::vector<Complex> out(static_cast<size_t>(m));
      for (Index i = 0; i < n_; ++i) {
        for (Index j = 0; j < m; ++j) in[static_cast<size_t>(j)] = samples(i, j);
        fft.fwd(out, in);
        for (Index k = 0; k < m; ++k) coeffs(i, k) = out[static_cast<size_t>(k)] / static_cast<double>(m);
      }
      // Tail of the upper octave below K = m/2 decides whether the grid resolved g.
      double tail = 0.0;
      for (Index i = 0; i < n_; ++i) {
        double t = 0.0;
        for (Index k = m / 4; k < m / 2; ++k) t += std::abs(coeffs(i, k));
        tail = std::max(tail, t);
      }
      if (tail <= 0.01 * opts_.tol) {
        coeffs_ = coeffs.leftCols(m / 2);
        mean_ = coeffs_.col(0).real();
        mode_ = Mode::kFourier;
        return true;
      }
    }
    return false;
  }

  void fourier_from_grid_(const Mat& samples) {
    const Index m = samples.cols();
    Eigen::FFT<double> fft;
    coeffs_.resize(n_, std::max<Index>(m / 2, 1));
    std::vector<double> in(static_cast<size_t>(m));
    std::vector<Complex> out(static_cast<size_t>(m));
    for (Index i = 0; i < n_; ++i) {
      for (Index j = 0; j < m; ++j) in[static_cast<size_t>(j)] = samples(i, j);
      fft.fwd(out, in);
      for (Index k = 0; k < coeffs_.cols(); ++k)
        coeffs_(i, k) = out[static_cast<size_t>(k)] / static_cast<double>(m);
    }
    mean_ = coeffs_.col(0).real();
  }

  void build_panels_() {
    mode_ = Mode::kPanels;
    // Arcs between consecutive singular angles (full circle if none).
    std::vector<std::pair<double, double>> arcs;
    if (singular_.empty()) {
      arcs.emplace_back(0.0, 2.0 * kPi);
    } else {
      for (size_t i = 0; i < singular_.size(); ++i) {
        const double a = singular_[i];
        const double b = (i + 1 < singular_.size()) ? singular_[i + 1] : singular_[0] + 2.0 * kPi;
        if (b - a > 1e-14) arcs.emplace_back(a, b);
      }
    }
    std::vector<detail::Panel> todo;
    for (auto [a, b] : arcs) {
      const int k = std::max(1, static_cast<int>(std::ceil((b - a) / (kPi / 8.0))));
      for (int i = 0; i < k; ++i) {
        detail::Panel p;
        p.t0 = a + (b - a) * i / k;
        p.t1 = a + (b - a) * (i + 1) / k;
        todo.push_back(p);
      }
    }
    // Resolve g: a panel is kept once halving it no longer moves its plain integral.
    while (!todo.empty()) {
      detail::Panel p = todo.back();
      todo.pop_back();
      p.g = detail::sample_panel(sampler_, n_, p.t0, p.t1);
      const double tm = 0.5 * (p.t0 + p.t1);
      detail::Panel left{p.t0, tm, detail::sample_panel(sampler_, n_, p.t0, tm)};
      detail::Panel right{tm, p.t1, detail::sample_panel(sampler_, n_, tm, p.t1)};
      const Vec whole = detail::gl16_integral_real(p.g, p.t0, p.t1);
      const Vec halves = detail::gl16_integral_real(left.g, left.t0, left.t1) +
                         detail::gl16_integral_real(right.g, right.t0, right.t1);
      if ((whole - halves).cwiseAbs().maxCoeff() > 1e-13 && (p.t1 - p.t0) > 1e-9) {
        todo.push_back(left);
        todo.push_back(right);
      } else {
        panels_.push_back(std::move(p));
      }
    }
    std::sort(panels_.begin(), panels_.end(),
              [](const detail::Panel& x, const detail::Panel& y) { return x.t0 < y.t0; });
    Vec acc = Vec::Zero(n_);
    for (const detail::Panel& p : panels_) acc += detail::gl16_integral_real(p.g, p.t0, p.t1);
    mean_ = acc / (2.0 * kPi);
  }

  EvalOptions opts_;
  Vec im_f0_;
  Index n_ = 0;
  FCaseLabel label_ = FCaseLabel::kCircleEmbedding;
  std::vector<double> singular_;
  std::function<Vec(double)> sampler_;
  Mode mode_ = Mode::kFourier;
  Eigen::MatrixXcd coeffs_;            // Fourier path
  std::vector<detail::Panel> panels_;  // panel path
  Vec x_plus_, x_minus_;               // two-arc path
  Vec mean_ = Vec();
  bool symmetrized_ = false;
};

// One-off evaluation of the Schwarz integral of a profile.
inline CVec schwarz_integral(const BoundaryProfile& profile, const Vec& im_f0, Complex lambda,
                             EvalOptions opts = {}) {
  return GeodesicEvaluator(profile, im_f0, opts)(lambda);
}

}  // namespace tubegeo
