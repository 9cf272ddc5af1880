#include "cmsflow/geom/quadrature.h"

#include <cmath>
#include <numbers>

namespace cms::geom {

namespace {

constexpr double kPi = std::numbers::pi;

// Compensated accumulator: quadrature sums feed centered time differences in
// the identity checks, where plain serial-summation rounding (~ sqrt(N) eps)
// would dominate the differenced signal.
class Kahan {
 public:
  void add(double v) {
    const double y = v - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Legendre polynomial value and derivative by recurrence.
std::pair<double, double> legendre(int m, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= m; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = m * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

// Walk the tensor grid of up to three 1D rules.
template <typename F>
void tensor_walk(const std::vector<Rule1D>& rules, F&& body) {
  const int n = static_cast<int>(rules.size());
  SurfVec s = SurfVec::Zero(n);
  if (n == 1) {
    for (size_t i = 0; i < rules[0].nodes.size(); ++i) {
      s[0] = rules[0].nodes[i];
      body(s, rules[0].weights[i]);
    }
  } else if (n == 2) {
    for (size_t i = 0; i < rules[0].nodes.size(); ++i)
      for (size_t j = 0; j < rules[1].nodes.size(); ++j) {
        s[0] = rules[0].nodes[i];
        s[1] = rules[1].nodes[j];
        body(s, rules[0].weights[i] * rules[1].weights[j]);
      }
  } else {
    for (size_t i = 0; i < rules[0].nodes.size(); ++i)
      for (size_t j = 0; j < rules[1].nodes.size(); ++j)
        for (size_t k = 0; k < rules[2].nodes.size(); ++k) {
          s[0] = rules[0].nodes[i];
          s[1] = rules[1].nodes[j];
          s[2] = rules[2].nodes[k];
          body(s, rules[0].weights[i] * rules[1].weights[j] * rules[2].weights[k]);
        }
  }
}

std::vector<Rule1D> chart_rules(const Chart& chart, const QuadratureSpec& q) {
  std::vector<Rule1D> rules;
  for (int axis = 0; axis < chart.dim; ++axis) {
    rules.push_back(chart.periodic[axis]
                        ? trapezoid_periodic(q.count[axis], chart.lo[axis], chart.hi[axis])
                        : gauss_legendre(q.count[axis], chart.lo[axis], chart.hi[axis]));
  }
  return rules;
}

}  // namespace

Rule1D gauss_legendre(int m, double a, double b) {
  Rule1D rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int k = 0; k < m; ++k) {
    // Tricomi initial guess, then Newton.
    double x = std::cos(kPi * (k + 0.75) / (m + 0.5));
    for (int it = 0; it < 64; ++it) {
      const auto [p, dp] = legendre(m, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const auto [p, dp] = legendre(m, x);
    (void)p;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    rule.nodes[m - 1 - k] = mid + half * x;
    rule.weights[m - 1 - k] = half * w;
  }
  return rule;
}

Rule1D trapezoid_periodic(int m, double a, double b) {
  Rule1D rule;
  rule.nodes.resize(m);
  rule.weights.assign(m, (b - a) / m);
  for (int k = 0; k < m; ++k) rule.nodes[k] = a + (b - a) * k / m;
  return rule;
}

std::vector<SurfVec> chart_samples(const Chart& chart, const GridSpec& grid) {
  std::vector<std::vector<double>> axis_nodes;
  for (int axis = 0; axis < chart.dim; ++axis) {
    const int m = grid.count[axis];
    std::vector<double> nodes(m);
    if (chart.periodic[axis]) {
      for (int k = 0; k < m; ++k)
        nodes[k] = chart.lo[axis] + (chart.hi[axis] - chart.lo[axis]) * k / m;
    } else {
      const double a = chart.lo[axis] + grid.margin;
      const double b = chart.hi[axis] - grid.margin;
      for (int k = 0; k < m; ++k) nodes[k] = a + (b - a) * k / (m - 1);
    }
    axis_nodes.push_back(std::move(nodes));
  }

  std::vector<SurfVec> out;
  SurfVec s = SurfVec::Zero(chart.dim);
  if (chart.dim == 1) {
    for (double x : axis_nodes[0]) {
      s[0] = x;
      out.push_back(s);
    }
  } else if (chart.dim == 2) {
    for (double x : axis_nodes[0])
      for (double y : axis_nodes[1]) {
        s[0] = x;
        s[1] = y;
        out.push_back(s);
      }
  } else {
    for (double x : axis_nodes[0])
      for (double y : axis_nodes[1])
        for (double z : axis_nodes[2]) {
          s[0] = x;
          s[1] = y;
          s[2] = z;
          out.push_back(s);
        }
  }
  return out;
}

double surface_integral(const ParamFamily& family, double t, const SurfaceIntegrand& f,
                        const QuadratureSpec& q) {
  const auto rules = chart_rules(family.chart(), q);
  Kahan total;
  tensor_walk(rules, [&](const SurfVec& s, double w) {
    const FundamentalForms forms = fundamental_forms_param(family, s, t);
    total.add(w * forms.sqrt_det * f(s, forms));
  });
  return total.value();
}

double surface_area(const ParamFamily& family, double t, const QuadratureSpec& q) {
  return surface_integral(
      family, t, [](const SurfVec&, const FundamentalForms&) { return 1.0; }, q);
}

double enclosed_volume(const ParamFamily& family, double t, const QuadratureSpec& q) {
  const double d = family.ambient_dim();
  const double flux = surface_integral(
      family, t,
      [&](const SurfVec& s, const FundamentalForms& forms) {
        return family.position(s, t).dot(forms.normal);
      },
      q);
  return flux / d;
}

Vec area_centroid(const ParamFamily& family, double t, const QuadratureSpec& q) {
  const int d = family.ambient_dim();
  std::array<Kahan, 4> num;
  Kahan area;
  const auto rules = chart_rules(family.chart(), q);
  tensor_walk(rules, [&](const SurfVec& s, double w) {
    const FundamentalForms forms = fundamental_forms_param(family, s, t);
    const Vec pos = family.position(s, t);
    const double ws = w * forms.sqrt_det;
    for (int a = 0; a < d; ++a) num[a].add(ws * pos[a]);
    area.add(ws);
  });
  Vec out = Vec::Zero(d);
  for (int a = 0; a < d; ++a) out[a] = num[a].value() / area.value();
  return out;
}

double volume_integral(const ParamFamily& family, double t,
                       const std::function<double(const Vec&)>& f, const QuadratureSpec& q) {
  const int n = family.dim();
  const Vec c = area_centroid(family, t, q);
  const Rule1D radial = gauss_legendre(q.radial, 0.0, 1.0);
  const auto rules = chart_rules(family.chart(), q);
  Kahan total;
  tensor_walk(rules, [&](const SurfVec& s, double w) {
    const FundamentalForms forms = fundamental_forms_param(family, s, t);
    const Vec ray = family.position(s, t) - c;
    const double jac_surface = ray.dot(forms.normal) * forms.sqrt_det;
    for (int r = 0; r < q.radial; ++r) {
      const double lam = radial.nodes[r];
      total.add(w * radial.weights[r] * std::pow(lam, n) * jac_surface * f(c + lam * ray));
    }
  });
  return total.value();
}

}  // namespace cms::geom
