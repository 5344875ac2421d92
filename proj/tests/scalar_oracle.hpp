#pragma once

// Plain-double evaluation of every chain on 1x1 instances, written straight
// from the displayed scalar formulas. It shares no code with the library
// beyond the C++ standard library, so agreement is a real cross-check.
//
// On 1x1 matrices each single map is the identity and a family member acts
// as x -> w_i x.

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

using Fn = std::function<double(double)>;

struct Interval {
  double m, big_m;
  double width() const { return big_m - m; }
};

inline double kf(const Fn& f, double x, double y) {
  const double mid = f(0.5 * (x + y));
  return mid * mid / (f(x) * f(y));
}

inline double tilde(double t, Interval iv) {
  return 0.5 - std::abs(t - 0.5 * (iv.m + iv.big_m)) / iv.width();
}

// K^t~ f(m)^((M-t)/(M-m)) f(M)^((t-m)/(M-m)), via std::pow.
inline double g(const Fn& f, double t, Interval iv) {
  return std::pow(kf(f, iv.m, iv.big_m), tilde(t, iv)) * std::pow(f(iv.m), (iv.big_m - t) / iv.width()) *
         std::pow(f(iv.big_m), (t - iv.m) / iv.width());
}

inline double g_power(double p, double t, Interval iv) {
  const double m = iv.m, big_m = iv.big_m;
  return std::pow((m + big_m) / (2 * std::sqrt(m * big_m)), 2 * p * tilde(t, iv)) *
         std::pow(m, p * (big_m - t) / iv.width()) * std::pow(big_m, p * (t - m) / iv.width());
}

inline double lin2(const Fn& f, double s, Interval iv) {
  return (2 * iv.big_m - s) / iv.width() * f(iv.m) + (s - 2 * iv.m) / iv.width() * f(iv.big_m);
}

inline double h(const Fn& f, double t, Interval iv) {
  return (iv.big_m - t) / iv.width() * f(t - iv.m) + (t - iv.m) / iv.width() * f(iv.big_m - t);
}

// The sum of the two (m-A) and (D-M) correction pairs on the right side.
inline double rhs_corrections(const Fn& f, double f_below, double a, double f_above, double d, Interval iv) {
  const double fw = f(iv.width());
  return f_below + (iv.m - a) / iv.width() * fw + f_above + (d - iv.big_m) / iv.width() * fw;
}

struct Quad {
  double a, b, c, d;
};

inline std::vector<double> lc_quad(const Fn& f, Quad q, Interval iv) {
  return {f(q.b) + f(q.c), g(f, q.b, iv) + g(f, q.c, iv), lin2(f, q.b + q.c, iv), g(f, q.a, iv) + g(f, q.d, iv),
          f(q.a) + f(q.d)};
}

inline std::vector<double> lc_pow(double p, Quad q, Interval iv) {
  const Fn f = [p](double t) { return std::pow(t, p); };
  return {f(q.b) + f(q.c), g_power(p, q.b, iv) + g_power(p, q.c, iv), lin2(f, q.b + q.c, iv),
          g_power(p, q.a, iv) + g_power(p, q.d, iv), f(q.a) + f(q.d)};
}

inline std::vector<double> lc_mid(const Fn& f, double a, double d, Interval iv) {
  const double x = 0.5 * (a + d);
  const double l = (iv.big_m - x) / iv.width() * f(iv.m) + (x - iv.m) / iv.width() * f(iv.big_m);
  return {f(x), g(f, x, iv), l, 0.5 * (g(f, a, iv) + g(f, d, iv)), 0.5 * (f(a) + f(d))};
}

inline std::vector<double> mos_base(const Fn& f, Quad q) { return {f(q.b) + f(q.c), f(q.a) + f(q.d)}; }

// SQ-MAP, SQ-MAP-V2, SQ-MAP-V3 and SQ-QUAD coincide on 1x1 (all maps are
// the identity); the correction terms move between sides only.
inline std::vector<double> sq_quad(const Fn& f, Quad q, Interval iv) {
  const double lhs = f(q.b) + f(q.c) + h(f, q.b, iv) + h(f, q.c, iv);
  const double rhs = f(q.a) + f(q.d) - rhs_corrections(f, f(iv.m - q.a), q.a, f(q.d - iv.big_m), q.d, iv);
  return {lhs, rhs};
}

inline std::vector<double> sq_map(const Fn& f, Quad q, Interval iv) {
  const double lhs = f(q.b) + f(q.c);
  const double rhs = f(q.a) + f(q.d) - h(f, q.b, iv) - h(f, q.c, iv) -
                     rhs_corrections(f, f(iv.m - q.a), q.a, f(q.d - iv.big_m), q.d, iv);
  return {lhs, rhs};
}

inline std::vector<double> sq_mid(const Fn& f, double a, double d, Interval iv) {
  const double x = 0.5 * (a + d);
  return {f(x) + h(f, x, iv),
          0.5 * (f(a) + f(d)) - 0.5 * rhs_corrections(f, f(iv.m - a), a, f(d - iv.big_m), d, iv)};
}

// Families: weights w_i, sum w_i = 1.
struct Multi {
  std::vector<Quad> quads;
  std::vector<double> w;

  double sum(double Quad::*field) const {
    double s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * (quads[i].*field);
    return s;
  }
  double sum_of(const Fn& fn, double Quad::*field) const {
    double s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * fn(quads[i].*field);
    return s;
  }
};

inline std::vector<double> lc_multi(const Fn& f, const Multi& x, Interval iv) {
  const auto G = [&](double t) { return g(f, t, iv); };
  const double sa = x.sum(&Quad::a), sb = x.sum(&Quad::b), sc = x.sum(&Quad::c);
  return {x.sum_of(f, &Quad::b) + f(sc), x.sum_of(G, &Quad::b) + G(sc), lin2(f, sb + sc, iv),
          G(sa) + x.sum_of(G, &Quad::d), f(sa) + x.sum_of(f, &Quad::d)};
}

inline std::vector<double> sq_multi_a(const Fn& f, const Multi& x, Interval iv) {
  const double sa = x.sum(&Quad::a), sb = x.sum(&Quad::b), sc = x.sum(&Quad::c), sd = x.sum(&Quad::d);
  const auto below = [&](double a) { return f(iv.m - a); };
  const auto above = [&](double d) { return f(d - iv.big_m); };
  const double lhs = f(sb) + f(sc) + h(f, sb, iv) + h(f, sc, iv);
  const double rhs = x.sum_of(f, &Quad::a) + x.sum_of(f, &Quad::d) -
                     rhs_corrections(f, x.sum_of(below, &Quad::a), sa, x.sum_of(above, &Quad::d), sd, iv);
  return {lhs, rhs};
}

inline std::vector<double> sq_multi_b(const Fn& f, const Multi& x, Interval iv) {
  const double sa = x.sum(&Quad::a), sc = x.sum(&Quad::c), sd = x.sum(&Quad::d);
  const auto H = [&](double t) { return h(f, t, iv); };
  const auto above = [&](double d) { return f(d - iv.big_m); };
  const double lhs = x.sum_of(f, &Quad::b) + f(sc) + x.sum_of(H, &Quad::b) + H(sc);
  const double rhs = f(sa) + x.sum_of(f, &Quad::d) -
                     rhs_corrections(f, f(iv.m - sa), sa, x.sum_of(above, &Quad::d), sd, iv);
  return {lhs, rhs};
}

inline Multi mercer_as_multi(const std::vector<double>& b, const std::vector<double>& w, Interval iv) {
  Multi x{{}, w};
  for (double bi : b) x.quads.push_back({iv.m, bi, iv.m + iv.big_m - bi, iv.big_m});
  return x;
}

inline std::vector<double> lc_mercer(const Fn& f, const std::vector<double>& b, const std::vector<double>& w,
                                     Interval iv) {
  auto terms = lc_multi(f, mercer_as_multi(b, w, iv), iv);
  terms.resize(3);
  return terms;
}

inline std::vector<double> jm_base(const Fn& f, const std::vector<double>& b, const std::vector<double>& w,
                                   Interval iv) {
  double x = 0, fx = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    x += w[i] * b[i];
    fx += w[i] * f(b[i]);
  }
  return {f(iv.m + iv.big_m - x), f(iv.m) + f(iv.big_m) - fx};
}

inline std::vector<double> sq_mercer(const Fn& f, const std::vector<double>& b, const std::vector<double>& w,
                                     Interval iv) {
  double x = 0, fx = 0, hx = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    x += w[i] * b[i];
    fx += w[i] * f(b[i]);
    hx += w[i] * h(f, b[i], iv);
  }
  const double r = iv.m + iv.big_m - x;
  return {f(r) + hx + h(f, r, iv), f(iv.m) + f(iv.big_m) - 2 * f(0) - fx};
}

inline double relative_error(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace oracle
