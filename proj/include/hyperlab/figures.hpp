#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "hyperlab/calculus.hpp"
#include "hyperlab/plot.hpp"
#include "hyperlab/scenes.hpp"

namespace hyperlab {

enum class Sampling { Serial, Parallel };

/// fn(0..count-1), evaluated in index order or split across threads. The
/// result is the same either way.
inline std::vector<PlotPoint> sample_points(std::size_t count, const std::function<PlotPoint(std::size_t)>& fn,
                                            Sampling mode = Sampling::Parallel) {
  std::vector<PlotPoint> out(count);
  std::size_t workers = mode == Sampling::Serial ? 1 : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(1, count / 16));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

inline std::vector<PlotPoint> to_plot(const std::vector<RealPoint>& pts) {
  std::vector<PlotPoint> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(to_plot(p.x, p.y));
  return out;
}

/// The finite saw l_n as a scene.
inline PlotScene luzin_saw_finite(long n) {
  PlotScene s;
  s.title = "Finite saw with " + std::to_string(n) + " teeth";
  s.polylines.push_back({"saw n=" + std::to_string(n), to_plot(luzin_saw_vertices(n))});
  s.fit_viewport();
  return s;
}

/// The finite saw together with the diagonal it approaches.
inline PlotScene figure_finite_saw(long n) {
  PlotScene s = luzin_saw_finite(n);
  s.polylines.push_back({"diagonal", {{0, 0}, {1, 1}}});
  s.fit_viewport();
  return s;
}

/// Teeth k-1, k, k+1 of the saw with N = 1/e teeth, seen through the
/// microscope centred at the start of tooth k with factor N. Every vertex
/// is computed in Q(e) and then replaced by its shadow.
inline PlotScene figure_magnified_tooth(const HyperIndex& k) {
  k.validate();
  HyperPoint2D centre = luzin_saw_hyper(k, SawPhase::Start);
  PlotScene s;
  s.title = "Tooth " + k.str() + " of the infinite saw under the microscope";
  for (long offset : {-1L, 0L, 1L}) {
    HyperIndex t{k.c, k.j + offset};
    RatFunc kv = t.value();
    if (kv < RatFunc(0) || kv > infinite_N() - RatFunc(1)) continue;
    std::vector<PlotPoint> pts;
    for (SawPhase phase : {SawPhase::Start, SawPhase::TopOfRiser, SawPhase::EndOfTread}) {
      RealPoint p = shadow(microscope2d(luzin_saw_hyper(t, phase), centre, infinite_N()));
      pts.push_back(to_plot(p.x, p.y));
    }
    s.polylines.push_back({"tooth " + t.str(), std::move(pts)});
  }
  s.points.push_back({"m(X, Y)", {0, 0}});
  s.fit_viewport();
  return s;
}

/// s_1..s_levels on [0, 1], drawn through their exact breakpoints.
inline PlotScene figure_triangle_waves(long levels) {
  if (levels < 1 || levels > 16) fail(ErrorKind::InvalidArgument, "levels must lie in 1..16");
  PlotScene s;
  s.title = "Triangle waves s_1..s_" + std::to_string(levels);
  for (long n = 1; n <= levels; ++n) {
    long count = 1L << n;
    std::vector<PlotPoint> pts;
    for (long k = 0; k <= count; ++k) {
      Rational x = Rational(k) / Rational(count);
      pts.push_back(to_plot(x, triangle_wave(n, x)));
    }
    s.polylines.push_back({"s_" + std::to_string(n), std::move(pts)});
  }
  s.fit_viewport();
  return s;
}

/// Partial sums of the blancmange series for 1..max_terms terms.
inline PlotScene figure_blancmange(long max_terms = 8, int samples_per_unit = 256, Sampling mode = Sampling::Parallel) {
  if (max_terms < 1) fail(ErrorKind::InvalidArgument, "blancmange needs at least one term");
  if (samples_per_unit < 1) fail(ErrorKind::InvalidArgument, "samples per unit must be positive");
  PlotScene s;
  s.title = "Blancmange partial sums";
  s.samples_per_unit = samples_per_unit;
  auto count = static_cast<std::size_t>(samples_per_unit) + 1;
  for (long t = 1; t <= max_terms; ++t) {
    auto pts = sample_points(
        count,
        [&](std::size_t i) {
          Rational x = Rational(static_cast<long>(i)) / Rational(samples_per_unit);
          return to_plot(x, blancmange(x, t).value);
        },
        mode);
    s.polylines.push_back({"terms=" + std::to_string(t), std::move(pts)});
  }
  s.fit_viewport();
  return s;
}

/// Graph of f near c under the microscope: t -> st((f(c + t e) - f(c)) / e)
/// for t in [-2, 2], with m(c) = 0 and m(c + e) = 1 marked.
inline PlotScene figure_microscope(const Expr& f, const Rational& c, const std::string& name = "x", int terms = 16,
                                   unsigned digits = 50, int samples = 41, Sampling mode = Sampling::Parallel) {
  if (samples < 2) fail(ErrorKind::InvalidArgument, "need at least two samples");
  auto magnified = [&](const Rational& t) -> double {
    if (t == 0) return 0;
    auto run = [&](const auto& backend) {
      auto q = detail::difference_quotient(f, name, backend, backend.coefficient(c), t);
      return q.standard_part() * backend.coefficient(t);
    };
    try {
      return run(ExactSeriesBackend{terms, digits}).template convert_to<double>();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ModeError) throw;
    }
    return run(ApproxSeriesBackend{terms, digits}).to_double();
  };
  PlotScene s;
  s.title = "Microscope at " + to_string(c) + " for " + render(f);
  auto pts = sample_points(
      static_cast<std::size_t>(samples),
      [&](std::size_t i) {
        Rational t = Rational(-2) + Rational(4 * static_cast<long>(i)) / Rational(samples - 1);
        return PlotPoint{t.convert_to<double>(), magnified(t)};
      },
      mode);
  s.polylines.push_back({"st(m(f))", std::move(pts)});
  s.points.push_back({"m(c)", {0, 0}});
  s.points.push_back({"m(c+e)", {1, 0}});
  s.fit_viewport();
  return s;
}

}  // namespace hyperlab
