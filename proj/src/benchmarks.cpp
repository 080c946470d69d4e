#include "scs/benchmarks.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace scs::bench {

namespace {

using Span = std::span<const double>;

double sgn(double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

// Index of the first maximal entry.
template <typename Range>
std::size_t first_argmax(const Range& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

Evaluation maxq(Span x) {
  Vector sq(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) sq[i] = x[i] * x[i];
  const std::size_t i = first_argmax(sq);
  Evaluation e{sq[i], Vector(x.size(), 0.0)};
  e.subgradient[i] = 2.0 * x[i];
  return e;
}

Evaluation mxhilb(Span x) {
  const std::size_t n = x.size();
  Vector h(n, 0.0);
  Vector absh(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) h[i] += x[j] / static_cast<double>(i + j + 1);
    absh[i] = std::abs(h[i]);
  }
  const std::size_t i = first_argmax(absh);
  Evaluation e{absh[i], Vector(n)};
  const double s = sgn(h[i]);
  for (std::size_t j = 0; j < n; ++j) e.subgradient[j] = s / static_cast<double>(i + j + 1);
  return e;
}

Evaluation chained_lq(Span x) {
  Evaluation e{0.0, Vector(x.size(), 0.0)};
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = -x[i] - x[i + 1];
    const double b = a + (x[i] * x[i] + x[i + 1] * x[i + 1] - 1.0);
    if (a >= b) {
      e.value += a;
      e.subgradient[i] += -1.0;
      e.subgradient[i + 1] += -1.0;
    } else {
      e.value += b;
      e.subgradient[i] += -1.0 + 2.0 * x[i];
      e.subgradient[i + 1] += -1.0 + 2.0 * x[i + 1];
    }
  }
  return e;
}

// The three pieces of a CB3 pair and their partials w.r.t. (x_i, x_{i+1}).
struct Cb3Pieces {
  std::array<double, 3> value;
  std::array<std::array<double, 2>, 3> grad;
};

Cb3Pieces cb3_pieces(double a, double b) {
  const double e = 2.0 * std::exp(-a + b);
  return {{a * a * a * a + b * b, (2.0 - a) * (2.0 - a) + (2.0 - b) * (2.0 - b), e},
          {{{4.0 * a * a * a, 2.0 * b}, {-2.0 * (2.0 - a), -2.0 * (2.0 - b)}, {-e, e}}}};
}

Evaluation chained_cb3_1(Span x) {
  Evaluation e{0.0, Vector(x.size(), 0.0)};
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const Cb3Pieces p = cb3_pieces(x[i], x[i + 1]);
    const std::size_t j = first_argmax(p.value);
    e.value += p.value[j];
    e.subgradient[i] += p.grad[j][0];
    e.subgradient[i + 1] += p.grad[j][1];
  }
  return e;
}

Evaluation chained_cb3_2(Span x) {
  std::array<double, 3> sums{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const Cb3Pieces p = cb3_pieces(x[i], x[i + 1]);
    for (std::size_t j = 0; j < 3; ++j) sums[j] += p.value[j];
  }
  const std::size_t j = first_argmax(sums);
  Evaluation e{sums[j], Vector(x.size(), 0.0)};
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const Cb3Pieces p = cb3_pieces(x[i], x[i + 1]);
    e.subgradient[i] += p.grad[j][0];
    e.subgradient[i + 1] += p.grad[j][1];
  }
  return e;
}

// max{ ln(|sum x| + 1), ln(|x_1| + 1), ..., ln(|x_n| + 1) }
Evaluation active_faces(Span x) {
  const std::size_t n = x.size();
  double total = 0.0;
  for (double v : x) total += v;
  Vector terms(n + 1);
  terms[0] = std::log(std::abs(total) + 1.0);
  for (std::size_t i = 0; i < n; ++i) terms[i + 1] = std::log(std::abs(x[i]) + 1.0);
  const std::size_t j = first_argmax(terms);
  Evaluation e{terms[j], Vector(n, 0.0)};
  if (j == 0) {
    const double c = sgn(total) / (std::abs(total) + 1.0);
    for (double& gi : e.subgradient) gi = c;
  } else {
    e.subgradient[j - 1] = sgn(x[j - 1]) / (std::abs(x[j - 1]) + 1.0);
  }
  return e;
}

Evaluation brown2(Span x) {
  Evaluation e{0.0, Vector(x.size(), 0.0)};
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i];
    const double b = x[i + 1];
    const double pa = b * b + 1.0;  // exponent on |a|
    const double pb = a * a + 1.0;  // exponent on |b|
    const double u = std::pow(std::abs(a), pa);
    const double v = std::pow(std::abs(b), pb);
    e.value += u + v;
    e.subgradient[i] += pa * std::pow(std::abs(a), pa - 1.0) * sgn(a);
    e.subgradient[i + 1] += pb * std::pow(std::abs(b), pb - 1.0) * sgn(b);
    if (a != 0.0) e.subgradient[i + 1] += u * std::log(std::abs(a)) * 2.0 * b;
    if (b != 0.0) e.subgradient[i] += v * std::log(std::abs(b)) * 2.0 * a;
  }
  return e;
}

Evaluation mifflin2(Span x) {
  Evaluation e{0.0, Vector(x.size(), 0.0)};
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double r = x[i] * x[i] + x[i + 1] * x[i + 1] - 1.0;
    e.value += -x[i] + 2.0 * r + 1.75 * std::abs(r);
    const double c = 2.0 + 1.75 * sgn(r);
    e.subgradient[i] += -1.0 + 2.0 * c * x[i];
    e.subgradient[i + 1] += 2.0 * c * x[i + 1];
  }
  return e;
}

// Crescent pair pieces:
//   p = a^2 + (b-1)^2 + b - 1,   q = -a^2 - (b-1)^2 + b + 1
struct CrescentPair {
  double p, q;
  std::array<double, 2> dp, dq;
};

CrescentPair crescent_pair(double a, double b) {
  const double c = (b - 1.0) * (b - 1.0);
  return {a * a + c + b - 1.0, -a * a - c + b + 1.0, {2.0 * a, 2.0 * (b - 1.0) + 1.0},
          {-2.0 * a, -2.0 * (b - 1.0) + 1.0}};
}

Evaluation crescent_1(Span x) {
  double sp = 0.0;
  double sq = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const CrescentPair c = crescent_pair(x[i], x[i + 1]);
    sp += c.p;
    sq += c.q;
  }
  const bool first = sp >= sq;
  Evaluation e{first ? sp : sq, Vector(x.size(), 0.0)};
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const CrescentPair c = crescent_pair(x[i], x[i + 1]);
    const auto& d = first ? c.dp : c.dq;
    e.subgradient[i] += d[0];
    e.subgradient[i + 1] += d[1];
  }
  return e;
}

Evaluation crescent_2(Span x) {
  Evaluation e{0.0, Vector(x.size(), 0.0)};
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const CrescentPair c = crescent_pair(x[i], x[i + 1]);
    const bool first = c.p >= c.q;
    const auto& d = first ? c.dp : c.dq;
    e.value += first ? c.p : c.q;
    e.subgradient[i] += d[0];
    e.subgradient[i + 1] += d[1];
  }
  return e;
}

Vector alternating(std::size_t n, double odd, double even) {
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = (i % 2 == 0) ? odd : even;  // i is 0-based, so i=0 is x_1
  return x;
}

struct Entry {
  const char* name;
  std::size_t default_n;
  Evaluation (*fn)(Span);
};

constexpr std::array<Entry, 10> kEntries{{
    {"MAXQ", 20, maxq},
    {"MXHILB", 50, mxhilb},
    {"ChainedLQ", 2, chained_lq},
    {"ChainedCB3I", 20, chained_cb3_1},
    {"ChainedCB3II", 20, chained_cb3_2},
    {"Activefaces", 2, active_faces},
    {"Brown2", 2, brown2},
    {"Mifflin2", 50, mifflin2},
    {"CrescentI", 2, crescent_1},
    {"CrescentII", 2, crescent_2},
}};

const Entry& lookup(std::string_view name) {
  for (const Entry& e : kEntries) {
    if (name == e.name) return e;
  }
  throw std::invalid_argument("unknown benchmark problem '" + std::string(name) + "'");
}

}  // namespace

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const Entry& e : kEntries) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

BenchmarkProblem make_problem(std::string_view name) { return make_problem(name, lookup(name).default_n); }

BenchmarkProblem make_problem(std::string_view name, std::size_t n) {
  const Entry& entry = lookup(name);
  if (n < 2) throw std::invalid_argument("benchmark dimension must be >= 2");

  BenchmarkProblem p;
  p.name = entry.name;
  p.n = n;
  p.objective = std::make_shared<FunctionObjective>(n, entry.fn);
  const double nm1 = static_cast<double>(n - 1);

  if (name == "MAXQ") {
    p.x0.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double v = static_cast<double>(i + 1);
      p.x0[i] = (i < n / 2) ? v : -v;
    }
    p.f_star = 0.0;
  } else if (name == "MXHILB") {
    p.x0.assign(n, 1.0);
    p.f_star = 0.0;
  } else if (name == "ChainedLQ") {
    p.x0.assign(n, -0.5);
    p.f_star = -nm1 * std::sqrt(2.0);
  } else if (name == "ChainedCB3I" || name == "ChainedCB3II") {
    p.x0.assign(n, 2.0);
    p.f_star = 2.0 * nm1;
  } else if (name == "Activefaces") {
    p.x0.assign(n, 1.0);
    p.f_star = 0.0;
  } else if (name == "Brown2") {
    p.x0 = alternating(n, -1.0, 1.0);
    p.f_star = 0.0;
  } else if (name == "Mifflin2") {
    p.x0.assign(n, -1.0);
    // Only tabulated at the reference size.
    p.f_star = n == 50 ? -34.795 : std::numeric_limits<double>::quiet_NaN();
  } else {  // CrescentI, CrescentII
    p.x0 = alternating(n, -1.5, 2.0);
    p.f_star = 0.0;
  }
  return p;
}

double error_measure(double f_min, double f_star) {
  if (f_star != 0.0) return std::abs(f_min - f_star) / std::abs(f_star);
  return std::abs(f_min);
}

bool is_solved(double error) { return error < kSolvedThreshold; }

}  // namespace scs::bench
