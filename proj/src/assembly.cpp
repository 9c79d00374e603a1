#include "superlap/assembly.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <thread>

#include "superlap/errors.hpp"
#include "superlap/quadrature.hpp"

namespace superlap {

namespace {

// Local contribution of one work item: up to four global nodes and the
// symmetric 4x4 block over them.
struct LocalBlock {
  std::array<std::size_t, 4> dofs{};
  int size = 0;
  std::array<double, 16> values{};

  void add(int i, int j, double v) { values[4 * i + j] += v; }
};

// Rectangle [x0,x1] x [y0,y1] in the (xi, eta) coordinates of a pair of
// elements E1 = [p1,q1] (left) and E2 = [p2,q2] (right):
//   xi = q1 - x in [0,h1],  eta = y - p2 in [0,h2],  |x - y| = gap + xi + eta.
struct Rect {
  double x0, x1, y0, y1;
};

struct PairGeometry {
  double h1 = 0.0;
  double h2 = 0.0;
  double gap = 0.0;
  bool adjacent = false;  // q1 == p2
};

// Differences phi_i(x) - phi_i(y) of the local basis at (xi, eta).
inline int differences(const PairGeometry& g, double xi, double eta, double* d) {
  const double a = xi / g.h1;
  const double b = eta / g.h2;
  if (g.adjacent) {
    d[0] = a;      // p1
    d[1] = b - a;  // shared node
    d[2] = -b;     // q2
    return 3;
  }
  d[0] = a;
  d[1] = 1.0 - a;
  d[2] = b - 1.0;
  d[3] = -b;
  return 4;
}

void gauss_rect(const PairGeometry& g, double s, const Rect& r, int n, LocalBlock& out) {
  const quad::Rule& rule = quad::gauss_legendre(n);
  const double cx = 0.5 * (r.x0 + r.x1), hx = 0.5 * (r.x1 - r.x0);
  const double cy = 0.5 * (r.y0 + r.y1), hy = 0.5 * (r.y1 - r.y0);
  const double exponent = -1.0 - 2.0 * s;
  double d[4];
  for (int qx = 0; qx < n; ++qx) {
    const double xi = cx + hx * rule.nodes[qx];
    for (int qy = 0; qy < n; ++qy) {
      const double eta = cy + hy * rule.nodes[qy];
      const double w = hx * hy * rule.weights[qx] * rule.weights[qy] *
                       std::pow(g.gap + xi + eta, exponent);
      const int m = differences(g, xi, eta, d);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) out.add(i, j, w * d[i] * d[j]);
    }
  }
}

// Integrates over a rectangle whose closest point to the singular set is at
// distance gap + x0 + y0 > 0, bisecting until blocks are well separated.
void integrate_rect(const PairGeometry& g, double s, const Rect& r, LocalBlock& out,
                    int depth = 0) {
  const double distance = g.gap + r.x0 + r.y0;
  const double size = std::max(r.x1 - r.x0, r.y1 - r.y0);
  if (size <= 0.25 * distance) {
    gauss_rect(g, s, r, 8, out);
    return;
  }
  if (size <= distance || depth > 80) {
    gauss_rect(g, s, r, 16, out);
    return;
  }
  if (r.x1 - r.x0 >= r.y1 - r.y0) {
    const double mid = 0.5 * (r.x0 + r.x1);
    integrate_rect(g, s, {r.x0, mid, r.y0, r.y1}, out, depth + 1);
    integrate_rect(g, s, {mid, r.x1, r.y0, r.y1}, out, depth + 1);
  } else {
    const double mid = 0.5 * (r.y0 + r.y1);
    integrate_rect(g, s, {r.x0, r.x1, r.y0, mid}, out, depth + 1);
    integrate_rect(g, s, {r.x0, r.x1, mid, r.y1}, out, depth + 1);
  }
}

// int_{E1} int_{E2} for distinct elements, E1 strictly left of E2.
LocalBlock element_pair(const DomainMesh& mesh, std::size_t e1, std::size_t e2, double s) {
  const auto& nodes = mesh.nodes();
  PairGeometry g;
  g.h1 = mesh.width(e1);
  g.h2 = mesh.width(e2);
  g.adjacent = (e1 + 1 == e2);
  g.gap = g.adjacent ? 0.0 : nodes[e2] - nodes[e1 + 1];

  LocalBlock block;
  if (g.adjacent) {
    block.size = 3;
    block.dofs = {e1, e1 + 1, e2 + 1, 0};
    // The integrand is homogeneous of degree 1-2s around the shared node, so
    // the half-size core contributes 2^{-(3-2s)} times the whole.
    const double hx = 0.5 * g.h1, hy = 0.5 * g.h2;
    integrate_rect(g, s, {hx, g.h1, 0.0, hy}, block);
    integrate_rect(g, s, {0.0, hx, hy, g.h2}, block);
    integrate_rect(g, s, {hx, g.h1, hy, g.h2}, block);
    const double scale = 1.0 / (1.0 - std::exp2(-(3.0 - 2.0 * s)));
    for (double& v : block.values) v *= scale;
  } else {
    block.size = 4;
    block.dofs = {e1, e1 + 1, e2, e2 + 1};
    integrate_rect(g, s, {0.0, g.h1, 0.0, g.h2}, block);
  }
  return block;
}

// int_E int_E, closed form: the differences are slope_i (x - y).
LocalBlock same_element(const DomainMesh& mesh, std::size_t e, double s) {
  const double h = mesh.width(e);
  const double value = 2.0 * std::pow(h, 1.0 - 2.0 * s) / ((2.0 - 2.0 * s) * (3.0 - 2.0 * s));
  LocalBlock block;
  block.size = 2;
  block.dofs = {e, e + 1, 0, 0};
  block.add(0, 0, value);
  block.add(1, 1, value);
  block.add(0, 1, -value);
  block.add(1, 0, -value);
  return block;
}

// int_E int_T for an Omega element E and the tail T beyond the collar on
// `side`, where the outermost hat is identically 1.
LocalBlock tail_pair(const DomainMesh& mesh, std::size_t e, Side side, double s) {
  const auto& nodes = mesh.nodes();
  const double x_left = nodes[e];
  const double h = mesh.width(e);
  const std::size_t tail_node = side == Side::right ? mesh.num_nodes() - 1 : 0;
  const double edge = nodes[tail_node];
  const quad::Rule& rule = quad::gauss_legendre(16);
  LocalBlock block;
  block.size = 3;
  block.dofs = {e, e + 1, tail_node, 0};
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double t = 0.5 * (rule.nodes[q] + 1.0);
    const double x = x_left + t * h;
    const double dist = side == Side::right ? edge - x : x - edge;
    const double kappa = std::pow(dist, -2.0 * s) / (2.0 * s);
    const double w = 0.5 * h * rule.weights[q] * kappa;
    const double d[3] = {1.0 - t, t, -1.0};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) block.add(i, j, w * d[i] * d[j]);
  }
  return block;
}

struct WorkItem {
  enum class Kind { pair, same, tail_left, tail_right };
  Kind kind;
  std::size_t e1;
  std::size_t e2;
  double factor;
};

std::vector<WorkItem> work_items(const DomainMesh& mesh, InteractionRegion region) {
  std::vector<WorkItem> items;
  const std::size_t n = mesh.num_elements();
  for (std::size_t e1 = 0; e1 < n; ++e1) {
    for (std::size_t e2 = e1; e2 < n; ++e2) {
      const bool in1 = mesh.in_omega(e1);
      const bool in2 = mesh.in_omega(e2);
      const bool keep = region == InteractionRegion::q_region ? (in1 || in2) : (in1 && in2);
      if (!keep) continue;
      if (e1 == e2)
        items.push_back({WorkItem::Kind::same, e1, e1, 1.0});
      else
        items.push_back({WorkItem::Kind::pair, e1, e2, 2.0});
    }
    if (region == InteractionRegion::q_region && mesh.in_omega(e1)) {
      items.push_back({WorkItem::Kind::tail_left, e1, e1, 2.0});
      items.push_back({WorkItem::Kind::tail_right, e1, e1, 2.0});
    }
  }
  return items;
}

LocalBlock evaluate(const DomainMesh& mesh, const WorkItem& item, double s) {
  switch (item.kind) {
    case WorkItem::Kind::pair:
      return element_pair(mesh, item.e1, item.e2, s);
    case WorkItem::Kind::same:
      return same_element(mesh, item.e1, s);
    case WorkItem::Kind::tail_left:
      return tail_pair(mesh, item.e1, Side::left, s);
    case WorkItem::Kind::tail_right:
      return tail_pair(mesh, item.e1, Side::right, s);
  }
  return {};
}

void check_s(double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("fractional order s must lie in (0,1)");
}

}  // namespace

Eigen::MatrixXd fractional_form(const DomainMesh& mesh, double s, InteractionRegion region) {
  check_s(s);
  const std::vector<WorkItem> items = work_items(mesh, region);
  const std::size_t n = mesh.num_nodes();
  Eigen::MatrixXd form = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                               static_cast<Eigen::Index>(n));

  // Blocks are computed in parallel and scattered in item order, so the
  // result does not depend on the thread count.
  constexpr std::size_t kChunk = std::size_t{1} << 15;
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<LocalBlock> blocks;
  for (std::size_t begin = 0; begin < items.size(); begin += kChunk) {
    const std::size_t end = std::min(items.size(), begin + kChunk);
    blocks.assign(end - begin, LocalBlock{});
    std::atomic<std::size_t> next{begin};
    auto worker = [&] {
      for (std::size_t k = next++; k < end; k = next++)
        blocks[k - begin] = evaluate(mesh, items[k], s);
    };
    if (threads == 1 || end - begin < 256) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    for (std::size_t k = begin; k < end; ++k) {
      const LocalBlock& block = blocks[k - begin];
      const double factor = items[k].factor;
      for (int i = 0; i < block.size; ++i)
        for (int j = 0; j < block.size; ++j)
          form(static_cast<Eigen::Index>(block.dofs[i]), static_cast<Eigen::Index>(block.dofs[j])) +=
              factor * block.values[4 * i + j];
    }
  }
  return 0.5 * (form + form.transpose());
}

AssembledSystem assemble(const DomainMesh& mesh, const SpectralMeasure& measure, double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0) throw DomainError("alpha must be >= 0");
  if (alpha == 0.0 && measure.empty())
    throw DomainError("operator is trivial: alpha = 0 and the spectral measure is empty");

  const auto n = static_cast<Eigen::Index>(mesh.num_nodes());
  AssembledSystem sys{mesh, measure, alpha, Eigen::MatrixXd::Zero(n, n),
                      Eigen::MatrixXd::Zero(n, n), {}, Eigen::MatrixXd::Zero(n, n)};

  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    if (!mesh.in_omega(e)) continue;
    const double h = mesh.width(e);
    const auto i = static_cast<Eigen::Index>(e);
    sys.mass(i, i) += h / 3.0;
    sys.mass(i + 1, i + 1) += h / 3.0;
    sys.mass(i, i + 1) += h / 6.0;
    sys.mass(i + 1, i) += h / 6.0;
    sys.stiffness(i, i) += 1.0 / h;
    sys.stiffness(i + 1, i + 1) += 1.0 / h;
    sys.stiffness(i, i + 1) -= 1.0 / h;
    sys.stiffness(i + 1, i) -= 1.0 / h;
  }

  sys.op = alpha * sys.stiffness;
  for (const Atom& atom : measure.atoms()) {
    sys.fractional.push_back(0.5 * c_ns(1, atom.s) * fractional_form(mesh, atom.s));
    sys.op += atom.weight * sys.fractional.back();
  }
  return sys;
}

LoadVector assemble_load(const DomainMesh& mesh, double alpha, const LoadData& data) {
  const Interval& omega = mesh.omega();
  const quad::Rule& rule = quad::gauss_legendre(8);
  LoadVector load;
  load.values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh.num_nodes()));
  load.g_truncated = !data.g.is_zero();

  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const FunctionPreset& source = mesh.in_omega(e) ? data.f : data.g;
    if (source.is_zero()) continue;
    const double x0 = mesh.nodes()[e];
    const double h = mesh.width(e);
    double left = 0.0, right = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double t = 0.5 * (rule.nodes[q] + 1.0);
      const double w = 0.5 * h * rule.weights[q] * source(omega, x0 + t * h);
      left += w * (1.0 - t);
      right += w * t;
    }
    load.values(static_cast<Eigen::Index>(e)) += left;
    load.values(static_cast<Eigen::Index>(e + 1)) += right;
  }
  load.values(static_cast<Eigen::Index>(mesh.index_a())) += alpha * data.h_a;
  load.values(static_cast<Eigen::Index>(mesh.index_b())) += alpha * data.h_b;
  return load;
}

double energy(const AssembledSystem& sys, const Eigen::VectorXd& u, const Eigen::VectorXd& load) {
  if (u.size() != sys.op.rows() || load.size() != sys.op.rows())
    throw DomainError("energy: dimension mismatch");
  return 0.5 * u.dot(sys.op * u) - load.dot(u);
}

double gagliardo_seminorm_sq(const AssembledSystem& sys, const Eigen::VectorXd& u) {
  if (u.size() != sys.op.rows()) throw DomainError("gagliardo_seminorm_sq: dimension mismatch");
  double total = 0.0;
  const auto atoms = sys.measure.atoms();
  for (std::size_t k = 0; k < atoms.size(); ++k)
    total += 2.0 * atoms[k].weight * u.dot(sys.fractional[k] * u);
  return total;
}

double gagliardo_seminorm_sq(const DomainMesh& mesh, const SpectralMeasure& measure,
                             const Eigen::VectorXd& u) {
  if (u.size() != static_cast<Eigen::Index>(mesh.num_nodes()))
    throw DomainError("gagliardo_seminorm_sq: dimension mismatch");
  double total = 0.0;
  for (const Atom& atom : measure.atoms())
    total += atom.weight * c_ns(1, atom.s) * u.dot(fractional_form(mesh, atom.s) * u);
  return total;
}

}  // namespace superlap
