#include "thetarec/model_map.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "thetarec/symbolic.hpp"

namespace thetarec {

namespace {

// Sequential placement state: coordinates placed so far, the ordered point
// set for neighbour queries (with the domain ends as sentinels), and the
// running parity of Neg(k) = #{0 < j < k : x_j < 0}.
struct Builder {
  std::vector<mpq_class>& orbit;
  std::vector<char>& par;
  ModelMap& model;
  std::set<mpq_class> points{mpq_class(-1), mpq_class(1)};
  std::size_t placed = 0;  // orbit[0..placed-1] are set

  void commit(std::size_t index, const mpq_class& value) {
    if (index != placed)
      throw std::logic_error("orbit points must be placed in index order");
    orbit[index] = value;
    points.insert(value);
    if (index + 1 < par.size())
      par[index + 1] =
          static_cast<char>(par[index] ^ (index > 0 && value < 0 ? 1 : 0));
    ++placed;
  }

  // Nearest already-placed point strictly on the given side of anchor.
  const mpq_class& neighbour(const mpq_class& anchor, int side) const {
    if (side > 0) return *points.upper_bound(anchor);
    auto it = points.lower_bound(anchor);
    return *std::prev(it);
  }

  // New point adjacent to anchor on the given side: midpoint of the free gap,
  // clamped so the bridged interval stays shorter than 1/2^stage.
  void place(std::size_t index, const mpq_class& anchor, int side,
             std::size_t stage) {
    const mpq_class gap = abs(neighbour(anchor, side) - anchor);
    mpq_class offset = gap / 2;
    mpq_class cap(mpz_class(1), mpz_class(1) << (stage + 1));
    if (offset > cap) offset = cap;
    commit(index, side > 0 ? mpq_class(anchor + offset)
                           : mpq_class(anchor - offset));
    auto& log = model.stage_max_length;
    if (log.empty() || log.back().first != stage)
      log.emplace_back(stage, offset);
    else if (offset > log.back().second)
      log.back().second = offset;
  }
};

int side_of(char parity_even_flag) { return parity_even_flag == 0 ? 1 : -1; }

std::size_t to_index(const mpz_class& q) {
  if (!q.fits_ulong_p())
    throw std::overflow_error("orbit too long to realize explicitly");
  return static_cast<std::size_t>(q.get_ui());
}

}  // namespace

ModelMap construct_model(const ContinuedFraction& cf, std::size_t depth,
                         const ModelSeeds& seeds) {
  if (cf.quotient(1) != 1 || cf.quotient(2) != 1 || cf.quotient(3) != 1)
    throw std::invalid_argument(
        "the model construction needs an angle with a_1 = a_2 = a_3 = 1");
  if (depth < 3)
    throw std::invalid_argument("model depth must be at least 3");
  if (!(mpq_class(-1) < seeds.x1 && seeds.x1 < 0 && 0 < seeds.x3 &&
        seeds.x3 < seeds.x2 && seeds.x2 < -seeds.x1))
    throw std::invalid_argument(
        "seed points must satisfy -1 < x1 < 0 < x3 < x2 < -x1");

  const Convergents c = convergents(cf, depth);
  const std::size_t total = to_index(c.q[depth]) + 2;  // x_0 .. x_{q_N + 1}

  ModelMap model{cf, depth, {}, {}, {}};
  model.orbit.resize(total);
  std::vector<char> par(total + 1, 0);
  Builder b{model.orbit, par, model};

  b.commit(0, mpq_class(0));
  b.commit(1, seeds.x1);
  b.commit(2, seeds.x2);
  b.commit(3, seeds.x3);

  for (std::size_t n = 3; n < depth; ++n) {
    const long a = cf.quotient(n + 1);
    const std::size_t qn = to_index(c.q[n]);
    const std::size_t qp = to_index(c.q[n - 1]);
    if (a == 1) {
      for (std::size_t m = 1; m < qp; ++m)
        b.place(m + qn, b.orbit[m], side_of(par[m]), n);
      b.place(qp + qn, mpq_class(0), sign_of_qn(n + 1), n);
    } else {
      for (std::size_t m = 1; m < qn; ++m)
        b.place(m + qn, b.orbit[m], side_of(par[m]), n);
      b.place(2 * qn, mpq_class(0), -sign_of_qn(n), n);
      // The growth direction of a cluster is set by its base point: for
      // m = k + j q_n the interval [x_{m+q_n}, x_{m+2q_n}] extends the chain
      // anchored at x_k (or at the multiples of q_n when k = q_n), so the
      // side is read off the reduced index, not m itself.
      for (std::size_t m = 1; m <= static_cast<std::size_t>(a - 2) * qn; ++m)
        b.place(m + 2 * qn, b.orbit[m + qn], side_of(par[(m - 1) % qn + 1]), n);
      for (std::size_t m = 1; m < qp; ++m)
        b.place(m + static_cast<std::size_t>(a) * qn,
                b.orbit[m + static_cast<std::size_t>(a - 1) * qn],
                side_of(par[m]), n);
      b.place(to_index(c.q[n + 1]), mpq_class(0), sign_of_qn(n + 1), n);
    }
  }
  // One step beyond q_N, the first placement of the next stage: it supplies
  // the successor of x_{q_N} that the recurrence verifier compares against.
  b.place(total - 1, b.orbit[1], side_of(par[1]), depth);

  model.breakpoints.emplace_back(mpq_class(-1), mpq_class(1));
  model.breakpoints.emplace_back(mpq_class(1), mpq_class(1));
  for (std::size_t k = 0; k + 1 < total; ++k)
    model.breakpoints.emplace_back(model.orbit[k], model.orbit[k + 1]);
  std::sort(model.breakpoints.begin(), model.breakpoints.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  return model;
}

mpq_class ModelMap::eval(const mpq_class& x) const {
  if (x < -1 || x > 1)
    throw std::domain_error("evaluation outside [-1, 1]");
  const auto it = std::lower_bound(
      breakpoints.begin(), breakpoints.end(), x,
      [](const auto& bp, const mpq_class& v) { return bp.first < v; });
  if (it != breakpoints.end() && it->first == x) return it->second;
  const auto& right = *it;         // it > begin since x >= -1 and -1 is a node
  const auto& left = *std::prev(it);
  return left.second + (right.second - left.second) * (x - left.first) /
                           (right.first - left.first);
}

bool monotone_on_breakpoints(const ModelMap& model) {
  for (std::size_t i = 0; i + 1 < model.breakpoints.size(); ++i) {
    const auto& l = model.breakpoints[i];
    const auto& r = model.breakpoints[i + 1];
    if (!(l.first < r.first)) return false;
    if (r.first <= 0 && !(l.second > r.second)) return false;
    if (l.first >= 0 && !(l.second < r.second)) return false;
  }
  return true;
}

}  // namespace thetarec
