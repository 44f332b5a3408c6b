#include "mcg/homology.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace mcg {

using boost::multiprecision::cpp_rational;

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw HomologyError("matrix dimension mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Int& v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < rhs.cols_; ++j) out.at(i, j) += v * rhs.at(k, j);
    }
  return out;
}

IntMatrix IntMatrix::operator-() const {
  IntMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = -a_[i];
  return out;
}

std::vector<Int> IntMatrix::operator*(const std::vector<Int>& v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw HomologyError("matrix/vector dimension mismatch");
  std::vector<Int> out(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

IntMatrix IntMatrix::pow(long long e) const {
  if (rows_ != cols_) throw HomologyError("power of a non-square matrix");
  if (e < 0) throw HomologyError("negative matrix power");
  IntMatrix result = identity(rows_);
  IntMatrix base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    if (e > 1) base = base * base;
    e >>= 1;
  }
  return result;
}

std::optional<IntMatrix> IntMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  const int n = rows_;
  // Gauss-Jordan over exact rationals; accept only integral results.
  std::vector<std::vector<cpp_rational>> aug(
      n, std::vector<cpp_rational>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = cpp_rational(at(i, j));
    aug[i][n + i] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row)
      if (aug[row][col] != 0) {
        pivot = row;
        break;
      }
    if (pivot < 0) return std::nullopt;
    std::swap(aug[col], aug[pivot]);
    cpp_rational p = aug[col][col];
    for (int j = 0; j < 2 * n; ++j) aug[col][j] /= p;
    for (int row = 0; row < n; ++row) {
      if (row == col || aug[row][col] == 0) continue;
      cpp_rational f = aug[row][col];
      for (int j = 0; j < 2 * n; ++j) aug[row][j] -= f * aug[col][j];
    }
  }
  IntMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cpp_rational& v = aug[i][n + j];
      if (denominator(v) != 1) return std::nullopt;
      inv.at(i, j) = numerator(v);
    }
  return inv;
}

PolygonWord parse_polygon_word(std::string_view text) {
  PolygonWord word;
  std::map<std::string, int, std::less<>> index;
  std::istringstream is{std::string(text)};
  std::string token;
  std::size_t consumed = 0;
  while (is >> token) {
    bool inverted = false;
    if (token.ends_with('\'')) {
      inverted = true;
      token.pop_back();
    }
    if (token.empty()) throw ParseError("empty side label", consumed);
    auto [it, inserted] = index.try_emplace(token, static_cast<int>(word.labels.size()));
    if (inserted) word.labels.push_back(token);
    word.sides.emplace_back(it->second, inverted);
    ++consumed;
  }
  if (word.sides.empty()) throw ParseError("empty polygon word", 0);
  return word;
}

namespace {

struct LinkWalk {
  int vertex_classes = 0;
  // Cyclic order of edge ends around the first vertex: (label, is_head).
  std::vector<std::pair<int, bool>> ends;
};

// Validates the identification (orientable, every label exactly twice) and
// walks the corner cycles of the identified polygon. Corner i sits at polygon
// vertex p_i between sides s_{i-1} and s_i; rotating around the identified
// vertex crosses the end of s_{i-1} at p_i and continues at the start corner
// of the partner side.
LinkWalk walk_links(const PolygonWord& word) {
  const int sides = static_cast<int>(word.sides.size());
  std::vector<std::vector<int>> occurrences(word.labels.size());
  for (int i = 0; i < sides; ++i)
    occurrences[word.sides[i].first].push_back(i);
  for (std::size_t label = 0; label < occurrences.size(); ++label) {
    if (occurrences[label].size() != 2)
      throw HomologyError("label '" + word.labels[label] +
                          "' must appear exactly twice");
    const auto& occ = occurrences[label];
    if (word.sides[occ[0]].second == word.sides[occ[1]].second)
      throw HomologyError("non-orientable identification at label '" +
                          word.labels[label] + "'");
  }
  std::vector<int> partner(sides);
  for (const auto& occ : occurrences) {
    partner[occ[0]] = occ[1];
    partner[occ[1]] = occ[0];
  }

  LinkWalk walk;
  std::vector<int> seen(sides, 0);
  for (int start = 0; start < sides; ++start) {
    if (seen[start]) continue;
    ++walk.vertex_classes;
    int corner = start;
    do {
      seen[corner] = 1;
      int crossed = (corner + sides - 1) % sides;
      if (walk.vertex_classes == 1)
        walk.ends.emplace_back(word.sides[crossed].first,
                               !word.sides[crossed].second);
      corner = partner[crossed];
    } while (corner != start);
  }
  return walk;
}

}  // namespace

long long polygon_genus(const PolygonWord& word) {
  LinkWalk walk = walk_links(word);
  long long chi =
      walk.vertex_classes - static_cast<long long>(word.sides.size()) / 2 + 1;
  if (chi > 2 || (2 - chi) % 2 != 0)
    throw HomologyError("polygon word has no closed orientable genus");
  return (2 - chi) / 2;
}

int SkewForm::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  throw HomologyError("unknown curve label '" + std::string(label) + "'");
}

SkewForm intersection_form(const PolygonWord& word) {
  LinkWalk walk = walk_links(word);
  if (walk.vertex_classes != 1)
    throw HomologyError("polygon word identifies more than one vertex");
  const int n = static_cast<int>(word.labels.size());
  const int len = static_cast<int>(walk.ends.size());

  // Positions of the outgoing (tail) and incoming (head) end of each loop in
  // the cyclic order around the vertex.
  std::vector<int> out_pos(n, -1), in_pos(n, -1);
  for (int t = 0; t < len; ++t) {
    auto [label, is_head] = walk.ends[t];
    (is_head ? in_pos : out_pos)[label] = t;
  }

  SkewForm form;
  form.labels = word.labels;
  form.j = IntMatrix(n, n);
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      // The loops cross at the vertex iff the ends of y separate the ends of
      // x; the sign follows the cyclic pattern out_x, out_y, in_x, in_y.
      auto rel = [&](int p) { return (p - out_pos[x] + len) % len; };
      int b = rel(in_pos[x]), c = rel(out_pos[y]), d = rel(in_pos[y]);
      int value = 0;
      if (c < b && d > b) value = 1;
      if (d < b && c > b) value = -1;
      form.j.at(x, y) = value;
      form.j.at(y, x) = -value;
    }
  }
  return form;
}

SkewForm chain_form(long long g) {
  if (g < 1) throw HomologyError("chain form needs genus at least 1");
  const int n = static_cast<int>(2 * g + 1);
  SkewForm form;
  for (int i = 1; i <= n; ++i) form.labels.push_back("x" + std::to_string(i));
  form.j = IntMatrix(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    form.j.at(i, i + 1) = 1;
    form.j.at(i + 1, i) = -1;
  }
  return form;
}

IntMatrix transvection(const SkewForm& form, const std::vector<Int>& v,
                       long long q) {
  const int n = form.j.rows();
  if (static_cast<int>(v.size()) != n)
    throw HomologyError("class vector has wrong dimension");
  // x -> x + q <v, x> v, i.e. M = I + q * v * (v^T J).
  std::vector<Int> row(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) row[j] += v[i] * form.j.at(i, j);
  IntMatrix m = IntMatrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) += q * v[i] * row[j];
  return m;
}

IntMatrix rotation_matrix(long long g) {
  if (g < 1) throw HomologyError("rotation needs genus at least 1");
  const int n = static_cast<int>(2 * g);
  IntMatrix m(n, n);
  for (int i = 0; i + 1 < n; ++i) m.at(i + 1, i) = 1;
  m.at(0, n - 1) = -1;
  return m;
}

PolygonWord polygon_word(long long g) {
  std::ostringstream os;
  for (int pass = 0; pass < 2; ++pass)
    for (long long i = 1; i <= 2 * g; ++i)
      os << 'a' << i << (pass ? "' " : " ");
  return parse_polygon_word(os.str());
}

IntMatrix word_matrix(const TwistWord& word, const SkewForm& form,
                      const std::map<std::string, std::vector<Int>>& classes,
                      const std::map<std::string, IntMatrix>& named) {
  IntMatrix result = IntMatrix::identity(form.j.rows());
  for (const auto& [label, exponent] : word.factors) {
    if (auto it = named.find(label); it != named.end()) {
      IntMatrix factor = it->second;
      if (exponent < 0) {
        auto inv = factor.inverse();
        if (!inv) throw HomologyError("named map '" + label + "' is not unimodular");
        factor = *inv;
      }
      result = result * factor.pow(exponent < 0 ? -exponent : exponent);
      continue;
    }
    auto it = classes.find(label);
    if (it == classes.end())
      throw HomologyError("unresolved curve label '" + label + "'");
    result = result * transvection(form, it->second, exponent);
  }
  return result;
}

bool check_relation(const IntMatrix& a, const IntMatrix& b, int k) {
  if (k != 1 && k != -1) throw HomologyError("relation exponent must be +-1");
  auto b_inv = b.inverse();
  if (!b_inv) throw HomologyError("conjugator is not invertible over Z");
  IntMatrix lhs = *b_inv * a * b;
  if (k == 1) return lhs == a;
  auto a_inv = a.inverse();
  if (!a_inv) throw HomologyError("matrix is not invertible over Z");
  return lhs == *a_inv;
}

namespace {

long long euler_phi(long long n) {
  long long result = n;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

using Poly = std::vector<Int>;  // coefficients, index = degree

Poly poly_divide_exact(const Poly& num, const Poly& den) {
  Poly rem = num;
  Poly quot(num.size() - den.size() + 1);
  for (int i = static_cast<int>(quot.size()) - 1; i >= 0; --i) {
    Int c = rem[i + den.size() - 1] / den.back();
    quot[i] = c;
    for (std::size_t j = 0; j < den.size(); ++j)
      rem[i + j] -= c * den[j];
  }
  for (const Int& c : rem)
    if (c != 0) throw HomologyError("inexact polynomial division");
  return quot;
}

bool poly_divides(const Poly& den, const Poly& num, Poly* quot_out) {
  if (num.size() < den.size()) return false;
  Poly rem = num;
  Poly quot(num.size() - den.size() + 1);
  for (int i = static_cast<int>(quot.size()) - 1; i >= 0; --i) {
    if (rem[i + den.size() - 1] % den.back() != 0) return false;
    Int c = rem[i + den.size() - 1] / den.back();
    quot[i] = c;
    for (std::size_t j = 0; j < den.size(); ++j)
      rem[i + j] -= c * den[j];
  }
  for (const Int& c : rem)
    if (c != 0) return false;
  *quot_out = quot;
  return true;
}

Poly cyclotomic(long long d, std::map<long long, Poly>& cache) {
  if (auto it = cache.find(d); it != cache.end()) return it->second;
  Poly result(d + 1);
  result[0] = -1;
  result[d] = 1;  // x^d - 1
  for (long long e = 1; e < d; ++e)
    if (d % e == 0) result = poly_divide_exact(result, cyclotomic(e, cache));
  cache[d] = result;
  return result;
}

Poly characteristic_polynomial(const IntMatrix& m) {
  // Faddeev-LeVerrier: exact over the integers (the divisions are exact).
  const int n = m.rows();
  Poly coeff(n + 1);
  coeff[n] = 1;
  IntMatrix mk = m;
  Int ck;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) mk = m * mk;
    Int trace = 0;
    for (int i = 0; i < n; ++i) trace += mk.at(i, i);
    ck = -trace / k;
    coeff[n - k] = ck;
    for (int i = 0; i < n; ++i) mk.at(i, i) += ck;
  }
  return coeff;
}

std::string poly_text(const Poly& p) {
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (p[i] == 0) continue;
    if (!first) os << (p[i] > 0 ? " + " : " - ");
    if (first && p[i] < 0) os << '-';
    Int a = abs(p[i]);
    if (a != 1 || i == 0) os << a.str();
    if (i > 0) {
      if (a != 1) os << '*';
      os << 'x';
      if (i > 1) os << '^' << i;
    }
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

}  // namespace

OrderResult order_on_homology(const IntMatrix& m, long long bound) {
  if (m.rows() != m.cols()) throw HomologyError("order of a non-square matrix");
  const int n = m.rows();
  OrderResult result;
  (void)bound;  // the decision is exact; no search cutoff is needed

  // Strip every cyclotomic factor from the characteristic polynomial. A
  // finite-order integer matrix has a characteristic polynomial that is a
  // product of cyclotomics, so a nontrivial residual certifies infinite
  // order without computing any large power.
  Poly chi = characteristic_polynomial(m);
  std::map<long long, Poly> cache;
  Poly residual = chi;
  long long candidate_exponent = 1;
  for (long long d = 1; d <= 2LL * n * n + 2; ++d) {
    if (euler_phi(d) > n) continue;
    Poly phi = cyclotomic(d, cache);
    Poly quot;
    bool divided = false;
    while (residual.size() > 1 && poly_divides(phi, residual, &quot)) {
      residual = quot;
      divided = true;
    }
    if (divided) candidate_exponent = std::lcm(candidate_exponent, d);
  }
  if (residual.size() > 1) {
    result.certificate =
        "non-cyclotomic characteristic factor " + poly_text(residual);
    return result;
  }

  // All eigenvalues are roots of unity whose orders divide the candidate
  // exponent; M is finite exactly when that power is the identity.
  IntMatrix id = IntMatrix::identity(n);
  if (!(m.pow(candidate_exponent) == id)) {
    result.certificate = "all eigenvalues are roots of unity but M^" +
                         std::to_string(candidate_exponent) +
                         " != I (nontrivial unipotent part)";
    return result;
  }
  long long order = candidate_exponent;
  std::vector<long long> divisors;
  for (long long d = 1; d * d <= candidate_exponent; ++d) {
    if (candidate_exponent % d == 0) {
      divisors.push_back(d);
      divisors.push_back(candidate_exponent / d);
    }
  }
  std::sort(divisors.begin(), divisors.end());
  for (long long d : divisors)
    if (m.pow(d) == id) {
      order = d;
      break;
    }
  result.finite = true;
  result.order = order;
  return result;
}

bool level_m_member(const IntMatrix& m, long long mod) {
  if (mod < 2) throw HomologyError("level modulus must be at least 2");
  if (m.rows() != m.cols()) return false;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      Int v = m.at(i, j) - (i == j ? 1 : 0);
      if (v % mod != 0) return false;
    }
  return true;
}

FormalConjugation formal_conjugation_check(
    const std::vector<std::string>& support,
    const std::vector<std::vector<int>>& intersects,
    const std::map<std::string, long long>& q,
    const std::map<std::string, std::string>& sigma, int k) {
  FormalConjugation out;
  if (k != 1 && k != -1) throw HomologyError("conjugation exponent must be +-1");
  for (std::size_t i = 0; i < support.size(); ++i)
    for (std::size_t j = 0; j < support.size(); ++j)
      if (i != j && i < intersects.size() && j < intersects[i].size() &&
          intersects[i][j] != 0)
        return out;  // intersecting supports: defer to homology level
  out.applicable = true;

  std::map<std::string, std::string> sigma_inverse;
  for (const auto& [from, to] : sigma) sigma_inverse[to] = from;
  for (const auto& curve : support) {
    auto pre = sigma_inverse.find(curve);
    auto q_pre = pre == sigma_inverse.end() ? q.end() : q.find(pre->second);
    auto q_cur = q.find(curve);
    if (q_pre == q.end() || q_cur == q.end() ||
        q_pre->second != k * q_cur->second)
      return out;  // applicable but not certified
  }
  out.certified = true;
  return out;
}

bool GrowthBound::at_least(long long p, long long q) const {
  if (q <= 0) throw HomologyError("bound denominator must be positive");
  Int lhs = norm;
  for (long long t = 0; t < power; ++t) lhs *= q;
  Int rhs = 1;
  for (long long t = 0; t < power; ++t) rhs *= p;
  return lhs >= rhs;
}

GrowthBound spectral_lower_bound(const IntMatrix& m, long long t_max) {
  if (m.rows() != m.cols()) throw HomologyError("non-square matrix");
  std::vector<Int> v(m.rows(), 1);
  GrowthBound best;  // value 1 (norm 1, power 1)
  for (long long t = 1; t <= t_max; ++t) {
    v = m * v;
    Int norm = 0;
    for (const Int& x : v)
      if (abs(x) > norm) norm = abs(x);
    // Keep the larger root: norm^{1/t} > best.norm^{1/best.power}.
    Int lhs = 1, rhs = 1;
    for (long long i = 0; i < best.power; ++i) lhs *= norm;
    for (long long i = 0; i < t; ++i) rhs *= best.norm;
    if (lhs > rhs) best = {norm, t};
  }
  return best;
}

nlohmann::json to_json(const IntMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

}  // namespace mcg
