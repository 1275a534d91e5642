#ifndef MATRING_FREE_ALGEBRA_HPP
#define MATRING_FREE_ALGEBRA_HPP

// Words and noncommutative polynomials in x, y; the rewriting system for
// x^i y + y x^j = 1, y^2 = 0 (gcd(i, j) = 1); and equality in the algebra
// decided through the 2x2 matrix model over K[s,t]/I.
//
// Rewrite rules (i >= j after swapping):
//   y^2 -> 0
//   y x -> P(x) + Q(x) y
//   x^N -> sum_{k=1}^{m-1} (-1)^(k+1) x^((m-1-k)(i-j)),  m = i+j, N = (m-1)(i-j)
// and for i = j = 1 just {y x -> 1 - x y, y^2 -> 0}.
//
// Deglex does not decrease under the y x rule once Q has degree >= 1, so
// termination uses the y-position order: number of y's, then the numbers of
// x's to the right of each y read from the rightmost y leftwards
// (lexicographic), then total length.

#include "matring/groebner.hpp"
#include "matring/matrix_model.hpp"
#include "matring/text_parse.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace matring {

// ---------------------------------------------------------------------------
// Word

class Word {
 public:
  struct Run {
    char letter;
    std::uint32_t exp;
    friend bool operator==(const Run&, const Run&) = default;
  };

  Word() = default;
  static Word letter(char c, std::uint32_t exp = 1) {
    Word w;
    w.append(c, exp);
    return w;
  }
  static Word from_letters(std::string_view s) {
    Word w;
    for (char c : s) w.append(c, 1);
    return w;
  }

  const std::vector<Run>& runs() const { return runs_; }
  std::size_t length() const { return length_; }
  bool empty() const { return runs_.empty(); }
  std::size_t count(char c) const {
    std::size_t n = 0;
    for (const Run& r : runs_) n += r.letter == c ? r.exp : 0;
    return n;
  }

  void append(char c, std::uint32_t exp) {
    if (c != 'x' && c != 'y') throw std::invalid_argument(std::string("Word: bad letter '") + c + "'");
    if (exp == 0) return;
    if (!runs_.empty() && runs_.back().letter == c) {
      runs_.back().exp += exp;
    } else {
      runs_.push_back({c, exp});
    }
    length_ += exp;
  }
  void append(const Word& w) {
    for (const Run& r : w.runs_) append(r.letter, r.exp);
  }
  friend Word operator*(Word a, const Word& b) {
    a.append(b);
    return a;
  }

  std::string letters() const {
    std::string s;
    for (const Run& r : runs_) s.append(r.exp, r.letter);
    return s;
  }

  /// Letters [from, from + len).
  Word slice(std::size_t from, std::size_t len) const {
    Word out;
    std::size_t pos = 0;
    for (const Run& r : runs_) {
      const std::size_t lo = std::max(pos, from);
      const std::size_t hi = std::min(pos + r.exp, from + len);
      if (lo < hi) out.append(r.letter, static_cast<std::uint32_t>(hi - lo));
      pos += r.exp;
    }
    return out;
  }

  /// "x^2*y*x", identity prints as "1".
  std::string str() const {
    if (runs_.empty()) return "1";
    std::string s;
    for (const Run& r : runs_) {
      if (!s.empty()) s += "*";
      s += r.letter;
      if (r.exp > 1) s += "^" + std::to_string(r.exp);
    }
    return s;
  }

  friend bool operator==(const Word& a, const Word& b) { return a.runs_ == b.runs_; }

 private:
  std::vector<Run> runs_;
  std::size_t length_ = 0;
};

/// Deglex with x < y: shorter first, then the first differing letter.
struct DeglexLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.letters() < b.letters();  // 'x' < 'y' in ASCII
  }
};

/// Signature of the y-position order (see header comment).
inline std::vector<std::size_t> y_position_signature(const Word& w) {
  std::vector<std::size_t> xs_right;
  std::size_t xs = 0;
  const auto& runs = w.runs();
  for (auto it = runs.rbegin(); it != runs.rend(); ++it) {
    if (it->letter == 'x') {
      xs += it->exp;
    } else {
      for (std::uint32_t k = 0; k < it->exp; ++k) xs_right.push_back(xs);
    }
  }
  return xs_right;
}

/// Strict y-position order.
inline bool y_position_less(const Word& a, const Word& b) {
  const auto sa = y_position_signature(a);
  const auto sb = y_position_signature(b);
  if (sa.size() != sb.size()) return sa.size() < sb.size();
  if (sa != sb) return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(), sb.end());
  return a.length() < b.length();
}

struct YPositionLess {
  bool operator()(const Word& a, const Word& b) const { return y_position_less(a, b); }
};

// ---------------------------------------------------------------------------
// NCPoly

template <class K>
class NCPoly {
 public:
  using term_map = std::map<Word, K, DeglexLess>;

  NCPoly() = default;
  static NCPoly term(const Word& w, const K& c) {
    NCPoly p;
    p.add_term(w, c);
    return p;
  }
  static NCPoly constant(const K& c) { return term(Word(), c); }

  const term_map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Word& w, const K& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      terms_.emplace(w, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  NCPoly operator-() const {
    NCPoly r = *this;
    for (auto& [w, c] : r.terms_) c = -c;
    return r;
  }
  friend NCPoly operator+(NCPoly a, const NCPoly& b) {
    for (const auto& [w, c] : b.terms_) a.add_term(w, c);
    return a;
  }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) {
    for (const auto& [w, c] : b.terms_) a.add_term(w, -c);
    return a;
  }
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b) {
    NCPoly r;
    for (const auto& [wa, ca] : a.terms_) {
      for (const auto& [wb, cb] : b.terms_) r.add_term(wa * wb, ca * cb);
    }
    return r;
  }
  friend NCPoly operator*(const K& s, const NCPoly& a) {
    NCPoly r;
    for (const auto& [w, c] : a.terms_) r.add_term(w, s * c);
    return r;
  }
  NCPoly& operator+=(const NCPoly& o) { return *this = *this + o; }
  NCPoly& operator-=(const NCPoly& o) { return *this = *this - o; }

  NCPoly pow(unsigned long e, const K& one) const {
    NCPoly r = constant(one);
    for (unsigned long k = 0; k < e; ++k) r = r * *this;
    return r;
  }

  friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }

  /// Terms in descending deglex order, e.g. "x*y - y + 1".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      detail::append_term(out, it->second, it->first.empty() ? std::string() : it->first.str());
    }
    return out;
  }

 private:
  term_map terms_;
};

namespace detail {

template <class Field>
struct NCPolyBuilder {
  using K = typename Field::element_type;
  using value_type = NCPoly<K>;
  const Field& field;
  value_type number(std::string_view s) const { return value_type::constant(field.parse(s)); }
  value_type variable(char v) const {
    if (v != 'x' && v != 'y') throw ParseError(std::string("unknown variable '") + v + "' (expected x or y)");
    return value_type::term(Word::letter(v), field.one());
  }
  value_type pow(const value_type& b, unsigned long e) const { return b.pow(e, field.one()); }
};

}  // namespace detail

/// Parses "x^2*y + y*x - 1"; juxtaposition multiplies in order.
template <class Field>
NCPoly<typename Field::element_type> parse_ncpoly(std::string_view text, const Field& field) {
  detail::NCPolyBuilder<Field> b{field};
  return ExpressionParser<detail::NCPolyBuilder<Field>>(text, b).parse();
}

// ---------------------------------------------------------------------------
// Rewrite system

enum class TerminationOrder { Y_POSITION };

template <class K>
struct RewriteRule {
  std::string name;
  Word lhs;
  NCPoly<K> rhs;
};

template <class K>
struct RewriteSystem {
  long i = 1;  // canonical: i >= j
  long j = 1;
  std::vector<RewriteRule<K>> rules;
  TerminationOrder order = TerminationOrder::Y_POSITION;
  /// x-power bound of the normal forms for i > j; 0 when x is unbounded.
  std::uint32_t x_bound = 0;
};

namespace detail {

/// x^E = (-1)^((i+j) q) x^r with E = q (i^2 - j^2) + r, 0 <= r < i^2 - j^2.
inline std::pair<long long, bool> reduce_x_exponent(long long e, long long i, long long j) {
  const long long M = i * i - j * j;
  const long long q = floor_div(e, M);
  const long long r = e - q * M;
  const bool negate = (((i + j) % 2) != 0) && (q % 2 != 0);
  return {r, negate};
}

}  // namespace detail

/// Builds the rule set for coprime (i, j); the pair is swapped to i >= j.
template <class Field = RationalField>
RewriteSystem<typename Field::element_type> build_rewrite_system(long i, long j, const Field& field = {}) {
  using K = typename Field::element_type;
  using P = NCPoly<K>;
  using UP = UniPoly<K>;
  if (i < 1 || j < 1) throw UnsupportedParameters("build_rewrite_system: exponents must be positive");
  if (std::gcd(i, j) != 1) throw UnsupportedParameters("build_rewrite_system: gcd(i, j) != 1");
  auto [hi, lo] = canonical_pair(i, j);
  RewriteSystem<K> rs;
  rs.i = hi;
  rs.j = lo;
  const K one = field.one();
  auto xw = [](long long e) { return Word::letter('x', static_cast<std::uint32_t>(e)); };
  const Word yw = Word::letter('y');

  rs.rules.push_back({"y^2 -> 0", Word::letter('y', 2), P{}});
  if (hi == 1 && lo == 1) {
    rs.rules.push_back({"y*x -> 1 - x*y", Word::from_letters("yx"), P::constant(one) - P::term(Word::from_letters("xy"), one)});
    return rs;
  }

  // x^N rule, as a monic univariate relation for reducing P and Q.
  const long long m = hi + lo;
  const long long d = hi - lo;
  const long long N = (m - 1) * d;
  rs.x_bound = static_cast<std::uint32_t>(N);
  UP x_rhs({}, 'x');
  for (long long k = 1; k <= m - 1; ++k) {
    const K c = (k + 1) % 2 == 0 ? one : -one;
    x_rhs += UP::monomial(c, static_cast<std::size_t>((m - 1 - k) * d), 'x');
  }
  const UP x_relation = UP::monomial(one, static_cast<std::size_t>(N), 'x') - x_rhs;

  // y x = x^(-mm(i+j)) * y x^(j n) with n j - mm (i+j) = 1, expanded through
  // y x^(j n) = (-1)^n x^(i n) y + sum_{k<n} (-1)^k x^((n-1) j + k (i-j)).
  long long n = 1;
  while ((n * lo) % m != 1 % m) ++n;
  const long long mm = (n * lo - 1) / m;
  const long long shift = -mm * m;
  auto add_power = [&](UP& target, long long e, const K& c) {
    auto [r, negate] = detail::reduce_x_exponent(e + shift, hi, lo);
    target += UP::monomial(negate ? -c : c, static_cast<std::size_t>(r), 'x');
  };
  UP p_part({}, 'x');
  UP q_part({}, 'x');
  add_power(q_part, hi * n, n % 2 == 0 ? one : -one);
  for (long long k = 0; k < n; ++k) add_power(p_part, (n - 1) * lo + k * d, k % 2 == 0 ? one : -one);
  p_part = divmod(p_part, x_relation).second;
  q_part = divmod(q_part, x_relation).second;

  P yx_rhs;
  const auto& pc = p_part.coefficients();
  for (std::size_t e = 0; e < pc.size(); ++e) yx_rhs.add_term(xw(static_cast<long long>(e)), pc[e]);
  const auto& qc = q_part.coefficients();
  for (std::size_t e = 0; e < qc.size(); ++e) yx_rhs.add_term(xw(static_cast<long long>(e)) * yw, qc[e]);
  rs.rules.push_back({"y*x -> " + yx_rhs.str(), Word::from_letters("yx"), yx_rhs});

  P x_rule_rhs;
  const auto& xc = x_rhs.coefficients();
  for (std::size_t e = 0; e < xc.size(); ++e) x_rule_rhs.add_term(xw(static_cast<long long>(e)), xc[e]);
  rs.rules.push_back({xw(N).str() + " -> " + x_rule_rhs.str(), xw(N), x_rule_rhs});
  return rs;
}

// ---------------------------------------------------------------------------
// Matching and reduction

struct Match {
  std::size_t rule;
  std::size_t offset;  // letter position in the word
};

/// All occurrences of `pattern` in `w`, computed on the run encodings.
inline std::vector<std::size_t> find_occurrences(const Word& w, const Word& pattern) {
  std::vector<std::size_t> out;
  const auto& wr = w.runs();
  const auto& pr = pattern.runs();
  if (pr.empty()) return out;
  std::vector<std::size_t> start(wr.size());
  std::size_t pos = 0;
  for (std::size_t k = 0; k < wr.size(); ++k) {
    start[k] = pos;
    pos += wr[k].exp;
  }
  if (pr.size() == 1) {
    for (std::size_t k = 0; k < wr.size(); ++k) {
      if (wr[k].letter != pr[0].letter || wr[k].exp < pr[0].exp) continue;
      for (std::uint32_t off = 0; off + pr[0].exp <= wr[k].exp; ++off) out.push_back(start[k] + off);
    }
    return out;
  }
  const std::size_t last = pr.size() - 1;
  for (std::size_t k = 0; k + last < wr.size(); ++k) {
    if (wr[k].letter != pr[0].letter || wr[k].exp < pr[0].exp) continue;
    bool ok = true;
    for (std::size_t q = 1; q < last && ok; ++q) ok = wr[k + q] == pr[q];
    if (!ok) continue;
    if (wr[k + last].letter != pr[last].letter || wr[k + last].exp < pr[last].exp) continue;
    out.push_back(start[k] + wr[k].exp - pr[0].exp);
  }
  return out;
}

/// RANDOM draws uniformly among matches but always prefers a rule whose
/// right-hand side is 0; without that, words with several y's expand through
/// exponentially many intermediate terms before collapsing.
enum class Strategy { LEFTMOST, RIGHTMOST, RANDOM };

/// Thrown by reduce when the rewrite-step budget runs out.
struct ReductionBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class K>
std::vector<Match> find_matches(const Word& w, const RewriteSystem<K>& rs) {
  std::vector<Match> out;
  for (std::size_t r = 0; r < rs.rules.size(); ++r) {
    for (std::size_t off : find_occurrences(w, rs.rules[r].lhs)) out.push_back({r, off});
  }
  return out;
}

/// Normal form of p. RANDOM uses `seed` for match selection; `max_steps`
/// (0 = unlimited) bounds the number of rule applications.
template <class K>
NCPoly<K> reduce(const NCPoly<K>& p, const RewriteSystem<K>& rs, Strategy strategy = Strategy::LEFTMOST,
                 std::uint64_t seed = 0, std::size_t max_steps = 0) {
  std::size_t steps = 0;
  std::mt19937_64 rng(seed);
  // Rules only produce smaller words in the termination order, so taking the
  // largest pending word first expands every word at most once.
  std::map<Word, K, YPositionLess> pending(p.terms().begin(), p.terms().end());
  auto add = [&pending](const Word& w, const K& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = pending.try_emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) pending.erase(it);
    }
  };
  NCPoly<K> result;
  while (!pending.empty()) {
    auto it = std::prev(pending.end());
    const Word w = it->first;
    const K c = it->second;
    pending.erase(it);
    auto matches = find_matches(w, rs);
    if (matches.empty()) {
      result.add_term(w, c);
      continue;
    }
    auto cmp = [](const Match& a, const Match& b) {
      return a.offset != b.offset ? a.offset < b.offset : a.rule < b.rule;
    };
    if (max_steps != 0 && ++steps > max_steps) throw ReductionBudgetExceeded("reduce: step budget exhausted");
    Match chosen = matches.front();
    switch (strategy) {
      case Strategy::LEFTMOST:
        chosen = *std::min_element(matches.begin(), matches.end(), cmp);
        break;
      case Strategy::RIGHTMOST:
        chosen = *std::max_element(matches.begin(), matches.end(), cmp);
        break;
      case Strategy::RANDOM: {
        auto kill = std::find_if(matches.begin(), matches.end(),
                                 [&rs](const Match& m) { return rs.rules[m.rule].rhs.is_zero(); });
        if (kill != matches.end()) {
          chosen = *kill;
        } else {
          std::uniform_int_distribution<std::size_t> pick(0, matches.size() - 1);
          chosen = matches[pick(rng)];
        }
        break;
      }
    }
    const auto& rule = rs.rules[chosen.rule];
    const Word prefix = w.slice(0, chosen.offset);
    const Word suffix = w.slice(chosen.offset + rule.lhs.length(), w.length());
    for (const auto& [rw, rc] : rule.rhs.terms()) add(prefix * rw * suffix, c * rc);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Matrix model of the algebra

/// Images of words under x -> X, y -> Y over K[s,t]/I. Powers of X up to a
/// fixed bound are tabulated at construction; larger ones use mat_pow.
template <class Field>
class MatrixModel {
 public:
  using K = typename Field::element_type;
  using Q = QuotientElem<K>;

  MatrixModel(long i, long j, const Field& field = {}, std::size_t table_size = 96)
      : ring_(structure_ring(i, j, field)), witness_(witness_XY(ring_, i, j)) {
    powers_.reserve(table_size);
    powers_.push_back(Mat2<Q>::identity(ring_.one()));
    for (std::size_t k = 1; k < table_size; ++k) powers_.push_back(powers_.back() * witness_.X());
  }

  const QuotientRing<Field>& ring() const { return ring_; }
  const WitnessPair<Q>& witness() const { return witness_; }

  Mat2<Q> x_power(std::uint64_t e) const {
    if (e < powers_.size()) return powers_[e];
    return mat_pow(witness_.X(), e, ring_.one());
  }

  Mat2<Q> image(const Word& w) const {
    Mat2<Q> acc = Mat2<Q>::identity(ring_.one());
    for (const auto& r : w.runs()) {
      if (r.letter == 'x') {
        acc = acc * x_power(r.exp);
      } else if (r.exp >= 2) {
        return Mat2<Q>::zero_matrix(ring_.zero());
      } else {
        acc = acc * witness_.Y();
      }
    }
    return acc;
  }

  Mat2<Q> image(const NCPoly<K>& p) const {
    Mat2<Q> acc = Mat2<Q>::zero_matrix(ring_.zero());
    for (const auto& [w, c] : p.terms()) acc += ring_.element(BiPoly<K>::constant(c)) * image(w);
    return acc;
  }

  bool equal_in_algebra(const NCPoly<K>& a, const NCPoly<K>& b) const { return image(a) == image(b); }

 private:
  QuotientRing<Field> ring_;
  WitnessPair<Q> witness_;
  std::vector<Mat2<Q>> powers_;
};

template <class Field>
Mat2<QuotientElem<typename Field::element_type>> word_image(const NCPoly<typename Field::element_type>& p,
                                                            const MatrixModel<Field>& model) {
  return model.image(p);
}

template <class Field = RationalField>
Mat2<QuotientElem<typename Field::element_type>> word_image(const NCPoly<typename Field::element_type>& p, long i,
                                                            long j, const Field& field = {}) {
  return MatrixModel<Field>(i, j, field).image(p);
}

// ---------------------------------------------------------------------------
// Audits

/// True iff every term of p is x^a or x^a y with a below the system's bound
/// (any a when the bound is 0).
template <class K>
bool in_normal_support(const NCPoly<K>& p, const RewriteSystem<K>& rs) {
  for (const auto& [w, c] : p.terms()) {
    const auto& runs = w.runs();
    std::size_t k = 0;
    std::uint32_t a = 0;
    if (k < runs.size() && runs[k].letter == 'x') a = runs[k++].exp;
    if (k < runs.size() && runs[k].letter == 'y' && runs[k].exp == 1) ++k;
    if (k != runs.size()) return false;
    if (rs.x_bound != 0 && a >= rs.x_bound) return false;
  }
  return true;
}

struct ValidationReport {
  long i = 0;
  long j = 0;
  std::size_t words = 0;
  std::size_t soundness_failures = 0;
  std::size_t divergences = 0;  // normal forms differing between strategies
  std::size_t budget_exhausted = 0;  // words whose rightmost/random runs were cut off
  std::size_t support_violations = 0;
  std::size_t rules_not_decreasing = 0;
  std::vector<std::string> examples;  // a few offending words
  bool sound() const { return soundness_failures == 0 && support_violations == 0 && rules_not_decreasing == 0; }
};

/// Every word over {x, y} of length <= max_len, shortest first.
inline std::vector<Word> all_words(std::size_t max_len) {
  std::vector<Word> out{Word()};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t k = begin; k < end; ++k) {
      out.push_back(out[k] * Word::letter('x'));
      out.push_back(out[k] * Word::letter('y'));
    }
    begin = end;
  }
  return out;
}

inline std::vector<Word> random_words(std::size_t count, std::size_t max_len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::bernoulli_distribution coin(0.5);
  std::vector<Word> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Word w;
    const std::size_t n = len(rng);
    for (std::size_t q = 0; q < n; ++q) w.append(coin(rng) ? 'y' : 'x', 1);
    out.push_back(std::move(w));
  }
  return out;
}

/// Soundness (image of a word equals the image of its normal form), normal
/// form support, strict decrease of each rule, and agreement of normal forms
/// across leftmost, rightmost and random rule application. The alternative
/// strategies run under `step_budget`; cut-off words are counted separately.
template <class Field>
ValidationReport validate_system(const RewriteSystem<typename Field::element_type>& rs, const MatrixModel<Field>& model,
                                 const std::vector<Word>& corpus, std::uint64_t seed = 1,
                                 std::size_t step_budget = 20000) {
  using K = typename Field::element_type;
  const K one = model.ring().field().one();
  ValidationReport rep;
  rep.i = rs.i;
  rep.j = rs.j;
  for (const auto& rule : rs.rules) {
    for (const auto& [w, c] : rule.rhs.terms()) {
      if (!y_position_less(w, rule.lhs)) ++rep.rules_not_decreasing;
    }
  }
  auto note = [&](const Word& w) {
    if (rep.examples.size() < 5) rep.examples.push_back(w.str());
  };
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const Word& w = corpus[k];
    const auto p = NCPoly<K>::term(w, one);
    ++rep.words;
    const auto left = reduce(p, rs, Strategy::LEFTMOST);
    if (!model.equal_in_algebra(p, left)) {
      ++rep.soundness_failures;
      note(w);
    }
    if (!in_normal_support(left, rs)) {
      ++rep.support_violations;
      note(w);
    }
    try {
      const auto right = reduce(p, rs, Strategy::RIGHTMOST, 0, step_budget);
      const auto random = reduce(p, rs, Strategy::RANDOM, seed + k, step_budget);
      if (!(left == right) || !(left == random)) ++rep.divergences;
    } catch (const ReductionBudgetExceeded&) {
      ++rep.budget_exhausted;
    }
  }
  return rep;
}

struct IdentityCheck {
  std::string name;
  bool holds = false;
};

struct IdentityReport {
  long i = 0;
  long j = 0;
  long n_max = 0;
  std::vector<IdentityCheck> checks;
  bool all_hold() const {
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.holds; });
  }
  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const IdentityCheck& c) { return !c.holds; }));
  }
};

/// Verifies the algebra's structural identities through the matrix model.
/// Exponents are taken with i >= j.
template <class Field>
IdentityReport check_identities(const MatrixModel<Field>& model, long n_max) {
  using K = typename Field::element_type;
  using P = NCPoly<K>;
  const auto& field = model.ring().field();
  const K one = field.one();
  const auto params = *model.ring().params();
  const long i = params.first;
  const long j = params.second;
  IdentityReport rep;
  rep.i = i;
  rep.j = j;
  rep.n_max = n_max;

  auto X = [&](long e) { return P::term(Word::letter('x', static_cast<std::uint32_t>(e)), one); };
  const P y = P::term(Word::letter('y'), one);
  const P x1 = X(1);
  const P unit = P::constant(one);
  const P zero;
  auto sgn = [&](long e) { return e % 2 == 0 ? one : -one; };
  auto check = [&](std::string name, const P& lhs, const P& rhs) {
    rep.checks.push_back({std::move(name), model.equal_in_algebra(lhs, rhs)});
  };
  check("x^i y + y x^j = 1", X(i) * y + y * X(j), unit);
  check("y^2 = 0", y * y, zero);
  check("y x^i y = y", y * X(i) * y, y);
  check("y x^j y = y", y * X(j) * y, y);
  check("y x^(i+j) y = 0", y * X(i + j) * y, zero);
  check("y x^(2i) y = -y x^(2j) y", y * X(2 * i) * y, -(y * X(2 * j) * y));
  check("x^j y + y x^i = 1", X(j) * y + y * X(i), unit);

  for (long n = 1; n <= n_max; ++n) {
    P sum_a, sum_b;
    for (long k = 0; k < n; ++k) {
      const long e = (n - 1) * j + k * (i - j);
      sum_a += sgn(n - 1 - k) * X(e);
      sum_b += sgn(k) * X(e);
    }
    check("y x^(i n) expansion, n=" + std::to_string(n), y * X(i * n), sgn(n) * (X(j * n) * y) + sum_a);
    check("y x^(j n) expansion, n=" + std::to_string(n), y * X(j * n), sgn(n) * (X(i * n) * y) + sum_b);
  }

  if (i > j) {
    check("left inverse of x", (X(i - j - 1) - X(i - j) * y * X(i - 1) + y * X(j - 1)) * x1, unit);
    check("right inverse of x", x1 * (X(j - 1) * y + X(i - j - 1) - X(i - 1) * y * X(i - j)), unit);
    const long m = i + j;
    P alt;
    for (long k = 1; k <= m - 1; ++k) alt += sgn(k + 1) * X((m - 1 - k) * (i - j));
    check("alternating power relation", X((m - 1) * (i - j)), alt);
    check("x^(i^2 - j^2) = (-1)^(i+j)", X(i * i - j * j), sgn(i + j) * unit);
  }

  const P central1 = X(i + j);
  const P central2 = X(i) - X(j);
  check("x^(i+j) commutes with y", central1 * y, y * central1);
  check("x^i - x^j commutes with y", central2 * y, y * central2);
  check("x^(i+j) commutes with x", central1 * x1, x1 * central1);
  check("x^i - x^j commutes with x", central2 * x1, x1 * central2);

  // x^(i+j) -> s I and x^j - x^i -> t I.
  const auto s_id = Mat2<QuotientElem<K>>::scalar(model.ring().s(), model.ring().zero());
  const auto t_id = Mat2<QuotientElem<K>>::scalar(model.ring().t(), model.ring().zero());
  rep.checks.push_back({"x^(i+j) maps to s*I", model.image(central1) == s_id});
  rep.checks.push_back({"x^j - x^i maps to t*I", model.image(X(j) - X(i)) == t_id});

  // Matrix units e11 = y x^j, e12 = y, e21 = x^i y x^j, e22 = x^i y.
  const std::array<std::array<P, 2>, 2> e{{{y * X(j), y}, {X(i) * y * X(j), X(i) * y}}};
  check("e11 + e22 = 1", e[0][0] + e[1][1], unit);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        for (int d = 0; d < 2; ++d) {
          const std::string name = "e" + std::to_string(a + 1) + std::to_string(b + 1) + " e" + std::to_string(c + 1) +
                                   std::to_string(d + 1);
          check(name, e[a][b] * e[c][d], b == c ? e[a][d] : zero);
        }
      }
    }
  }
  return rep;
}

struct FaithfulnessReport {
  std::size_t candidates = 0;
  std::size_t colliding_pairs = 0;
  std::size_t rank = 0;                 // linear rank of the images over the base field
  std::optional<std::size_t> model_dim;  // 4 * dim(K[s,t]/I) when finite
  bool injective() const { return colliding_pairs == 0; }
};

/// For i > j: images of x^a and x^a y (a < N) are pairwise distinct; also
/// reports their linear rank against 4 * dim of the quotient.
template <class Field>
FaithfulnessReport faithfulness_check(const RewriteSystem<typename Field::element_type>& rs, const MatrixModel<Field>& model) {
  using K = typename Field::element_type;
  const auto& field = model.ring().field();
  FaithfulnessReport rep;
  if (rs.x_bound == 0) return rep;
  std::vector<Mat2<QuotientElem<K>>> images;
  for (std::uint32_t a = 0; a < rs.x_bound; ++a) {
    images.push_back(model.image(Word::letter('x', a)));
    images.push_back(model.image(Word::letter('x', a) * Word::letter('y')));
  }
  rep.candidates = images.size();
  for (std::size_t a = 0; a < images.size(); ++a) {
    for (std::size_t b = a + 1; b < images.size(); ++b) rep.colliding_pairs += images[a] == images[b] ? 1 : 0;
  }
  auto qb = quotient_basis(*model.ring().basis());
  if (!qb) return rep;
  rep.model_dim = 4 * qb->size();
  // Coordinates: four entries times the standard monomials.
  std::vector<std::vector<K>> rows;
  for (const auto& img : images) {
    std::vector<K> row;
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        const auto& rep_poly = img.at(r, c).representative();
        for (const Monomial& m : *qb) {
          auto it = rep_poly.terms().find(m);
          row.push_back(it == rep_poly.terms().end() ? field.zero() : it->second);
        }
      }
    }
    rows.push_back(std::move(row));
  }
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const K inv = field.one() / rows[rank][col];
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col].is_zero()) continue;
      const K f = rows[r][col] * inv;
      for (std::size_t k = col; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  rep.rank = rank;
  return rep;
}

}  // namespace matring

#endif  // MATRING_FREE_ALGEBRA_HPP
