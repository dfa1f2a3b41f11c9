#include "lpg/leavitt.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace lpg::leavitt {

namespace {

void check_letters(int n, const RawWord& w) {
  for (int l : w)
    if (l == 0 || l > n || l < -n) throw std::invalid_argument("letter out of range for L_" + std::to_string(n));
}

void accumulate(RawElement& e, RawWord w, const GaussRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = e.try_emplace(std::move(w), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) e.erase(it);
  }
}

bool redex_at(const RawWord& w, std::size_t i, int n) {
  return (w[i] < 0 && w[i + 1] > 0) || (w[i] == n && w[i + 1] == -n);
}

std::vector<std::size_t> redexes(const RawWord& w, int n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (redex_at(w, i, n)) out.push_back(i);
  return out;
}

// One rewrite of the pair at position i.
void rewrite(const RawWord& w, std::size_t i, const GaussRational& c, int n, RawElement& out) {
  RawWord head(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
  RawWord tail(w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
  auto joined = [&](std::initializer_list<int> mid) {
    RawWord r = head;
    r.insert(r.end(), mid);
    r.insert(r.end(), tail.begin(), tail.end());
    return r;
  };
  if (w[i] < 0) {
    if (-w[i] == w[i + 1]) accumulate(out, joined({}), c);
    return;
  }
  accumulate(out, joined({}), c);
  for (int j = 1; j < n; ++j) accumulate(out, joined({j, -j}), -c);
}

RawElement reduce(int n, const RawElement& e, std::mt19937_64* rng) {
  RawElement work, done;
  for (const auto& [w, c] : e) {
    check_letters(n, w);
    accumulate(work, w, c);
  }
  while (!work.empty()) {
    auto it = work.begin();
    if (rng) std::advance(it, std::uniform_int_distribution<std::size_t>(0, work.size() - 1)(*rng));
    RawWord w = it->first;
    GaussRational c = it->second;
    work.erase(it);
    auto pos = redexes(w, n);
    if (pos.empty()) {
      accumulate(done, std::move(w), c);
      continue;
    }
    std::size_t i = pos.front();
    if (rng) i = pos[std::uniform_int_distribution<std::size_t>(0, pos.size() - 1)(*rng)];
    rewrite(w, i, c, n, work);
  }
  return done;
}

LeavittWord split(const RawWord& w) {
  LeavittWord out;
  std::size_t i = 0;
  for (; i < w.size() && w[i] > 0; ++i) out.mu.push_back(w[i]);
  for (std::size_t j = w.size(); j > i; --j) {
    if (w[j - 1] > 0) throw std::logic_error("word is not of the form s_mu t_nu");
    out.nu.push_back(-w[j - 1]);
  }
  return out;
}

std::string coefficient_prefix(const GaussRational& c, bool first, bool bare) {
  std::string s;
  if (c.is_real()) {
    Rational r = c.re();
    if (r.sign() < 0) {
      s = first ? "-" : " - ";
      r = -r;
    } else if (!first) {
      s = " + ";
    }
    if (bare || !(r == Rational(1))) s += r.to_string() + (bare ? "" : " ");
    return s;
  }
  s = first ? "" : " + ";
  return s + "(" + c.to_string() + ")" + (bare ? "" : " ");
}

}  // namespace

bool LeavittWord::is_normal(int n) const {
  return !(!mu.empty() && !nu.empty() && mu.back() == n && nu.back() == n);
}

RawWord LeavittWord::letters() const {
  RawWord w(mu.begin(), mu.end());
  for (auto it = nu.rbegin(); it != nu.rend(); ++it) w.push_back(-*it);
  return w;
}

std::string LeavittWord::to_string() const {
  if (mu.empty() && nu.empty()) return "1";
  std::string s;
  for (int l : letters()) {
    if (!s.empty()) s += ' ';
    s += (l > 0 ? "s" : "t") + std::to_string(std::abs(l));
  }
  return s;
}

LeavittElement::LeavittElement(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("L_n requires n >= 2");
}

LeavittElement LeavittElement::one(int n) { return scalar(n, GaussRational(1)); }

LeavittElement LeavittElement::scalar(int n, const GaussRational& c) {
  LeavittElement e(n);
  if (!c.is_zero()) e.terms_[LeavittWord{}] = c;
  return e;
}

LeavittElement LeavittElement::s(int n, int j) { return monomial(n, LeavittWord{{j}, {}}); }
LeavittElement LeavittElement::t(int n, int j) { return monomial(n, LeavittWord{{}, {j}}); }

LeavittElement LeavittElement::monomial(int n, const LeavittWord& w, const GaussRational& c) {
  return normal_form(n, RawElement{{w.letters(), c}});
}

std::size_t LeavittElement::degree() const {
  std::size_t d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, w.degree());
  return d;
}

RawElement LeavittElement::raw() const {
  RawElement out;
  for (const auto& [w, c] : terms_) out.emplace(w.letters(), c);
  return out;
}

std::string LeavittElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    const bool bare = w.mu.empty() && w.nu.empty();
    s += coefficient_prefix(c, first, bare);
    if (!bare) s += w.to_string();
    first = false;
  }
  return s;
}

void LeavittElement::check_same(const LeavittElement& o) const {
  if (n_ != o.n_) throw std::invalid_argument("Leavitt elements over different L_n");
}

LeavittElement& LeavittElement::operator+=(const LeavittElement& o) {
  check_same(o);
  for (const auto& [w, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

LeavittElement& LeavittElement::operator-=(const LeavittElement& o) { return *this += -o; }

LeavittElement LeavittElement::operator-() const {
  LeavittElement r = *this;
  for (auto& [w, c] : r.terms_) c = -c;
  return r;
}

LeavittElement operator*(const GaussRational& c, const LeavittElement& e) {
  if (c.is_zero()) return LeavittElement(e.n_);
  LeavittElement r = e;
  for (auto& [w, v] : r.terms_) v *= c;
  return r;
}

LeavittElement operator*(const LeavittElement& a, const LeavittElement& b) {
  a.check_same(b);
  RawElement prod;
  for (const auto& [wa, ca] : a.terms_) {
    const RawWord ra = wa.letters();
    for (const auto& [wb, cb] : b.terms_) {
      RawWord w = ra;
      const RawWord rb = wb.letters();
      w.insert(w.end(), rb.begin(), rb.end());
      accumulate(prod, std::move(w), ca * cb);
    }
  }
  return normal_form(a.n_, prod);
}

LeavittElement normal_form(int n, const RawElement& e) { return from_reduced(n, reduce(n, e, nullptr)); }

RawElement reduce_randomized(int n, const RawElement& e, std::mt19937_64& rng) { return reduce(n, e, &rng); }

LeavittElement from_reduced(int n, const RawElement& e) {
  LeavittElement out(n);
  for (const auto& [w, c] : e) {
    if (!redexes(w, n).empty()) throw std::invalid_argument("word is not reduced");
    if (!c.is_zero()) out.terms_.emplace(split(w), c);
  }
  return out;
}

LeavittElement add(const LeavittElement& a, const LeavittElement& b) { return a + b; }
LeavittElement multiply(const LeavittElement& a, const LeavittElement& b) { return a * b; }

LeavittElement parse_element(int n, std::string_view text) {
  RawElement raw;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("Leavitt element \"" + std::string(text) + "\": " + what + " at offset " + std::to_string(i));
  };
  skip();
  if (i == text.size()) fail("empty expression");
  bool first = true;
  while (true) {
    skip();
    if (i == text.size()) break;
    GaussRational sign(1);
    if (text[i] == '+' || text[i] == '-') {
      if (text[i] == '-') sign = GaussRational(-1);
      ++i;
      skip();
    } else if (!first) {
      fail("expected + or -");
    }
    first = false;
    GaussRational coeff(1);
    bool have_coeff = false;
    if (i < text.size() && text[i] == '(') {
      const auto close = text.find(')', i);
      if (close == std::string_view::npos) fail("unclosed parenthesis");
      coeff = GaussRational::parse(text.substr(i + 1, close - i - 1));
      i = close + 1;
      have_coeff = true;
    } else if (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == 'i')) {
      std::size_t j = i;
      while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/')) ++j;
      if (j < text.size() && text[j] == 'i') ++j;
      coeff = GaussRational::parse(text.substr(i, j - i));
      i = j;
      have_coeff = true;
    }
    RawWord w;
    while (true) {
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
      }
      if (i >= text.size() || (text[i] != 's' && text[i] != 't')) break;
      const bool is_s = text[i] == 's';
      std::size_t j = ++i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) fail("letter without index");
      const int idx = std::stoi(std::string(text.substr(i, j - i)));
      if (idx < 1 || idx > n) fail("index out of range");
      w.push_back(is_s ? idx : -idx);
      i = j;
    }
    if (!have_coeff && w.empty()) fail("empty term");
    accumulate(raw, std::move(w), sign * coeff);
  }
  return normal_form(n, raw);
}

LeavittMatrix::LeavittMatrix(int n, std::size_t size) : n_(n), size_(size), entries_(size * size, LeavittElement(n)) {}

LeavittMatrix LeavittMatrix::identity(int n, std::size_t size) {
  LeavittMatrix m(n, size);
  for (std::size_t i = 0; i < size; ++i) m(i, i) = LeavittElement::one(n);
  return m;
}

LeavittMatrix LeavittMatrix::unit(std::size_t size, std::size_t r, std::size_t c, const LeavittElement& x) {
  LeavittMatrix m(x.n(), size);
  m(r, c) = x;
  return m;
}

bool LeavittMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const LeavittElement& e) { return e.is_zero(); });
}

std::string LeavittMatrix::to_string() const {
  std::string s = "[";
  for (std::size_t r = 0; r < size_; ++r) {
    s += r ? "; " : "";
    for (std::size_t c = 0; c < size_; ++c) s += (c ? ", " : "") + (*this)(r, c).to_string();
  }
  return s + "]";
}

void LeavittMatrix::check_same(const LeavittMatrix& o) const {
  if (n_ != o.n_ || size_ != o.size_) throw std::invalid_argument("Leavitt matrices of different shape or L_n");
}

LeavittMatrix& LeavittMatrix::operator+=(const LeavittMatrix& o) {
  check_same(o);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

LeavittMatrix operator-(const LeavittMatrix& a, const LeavittMatrix& b) {
  a.check_same(b);
  LeavittMatrix r = a;
  for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] -= b.entries_[i];
  return r;
}

LeavittMatrix operator*(const LeavittMatrix& a, const LeavittMatrix& b) {
  a.check_same(b);
  LeavittMatrix r(a.n_, a.size_);
  for (std::size_t i = 0; i < a.size_; ++i)
    for (std::size_t k = 0; k < a.size_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < a.size_; ++j)
        if (!b(k, j).is_zero()) r(i, j) += a(i, k) * b(k, j);
    }
  return r;
}

LeavittMatrix power(const LeavittMatrix& m, unsigned k) {
  LeavittMatrix r = LeavittMatrix::identity(m.n(), m.size());
  for (unsigned i = 0; i < k; ++i) r = r * m;
  return r;
}

bool LeavittReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.holds; });
}

std::vector<const IdentityCheck*> LeavittReport::failures() const {
  std::vector<const IdentityCheck*> out;
  for (const auto& c : checks)
    if (!c.holds) out.push_back(&c);
  return out;
}

void LeavittReport::expect_equal(std::string name, const LeavittMatrix& lhs, const LeavittMatrix& rhs) {
  const LeavittMatrix diff = lhs - rhs;
  const bool ok = diff.is_zero();
  checks.push_back({std::move(name), ok, ok ? std::string() : diff.to_string()});
}

void LeavittReport::expect(std::string name, bool holds, std::string detail) {
  checks.push_back({std::move(name), holds, holds ? std::string() : std::move(detail)});
}

void LeavittReport::append(const LeavittReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

LeavittReport check_cuntz_relations(const std::vector<LeavittMatrix>& S, const std::vector<LeavittMatrix>& T) {
  if (S.size() != T.size() || S.empty()) throw std::invalid_argument("S and T must be nonempty of equal length");
  const int n = S.front().n();
  const std::size_t d = S.front().size();
  for (const auto* list : {&S, &T})
    for (const auto& m : *list)
      if (m.n() != n || m.size() != d) throw std::invalid_argument("generator matrices differ in shape");
  LeavittReport rep;
  const LeavittMatrix I = LeavittMatrix::identity(n, d), Z(n, d);
  for (std::size_t j = 0; j < S.size(); ++j)
    for (std::size_t k = 0; k < S.size(); ++k)
      rep.expect_equal("T" + std::to_string(j + 1) + " S" + std::to_string(k + 1) + (j == k ? " = I" : " = 0"), T[j] * S[k],
                       j == k ? I : Z);
  LeavittMatrix sum(n, d);
  for (std::size_t j = 0; j < S.size(); ++j) sum += S[j] * T[j];
  rep.expect_equal("sum_j S_j T_j = I", sum, I);
  return rep;
}

AbsorptionGenerators absorption_generators(int k) {
  if (k < 2) throw std::invalid_argument("absorption requires k >= 2");
  const int n = 2 * k;
  AbsorptionGenerators g;
  g.k = k;
  for (int j = 1; j <= k; ++j) {
    const auto s1 = LeavittElement::s(n, 2 * j - 1), s2 = LeavittElement::s(n, 2 * j);
    const auto t1 = LeavittElement::t(n, 2 * j - 1), t2 = LeavittElement::t(n, 2 * j);
    LeavittMatrix xo(n, 2), xe(n, 2), yo(n, 2), ye(n, 2);
    xo(0, 0) = s1, xo(0, 1) = s2;
    xe(1, 0) = s1, xe(1, 1) = s2;
    yo(0, 0) = t1, yo(1, 0) = t2;
    ye(0, 1) = t1, ye(1, 1) = t2;
    g.x.push_back(xo), g.x.push_back(xe);
    g.y.push_back(yo), g.y.push_back(ye);
  }
  return g;
}

LeavittReport verify_matrix_absorption(const AbsorptionGenerators& g) {
  const int n = 2 * g.k;
  if (g.x.size() != static_cast<std::size_t>(n) || g.y.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("expected 2k generators");
  }
  LeavittReport rep = check_cuntz_relations(g.x, g.y);
  const auto one = LeavittElement::one(n);
  // Odd/even generators are x[2j-2], x[2j-1] in 0-based storage.
  LeavittMatrix e11(n, 2), e21(n, 2), e12(n, 2), e22(n, 2);
  for (int j = 0; j < g.k; ++j) {
    const auto& xo = g.x[static_cast<std::size_t>(2 * j)];
    const auto& xe = g.x[static_cast<std::size_t>(2 * j + 1)];
    const auto& yo = g.y[static_cast<std::size_t>(2 * j)];
    const auto& ye = g.y[static_cast<std::size_t>(2 * j + 1)];
    e11 += xo * yo;
    e21 += xe * yo;
    e12 += xo * ye;
    e22 += xe * ye;
  }
  rep.expect_equal("e11 (x) 1 = sum_j x_{2j-1} y_{2j-1}", e11, LeavittMatrix::unit(2, 0, 0, one));
  rep.expect_equal("e21 (x) 1 = sum_j x_{2j} y_{2j-1}", e21, LeavittMatrix::unit(2, 1, 0, one));
  rep.expect_equal("e12 (x) 1 = sum_j x_{2j-1} y_{2j}", e12, LeavittMatrix::unit(2, 0, 1, one));
  rep.expect_equal("e22 (x) 1 = sum_j x_{2j} y_{2j}", e22, LeavittMatrix::unit(2, 1, 1, one));
  for (int j = 1; j <= g.k; ++j) {
    const auto& xo = g.x[static_cast<std::size_t>(2 * j - 2)];
    const auto& yo = g.y[static_cast<std::size_t>(2 * j - 2)];
    const std::string a = std::to_string(2 * j - 1), b = std::to_string(2 * j);
    rep.expect_equal("e11 (x) s" + a + " = x" + a + " (e11 (x) 1)", xo * e11,
                     LeavittMatrix::unit(2, 0, 0, LeavittElement::s(n, 2 * j - 1)));
    rep.expect_equal("e11 (x) s" + b + " = x" + a + " (e21 (x) 1)", xo * e21,
                     LeavittMatrix::unit(2, 0, 0, LeavittElement::s(n, 2 * j)));
    rep.expect_equal("e11 (x) t" + a + " = (e11 (x) 1) y" + a, e11 * yo,
                     LeavittMatrix::unit(2, 0, 0, LeavittElement::t(n, 2 * j - 1)));
    rep.expect_equal("e11 (x) t" + b + " = (e12 (x) 1) y" + a, e12 * yo,
                     LeavittMatrix::unit(2, 0, 0, LeavittElement::t(n, 2 * j)));
  }
  return rep;
}

LeavittReport verify_matrix_absorption(int k) { return verify_matrix_absorption(absorption_generators(k)); }

CovariantGenerators covariant_generators(int n) {
  if (n < 2) throw std::invalid_argument("covariant presentation requires n >= 2");
  CovariantGenerators g;
  g.n = n;
  const auto one = LeavittElement::one(n);
  g.a = LeavittMatrix(n, 2);
  g.a(0, 1) = one, g.a(1, 0) = one;
  g.b = LeavittMatrix(n, 2);
  g.b(0, 1) = LeavittElement::t(n, n);
  g.b(1, 0) = LeavittElement::s(n, 1);
  for (int j = 1; j < n; ++j) g.b(1, 1) += LeavittElement::s(n, j + 1) * LeavittElement::t(n, j);
  g.f = LeavittMatrix(n, 2);
  g.f(0, 0) = one;
  return g;
}

std::vector<GeneratorImage> psi_of_phi(const CovariantGenerators& g) {
  const int n = g.n;
  const auto one = LeavittElement::one(n);
  const auto N = static_cast<unsigned>(n);
  std::vector<GeneratorImage> out;
  for (unsigned j = 1; j <= N; ++j) {
    const auto js = std::to_string(j);
    // b^{-j} = b^{n+1-j}.
    out.push_back({"e11 (x) s" + js + " -> a b^" + js + " f", LeavittMatrix::unit(2, 0, 0, LeavittElement::s(n, static_cast<int>(j))),
                   g.a * power(g.b, j) * g.f});
    out.push_back({"e11 (x) t" + js + " -> f b^-" + js + " a", LeavittMatrix::unit(2, 0, 0, LeavittElement::t(n, static_cast<int>(j))),
                   g.f * power(g.b, N + 1 - j) * g.a});
  }
  out.push_back({"e21 (x) 1 -> a f", LeavittMatrix::unit(2, 1, 0, one), g.a * g.f});
  out.push_back({"e12 (x) 1 -> f a", LeavittMatrix::unit(2, 0, 1, one), g.f * g.a});
  out.push_back({"e11 (x) 1 -> f", LeavittMatrix::unit(2, 0, 0, one), g.f});
  out.push_back({"e22 (x) 1 -> a f a", LeavittMatrix::unit(2, 1, 1, one), g.a * g.f * g.a});
  return out;
}

LeavittReport verify_covariant_presentation(const CovariantGenerators& g) {
  const int n = g.n;
  const auto N = static_cast<unsigned>(n);
  const LeavittMatrix I = LeavittMatrix::identity(n, 2);
  LeavittReport rep;
  rep.expect_equal("a^2 = I", g.a * g.a, I);
  std::vector<LeavittMatrix> bp{I};
  for (unsigned k = 1; k <= N + 1; ++k) bp.push_back(bp.back() * g.b);
  rep.expect_equal("b^" + std::to_string(N + 1) + " = I", bp[N + 1], I);
  rep.expect_equal("f^2 = f", g.f * g.f, g.f);
  rep.expect_equal("f + a f a = I", g.f + g.a * g.f * g.a, I);
  LeavittMatrix sum(n, 2);
  for (unsigned k = 0; k <= N; ++k) sum += bp[k] * g.f * bp[(N + 1 - k) % (N + 1)];
  rep.expect_equal("sum_{k=0}^{n} b^k f b^-k = I", sum, I);
  for (unsigned k = 1; k <= N; ++k) {
    const bool differs = !(bp[k] == I);
    rep.expect("b^" + std::to_string(k) + " != I", differs, "b^" + std::to_string(k) + " equals I");
  }
  for (const auto& gi : psi_of_phi(g)) rep.expect_equal("psi(phi(" + gi.name + ")) = generator", gi.image, gi.generator);
  return rep;
}

LeavittReport verify_covariant_presentation(int n) { return verify_covariant_presentation(covariant_generators(n)); }

namespace {
void set_entry(LeavittMatrix& m, std::size_t r, std::size_t c, const LeavittElement& v) {
  if (r >= m.size() || c >= m.size()) throw std::invalid_argument("mutation entry out of range");
  if (v.n() != m.n()) throw std::invalid_argument("mutation value over the wrong L_n");
  m(r, c) = v;
}
}  // namespace

void mutate(CovariantGenerators& g, const std::string& name, std::size_t r, std::size_t c, const LeavittElement& value) {
  if (name == "a") return set_entry(g.a, r, c, value);
  if (name == "b") return set_entry(g.b, r, c, value);
  if (name == "f") return set_entry(g.f, r, c, value);
  throw std::invalid_argument("unknown covariant generator: " + name);
}

void mutate(AbsorptionGenerators& g, const std::string& name, std::size_t r, std::size_t c, const LeavittElement& value) {
  if (name.size() >= 2 && (name[0] == 'x' || name[0] == 'y')) {
    std::size_t idx = 0;
    try {
      idx = std::stoul(name.substr(1));
    } catch (const std::exception&) {
      idx = 0;
    }
    auto& list = name[0] == 'x' ? g.x : g.y;
    if (idx >= 1 && idx <= list.size()) return set_entry(list[idx - 1], r, c, value);
  }
  throw std::invalid_argument("unknown absorption generator: " + name);
}

TruncatedModel::TruncatedModel(int n, std::size_t depth) : n_(n), depth_(depth) {
  if (n < 2) throw std::invalid_argument("truncated model requires n >= 2");
  if (depth < 1) throw std::invalid_argument("truncated model requires depth >= 1");
  std::vector<std::vector<int>> layer{{}};
  for (std::size_t len = 0; len <= depth; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : layer) {
      index_[w] = words_.size();
      words_.push_back(w);
      for (int j = 1; j <= n; ++j) {
        auto v = w;
        v.push_back(j);
        next.push_back(std::move(v));
      }
    }
    layer = std::move(next);
  }
}

CMatrix TruncatedModel::s(int j) const { return represent(LeavittElement::s(n_, j)); }
CMatrix TruncatedModel::t(int j) const { return represent(LeavittElement::t(n_, j)); }

std::optional<std::vector<int>> TruncatedModel::apply_raw(const RawWord& letters, std::vector<int> w) const {
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    if (*it < 0) {
      if (w.empty() || w.front() != -*it) return std::nullopt;
      w.erase(w.begin());
    } else {
      if (w.size() >= depth_) return std::nullopt;
      w.insert(w.begin(), *it);
    }
  }
  return w;
}

std::map<std::vector<int>, GaussRational> TruncatedModel::apply(const LeavittElement& e, const std::vector<int>& w) const {
  if (e.n() != n_) throw std::invalid_argument("element over the wrong L_n");
  std::map<std::vector<int>, GaussRational> out;
  for (const auto& [word, c] : e.terms()) {
    auto v = apply_raw(word.letters(), w);
    if (!v) continue;
    auto [itv, inserted] = out.try_emplace(std::move(*v), c);
    if (!inserted) {
      itv->second += c;
      if (itv->second.is_zero()) out.erase(itv);
    }
  }
  return out;
}

CMatrix TruncatedModel::represent(const LeavittElement& e) const {
  CMatrix m(words_.size(), words_.size());
  for (std::size_t col = 0; col < words_.size(); ++col)
    for (const auto& [v, c] : apply(e, words_[col])) m(index_.at(v), col) = c;
  return m;
}

TruncatedReport truncated_report(const TruncatedModel& m, const PExponent& p) {
  TruncatedReport rep;
  const int n = m.n();
  for (std::size_t len = 0; len <= m.depth(); ++len) {
    bool ortho = true, complete = true;
    for (const auto& w : m.words()) {
      if (w.size() != len) continue;
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
          auto v = m.apply_raw({-j, k}, w);
          if (j == k ? !(v && *v == w) : v.has_value()) ortho = false;
        }
      // Σ s_j t_j e_w: at most one j survives, and it must return w.
      std::size_t hits = 0;
      for (int j = 1; j <= n; ++j) {
        auto v = m.apply_raw({j, -j}, w);
        if (v) hits += (*v == w) ? 1 : 2;
      }
      if (hits != 1) complete = false;
    }
    if (ortho) rep.orthogonality_lengths.push_back(len);
    if (complete) rep.completeness_lengths.push_back(len);
  }
  rep.spatial = true;
  for (int j = 1; j <= n; ++j)
    for (const CMatrix& gm : {m.s(j), m.t(j)}) {
      const CMatrix* g = &gm;
      for (std::size_t c = 0; c < g->cols(); ++c) {
        std::size_t nz = 0;
        for (std::size_t r = 0; r < g->rows(); ++r) {
          const auto& v = (*g)(r, c);
          if (v.is_zero()) continue;
          ++nz;
          if (!(v == GaussRational(1))) rep.spatial = false;
        }
        if (nz > 1) rep.spatial = false;
      }
      rep.max_generator_norm = std::max(rep.max_generator_norm, p_operator_norm(*g, p).upper);
    }
  return rep;
}

std::vector<LeavittWord> normal_monomials(int n, std::size_t d) {
  std::vector<std::vector<int>> words{{}};
  for (std::size_t start = 0; start < words.size(); ++start) {
    if (words[start].size() >= d) continue;
    for (int j = 1; j <= n; ++j) {
      auto w = words[start];
      w.push_back(j);
      words.push_back(std::move(w));
    }
  }
  std::vector<LeavittWord> out;
  for (const auto& mu : words)
    for (const auto& nu : words) {
      if (mu.size() + nu.size() > d) continue;
      LeavittWord w{mu, nu};
      if (w.is_normal(n)) out.push_back(std::move(w));
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lpg::leavitt
