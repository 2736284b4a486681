#include "ksl/forms.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <utility>

namespace ksl::forms {

namespace {

torus::Mode zero_mode(int n) { return torus::Mode(static_cast<std::size_t>(n), 0); }

// Bit-exact serialization of an algebra element, used as a merge key so that
// only bitwise-identical tails are combined.
std::string elem_key(const torus::AlgebraElement& a) {
  std::string key;
  char buf[48];
  for (const auto& [y, c] : a.coeffs) {
    for (int v : y) {
      key += std::to_string(v);
      key += ',';
    }
    std::snprintf(buf, sizeof buf, "%016llx:%016llx;",
                  static_cast<unsigned long long>(std::bit_cast<std::uint64_t>(c.real())),
                  static_cast<unsigned long long>(std::bit_cast<std::uint64_t>(c.imag())));
    key += buf;
  }
  return key;
}

void canonicalize(UniversalForm& w) {
  const torus::Mode zero = zero_mode(w.n);
  std::map<std::string, std::vector<torus::AlgebraElement>> merged;
  for (auto& term : w.terms) {
    bool dead = false;
    for (std::size_t slot = 1; slot < term.size(); ++slot) {
      term[slot].set(zero, Complex(0.0, 0.0));  // slots >= 1 live mod constants
      if (term[slot].is_zero()) {
        dead = true;
        break;
      }
    }
    if (dead || term[0].is_zero()) continue;
    std::string key;
    for (std::size_t slot = 1; slot < term.size(); ++slot) {
      key += elem_key(term[slot]);
      key += '|';
    }
    const auto it = merged.find(key);
    if (it == merged.end()) {
      merged.emplace(std::move(key), std::move(term));
    } else {
      it->second[0] = it->second[0] + term[0];
      if (it->second[0].is_zero()) merged.erase(it);
    }
  }
  w.terms.clear();
  w.terms.reserve(merged.size());
  for (auto& [key, term] : merged) w.terms.push_back(std::move(term));
}

std::string format_float(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

std::string format_mode(const torus::Mode& y) {
  std::string s = "(";
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(y[i]);
  }
  s += ')';
  return s;
}

void dump_element(std::string& out, const torus::AlgebraElement& a, const char* indent) {
  for (const auto& [y, c] : a.coeffs) {
    out += indent;
    out += format_mode(y);
    out += ' ';
    out += format_float(c.real());
    out += ' ';
    out += format_float(c.imag());
    out += '\n';
  }
}

// Dense matrix of the compressed multiplication operator of a on the mode
// factor, matching the indexing of torus::u_operator.
CMatrix algebra_matrix(const torus::AlgebraElement& a, const torus::Model& model) {
  const torus::ModeLattice& lat = model.lattice;
  const int n = model.sig.n;
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(lat.count),
                              static_cast<Eigen::Index>(lat.count));
  torus::Mode z(static_cast<std::size_t>(n)), target(static_cast<std::size_t>(n));
  for (const auto& [y, c] : a.coeffs) {
    for (std::size_t src = 0; src < lat.count; ++src) {
      const auto zm = lat.mode(src);
      for (int i = 0; i < n; ++i) {
        z[static_cast<std::size_t>(i)] = zm[static_cast<std::size_t>(i)];
        target[static_cast<std::size_t>(i)] =
            zm[static_cast<std::size_t>(i)] + y[static_cast<std::size_t>(i)];
      }
      const auto dst = lat.find(target);
      if (!dst) continue;
      out(static_cast<Eigen::Index>(*dst), static_cast<Eigen::Index>(src)) +=
          c * std::polar(1.0, kPi * model.theta.pairing(y, z));
    }
  }
  return out;
}

}  // namespace

UniversalForm::UniversalForm(int n_, int degree_) : n(n_), degree(degree_) {
  if (n_ < 1) throw Error("UniversalForm: dimension must be positive");
  if (degree_ < 0) throw Error("UniversalForm: degree must be nonnegative");
}

UniversalForm UniversalForm::algebra(const torus::AlgebraElement& a) {
  UniversalForm w(a.n, 0);
  w.terms.push_back({a});
  canonicalize(w);
  return w;
}

UniversalForm d(const UniversalForm& w) {
  UniversalForm out(w.n, w.degree + 1);
  for (const auto& term : w.terms) {
    std::vector<torus::AlgebraElement> t;
    t.reserve(term.size() + 1);
    t.push_back(torus::AlgebraElement::unit(w.n));
    t.insert(t.end(), term.begin(), term.end());
    out.terms.push_back(std::move(t));
  }
  canonicalize(out);
  return out;
}

UniversalForm product(const UniversalForm& a, const UniversalForm& b,
                      const torus::Theta& theta) {
  if (a.n != b.n) throw Error("product: dimension mismatch");
  UniversalForm out(a.n, a.degree + b.degree);
  const int m = a.degree;
  for (const auto& ta : a.terms) {
    for (const auto& tb : b.terms) {
      std::vector<torus::AlgebraElement> combined;
      combined.reserve(ta.size() + tb.size());
      combined.insert(combined.end(), ta.begin(), ta.end());
      combined.insert(combined.end(), tb.begin(), tb.end());
      for (int i = 0; i <= m; ++i) {
        std::vector<torus::AlgebraElement> t;
        t.reserve(combined.size() - 1);
        for (int s = 0; s < i; ++s) t.push_back(combined[static_cast<std::size_t>(s)]);
        t.push_back(torus::multiply(combined[static_cast<std::size_t>(i)],
                                    combined[static_cast<std::size_t>(i + 1)], theta));
        for (std::size_t s = static_cast<std::size_t>(i) + 2; s < combined.size(); ++s)
          t.push_back(combined[s]);
        if ((m - i) % 2) t[0] = t[0].scaled(Complex(-1.0, 0.0));
        out.terms.push_back(std::move(t));
      }
    }
  }
  canonicalize(out);
  return out;
}

UniversalForm star(const UniversalForm& w, const torus::Theta& theta) {
  const int m = w.degree;
  UniversalForm out(w.n, m);
  for (const auto& term : w.terms) {
    UniversalForm left(w.n, m);
    std::vector<torus::AlgebraElement> t;
    t.reserve(term.size());
    t.push_back(torus::AlgebraElement::unit(w.n));
    for (int slot = m; slot >= 1; --slot)
      t.push_back(torus::involution(term[static_cast<std::size_t>(slot)]));
    left.terms.push_back(std::move(t));
    const UniversalForm right = UniversalForm::algebra(torus::involution(term[0]));
    UniversalForm p = product(left, right, theta);
    if (m % 2) p = scaled(p, Complex(-1.0, 0.0));
    out = add(out, p);
  }
  return out;
}

UniversalForm add(const UniversalForm& a, const UniversalForm& b) {
  if (a.n != b.n || a.degree != b.degree) throw Error("add: form shape mismatch");
  UniversalForm out(a.n, a.degree);
  out.terms = a.terms;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  canonicalize(out);
  return out;
}

UniversalForm scaled(const UniversalForm& w, Complex c) {
  UniversalForm out(w.n, w.degree);
  out.terms = w.terms;
  for (auto& term : out.terms) term[0] = term[0].scaled(c);
  canonicalize(out);
  return out;
}

RepresentedForm::RepresentedForm(int n_, int degree_) : n(n_), degree(degree_) {
  if (n_ < 1 || n_ > 31) throw Error("RepresentedForm: dimension out of range");
  if (degree_ < 0) throw Error("RepresentedForm: degree must be nonnegative");
}

torus::AlgebraElement RepresentedForm::word_coeff(std::uint32_t mask) const {
  const auto it = words.find(mask);
  return it == words.end() ? torus::AlgebraElement(n) : it->second;
}

void RepresentedForm::set_word(std::uint32_t mask, torus::AlgebraElement a) {
  if (mask >= (1u << n)) throw Error("RepresentedForm::set_word: word outside the index range");
  if (a.is_zero())
    words.erase(mask);
  else
    words.insert_or_assign(mask, std::move(a));
}

std::pair<double, std::uint32_t> word_mul(std::uint32_t u, std::uint32_t v,
                                          const clifford::Signature& sig) {
  double sign = 1.0;
  for (int b = 0; b < sig.n; ++b) {
    const std::uint32_t bit = 1u << b;
    if (!(v & bit)) continue;
    if (std::popcount(u >> (b + 1)) % 2) sign = -sign;
    if (u & bit) {
      sign *= sig.metric_sign(b);
      u &= ~bit;
    } else {
      u |= bit;
    }
  }
  return {sign, u};
}

RepresentedForm symbol_add(const RepresentedForm& a, const RepresentedForm& b) {
  if (a.n != b.n || a.degree != b.degree) throw Error("symbol_add: form shape mismatch");
  RepresentedForm out = a;
  for (const auto& [mask, coeff] : b.words) out.set_word(mask, out.word_coeff(mask) + coeff);
  return out;
}

RepresentedForm symbol_scaled(const RepresentedForm& a, Complex c) {
  RepresentedForm out(a.n, a.degree);
  for (const auto& [mask, coeff] : a.words) out.set_word(mask, coeff.scaled(c));
  return out;
}

RepresentedForm symbol_product(const RepresentedForm& a, const RepresentedForm& b,
                               const torus::Theta& theta, const clifford::Signature& sig) {
  if (a.n != b.n || a.n != sig.n) throw Error("symbol_product: dimension mismatch");
  RepresentedForm out(a.n, a.degree + b.degree);
  for (const auto& [ua, ca] : a.words) {
    for (const auto& [ub, cb] : b.words) {
      const auto [sign, mask] = word_mul(ua, ub, sig);
      const torus::AlgebraElement contrib =
          torus::multiply(ca, cb, theta).scaled(Complex(sign, 0.0));
      out.set_word(mask, out.word_coeff(mask) + contrib);
    }
  }
  return out;
}

RepresentedForm pi(const UniversalForm& w, const torus::Model& model) {
  if (w.n != model.sig.n) throw Error("pi: dimension mismatch");
  const Complex factor = unit_imag_power(model.sig.k - 1);
  RepresentedForm out(w.n, w.degree);
  for (const auto& term : w.terms) {
    RepresentedForm acc(w.n, 0);
    acc.set_word(0, term[0]);
    for (int slot = 1; slot <= w.degree; ++slot) {
      RepresentedForm commutator(w.n, 1);
      for (int jx = 1; jx <= w.n; ++jx) {
        const torus::AlgebraElement coeff =
            torus::derivation(jx, term[static_cast<std::size_t>(slot)]).scaled(factor);
        if (!coeff.is_zero()) commutator.set_word(1u << (jx - 1), coeff);
      }
      acc = symbol_product(acc, commutator, model.theta, model.sig);
    }
    acc.degree = w.degree;
    out = symbol_add(out, acc);
  }
  return out;
}

RepresentedForm junk_component(const RepresentedForm& w) {
  RepresentedForm out(w.n, w.degree);
  for (const auto& [mask, coeff] : w.words)
    if (std::popcount(mask) <= w.degree - 2) out.set_word(mask, coeff);
  return out;
}

RepresentedForm top_component(const RepresentedForm& w) {
  RepresentedForm out(w.n, w.degree);
  for (const auto& [mask, coeff] : w.words)
    if (std::popcount(mask) == w.degree) out.set_word(mask, coeff);
  return out;
}

bool is_junk(const RepresentedForm& w, double tol) {
  const RepresentedForm top = top_component(w);
  if (tol <= 0.0) return top.is_zero();
  for (const auto& [mask, coeff] : top.words)
    for (const auto& [y, c] : coeff.coeffs)
      if (std::abs(c) > tol) return false;
  return true;
}

std::size_t connes_rank(int n, int m) {
  if (n < 1 || m < 0) throw Error("connes_rank: invalid arguments");
  if (m > n) return 0;
  std::size_t r = 1;
  for (int i = 0; i < m; ++i)
    r = r * static_cast<std::size_t>(n - i) / static_cast<std::size_t>(i + 1);
  return r;
}

JunkSpaceDescription junk_space(const torus::Model& model, int m) {
  if (m < 1) throw Error("junk_space: degree must be >= 1");
  const int n = model.sig.n;
  JunkSpaceDescription out;
  out.degree = m;
  out.everything_junk = m > n;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const int p = std::popcount(mask);
    if (p % 2 != m % 2) continue;
    if (p <= m - 2) out.junk_words.push_back(mask);
    if (p == m) out.top_words.push_back(mask);
  }
  return out;
}

CMatrix realize_word(std::uint32_t mask, const clifford::GammaRep& rep) {
  CMatrix out = CMatrix::Identity(rep.dim, rep.dim);
  for (int b = 0; b < rep.sig.n; ++b)
    if (mask & (1u << b)) out = out * rep.gammas[static_cast<std::size_t>(b)];
  return out;
}

CMatrix realize(const RepresentedForm& w, const torus::Model& model, std::size_t max_dim) {
  if (w.n != model.sig.n) throw Error("realize: dimension mismatch");
  const torus::ModeLattice& lat = model.lattice;
  const auto s = static_cast<std::size_t>(lat.spinor_dim);
  const std::size_t dim = lat.count * s;
  if (dim > max_dim) throw Error("realize: truncation too large for a dense matrix");
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& [mask, coeff] : w.words) {
    const CMatrix word = realize_word(mask, model.rep);
    const CMatrix amat = algebra_matrix(coeff, model);
    for (std::size_t m1 = 0; m1 < lat.count; ++m1)
      for (std::size_t m2 = 0; m2 < lat.count; ++m2) {
        const Complex a = amat(static_cast<Eigen::Index>(m1), static_cast<Eigen::Index>(m2));
        if (a == Complex(0.0, 0.0)) continue;
        out.block(static_cast<Eigen::Index>(m1 * s), static_cast<Eigen::Index>(m2 * s),
                  static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)) += a * word;
      }
  }
  return out;
}

krein::DixmierEstimate one_form_inner_product(const RepresentedForm& w1,
                                              const RepresentedForm& w2,
                                              const torus::Model& model,
                                              double window_fraction) {
  if (w1.degree != 1 || w2.degree != 1)
    throw Error("one_form_inner_product: degree-1 forms required");
  if (w1.n != model.sig.n || w2.n != model.sig.n)
    throw Error("one_form_inner_product: dimension mismatch");
  const int n = model.sig.n;

  // J-adjoint of w1 = Sigma_l gamma_l a_l: since J gamma(v) J = (-1)^k gamma(rv)
  // and G gamma_i G^{-1} = (-1)^k gamma_i^dagger, the gamma_l coefficient of
  // w1^{*J} is Sigma_j r_{lj} a_j^*.
  RepresentedForm adj(n, 1);
  const RMatrix& r = model.reflection.r;
  for (int l = 0; l < n; ++l) {
    torus::AlgebraElement acc(n);
    for (int jx = 0; jx < n; ++jx) {
      const auto it = w1.words.find(1u << jx);
      if (it == w1.words.end() || r(l, jx) == 0.0) continue;
      acc = acc + torus::involution(it->second).scaled(Complex(r(l, jx), 0.0));
    }
    if (!acc.is_zero()) adj.set_word(1u << l, std::move(acc));
  }

  const RepresentedForm z = symbol_product(adj, w2, model.theta, model.sig);

  // Per-mode density: only the u(0) component of each coefficient hits the
  // diagonal, weighted by the spinor trace of its gamma word.
  Complex val(0.0, 0.0);
  for (const auto& [mask, coeff] : z.words)
    val += torus::tau(coeff) * realize_word(mask, model.rep).trace();

  const torus::ModeLattice& lat = model.lattice;
  const auto s = static_cast<std::size_t>(lat.spinor_dim);
  const std::size_t total = lat.ball_count * s;

  krein::DixmierEstimate est;
  if (val == Complex(0.0, 0.0)) {
    // Every partial sum vanishes identically; the estimate is an exact zero.
    est.method = krein::EstimatorMethod::slope;
    est.window_lo = total ? 1 : 0;
    est.window_hi = total;
    est.converged = true;
    return est;
  }

  std::vector<double> sig_re, sig_im;
  sig_re.reserve(total);
  sig_im.reserve(total);
  double run_re = 0.0, run_im = 0.0;
  for (std::size_t i = 0; i < lat.ball_count; ++i) {
    const double lam = lat.lambda[lat.by_lambda[i]];
    const Complex entry = val * std::pow(lam, -n) / static_cast<double>(s);
    for (std::size_t sp = 0; sp < s; ++sp) {
      run_re += entry.real();
      run_im += entry.imag();
      sig_re.push_back(run_re);
      sig_im.push_back(run_im);
    }
  }
  return krein::slope_fit(sig_re, sig_im, window_fraction);
}

std::string dump(const RepresentedForm& w) {
  std::string out = "represented form n=" + std::to_string(w.n) +
                    " degree=" + std::to_string(w.degree) + "\n";
  for (const auto& [mask, coeff] : w.words) {
    out += "word ";
    if (mask == 0) {
      out += '1';
    } else {
      for (int b = 0; b < w.n; ++b)
        if (mask & (1u << b)) out += "g" + std::to_string(b + 1);
    }
    out += '\n';
    dump_element(out, coeff, "  ");
  }
  return out;
}

std::string dump(const UniversalForm& w) {
  std::string out = "universal form n=" + std::to_string(w.n) +
                    " degree=" + std::to_string(w.degree) +
                    " terms=" + std::to_string(w.terms.size()) + "\n";
  for (const auto& term : w.terms) {
    out += "term\n";
    for (std::size_t slot = 0; slot < term.size(); ++slot) {
      out += "  slot " + std::to_string(slot) + "\n";
      dump_element(out, term[slot], "    ");
    }
  }
  return out;
}

}  // namespace ksl::forms
