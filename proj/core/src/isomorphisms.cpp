#include "hamlie/isomorphisms.hpp"

#include <algorithm>
#include <stdexcept>

namespace hamlie {

namespace {

Mat zero_mat(int r, int c) { return Mat(static_cast<std::size_t>(r), static_cast<std::size_t>(c)); }

Mat identity_mat(int n) { return Mat::identity(static_cast<std::size_t>(n)); }

int block_offset(const Shape& s, int p, int lo) { return p - s.iota(lo - 1) - 1; }

} // namespace

PreservingIso identity_iso(const Shape& s) {
  PreservingIso iso;
  for (int p : s.I_range(1, 4)) iso.ab[p] = {Scalar(0), Scalar(1)};
  const auto& l = s.l();
  iso.B15 = zero_mat(l[0], l[4]);
  iso.B25 = zero_mat(l[1], l[4]);
  iso.B55 = identity_mat(l[4]);
  iso.B16 = zero_mat(l[0], l[5]);
  iso.B26 = zero_mat(l[1], l[5]);
  iso.B36 = zero_mat(l[2] + l[3], l[5]);
  iso.B56 = zero_mat(l[4], l[5]);
  iso.B66 = identity_mat(l[5]);
  return iso;
}

Mat a_matrix(const Shape& s, const PreservingIso& iso, int p) {
  auto it = iso.ab.find(p);
  Scalar a = it == iso.ab.end() ? Scalar(0) : it->second.first;
  Scalar b = it == iso.ab.end() ? Scalar(1) : it->second.second;
  Mat m(2, 2);
  int blk = s.block(p);
  if (blk == 1 || blk == 4) {
    m.at(0, 0) = a + b;
    m.at(0, 1) = a;
    m.at(1, 0) = Scalar(1) - a - b;
    m.at(1, 1) = Scalar(1) - a;
  } else if (blk == 2) {
    m.at(0, 0) = Scalar(1);
    m.at(1, 0) = a;
    m.at(1, 1) = b;
  } else if (blk == 3) {
    m.at(0, 0) = b;
    m.at(1, 0) = Scalar(1) - b;
    m.at(1, 1) = Scalar(1);
  } else {
    throw std::out_of_range("A_p template wants p in I_{1,4}");
  }
  return m;
}

void validate_iso_data(const Shape& s, const PreservingIso& iso) {
  // nu: a permutation of I_{1,4} mapping each block to itself
  std::set<int> seen;
  for (int p : s.I_range(1, 4)) {
    int q = iso.nu_of(p);
    if (s.barred(q) || !s.in_I(q, 1, 4) || s.block(q) != s.block(p))
      throw std::invalid_argument("nu must map each of I_1..I_4 to itself (p=" +
                                  std::to_string(p) + ")");
    if (!seen.insert(q).second) throw std::invalid_argument("nu is not a permutation");
  }
  for (int p : s.I_range(1, 4)) {
    auto it = iso.ab.find(p);
    if (it != iso.ab.end() && it->second.second.is_zero())
      throw std::invalid_argument("b_" + std::to_string(p) + " must be nonzero");
  }
  auto expect = [](const Mat& m, int r, int c, const char* name) {
    if (static_cast<int>(m.rows()) != r || static_cast<int>(m.cols()) != c)
      throw std::invalid_argument(std::string(name) + " has wrong dimensions");
  };
  const auto& l = s.l();
  expect(iso.B15, l[0], l[4], "B15");
  expect(iso.B25, l[1], l[4], "B25");
  expect(iso.B55, l[4], l[4], "B55");
  expect(iso.B16, l[0], l[5], "B16");
  expect(iso.B26, l[1], l[5], "B26");
  expect(iso.B36, l[2] + l[3], l[5], "B36");
  expect(iso.B56, l[4], l[5], "B56");
  expect(iso.B66, l[5], l[5], "B66");
  if (l[4] > 0) inverse(iso.B55);  // throws when singular
  if (l[5] > 0) inverse(iso.B66);
}

Mat tau_matrix(const Shape& s, const PreservingIso& iso) {
  const int dim = s.dim();
  Mat t(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
  auto put = [&](int row, int col, const Scalar& v) { t.at(row - 1, col - 1) = v; };

  for (int p : s.I_range(1, 4)) {
    Mat a = a_matrix(s, iso, p);
    int q = iso.nu_of(p);
    put(p, q, a.at(0, 0));
    put(p, s.bar(q), a.at(0, 1));
    put(s.bar(p), q, a.at(1, 0));
    put(s.bar(p), s.bar(q), a.at(1, 1));
  }
  for (int q : s.I_range(5, 5)) {
    int qc = block_offset(s, q, 5);
    for (int c : s.I_range(5, 5)) put(q, c, iso.B55.at(qc, block_offset(s, c, 5)));
    for (int c : s.I_range(6, 6)) put(q, c, iso.B56.at(qc, block_offset(s, c, 6)));
  }
  for (int q : s.I_range(6, 6)) {
    int qc = block_offset(s, q, 6);
    for (int c : s.I_range(6, 6)) put(q, c, iso.B66.at(qc, block_offset(s, c, 6)));
  }
  for (int p : s.I_range(1, 1)) {
    int pr = block_offset(s, p, 1);
    for (int c : s.I_range(5, 5)) {
      put(p, c, iso.B15.at(pr, block_offset(s, c, 5)));
      put(s.bar(p), c, -iso.B15.at(pr, block_offset(s, c, 5)));
    }
    for (int c : s.I_range(6, 6)) {
      put(p, c, iso.B16.at(pr, block_offset(s, c, 6)));
      put(s.bar(p), c, -iso.B16.at(pr, block_offset(s, c, 6)));
    }
  }
  for (int p : s.I_range(2, 2)) {
    int pr = block_offset(s, p, 2);
    for (int c : s.I_range(5, 5)) put(s.bar(p), c, -iso.B25.at(pr, block_offset(s, c, 5)));
    for (int c : s.I_range(6, 6)) put(s.bar(p), c, -iso.B26.at(pr, block_offset(s, c, 6)));
  }
  for (int p : s.I_range(3, 4)) {
    int pr = block_offset(s, p, 3);
    for (int c : s.I_range(6, 6)) {
      put(p, c, iso.B36.at(pr, block_offset(s, c, 6)));
      put(s.bar(p), c, -iso.B36.at(pr, block_offset(s, c, 6)));
    }
  }
  for (int d = 1; d <= dim; ++d)
    if (!s.gamma_allowed(d)) put(d, d, Scalar(1));
  return t;
}

GroupVector apply_tau(const Shape& s, const PreservingIso& iso, const GroupVector& alpha) {
  Mat t = tau_matrix(s, iso);
  GroupVector out(s.dim());
  for (int c = 0; c < s.dim(); ++c) {
    Scalar v;
    for (int r = 0; r < s.dim(); ++r) {
      if (alpha[r].is_zero()) continue;
      v += alpha[r] * t.at(r, c);
    }
    out[c] = v;
  }
  return out;
}

IsoValidation validate_preserving(const PreservingIso& iso, const Lattice& src,
                                  const Lattice& tgt) {
  if (!(src.shape() == tgt.shape()))
    throw std::invalid_argument("preserving isomorphisms need equal shapes");
  validate_iso_data(src.shape(), iso);
  IsoValidation rep;
  Mat t = tau_matrix(src.shape(), iso);
  Mat tinv = inverse(t);
  auto mul = [&](const GroupVector& a, const Mat& m) {
    GroupVector out(a.size());
    for (std::size_t c = 0; c < a.size(); ++c) {
      Scalar v;
      for (std::size_t r = 0; r < a.size(); ++r)
        if (!a[r].is_zero()) v += a[r] * m.at(r, c);
      out[c] = v;
    }
    return out;
  };
  for (std::size_t k = 0; k < src.basis().size(); ++k) {
    if (!tgt.contains(mul(src.basis()[k], t))) {
      rep.detail = "tau(g_" + std::to_string(k + 1) + ") is not in the target lattice";
      return rep;
    }
  }
  for (std::size_t k = 0; k < tgt.basis().size(); ++k) {
    if (!src.contains(mul(tgt.basis()[k], tinv))) {
      rep.detail = "tau^{-1}(g'_" + std::to_string(k + 1) + ") is not in the source lattice";
      return rep;
    }
  }
  rep.ok = true;
  return rep;
}

TauFactors decompose_tau(const Shape& s, const PreservingIso& iso) {
  validate_iso_data(s, iso);
  TauFactors f;
  f.nu_part = identity_iso(s);
  f.nu_part.nu = iso.nu;
  f.tau1 = identity_iso(s);
  f.tau1.ab = iso.ab;
  f.tau1.B55 = iso.B55;
  f.tau1.B66 = iso.B66;
  f.tau2 = identity_iso(s);
  const auto& l = s.l();
  if (l[4] > 0) {
    Mat b55i = inverse(iso.B55);
    f.tau2.B15 = iso.B15 * b55i;
    f.tau2.B25 = iso.B25 * b55i;
  }
  if (l[5] > 0) {
    Mat b66i = inverse(iso.B66);
    f.tau2.B16 = iso.B16 * b66i;
    f.tau2.B26 = iso.B26 * b66i;
    f.tau2.B36 = iso.B36 * b66i;
    f.tau2.B56 = iso.B56 * b66i;
  }
  return f;
}

Scalar character_eval(const Lattice& L, const Character& chi, const GroupVector& alpha) {
  auto coords = L.int_coordinates(alpha);
  if (!coords) throw std::invalid_argument("character argument outside the lattice");
  Scalar v(1);
  for (std::size_t k = 0; k < coords->size(); ++k) {
    mpz_class n = (*coords)[k];
    if (sgn(n) == 0) continue;
    Scalar base = sgn(n) > 0 ? chi.values[k] : chi.values[k].inverse();
    mpz_class e = abs(n);
    for (mpz_class i = 0; i < e; ++i) v *= base;
  }
  return v;
}

Character extend_character(const Lattice& L, const std::map<int, Scalar>& b) {
  const Shape& s = L.shape();
  std::size_t k = static_cast<std::size_t>(L.rank());
  std::vector<ZVec> rows;
  std::vector<Scalar> rhs;
  for (int p : s.I_range(1, 4)) {
    auto c = L.int_coordinates(s.sigma(p));
    rows.push_back(*c);
    auto it = b.find(p);
    if (it == b.end()) throw std::invalid_argument("missing b_" + std::to_string(p));
    if (it->second.is_zero()) throw std::invalid_argument("b_p must be nonzero");
    rhs.push_back(it->second);
  }

  auto spow = [](const Scalar& base, const mpz_class& e) {
    Scalar v(1);
    Scalar bb = sgn(e) >= 0 ? base : base.inverse();
    mpz_class n = abs(e);
    for (mpz_class i = 0; i < n; ++i) v *= bb;
    return v;
  };

  // integer row echelon with the same operations applied multiplicatively to
  // the right-hand sides
  std::size_t row = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t col = 0; col < k && row < rows.size(); ++col) {
    while (true) {
      std::size_t best = row;
      bool any = false;
      for (std::size_t r = row; r < rows.size(); ++r) {
        if (sgn(rows[r][col]) == 0) continue;
        if (!any || ::cmp(abs(rows[r][col]), abs(rows[best][col])) < 0) {
          best = r;
          any = true;
        }
      }
      if (!any) break;
      std::swap(rows[row], rows[best]);
      std::swap(rhs[row], rhs[best]);
      bool done = true;
      for (std::size_t r = row + 1; r < rows.size(); ++r) {
        if (sgn(rows[r][col]) == 0) continue;
        mpz_class q = rows[r][col] / rows[row][col];
        for (std::size_t c2 = 0; c2 < k; ++c2) rows[r][c2] -= q * rows[row][c2];
        rhs[r] = rhs[r] * spow(rhs[row], -q);
        if (sgn(rows[r][col]) != 0) done = false;
      }
      if (done) break;
    }
    if (row < rows.size() && sgn(rows[row][col]) != 0) {
      if (sgn(rows[row][col]) < 0) {
        for (auto& z : rows[row]) z = -z;
        rhs[row] = rhs[row].inverse();
      }
      pivot_col.push_back(col);
      ++row;
    }
  }
  for (std::size_t r = row; r < rows.size(); ++r)
    if (!rhs[r].is_one())
      throw std::domain_error("character system inconsistent");

  Character chi;
  chi.values.assign(k, Scalar(1));
  for (std::size_t i = row; i-- > 0;) {
    std::size_t col = pivot_col[i];
    Scalar rest(1);
    for (std::size_t c2 = col + 1; c2 < k; ++c2)
      if (sgn(rows[i][c2]) != 0) rest *= spow(chi.values[c2], rows[i][c2]);
    Scalar target = rhs[i] / rest;
    mpz_class h = rows[i][col];
    Scalar root;
    if (!nth_root_in(L.field(), target, static_cast<unsigned>(h.get_ui()), root))
      throw std::domain_error("character not representable in the working field: chi(g_" +
                              std::to_string(col + 1) + ")^" + h.get_str() + " = " +
                              target.str());
    chi.values[col] = root;
  }
  return chi;
}

AlgebraMorphism::AlgebraMorphism(std::vector<Stage> stages) : stages_(std::move(stages)) {
  if (stages_.empty()) throw std::invalid_argument("morphism needs at least one stage");
  source_ = stages_.front().src;
  target_ = stages_.back().tgt;
}

Element AlgebraMorphism::apply(const Element& u) const {
  Element cur = u;
  for (const auto& stage : stages_) {
    Element next(stage.tgt);
    const Shape& s = stage.src->shape();
    for (const auto& [key, c] : cur.terms()) {
      Scalar chi_val(1);
      if (!stage.chi.empty()) {
        auto coords = stage.src->lattice().int_coordinates(key.alpha);
        for (std::size_t k = 0; k < coords->size(); ++k) {
          mpz_class n = (*coords)[k];
          if (sgn(n) == 0) continue;
          Scalar base = sgn(n) > 0 ? stage.chi[k] : stage.chi[k].inverse();
          mpz_class e = abs(n);
          for (mpz_class i = 0; i < e; ++i) chi_val *= base;
        }
      }
      GroupVector image(s.dim());
      for (int col = 0; col < s.dim(); ++col) {
        Scalar v;
        for (int r = 0; r < s.dim(); ++r)
          if (!key.alpha[r].is_zero()) v += key.alpha[r] * stage.tau.at(r, col);
        image[col] = v;
      }
      Element term = Element::x(stage.tgt, image, c * chi_val);
      for (int p = 1; p <= s.dim(); ++p) {
        for (int e = 0; e < key.i[p - 1]; ++e) term = multiply(term, stage.t_images.at(p));
      }
      next += term;
    }
    cur = next;
  }
  return cur;
}

namespace {

// Intermediate lattices of a factored morphism can miss the distinguishable
// conditions even when source and target satisfy them, so they are built
// without the admissibility validation.
Lattice transformed_lattice(const Lattice& L, const Mat& t) {
  std::vector<GroupVector> basis;
  for (const auto& g : L.basis()) {
    GroupVector img(g.size());
    for (std::size_t c = 0; c < g.size(); ++c) {
      Scalar v;
      for (std::size_t r = 0; r < g.size(); ++r)
        if (!g[r].is_zero()) v += g[r] * t.at(r, c);
      img[c] = v;
    }
    basis.push_back(std::move(img));
  }
  return Lattice::build_unchecked(L.shape(), L.field(), std::move(basis));
}

std::vector<int> t_slots(const Shape& s) {
  std::vector<int> slots;
  for (int p = 1; p <= s.dim(); ++p)
    if (s.t_allowed(p)) slots.push_back(p);
  return slots;
}

// stage with tau = permutation nu: x^{alpha,i} -> x^{nu alpha, nu i}
AlgebraMorphism::Stage nu_stage(const PreservingIso& iso, const AlgebraPtr& src,
                                const AlgebraPtr& tgt) {
  const Shape& s = src->shape();
  AlgebraMorphism::Stage st;
  st.src = src;
  st.tgt = tgt;
  st.tau = tau_matrix(s, iso);
  for (int p : t_slots(s)) {
    int q = p;
    if (s.in_J(p, 1, 4)) q = s.barred(p) ? s.bar(iso.nu_of(s.bar(p))) : iso.nu_of(p);
    st.t_images.emplace(p, Element::t(tgt, q));
  }
  return st;
}

// block-diagonal stage: tau1 with character chi; generator images through
// the A_p adjugates and the inverse/transpose diagonal blocks
AlgebraMorphism::Stage tau1_stage(const PreservingIso& iso, const AlgebraPtr& src,
                                  const AlgebraPtr& tgt, const std::vector<Scalar>& chi) {
  const Shape& s = src->shape();
  AlgebraMorphism::Stage st;
  st.src = src;
  st.tgt = tgt;
  st.tau = tau_matrix(s, iso);
  st.chi = chi;

  Mat b55i = s.l()[4] > 0 ? inverse(iso.B55) : Mat();
  Mat b66i = s.l()[5] > 0 ? inverse(iso.B66) : Mat();

  for (int p : t_slots(s)) {
    int blk = s.block(p);
    if (blk == 2) {
      st.t_images.emplace(p, Element::t(tgt, p));
    } else if (blk == 3) {
      st.t_images.emplace(p, iso.ab.at(p).second * Element::t(tgt, p));
    } else if (blk == 4) {
      int r = s.barred(p) ? s.bar(p) : p;
      // (-s_rbar, s_r) = b_r (-t'_rbar, t'_r) A_r^{-1} = (-t'_rbar, t'_r) adj(A_r)
      Mat a = a_matrix(s, iso, r);
      Mat adj(2, 2);
      adj.at(0, 0) = a.at(1, 1);
      adj.at(0, 1) = -a.at(0, 1);
      adj.at(1, 0) = -a.at(1, 0);
      adj.at(1, 1) = a.at(0, 0);
      Element tr = Element::t(tgt, r), trb = Element::t(tgt, s.bar(r));
      if (!s.barred(p)) {
        // s_r = -t'_rbar adj[0,1] + t'_r adj[1,1]
        st.t_images.emplace(p, -adj.at(0, 1) * trb + adj.at(1, 1) * tr);
      } else {
        // -s_rbar = -t'_rbar adj[0,0] + t'_r adj[1,0]
        st.t_images.emplace(p, adj.at(0, 0) * trb + (-adj.at(1, 0)) * tr);
      }
    } else if (s.barred(p) && (blk == 5 || blk == 6)) {
      // s_qbar = sum_r t'_rbar diag(B55,B66)^{-1}[r,q]
      int q = s.bar(p);
      Element img(tgt);
      for (int r : s.I_range(5, 6)) {
        Scalar w;
        if (blk == 5 && s.block(r) == 5)
          w = b55i.at(block_offset(s, r, 5), block_offset(s, q, 5));
        else if (blk == 6 && s.block(r) == 6)
          w = b66i.at(block_offset(s, r, 6), block_offset(s, q, 6));
        if (!w.is_zero()) img += w * Element::t(tgt, s.bar(r));
      }
      st.t_images.emplace(p, img);
    } else if (blk == 6) {
      // s_q = sum_r t'_r B66^T[r,q] = sum_r B66[q,r] t'_r
      Element img(tgt);
      for (int r : s.I_range(6, 6)) {
        Scalar w = iso.B66.at(block_offset(s, p, 6), block_offset(s, r, 6));
        if (!w.is_zero()) img += w * Element::t(tgt, r);
      }
      st.t_images.emplace(p, img);
    } else {  // J_7
      st.t_images.emplace(p, Element::t(tgt, p));
    }
  }
  return st;
}

struct EIndex {
  std::vector<int> cols_123_4;  // slots in I_{2,3} u J_4
  std::vector<int> cols_56;     // q in I_{5,6}
  std::vector<int> rows_6;      // b in I_6
  std::vector<int> rows_14;     // r in I_{1,4}
};

EIndex e_index(const Shape& s) {
  EIndex ix;
  for (int p : s.I_range(2, 3)) ix.cols_123_4.push_back(p);
  for (int p : s.I_range(4, 4)) {
    ix.cols_123_4.push_back(p);
    ix.cols_123_4.push_back(s.bar(p));
  }
  for (int q : s.I_range(5, 6)) ix.cols_56.push_back(q);
  for (int b : s.I_range(6, 6)) ix.rows_6.push_back(b);
  for (int r : s.I_range(1, 4)) ix.rows_14.push_back(r);
  return ix;
}

std::map<int, Element> case_c_images(const Shape& s, const AlgebraPtr& tgt, const EIndex& ix,
                                     const Mat& e1, const Mat& e2, const Mat& e3, const Mat& e4) {
  std::map<int, Element> images;
  for (int p : t_slots(s)) {
    int blk = s.block(p);
    if (s.barred(p) && (blk == 5 || blk == 6)) {
      int q = s.bar(p);
      std::size_t qc = static_cast<std::size_t>(
          std::find(ix.cols_56.begin(), ix.cols_56.end(), q) - ix.cols_56.begin());
      Element img(tgt);
      for (std::size_t r = 0; r < ix.cols_56.size(); ++r) {
        const Scalar& w = e2.at(r, qc);
        if (!w.is_zero()) img += w * Element::t(tgt, s.bar(ix.cols_56[r]));
      }
      for (std::size_t r = 0; r < ix.rows_6.size(); ++r) {
        const Scalar& w = e3.at(r, qc);
        if (!w.is_zero()) img += w * Element::t(tgt, ix.rows_6[r]);
      }
      for (std::size_t r = 0; r < ix.rows_14.size(); ++r) {
        const Scalar& w = e4.at(r, qc);
        if (!w.is_zero()) img += w * Element::x(tgt, negate(s.sigma(ix.rows_14[r])));
      }
      images.emplace(p, img);
    } else if (blk == 2 || blk == 3 || blk == 4) {
      std::size_t pc = static_cast<std::size_t>(
          std::find(ix.cols_123_4.begin(), ix.cols_123_4.end(), p) - ix.cols_123_4.begin());
      Element img = Element::t(tgt, p);
      for (std::size_t r = 0; r < ix.rows_6.size(); ++r) {
        const Scalar& w = e1.at(r, pc);
        if (!w.is_zero()) img += w * Element::t(tgt, ix.rows_6[r]);
      }
      images.emplace(p, img);
    } else {
      images.emplace(p, Element::t(tgt, p));  // I_6 u J_7 slots stay exact
    }
  }
  return images;
}

// linear solve helper: rows of (coeffs, rhs) collected from affine Element
// equations by finite differencing over the unknowns
struct LinearSystem {
  std::size_t unknowns;
  std::vector<std::vector<Scalar>> rows;
  std::vector<Scalar> rhs;

  explicit LinearSystem(std::size_t n) : unknowns(n) {}

  void add_equation(const std::vector<Scalar>& coeffs, const Scalar& r) {
    rows.push_back(coeffs);
    rhs.push_back(r);
  }

  std::vector<Scalar> solve_or_throw(const std::string& what) const {
    Mat m(rows.size(), unknowns);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < unknowns; ++c) m.at(r, c) = rows[r][c];
    auto sol = hamlie::solve(m, rhs);
    if (!sol) throw std::domain_error("case-c system inconsistent: " + what);
    return *sol;
  }
};

} // namespace

CaseCSolution solve_case_c(const PreservingIso& tau2, const AlgebraPtr& src,
                           const AlgebraPtr& tgt) {
  const Shape& s = src->shape();
  EIndex ix = e_index(s);
  const std::size_t n56 = ix.cols_56.size(), n6 = ix.rows_6.size(), n14 = ix.rows_14.size(),
                    n123 = ix.cols_123_4.size();
  Mat tau = tau_matrix(s, tau2);
  auto tau_of = [&](const GroupVector& a) {
    GroupVector out(a.size());
    for (std::size_t c = 0; c < a.size(); ++c) {
      Scalar v;
      for (std::size_t r = 0; r < a.size(); ++r)
        if (!a[r].is_zero()) v += a[r] * tau.at(r, c);
      out[c] = v;
    }
    return out;
  };

  // Phase 1: images of t_qbar (q in I_{5,6}) from the (t, x^g) relations
  // [t_qbar, x^alpha] = -alpha_q x^alpha. Unknowns: E2, E4.
  Mat e2(n56, n56), e3(n6, n56), e4(n14, n56);
  if (n56 > 0) {
    std::size_t nu = n56 * n56 + n14 * n56;
    LinearSystem sys(nu);
    auto eq_rows = [&](const Mat& e2v, const Mat& e4v, std::size_t qc, const GroupVector& g,
                       std::vector<Scalar>& out) {
      // RHS eigenvalue of [s_qbar, x'^{g tau}] minus the required -g_q
      GroupVector b = tau_of(g);
      Scalar val;
      for (std::size_t r = 0; r < n56; ++r) val -= e2v.at(r, qc) * b[ix.cols_56[r] - 1];
      for (std::size_t r = 0; r < n14; ++r)
        val += e4v.at(r, qc) * tgt->lattice().pi_component(ix.rows_14[r], b);
      out.push_back(val);
    };
    std::vector<std::vector<Scalar>> cols(nu + 1);
    for (std::size_t qc = 0; qc < n56; ++qc)
      for (const auto& g : src->lattice().basis()) {
        // baseline and unit perturbations
        std::vector<Scalar> base;
        eq_rows(e2, e4, qc, g, base);
        std::size_t u = 0;
        std::vector<Scalar> coeffs(nu);
        for (std::size_t r = 0; r < n56; ++r)
          for (std::size_t c = 0; c < n56; ++c, ++u) {
            if (c != qc) continue;  // only this column's unknowns act
            Mat p2 = e2;
            p2.at(r, c) += Scalar(1);
            std::vector<Scalar> v;
            eq_rows(p2, e4, qc, g, v);
            coeffs[u] = v[0] - base[0];
          }
        for (std::size_t r = 0; r < n14; ++r)
          for (std::size_t c = 0; c < n56; ++c, ++u) {
            if (c != qc) continue;
            Mat p4 = e4;
            p4.at(r, c) += Scalar(1);
            std::vector<Scalar> v;
            eq_rows(e2, p4, qc, g, v);
            coeffs[u] = v[0] - base[0];
          }
        // required value: -g_q ; equation: base + coeffs . E = -g_q
        Scalar want = -g[ix.cols_56[qc] - 1];
        sys.add_equation(coeffs, want - base[0]);
      }
    auto sol = sys.solve_or_throw("eigenvalue relations for t_qbar");
    std::size_t u = 0;
    for (std::size_t r = 0; r < n56; ++r)
      for (std::size_t c = 0; c < n56; ++c, ++u) e2.at(r, c) = sol[u];
    for (std::size_t r = 0; r < n14; ++r)
      for (std::size_t c = 0; c < n56; ++c, ++u) e4.at(r, c) = sol[u];
  }

  // Phase 2: E1, E3 from the (t, t) relations, linear once E2/E4 are fixed.
  Mat e1(n6, n123);
  std::size_t nu = n6 * n123 + n6 * n56;
  auto images_for = [&](const Mat& e1v, const Mat& e3v) {
    return case_c_images(s, tgt, ix, e1v, e2, e3v, e4);
  };
  if (nu > 0) {
    auto slots = t_slots(s);
    auto theta_x = [&](const Element& u) {
      // u is a combination of pure group monomials
      Element out(tgt);
      for (const auto& [k, c] : u.terms()) out += Element::x(tgt, tau_of(k.alpha), c);
      return out;
    };
    // Finite differencing needs a fixed coordinate set; collect keys first.
    std::vector<std::pair<std::size_t, MonoKey>> coords;
    {
      std::vector<std::pair<Mat, Mat>> settings{{e1, e3}};
      for (std::size_t r = 0; r < n6; ++r)
        for (std::size_t c = 0; c < n123; ++c) {
          Mat p = e1;
          p.at(r, c) += Scalar(1);
          settings.push_back({p, e3});
        }
      for (std::size_t r = 0; r < n6; ++r)
        for (std::size_t c = 0; c < n56; ++c) {
          Mat p = e3;
          p.at(r, c) += Scalar(1);
          settings.push_back({e1, p});
        }
      std::set<std::pair<std::size_t, MonoKey>> seen;
      std::size_t pair_index = 0;
      for (std::size_t a = 0; a < slots.size(); ++a)
        for (std::size_t b2 = a + 1; b2 < slots.size(); ++b2, ++pair_index) {
          for (const auto& [se1, se3] : settings) {
            auto imgs = images_for(se1, se3);
            Element lhs = theta_x(bracket_structural(Element::t(src, slots[a]),
                                                     Element::t(src, slots[b2])));
            Element rhs = bracket_structural(imgs.at(slots[a]), imgs.at(slots[b2]));
            Element diff = lhs - rhs;
            for (const auto& [k, c] : diff.terms())
              if (seen.insert({pair_index, k}).second) coords.emplace_back(pair_index, k);
          }
        }
    }
    auto residual_vector = [&](const Mat& e1v, const Mat& e3v) {
      auto imgs = images_for(e1v, e3v);
      std::vector<Scalar> out(coords.size());
      std::size_t pair_index = 0;
      std::map<std::size_t, Element> diffs;
      for (std::size_t a = 0; a < slots.size(); ++a)
        for (std::size_t b2 = a + 1; b2 < slots.size(); ++b2, ++pair_index) {
          Element lhs = theta_x(bracket_structural(Element::t(src, slots[a]),
                                                   Element::t(src, slots[b2])));
          Element rhs = bracket_structural(imgs.at(slots[a]), imgs.at(slots[b2]));
          diffs.emplace(pair_index, lhs - rhs);
        }
      for (std::size_t r = 0; r < coords.size(); ++r)
        out[r] = diffs.at(coords[r].first).coeff(coords[r].second);
      return out;
    };
    std::vector<Scalar> base = residual_vector(e1, e3);
    LinearSystem sys(nu);
    std::vector<std::vector<Scalar>> colvals;
    std::size_t u = 0;
    for (std::size_t r = 0; r < n6; ++r)
      for (std::size_t c = 0; c < n123; ++c, ++u) {
        Mat p = e1;
        p.at(r, c) += Scalar(1);
        colvals.push_back(residual_vector(p, e3));
      }
    for (std::size_t r = 0; r < n6; ++r)
      for (std::size_t c = 0; c < n56; ++c, ++u) {
        Mat p = e3;
        p.at(r, c) += Scalar(1);
        colvals.push_back(residual_vector(e1, p));
      }
    for (std::size_t row = 0; row < coords.size(); ++row) {
      std::vector<Scalar> coeffs(nu);
      for (std::size_t cu = 0; cu < nu; ++cu) coeffs[cu] = colvals[cu][row] - base[row];
      sys.add_equation(coeffs, -base[row]);
    }
    auto sol = sys.solve_or_throw("generator-pair relations for E1/E3");
    u = 0;
    for (std::size_t r = 0; r < n6; ++r)
      for (std::size_t c = 0; c < n123; ++c, ++u) e1.at(r, c) = sol[u];
    for (std::size_t r = 0; r < n6; ++r)
      for (std::size_t c = 0; c < n56; ++c, ++u) e3.at(r, c) = sol[u];
  }

  CaseCSolution out;
  out.E1 = e1;
  out.E2 = e2;
  out.E3 = e3;
  out.E4 = e4;
  out.t_images = images_for(e1, e3);
  return out;
}

AlgebraMorphism build_theta(const PreservingIso& iso, const AlgebraPtr& src,
                            const AlgebraPtr& tgt, const Character& chi) {
  const Shape& s = src->shape();
  auto valid = validate_preserving(iso, src->lattice(), tgt->lattice());
  if (!valid.ok) throw std::invalid_argument("iso not lattice-compatible: " + valid.detail);
  for (int p : s.I_range(1, 4)) {
    Scalar b = iso.ab.count(p) ? iso.ab.at(p).second : Scalar(1);
    if (character_eval(src->lattice(), chi, s.sigma(p)) != b)
      throw std::invalid_argument("character mismatch: chi(sigma_" + std::to_string(p) +
                                  ") != b_p");
  }

  TauFactors f = decompose_tau(s, iso);
  // tau2 = C5 then C6: C5 carries the I_5 columns, C6 the I_6 columns after
  // removing the composed D5 B56-tilde part.
  PreservingIso c5 = identity_iso(s);
  c5.B15 = f.tau2.B15;
  c5.B25 = f.tau2.B25;
  PreservingIso c6 = identity_iso(s);
  c6.B16 = f.tau2.B16;
  c6.B26 = f.tau2.B26;
  c6.B36 = f.tau2.B36;
  c6.B56 = f.tau2.B56;
  if (s.l()[4] > 0 && s.l()[5] > 0) {
    // C6 = C5^{-1} C: subtract D5 * B56-part from the J_{1,4} rows of D6
    c6.B16 = c6.B16 - f.tau2.B15 * f.tau2.B56;
    c6.B26 = c6.B26 - f.tau2.B25 * f.tau2.B56;
  }

  const Lattice& L0 = src->lattice();
  Lattice L1 = transformed_lattice(L0, tau_matrix(s, c5));
  Lattice L2 = transformed_lattice(L1, tau_matrix(s, c6));
  Lattice L3 = transformed_lattice(L2, tau_matrix(s, f.tau1));
  AlgebraPtr a1 = Algebra::make(L1), a2 = Algebra::make(L2), a3 = Algebra::make(L3);

  std::vector<AlgebraMorphism::Stage> stages;
  {
    AlgebraMorphism::Stage st;
    st.src = src;
    st.tgt = a1;
    st.tau = tau_matrix(s, c5);
    st.t_images = solve_case_c(c5, src, a1).t_images;
    stages.push_back(std::move(st));
  }
  {
    AlgebraMorphism::Stage st;
    st.src = a1;
    st.tgt = a2;
    st.tau = tau_matrix(s, c6);
    st.t_images = solve_case_c(c6, a1, a2).t_images;
    stages.push_back(std::move(st));
  }
  // chi transported to the tau2-image lattice: values on the transformed
  // basis equal the values on the original basis
  stages.push_back(tau1_stage(f.tau1, a2, a3, chi.values));
  stages.push_back(nu_stage(f.nu_part, a3, tgt));
  return AlgebraMorphism(std::move(stages));
}

namespace {

Mat random_unimodular(int n, Rng& rng) {
  Mat m = Mat::identity(static_cast<std::size_t>(n));
  for (int step = 0; step < 3 * n; ++step) {
    std::size_t i = static_cast<std::size_t>(rng.range(0, n - 1));
    std::size_t j = static_cast<std::size_t>(rng.range(0, n - 1));
    if (i == j) continue;
    Scalar c(rng.range(-2, 2));
    for (std::size_t col = 0; col < m.cols(); ++col) m.at(i, col) += c * m.at(j, col);
  }
  return m;
}

Mat random_int_matrix(int r, int c, Rng& rng) {
  Mat m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = Scalar(rng.range(-2, 2));
  return m;
}

} // namespace

RandomIso random_preserving_iso(const AlgebraPtr& src, Rng& rng) {
  const Shape& s = src->shape();
  const Lattice& L = src->lattice();
  RandomIso out;
  out.src = src;
  out.iso = identity_iso(s);

  for (int blk = 1; blk <= 4; ++blk) {
    auto ids = s.I_range(blk, blk);
    for (std::size_t i = ids.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(rng.range(0, static_cast<long>(i) - 1));
      std::swap(ids[i - 1], ids[j]);
    }
    auto orig = s.I_range(blk, blk);
    for (std::size_t i = 0; i < ids.size(); ++i) out.iso.nu[orig[i]] = ids[i];
  }

  // plant the character, then read off b_p = chi(sigma_p)
  const Scalar pool[] = {Scalar(1),    Scalar(-1), Scalar(2),    Scalar(-2),
                         Scalar(1, 2), Scalar(3),  Scalar(-1, 3)};
  for (int k = 0; k < L.rank(); ++k)
    out.chi.values.push_back(pool[rng.next() % (sizeof(pool) / sizeof(pool[0]))]);
  for (int p : s.I_range(1, 4)) {
    Scalar a(rng.range(-2, 2), rng.chance(50) ? 1 : 2);
    Scalar b = character_eval(L, out.chi, s.sigma(p));
    out.iso.ab[p] = {a, b};
  }

  const auto& l = s.l();
  out.iso.B15 = random_int_matrix(l[0], l[4], rng);
  out.iso.B25 = random_int_matrix(l[1], l[4], rng);
  out.iso.B16 = random_int_matrix(l[0], l[5], rng);
  out.iso.B26 = random_int_matrix(l[1], l[5], rng);
  out.iso.B36 = random_int_matrix(l[2] + l[3], l[5], rng);
  out.iso.B56 = random_int_matrix(l[4], l[5], rng);
  if (l[4] > 0) out.iso.B55 = random_unimodular(l[4], rng);
  if (l[5] > 0) out.iso.B66 = random_unimodular(l[5], rng);

  Mat t = tau_matrix(s, out.iso);
  std::vector<GroupVector> image;
  for (const auto& g : L.basis()) {
    GroupVector img(g.size());
    for (std::size_t c = 0; c < g.size(); ++c) {
      Scalar v;
      for (std::size_t r = 0; r < g.size(); ++r)
        if (!g[r].is_zero()) v += g[r] * t.at(r, c);
      img[c] = v;
    }
    image.push_back(std::move(img));
  }
  out.tgt = Algebra::make(Lattice::build(s, L.field(), std::move(image)));
  return out;
}

PropertyReport verify_morphism(const AlgebraMorphism& theta, std::size_t samples,
                               std::uint64_t seed) {
  PropertyReport rep;
  rep.name = "morphism-law";
  const AlgebraPtr& src = theta.source();
  const Shape& s = src->shape();

  std::vector<Element> gens;
  for (const auto& g : src->lattice().basis()) {
    gens.push_back(Element::x(src, g));
    gens.push_back(Element::x(src, negate(g)));
  }
  for (int p : t_slots(s)) gens.push_back(Element::t(src, p));

  std::vector<std::pair<Element, Element>> pairs;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i; j < gens.size(); ++j) pairs.push_back({gens[i], gens[j]});
  SampleOptions opt;
  for (std::size_t k = 0; k < samples; ++k) {
    Rng rng = Rng::for_sample(seed, k);
    pairs.push_back({sample_monomial(src, rng, opt), sample_monomial(src, rng, opt)});
  }

  rep.samples = pairs.size();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& [u, v] = pairs[k];
    bool ok = theta.apply(bracket_structural(u, v)) ==
              bracket_structural(theta.apply(u), theta.apply(v));
    if (ok)
      ok = theta.apply(multiply(u, v)) == multiply(theta.apply(u), theta.apply(v));
    if (ok) {
      ++rep.passes;
    } else if (!rep.counterexample) {
      rep.counterexample = "pair " + std::to_string(k);
    }
  }
  return rep;
}

} // namespace hamlie
