#include "torelli/bundle_ring.hpp"

#include <algorithm>
#include <sstream>

namespace torelli {

bool HomologyClass::is_zero() const {
  if (!indeterminate.empty()) return false;
  for (Index i = 0; i < coeffs.size(); ++i)
    if (coeffs(i) != 0) return false;
  return true;
}

namespace {

void add_flag(std::vector<Index>& flags, Index pos) {
  auto it = std::lower_bound(flags.begin(), flags.end(), pos);
  if (it == flags.end() || *it != pos) flags.insert(it, pos);
}

bool has_flag(const std::vector<Index>& flags, Index pos) {
  return std::binary_search(flags.begin(), flags.end(), pos);
}

}  // namespace

Ring Ring::build(BundleData data) {
  Ring r;
  const Index nb = data.base.rank();
  const Index nf = data.fiber.rank();
  if (static_cast<Index>(data.tau.size()) != nb) {
    std::ostringstream os;
    os << "build_ring: tau table incomplete: need one lift per base basis vector (2h = " << nb
       << "), got " << data.tau.size();
    throw std::invalid_argument(os.str());
  }
  const Index tri = zero_tricovector(data.fiber).c.size();
  for (Index b = 0; b < nb; ++b)
    if (data.tau[static_cast<size_t>(b)].c.size() != tri) {
      std::ostringstream os;
      os << "build_ring: tau lift for generator " << data.base.label(b) << " has length "
         << data.tau[static_cast<size_t>(b)].c.size() << ", expected binom(2g,3) = " << tri;
      throw std::invalid_argument(os.str());
    }
  if (data.johnson_kernel) {
    for (Index b = 0; b < nb; ++b)
      if (!johnson_trivial(data.fiber, data.tau[static_cast<size_t>(b)])) {
        std::ostringstream os;
        os << "build_ring: johnson_kernel declared but tau(" << data.base.label(b)
           << ") does not reduce to 0 in wedge^3 H / H";
        throw InconsistentDeclaration(os.str());
      }
    if (data.e_param && *data.e_param != 0)
      throw InconsistentDeclaration("build_ring: johnson_kernel requires e_param = 0, got " +
                                    data.e_param->str());
    r.e_ = Int(0);
  } else {
    r.e_ = data.e_param;
  }
  r.data_ = std::move(data);
  if (r.data_.johnson_kernel) {
    // recalibration functionals k_b with C*(k_b) = tau(b); exist since all
    // lifts reduce to zero
    std::vector<IVec> k(static_cast<size_t>(nb));
    for (Index b = 0; b < nb; ++b) {
      auto sol = solve_cstar(r.data_.fiber, r.data_.tau[static_cast<size_t>(b)]);
      if (!sol) throw std::logic_error("build_ring: kernel lift not in im C* after reduction check");
      k[static_cast<size_t>(b)] = *sol;
    }
    // [F]-coefficient of M_z·M_w for the recalibrated family, relative to
    // the intrinsic C (the deg-2 class with C·Sigma = 0, C·[F] = 1, C^2 = 0
    // for the same family): A = -K J_B K^T + (sum_j k_{a_j}^T J_F k_{b_j}) i_F
    IMat kk(nf, nb);
    for (Index b = 0; b < nb; ++b) kk.col(b) = k[static_cast<size_t>(b)];
    IMat a = -(kk * r.data_.base.gram() * kk.transpose());
    Int cf = 0;
    for (int j = 0; j < r.data_.base.genus(); ++j)
      cf += (k[static_cast<size_t>(2 * j)].transpose() * r.data_.fiber.gram() *
             k[static_cast<size_t>(2 * j + 1)])(0, 0);
    a += cf * r.data_.fiber.gram();
    r.a_matrix_ = std::move(a);
  }
  r.compute_tag();
  r.build_tables();
  return r;
}

void Ring::compute_tag() {
  // FNV-1a over the defining data; rings built from equal data interoperate
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  auto mix_int = [&](const Int& v) {
    mix(static_cast<std::uint64_t>(v.str().size()));
    for (char c : v.str()) mix(static_cast<unsigned char>(c));
  };
  mix(static_cast<std::uint64_t>(data_.base.genus()));
  mix(static_cast<std::uint64_t>(data_.fiber.genus()));
  mix(data_.johnson_kernel ? 2 : 3);
  mix(e_ ? 5 : 7);
  if (e_) mix_int(*e_);
  for (const TriCovector& t : data_.tau)
    for (Index i = 0; i < t.c.size(); ++i) mix_int(t.c(i));
  if (h == 0) h = 1;
  tag_ = h;
}

Index Ring::rank(int degree) const {
  const Index nb = data_.base.rank();
  const Index nf = data_.fiber.rank();
  switch (degree) {
    case 0: return 1;
    case 1: return nb + nf;
    case 2: return 2 + nb * nf;
    case 3: return nb + nf;
    case 4: return 1;
    default: throw std::invalid_argument("rank: degree out of range 0..4");
  }
}

std::string Ring::label(int degree, Index i) const {
  const Index nb = data_.base.rank();
  const Index nf = data_.fiber.rank();
  if (i < 0 || i >= rank(degree)) throw std::invalid_argument("label: index out of range");
  std::ostringstream os;
  switch (degree) {
    case 0: return "pt";
    case 4: return "[E]";
    case 3:
      if (i < nb) os << "E[" << data_.base.label(i) << "]";
      else os << "M[" << data_.fiber.label(i - nb) << "]";
      return os.str();
    case 1:
      if (i < nb) os << "eps[" << data_.base.label(i) << "]";
      else os << "mu[" << data_.fiber.label(i - nb) << "]";
      return os.str();
    case 2:
      if (i == f_pos()) return "F";
      if (i == c_pos()) return "C";
      os << "S[" << data_.base.label((i - 1) / nf) << "," << data_.fiber.label((i - 1) % nf) << "]";
      return os.str();
    default: throw std::invalid_argument("label: degree out of range 0..4");
  }
}

HomologyClass Ring::zero(int degree) const {
  return HomologyClass{degree, IVec::Zero(rank(degree)), {}, tag_};
}

HomologyClass Ring::make(int degree, IVec coeffs) const {
  if (coeffs.size() != rank(degree))
    throw std::invalid_argument("make: coefficient length does not match degree rank");
  return HomologyClass{degree, std::move(coeffs), {}, tag_};
}

HomologyClass Ring::fundamental() const {
  HomologyClass c = zero(4);
  c.coeffs(0) = 1;
  return c;
}

HomologyClass Ring::point() const {
  HomologyClass c = zero(0);
  c.coeffs(0) = 1;
  return c;
}

HomologyClass Ring::fiber_class() const {
  HomologyClass c = zero(2);
  c.coeffs(f_pos()) = 1;
  return c;
}

HomologyClass Ring::c_class() const {
  HomologyClass c = zero(2);
  c.coeffs(c_pos()) = 1;
  return c;
}

HomologyClass Ring::E(Index b) const {
  HomologyClass c = zero(3);
  c.coeffs(b) = 1;
  return c;
}

HomologyClass Ring::E(const IVec& b) const {
  if (b.size() != data_.base.rank()) throw std::invalid_argument("E: base vector length mismatch");
  HomologyClass c = zero(3);
  c.coeffs.head(data_.base.rank()) = b;
  return c;
}

HomologyClass Ring::M(Index z) const {
  HomologyClass c = zero(3);
  c.coeffs(data_.base.rank() + z) = 1;
  return c;
}

HomologyClass Ring::M(const IVec& z) const {
  if (z.size() != data_.fiber.rank()) throw std::invalid_argument("M: fiber vector length mismatch");
  HomologyClass c = zero(3);
  c.coeffs.tail(data_.fiber.rank()) = z;
  return c;
}

HomologyClass Ring::Sigma(Index b, Index z) const {
  HomologyClass c = zero(2);
  c.coeffs(sigma_pos(b, z)) = 1;
  return c;
}

HomologyClass Ring::Sigma(const IVec& b, const IVec& z) const {
  if (b.size() != data_.base.rank() || z.size() != data_.fiber.rank())
    throw std::invalid_argument("Sigma: vector length mismatch");
  HomologyClass c = zero(2);
  for (Index i = 0; i < b.size(); ++i)
    for (Index j = 0; j < z.size(); ++j) c.coeffs(sigma_pos(i, j)) += b(i) * z(j);
  return c;
}

HomologyClass Ring::eps(Index b) const {
  HomologyClass c = zero(1);
  c.coeffs(b) = 1;
  return c;
}

HomologyClass Ring::mu(Index z) const {
  HomologyClass c = zero(1);
  c.coeffs(data_.base.rank() + z) = 1;
  return c;
}

Int Ring::tau_eval(const IVec& b, const TriVector& t) const {
  if (b.size() != data_.base.rank()) throw std::invalid_argument("tau_eval: base vector length mismatch");
  Int s = 0;
  for (Index i = 0; i < b.size(); ++i)
    if (b(i) != 0) s += b(i) * evaluate(data_.tau[static_cast<size_t>(i)], t);
  return s;
}

void Ring::build_tables() {
  const SymplecticLattice& base = data_.base;
  const SymplecticLattice& fib = data_.fiber;
  const Index nb = base.rank();
  const Index nf = fib.rank();
  const Index n3 = rank(3);
  const Index n2 = rank(2);
  const Index n1 = rank(1);
  const IMat& jb = base.gram();
  const IMat& jf = fib.gram();
  const bool kernel = data_.johnson_kernel;

  // tau(e_b)(e_x ∧ e_y ∧ e_z) for basis indices, any order
  std::vector<TriCovector> const& tau = data_.tau;
  auto tau_basis = [&](Index b, Index x, Index y, Index z) -> Int {
    int xi = static_cast<int>(x), yi = static_cast<int>(y), zi = static_cast<int>(z);
    int s = sign_of_permutation3(xi, yi, zi);
    if (s == 0) return 0;
    return Int(s) * tau[static_cast<size_t>(b)].c(triple_position(fib, xi, yi, zi));
  };

  // --- deg3 x deg3 -> deg2 ---------------------------------------------
  t33_.assign(static_cast<size_t>(n3 * n3), {});
  auto cell33 = [&](Index i, Index j) -> Cell& { return t33_[static_cast<size_t>(i * n3 + j)]; };
  for (Index a = 0; a < nb; ++a)
    for (Index b = 0; b < nb; ++b)
      if (jb(a, b) != 0) cell33(a, b).terms.push_back({f_pos(), jb(a, b)});
  for (Index x = 0; x < nf; ++x)
    for (Index b = 0; b < nb; ++b) {
      cell33(nb + x, b).terms.push_back({sigma_pos(b, x), Int(1)});
      cell33(b, nb + x).terms.push_back({sigma_pos(b, x), Int(-1)});
    }
  for (Index z = 0; z < nf; ++z)
    for (Index w = 0; w < nf; ++w) {
      Cell& c = cell33(nb + z, nb + w);
      if (jf(z, w) != 0) c.terms.push_back({c_pos(), jf(z, w)});
      if (kernel) {
        const Int& av = (*a_matrix_)(z, w);
        if (av != 0) c.terms.push_back({f_pos(), av});
      } else if (z != w) {
        add_flag(c.indet, f_pos());
      }
      // Σ-part: coefficient on Σ_{b,x} is -tau(b^)(z ∧ w ∧ x^)
      for (Index b = 0; b < nb; ++b)
        for (Index x = 0; x < nf; ++x) {
          Int g = -base.dual_sign(b) * fib.dual_sign(x) *
                  tau_basis(base.dual_partner(b), z, w, fib.dual_partner(x));
          if (g != 0) c.terms.push_back({sigma_pos(b, x), g});
        }
    }

  // --- deg3 x deg2 -> deg1 (deg2 x deg3 is identical: even cup degrees) --
  t32_.assign(static_cast<size_t>(n3 * n2), {});
  auto cell32 = [&](Index i, Index j) -> Cell& { return t32_[static_cast<size_t>(i * n2 + j)]; };
  for (Index a = 0; a < nb; ++a) {
    // E_a · C = Σ_{b'} i_B(a,b') eps_{b'}
    for (Index bp = 0; bp < nb; ++bp)
      if (jb(a, bp) != 0) cell32(a, c_pos()).terms.push_back({bp, jb(a, bp)});
    // E_a · Σ_{b,z} = -i_B(a,b) Σ_{z'} i_F(z,z') mu_{z'}
    for (Index b = 0; b < nb; ++b) {
      if (jb(a, b) == 0) continue;
      for (Index z = 0; z < nf; ++z)
        for (Index zp = 0; zp < nf; ++zp)
          if (jf(z, zp) != 0)
            cell32(a, sigma_pos(b, z)).terms.push_back({nb + zp, -jb(a, b) * jf(z, zp)});
    }
    // E_a · F = 0
  }
  for (Index x = 0; x < nf; ++x) {
    // M_x · F = Σ_{z'} i_F(x,z') mu_{z'}
    for (Index zp = 0; zp < nf; ++zp)
      if (jf(x, zp) != 0) cell32(nb + x, f_pos()).terms.push_back({nb + zp, jf(x, zp)});
    // M_x · C = Σ_{z'} A(x,z') mu_{z'}; off the kernel those values are the
    // unknown C·M_x·M_{z'}
    if (kernel) {
      for (Index zp = 0; zp < nf; ++zp) {
        const Int& av = (*a_matrix_)(x, zp);
        if (av != 0) cell32(nb + x, c_pos()).terms.push_back({nb + zp, av});
      }
    } else {
      for (Index zp = 0; zp < nf; ++zp)
        if (zp != x) add_flag(cell32(nb + x, c_pos()).indet, nb + zp);
    }
    // M_x · Σ_{b,z} = i_F(x,z) Σ_{b'} i_B(b,b') eps_{b'} - Σ_{z'} tau(b)(x∧z∧z') mu_{z'}
    for (Index b = 0; b < nb; ++b)
      for (Index z = 0; z < nf; ++z) {
        Cell& c = cell32(nb + x, sigma_pos(b, z));
        if (jf(x, z) != 0)
          for (Index bp = 0; bp < nb; ++bp)
            if (jb(b, bp) != 0) c.terms.push_back({bp, jf(x, z) * jb(b, bp)});
        for (Index zp = 0; zp < nf; ++zp) {
          Int v = -tau_basis(b, x, z, zp);
          if (v != 0) c.terms.push_back({nb + zp, v});
        }
      }
  }

  // --- deg2 x deg2 -> deg0 ----------------------------------------------
  t22_.assign(static_cast<size_t>(n2 * n2), {});
  auto cell22 = [&](Index i, Index j) -> Cell& { return t22_[static_cast<size_t>(i * n2 + j)]; };
  cell22(f_pos(), c_pos()).terms.push_back({0, Int(1)});
  cell22(c_pos(), f_pos()).terms.push_back({0, Int(1)});
  if (e_) {
    if (*e_ != 0) cell22(c_pos(), c_pos()).terms.push_back({0, *e_});
  } else {
    add_flag(cell22(c_pos(), c_pos()).indet, 0);
  }
  for (Index a = 0; a < nb; ++a)
    for (Index z = 0; z < nf; ++z)
      for (Index b = 0; b < nb; ++b)
        for (Index w = 0; w < nf; ++w) {
          Int v = -jb(a, b) * jf(z, w);
          if (v != 0) cell22(sigma_pos(a, z), sigma_pos(b, w)).terms.push_back({0, v});
        }

  // --- deg1 x deg3 and deg3 x deg1 -> deg0 --------------------------------
  t13_.assign(static_cast<size_t>(n1 * n3), {});
  t31_.assign(static_cast<size_t>(n3 * n1), {});
  for (Index i = 0; i < n1; ++i) {
    t13_[static_cast<size_t>(i * n3 + i)].terms.push_back({0, Int(1)});
    t31_[static_cast<size_t>(i * n1 + i)].terms.push_back({0, Int(-1)});
  }
}

const Ring::Cell& Ring::cell(int d1, int d2, Index i, Index j) const {
  static const Cell empty;
  switch (d1 * 10 + d2) {
    case 33: return t33_[static_cast<size_t>(i * rank(3) + j)];
    case 32: return t32_[static_cast<size_t>(i * rank(2) + j)];
    case 22: return t22_[static_cast<size_t>(i * rank(2) + j)];
    case 13: return t13_[static_cast<size_t>(i * rank(3) + j)];
    case 31: return t31_[static_cast<size_t>(i * rank(1) + j)];
    default: return empty;
  }
}

HomologyClass Ring::product(const HomologyClass& u, const HomologyClass& v) const {
  if (u.degree < 0 || u.degree > 4 || v.degree < 0 || v.degree > 4)
    throw std::invalid_argument("product: degree out of range 0..4");
  if ((u.ring_tag != 0 && u.ring_tag != tag_) || (v.ring_tag != 0 && v.ring_tag != tag_))
    throw std::invalid_argument(
        "product: mixed-ring operands (class built from a ring with different data)");
  if (u.coeffs.size() != rank(u.degree) || v.coeffs.size() != rank(v.degree))
    throw std::invalid_argument(
        "product: operand coefficient lengths do not match this ring (mixed-ring operands?)");

  // unit multiples
  auto scale = [&](const HomologyClass& w, const Int& s, bool s_unknown) {
    HomologyClass out = zero(w.degree);
    if (s_unknown) {
      for (Index p = 0; p < w.coeffs.size(); ++p)
        if (w.coeffs(p) != 0 || has_flag(w.indeterminate, p)) add_flag(out.indeterminate, p);
      return out;
    }
    out.coeffs = s * w.coeffs;
    if (s != 0) out.indeterminate = w.indeterminate;
    return out;
  };
  if (u.degree == 4) return scale(v, u.coeffs(0), has_flag(u.indeterminate, 0));
  if (v.degree == 4) return scale(u, v.coeffs(0), has_flag(v.indeterminate, 0));

  int target = u.degree + v.degree - 4;
  if (target < 0) return zero(0);  // products below degree 0 vanish

  // table orientation: (2,3) uses the (3,2) table transposed (even-degree
  // cup classes commute with everything)
  const HomologyClass* a = &u;
  const HomologyClass* b = &v;
  int d1 = u.degree, d2 = v.degree;
  if (d1 == 2 && d2 == 3) { std::swap(a, b); std::swap(d1, d2); }

  HomologyClass out = zero(target);
  for (Index i = 0; i < a->coeffs.size(); ++i) {
    bool ai_flag = has_flag(a->indeterminate, i);
    if (a->coeffs(i) == 0 && !ai_flag) continue;
    for (Index j = 0; j < b->coeffs.size(); ++j) {
      bool bj_flag = has_flag(b->indeterminate, j);
      if (b->coeffs(j) == 0 && !bj_flag) continue;
      const Cell& c = cell(d1, d2, i, j);
      if (ai_flag || bj_flag) {
        for (const auto& [pos, coeff] : c.terms) add_flag(out.indeterminate, pos);
        for (Index pos : c.indet) add_flag(out.indeterminate, pos);
        continue;
      }
      Int f = a->coeffs(i) * b->coeffs(j);
      for (const auto& [pos, coeff] : c.terms) out.coeffs(pos) += f * coeff;
      for (Index pos : c.indet) add_flag(out.indeterminate, pos);
    }
  }
  return out;
}

IMat Ring::pairing_matrix(int k) const {
  if (k < 0 || k > 4) throw std::invalid_argument("pairing_matrix: degree out of range 0..4");
  const Index r = rank(k);
  const Index c = rank(4 - k);
  IMat m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) {
      HomologyClass ui = zero(k);
      ui.coeffs(i) = 1;
      HomologyClass vj = zero(4 - k);
      vj.coeffs(j) = 1;
      HomologyClass p = product(ui, vj);
      if (!p.determined()) {
        std::ostringstream os;
        os << "pairing_matrix(" << k << "): entry " << label(k, i) << " . " << label(4 - k, j)
           << " is indeterminate (e = C^2 unspecified off the Johnson kernel)";
        throw IndeterminatePairing(os.str());
      }
      m(i, j) = p.coeffs(0);
    }
  return m;
}

Int Ring::quadruple_mmme(Index x, Index y, Index z, Index b) const {
  HomologyClass p = product(product(M(x), M(y)), product(M(z), E(b)));
  if (!p.determined()) throw std::logic_error("quadruple_mmme: unexpectedly indeterminate");
  return p.coeffs(0);
}

std::vector<Ring::IndeterminateEntry> Ring::indeterminacy_report() const {
  std::vector<IndeterminateEntry> out;
  const Index nb = data_.base.rank();
  const Index nf = data_.fiber.rank();
  // [F]-coefficient of M_z·M_w, z < w
  for (Index z = 0; z < nf; ++z)
    for (Index w = z + 1; w < nf; ++w) {
      const Cell& c = cell(3, 3, nb + z, nb + w);
      for (Index pos : c.indet)
        out.push_back({label(3, nb + z) + "." + label(3, nb + w), label(2, pos), "higher-johnson"});
    }
  // C·M_x·M_{z'} seen as mu-coefficients of M_x·C
  for (Index x = 0; x < nf; ++x) {
    const Cell& c = cell(3, 2, nb + x, c_pos());
    for (Index pos : c.indet)
      out.push_back({label(3, nb + x) + ".C", label(1, pos), "higher-johnson"});
  }
  // C·C when e is not supplied
  {
    const Cell& c = cell(2, 2, c_pos(), c_pos());
    for (Index pos : c.indet) out.push_back({"C.C", label(0, pos), "symbolic-e"});
  }
  return out;
}

// ---------------------------------------------------------------------------
// product_ring_compare: independent tensor product of two surface algebras
// ---------------------------------------------------------------------------

namespace {

// one factor of the tensor algebra: unit, a degree-1 basis class, or the
// point class (cohomologically the volume form)
struct SurfacePart {
  enum Kind { kUnit, kVector, kTop } kind = kUnit;
  Index idx = -1;
  friend bool operator==(const SurfacePart&, const SurfacePart&) = default;
};

struct TensorElem {
  Int coeff;  // 0 means the zero element
  SurfacePart b, f;
};

int cup_degree(const SurfacePart& p) {
  switch (p.kind) {
    case SurfacePart::kUnit: return 0;
    case SurfacePart::kVector: return 1;
    case SurfacePart::kTop: return 2;
  }
  return 0;
}

// product inside one surface algebra: 1 is the unit, v_i v_j = i(i,j) top,
// v·top = top·top = 0
std::pair<Int, SurfacePart> surface_mul(const IMat& gram, const SurfacePart& x, const SurfacePart& y) {
  if (x.kind == SurfacePart::kUnit) return {Int(1), y};
  if (y.kind == SurfacePart::kUnit) return {Int(1), x};
  if (x.kind == SurfacePart::kVector && y.kind == SurfacePart::kVector)
    return {gram(x.idx, y.idx), SurfacePart{SurfacePart::kTop, -1}};
  return {Int(0), SurfacePart{}};
}

TensorElem tensor_mul(const IMat& gb, const IMat& gf, const TensorElem& x, const TensorElem& y) {
  auto [cb, pb] = surface_mul(gb, x.b, y.b);
  auto [cf, pf] = surface_mul(gf, x.f, y.f);
  Int koszul = (cup_degree(x.f) * cup_degree(y.b)) % 2 == 1 ? -1 : 1;
  Int c = x.coeff * y.coeff * cb * cf * koszul;
  if (c == 0) return TensorElem{Int(0), {}, {}};
  return TensorElem{c, pb, pf};
}

}  // namespace

bool Ring::product_ring_compare() const {
  if (!data_.johnson_kernel)
    throw std::invalid_argument("product_ring_compare: ring was not built with johnson_kernel");

  // canonical zero lift: the basis in which the comparison is stated
  const Ring* self = this;
  std::optional<Ring> canonical;
  bool all_zero = true;
  for (const TriCovector& t : data_.tau)
    for (Index i = 0; i < t.c.size(); ++i)
      if (t.c(i) != 0) all_zero = false;
  if (!all_zero) {
    BundleData d{data_.base, data_.fiber, {}, Int(0), true};
    d.tau.assign(static_cast<size_t>(data_.base.rank()), zero_tricovector(data_.fiber));
    canonical.emplace(Ring::build(std::move(d)));
    self = &*canonical;
  }

  const SymplecticLattice& base = data_.base;
  const SymplecticLattice& fib = data_.fiber;
  const Index nb = base.rank();
  const Index nf = fib.rank();

  // dictionary: canonical basis class -> tensor element
  auto dict = [&](int deg, Index i) -> TensorElem {
    SurfacePart unit{SurfacePart::kUnit, -1};
    SurfacePart top{SurfacePart::kTop, -1};
    auto bvec = [&](Index b) { return SurfacePart{SurfacePart::kVector, b}; };
    switch (deg) {
      case 4: return {Int(1), unit, unit};
      case 3:
        if (i < nb) return {Int(1), bvec(i), unit};
        return {Int(1), unit, bvec(i - nb)};
      case 2:
        if (i == self->f_pos()) return {Int(1), top, unit};
        if (i == self->c_pos()) return {Int(1), unit, top};
        return {Int(-1), bvec((i - 1) / nf), bvec((i - 1) % nf)};
      case 1:
        if (i < nb) return {-base.dual_sign(i), bvec(base.dual_partner(i)), top};
        return {-fib.dual_sign(i - nb), top, bvec(fib.dual_partner(i - nb))};
      case 0: return {Int(1), top, top};
    }
    throw std::logic_error("dict: bad degree");
  };

  // inverse dictionary: tensor element -> canonical coefficient vector
  auto to_class = [&](int deg, const TensorElem& t) -> IVec {
    IVec v = IVec::Zero(self->rank(deg));
    if (t.coeff == 0) return v;
    for (Index i = 0; i < self->rank(deg); ++i) {
      TensorElem d = dict(deg, i);
      if (d.b == t.b && d.f == t.f) {
        v(i) = t.coeff * d.coeff;  // d.coeff is ±1
        return v;
      }
    }
    throw std::logic_error("to_class: tensor element outside the canonical basis image");
  };

  for (int d1 = 0; d1 <= 4; ++d1)
    for (int d2 = 0; d2 <= 4; ++d2) {
      int target = d1 + d2 - 4;
      for (Index i = 0; i < self->rank(d1); ++i)
        for (Index j = 0; j < self->rank(d2); ++j) {
          HomologyClass ui = self->zero(d1);
          ui.coeffs(i) = 1;
          HomologyClass vj = self->zero(d2);
          vj.coeffs(j) = 1;
          HomologyClass ring_side = self->product(ui, vj);
          if (!ring_side.determined()) return false;
          TensorElem tensor_side = tensor_mul(base.gram(), fib.gram(), dict(d1, i), dict(d2, j));
          if (target < 0) {
            if (tensor_side.coeff != 0 || !ring_side.is_zero()) return false;
            continue;
          }
          if (to_class(target, tensor_side) != ring_side.coeffs) return false;
        }
    }
  return true;
}

}  // namespace torelli
