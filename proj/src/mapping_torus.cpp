#include "torelli/mapping_torus.hpp"

namespace torelli {

TorusModel::TorusModel(SymplecticLattice lattice, TriCovector tau_lift)
    : lattice_(std::move(lattice)), tau_(std::move(tau_lift)) {
  TriCovector probe = zero_tricovector(lattice_);
  if (tau_.c.size() != probe.c.size())
    throw std::invalid_argument("TorusModel: tau lift length does not match binom(2g,3)");
}

H2Class fiber_h2(const TorusModel& m) {
  return H2Class{Int(1), IVec::Zero(m.lattice().rank())};
}

H2Class sigma_h2(const TorusModel& m, const IVec& z) {
  if (z.size() != m.lattice().rank())
    throw std::invalid_argument("sigma_h2: vector length does not match lattice rank");
  return H2Class{Int(0), z};
}

Int triple_product(const TorusModel& m, const H2Class& u, const H2Class& v, const H2Class& w) {
  const SymplecticLattice& l = m.lattice();
  Int pure = evaluate(m.tau_lift(), wedge3(l, u.sigma, v.sigma, w.sigma));
  Int one_f = u.f_coeff * l.pairing(v.sigma, w.sigma) + v.f_coeff * l.pairing(w.sigma, u.sigma) +
              w.f_coeff * l.pairing(u.sigma, v.sigma);
  return pure + Int(kFiberTripleSign) * one_f;
}

Index tensor_index(const TorusModel& m, Index i, Index j, Index k) {
  Index n = m.lattice().rank() + 1;
  return (i * n + j) * n + k;
}

std::vector<Int> intersection_tensor(const TorusModel& m) {
  const Index n = m.lattice().rank() + 1;  // [F] first, then Σ_{e_i}
  auto cls = [&](Index i) {
    return i == 0 ? fiber_h2(m) : sigma_h2(m, m.lattice().basis_vector(i - 1));
  };
  std::vector<Int> t(static_cast<size_t>(n * n * n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k)
        t[static_cast<size_t>(tensor_index(m, i, j, k))] = triple_product(m, cls(i), cls(j), cls(k));
  return t;
}

std::optional<IVec> recalibrate(const TorusModel& m, const TriCovector& tau_prime,
                                const TriCovector& tau_tilde) {
  const SymplecticLattice& l = m.lattice();
  if (tau_prime.c.size() != tau_tilde.c.size())
    throw std::invalid_argument("recalibrate: lift coordinate lengths differ");
  auto alpha = solve_cstar(l, TriCovector{tau_prime.c - tau_tilde.c});
  if (!alpha) return std::nullopt;  // lifts of different Johnson classes
  // re-verify: Σ_x = Σ'_x - alpha(x)[F] has triple products tau_tilde
  TorusModel primed(l, tau_prime);
  auto corrected = [&](Index i) {
    H2Class s = sigma_h2(primed, l.basis_vector(i));
    s.f_coeff -= (*alpha)(i);
    return s;
  };
  for (Index x = 0; x < l.rank(); ++x)
    for (Index y = x + 1; y < l.rank(); ++y)
      for (Index z = y + 1; z < l.rank(); ++z) {
        Int got = triple_product(primed, corrected(x), corrected(y), corrected(z));
        Int want = evaluate(tau_tilde, wedge3(l, l.basis_vector(x), l.basis_vector(y), l.basis_vector(z)));
        if (got != want)
          throw std::logic_error("recalibrate: internal re-verification failed");
      }
  return alpha;
}

}  // namespace torelli
