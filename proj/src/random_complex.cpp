#include "bhk/random_complex.hpp"

#include <stdexcept>

namespace bhk {

namespace {

using Labels = std::vector<std::pair<std::string, Rational>>;

ModulePtr make_module(const OraclePtr& oracle, Labels labels, const std::string& name) {
  return oracle ? WeightedModule::free(oracle, std::move(labels), name) : WeightedModule::plain(std::move(labels), name);
}

long nonzero(Rng& rng, long bound) {
  long c = rng.uniform(1, bound);
  return rng.coin() ? c : -c;
}

// Elementary matrix change x_j -> x_j + c g x_i and its inverse.
std::pair<ModuleMap, ModuleMap> transvection(const ModulePtr& m, Rng& rng, const RandomComplexOptions& opts) {
  const auto& labels = m->labels();
  std::size_t i = rng.below(labels.size());
  std::size_t j = rng.below(labels.size() - 1);
  if (j >= i) ++j;
  GroupElement g;
  if (m->has_group())
    g = opts.group_letters > 0 ? random_element(m->oracle()->group(), rng, opts.group_letters)
                               : m->oracle()->group().identity();
  Rational c(nonzero(rng, opts.coeff));
  std::map<std::string, FormalSum> fwd, back;
  for (const auto& x : labels) {
    fwd[x] = FormalSum::single(m->generator(x));
    back[x] = fwd[x];
  }
  fwd[labels[j]].add(BasisKey{g, labels[i]}, c);
  back[labels[j]].add(BasisKey{g, labels[i]}, -c);
  return {ModuleMap::matrix(m, m, std::move(fwd)), ModuleMap::matrix(m, m, std::move(back))};
}

ModuleMap random_matrix(const ModulePtr& from, const ModulePtr& to, Rng& rng, long coeff) {
  std::map<std::string, FormalSum> cols;
  if (to->is_zero_module()) return ModuleMap::zero(from, to);
  for (const auto& x : from->labels()) {
    FormalSum col;
    for (const auto& y : to->labels())
      if (rng.below(3) == 0) col.add(to->generator(y), Rational(nonzero(rng, coeff)));
    cols[x] = col;
  }
  return ModuleMap::matrix(from, to, std::move(cols));
}

}  // namespace

RandomComplex random_complex(OraclePtr oracle, Rng& rng, const RandomComplexOptions& opts, const std::string& name) {
  if (opts.hi < opts.lo) throw std::invalid_argument("random complex needs lo <= hi");
  int width = opts.hi - opts.lo + 1;
  std::vector<Labels> all(width), hom(width);
  // pieces[k]: number of elementary pieces from degree lo + k + 1 to lo + k
  std::vector<std::size_t> pieces(width, 0);
  auto weight = [&] { return Rational(rng.uniform(1, opts.max_weight)); };
  for (int k = 0; k < width; ++k) {
    std::size_t h = opts.homology_ranks ? opts.homology_ranks->at(k) : rng.below(opts.max_homology + 1);
    for (std::size_t t = 0; t < h; ++t) {
      std::pair<std::string, Rational> z{"z" + std::to_string(t), Rational(1 + long(t) % opts.max_weight)};
      all[k].push_back(z);
      hom[k].push_back(z);
    }
  }
  for (int k = 0; k + 1 < width; ++k) {
    pieces[k] = rng.below(opts.max_pieces + 1);
    for (std::size_t t = 0; t < pieces[k]; ++t) {
      all[k + 1].push_back({"u" + std::to_string(t), weight()});
      all[k].push_back({"v" + std::to_string(t), weight()});
    }
  }
  std::vector<ModulePtr> mods, hmods;
  for (int k = 0; k < width; ++k) {
    std::string deg = std::to_string(opts.lo + k);
    mods.push_back(make_module(oracle, all[k], name + deg));
    hmods.push_back(make_module(oracle, hom[k], "H" + deg));
  }

  // standard differential, contraction, projection and inclusion
  std::vector<ModuleMap> D, c0, pi, iota;  // D[k] = d(lo + k + 1), c0[k]: degree lo+k -> lo+k+1
  for (int k = 0; k + 1 < width; ++k) {
    std::map<std::string, FormalSum> dcols, ccols;
    for (std::size_t t = 0; t < pieces[k]; ++t) {
      std::string u = "u" + std::to_string(t), v = "v" + std::to_string(t);
      dcols[u] = FormalSum::single(mods[k]->generator(v));
      ccols[v] = FormalSum::single(mods[k + 1]->generator(u));
    }
    D.push_back(ModuleMap::matrix(mods[k + 1], mods[k], std::move(dcols)));
    c0.push_back(ModuleMap::matrix(mods[k], mods[k + 1], std::move(ccols)));
  }
  for (int k = 0; k < width; ++k) {
    std::map<std::string, FormalSum> pcols, icols;
    for (const auto& [z, w] : hom[k]) {
      pcols[z] = FormalSum::single(hmods[k]->generator(z));
      icols[z] = FormalSum::single(mods[k]->generator(z));
    }
    pi.push_back(ModuleMap::matrix(mods[k], hmods[k], std::move(pcols)));
    iota.push_back(ModuleMap::matrix(hmods[k], mods[k], std::move(icols)));
  }

  std::vector<ModuleMap> P, Pinv;
  for (int k = 0; k < width; ++k) {
    ModuleMap p = ModuleMap::identity(mods[k]), q = ModuleMap::identity(mods[k]);
    if (mods[k]->rank() >= 2) {
      for (std::size_t t = 0; t < opts.transvections; ++t) {
        auto [T, Tinv] = transvection(mods[k], rng, opts);
        p = p.after(T);
        q = Tinv.after(q);
      }
    }
    P.push_back(p);
    Pinv.push_back(q);
  }

  RingKind ring = RingKind::integers;
  std::vector<ModuleMap> diffs;
  for (int k = 0; k + 1 < width; ++k) diffs.push_back(P[k].after(D[k]).after(Pinv[k + 1]));
  RandomComplex out;
  out.complex = ChainComplex::make(oracle, ring, opts.lo, mods, std::move(diffs), name);
  std::vector<ModuleMap> hdiffs;
  for (int k = 0; k + 1 < width; ++k) hdiffs.push_back(ModuleMap::zero(hmods[k + 1], hmods[k]));
  out.homology = ChainComplex::make(oracle, ring, opts.lo, hmods, std::move(hdiffs), "H(" + name + ")");

  std::map<int, ModuleMap> F, G, h;
  for (int k = 0; k < width; ++k) {
    int n = opts.lo + k;
    F.emplace(n, pi[k].after(Pinv[k]));
    G.emplace(n, P[k].after(iota[k]));
    if (k + 1 < width) h.emplace(n, -P[k + 1].after(c0[k]).after(Pinv[k]));
  }
  const auto& C = out.complex;
  const auto& H = out.homology;
  out.to_homology.F = GradedMap(C, H, 0, std::move(F), "F");
  out.to_homology.G = GradedMap(H, C, 0, std::move(G), "G");
  out.to_homology.h = GradedMap(C, C, 1, std::move(h), "h");
  out.to_homology.k = GradedMap::zero(H, H, 1);
  if (H.is_zero()) out.contraction = ContractionCertificate{-out.to_homology.h, std::nullopt};
  return out;
}

ChainMap random_nullhomotopic_map(const ChainComplex& a, const ChainComplex& b, Rng& rng, long coeff) {
  std::map<int, ModuleMap> s;
  for (int n = a.lo(); n <= a.hi(); ++n)
    if (!a.module(n)->is_zero_module()) s.emplace(n, random_matrix(a.module(n), b.module(n + 1), rng, coeff));
  return homotopy_boundary(GradedMap(a, b, 1, std::move(s), "s")).named("ds+sd");
}

RandomIsomorphism random_isomorphism(const ChainComplex& c, Rng& rng, const RandomComplexOptions& opts) {
  std::map<int, ModuleMap> P, Pinv;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    const auto& m = c.module(n);
    ModuleMap p = ModuleMap::identity(m), q = ModuleMap::identity(m);
    if (m->finite_labels() && m->rank() >= 2) {
      for (std::size_t t = 0; t < opts.transvections; ++t) {
        auto [T, Tinv] = transvection(m, rng, opts);
        p = p.after(T);
        q = Tinv.after(q);
      }
    }
    P.emplace(n, p);
    Pinv.emplace(n, q);
  }
  std::vector<ModulePtr> mods;
  std::vector<ModuleMap> diffs;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    mods.push_back(c.module(n));
    if (n > c.lo()) diffs.push_back(P.at(n - 1).after(c.d(n)).after(Pinv.at(n)));
  }
  RandomIsomorphism out;
  out.target = ChainComplex::make(c.oracle(), c.ring(), c.lo(), std::move(mods), std::move(diffs), c.name() + "'");
  out.f = GradedMap(c, out.target, 0, std::move(P), "iso");
  out.inverse = GradedMap(out.target, c, 0, std::move(Pinv), "iso^-1");
  return out;
}

ChainMap random_chain_map(const RandomComplex& a, const RandomComplex& b, Rng& rng, long coeff) {
  const auto& A = a.complex;
  const auto& B = b.complex;
  std::map<int, ModuleMap> phi, s;
  for (int n = a.homology.lo(); n <= a.homology.hi(); ++n)
    if (!a.homology.module(n)->is_zero_module())
      phi.emplace(n, random_matrix(a.homology.module(n), b.homology.module(n), rng, coeff));
  for (int n = A.lo(); n <= A.hi(); ++n)
    if (!A.module(n)->is_zero_module()) s.emplace(n, random_matrix(A.module(n), B.module(n + 1), rng, coeff));
  GradedMap Phi(a.homology, b.homology, 0, std::move(phi), "phi");
  GradedMap S(A, B, 1, std::move(s), "s");
  return (b.to_homology.G.after(Phi).after(a.to_homology.F) + homotopy_boundary(S)).named("f");
}

}  // namespace bhk
