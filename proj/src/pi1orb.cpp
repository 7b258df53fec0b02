#include "smallorb/pi1orb.hpp"

#include <map>
#include <stdexcept>

namespace smallorb {

std::vector<std::vector<int>> CoxeterPresentation::relators() const {
  std::vector<std::vector<int>> rels;
  for (int i = 0; i < generator_count; ++i) rels.push_back({i, i});
  for (auto [i, j] : commuting_pairs) rels.push_back({i, j, i, j});
  return rels;
}

CoxeterPresentation coxeter_presentation(const FaceLattice& lattice) {
  CoxeterPresentation cox;
  cox.generator_count = lattice.facet_count;
  for (int i = 0; i < lattice.facet_count; ++i)
    for (int j = i + 1; j < lattice.facet_count; ++j) {
      std::uint64_t bits = (std::uint64_t(1) << i) | (std::uint64_t(1) << j);
      if (lattice.face_with_facets(bits) >= 0) cox.commuting_pairs.emplace_back(i, j);
    }
  return cox;
}

GF2Vector XiMap::word_image(const std::vector<int>& word) const {
  GF2Vector acc(dim);
  for (int x : word) acc += images[x];
  return acc;
}

XiMap xi_map(const CoxeterPresentation& cox, const SCharFunction& schar) {
  if (static_cast<int>(schar.values.size()) != cox.generator_count)
    throw std::invalid_argument("xi_map: one image per generator required");
  XiMap xi;
  xi.dim = schar.dim;
  xi.images = schar.values;
  for (const auto& rel : cox.relators())
    if (!xi.word_image(rel).is_zero())
      throw std::logic_error("xi_map: a Coxeter relator has nonzero image");
  if (gf2_rank(xi.images) != schar.dim)
    throw std::logic_error("xi_map: images do not span Z_2^{n-1}");
  return xi;
}

KernelPresentation kernel_presentation(const CoxeterPresentation& cox, const XiMap& xi) {
  const int m = cox.generator_count;
  const int d = xi.dim;
  const std::size_t expected = std::size_t(1) << d;

  KernelPresentation ker;
  std::map<std::uint64_t, int> coset_index;

  // Breadth-first closure from the identity coset, generators in order.
  ker.cosets.push_back(GF2Vector(d));
  ker.transversal.push_back({});
  coset_index[0] = 0;
  for (std::size_t head = 0; head < ker.cosets.size(); ++head) {
    if (ker.cosets.size() > expected)
      throw std::logic_error("kernel_presentation: coset closure exceeded 2^{n-1}");
    for (int i = 0; i < m; ++i) {
      GF2Vector next = ker.cosets[head] + xi.images[i];
      if (!coset_index.count(next.raw())) {
        coset_index[next.raw()] = static_cast<int>(ker.cosets.size());
        ker.cosets.push_back(next);
        std::vector<int> word = ker.transversal[head];
        word.push_back(i);
        ker.transversal.push_back(std::move(word));
      }
    }
  }
  ker.coset_count = static_cast<int>(ker.cosets.size());
  if (ker.cosets.size() != expected)
    throw std::logic_error("kernel_presentation: coset count differs from the index");

  ker.coset_table.assign(ker.coset_count, std::vector<int>(m, -1));
  for (int g = 0; g < ker.coset_count; ++g)
    for (int i = 0; i < m; ++i)
      ker.coset_table[g][i] = coset_index.at((ker.cosets[g] + xi.images[i]).raw());

  // Tree pairs: (g, i) whose transversal word extends t_g by the letter i.
  ker.schreier_index.assign(ker.coset_count, std::vector<int>(m, -2));
  for (int g = 1; g < ker.coset_count; ++g) {
    const auto& word = ker.transversal[g];
    int parent = 0;
    for (size_t t = 0; t + 1 < word.size(); ++t) parent = ker.coset_table[parent][word[t]];
    ker.schreier_index[parent][word.back()] = -1;
  }

  for (int g = 0; g < ker.coset_count; ++g)
    for (int i = 0; i < m; ++i) {
      if (ker.schreier_index[g][i] == -1) continue;  // spanning tree pair
      KernelPresentation::SchreierGenerator sg;
      sg.coset = g;
      sg.generator = i;
      sg.word = ker.transversal[g];
      sg.word.push_back(i);
      const auto& back = ker.transversal[ker.coset_table[g][i]];
      sg.word.insert(sg.word.end(), back.rbegin(), back.rend());
      ker.schreier_index[g][i] = static_cast<int>(ker.schreier_generators.size());
      ker.schreier_generators.push_back(std::move(sg));
    }

  // Rewrite every conjugate t_g r t_g^{-1}.  Scanning the transversal and
  // its inverse only crosses tree pairs, so the rewriting reduces to
  // scanning r itself starting at the coset g.
  for (const auto& rel : cox.relators()) {
    for (int g = 0; g < ker.coset_count; ++g) {
      std::vector<int> rewritten;
      int c = g;
      for (int letter : rel) {
        int idx = ker.schreier_index[c][letter];
        if (idx >= 0) rewritten.push_back(idx);
        c = ker.coset_table[c][letter];
      }
      if (c != g)
        throw std::logic_error("kernel_presentation: relator does not fix the coset");
      ker.rewritten_relators.push_back(std::move(rewritten));
    }
  }
  return ker;
}

}  // namespace smallorb
