// Independent reference implementations used only by the tests.
#pragma once

#include <vector>

#include "zfb/aux_state.hpp"
#include "zfb/fock.hpp"
#include "zfb/rmatrix.hpp"

namespace oracle {

using zfb::Complex;
using zfb::Matrix;

// R_21 by explicit index permutation: R21_{(i,j),(k,l)} = R_{(j,i),(l,k)}.
inline Matrix r21_by_indices(const Matrix& r, int n) {
  Matrix out(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) out(i * n + j, k * n + l) = r(j * n + i, l * n + k);
  return out;
}

inline int ipow(int n, int e) {
  int out = 1;
  for (int i = 0; i < e; ++i) out *= n;
  return out;
}

// Word with the given grid indices and the colour tuple encoded row-major in `index`.
inline zfb::Word word_of(const std::vector<int>& ks, int index, int n) {
  std::vector<std::uint8_t> colors(ks.size());
  for (std::size_t i = ks.size(); i-- > 0;) {
    colors[i] = static_cast<std::uint8_t>(index % n);
    index /= n;
  }
  zfb::Word w;
  for (std::size_t i = 0; i < ks.size(); ++i) w = w.appended({static_cast<std::uint8_t>(ks[i]), colors[i]});
  return w;
}

// Dense matrix of T(k0) on the sector with momenta ks:
// R_01(k0,p1) R_02(k0,p2) ... R_0n(k0,pn) on (aux 0) (x) (colours of the n letters).
inline Matrix dense_T(const zfb::FockSpace& fock, double k0, const std::vector<int>& ks) {
  const int n = fock.colors();
  const int factors = static_cast<int>(ks.size()) + 1;
  Matrix m = Matrix::Identity(ipow(n, factors), ipow(n, factors));
  for (std::size_t j = 0; j < ks.size(); ++j)
    m = m * zfb::embed_pair(zfb::eval_r(fock.r_spec(), k0, fock.grid().momentum(ks[j])), n, 0,
                            static_cast<int>(j) + 1, factors);
  return m;
}

// Compares apply-style output (AuxState per basis word) with a dense sector matrix.
template <typename Apply>
double sector_deviation(const zfb::FockSpace& fock, const std::vector<int>& ks, const Matrix& dense,
                        Apply apply) {
  const int n = fock.colors();
  const int words = ipow(n, static_cast<int>(ks.size()));
  double dev = 0.0;
  for (int c = 0; c < words; ++c) {
    const zfb::AuxState img = apply(zfb::FockState::basis(word_of(ks, c, n)));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        zfb::FockState expected;
        for (int d = 0; d < words; ++d) expected.add(word_of(ks, d, n), dense(a * words + d, b * words + c));
        dev = std::max(dev, zfb::max_deviation(img(a, b), expected));
      }
  }
  return dev;
}

// a_i(k) on a word by the closed formula obtained from repeated exchange:
// sum over positions m with p_m = k of
//   [R_01(k,p1) ... R_0,m-1(k,p_{m-1})]_{(i,d_1..d_{m-1}),(c_m,c_1..c_{m-1})}
// times the word with letters 1..m-1 recoloured by d and letter m removed.
inline std::vector<zfb::FockState> dense_annihilation(const zfb::FockSpace& fock, int k, const zfb::Word& w) {
  const int n = fock.colors();
  std::vector<zfb::FockState> out(n);
  for (int m = 0; m < w.size(); ++m) {
    if (w[m].k != k) continue;
    const int factors = m + 1;
    Matrix prod = Matrix::Identity(ipow(n, factors), ipow(n, factors));
    for (int j = 0; j < m; ++j)
      prod = prod * zfb::embed_pair(fock.r(k, w[j].k), n, 0, j + 1, factors);
    int col = w[m].color;
    for (int j = 0; j < m; ++j) col = col * n + w[j].color;
    const int words = ipow(n, m);
    for (int i = 0; i < n; ++i)
      for (int d = 0; d < words; ++d) {
        const Complex c = prod(i * words + d, col);
        if (c == Complex{}) continue;
        zfb::Word v;
        int rem = d;
        std::vector<std::uint8_t> colors(m);
        for (int j = m; j-- > 0;) {
          colors[j] = static_cast<std::uint8_t>(rem % n);
          rem /= n;
        }
        for (int j = 0; j < m; ++j) v = v.appended({w[j].k, colors[j]});
        for (int j = m + 1; j < w.size(); ++j) v = v.appended(w[j]);
        out[i].add(v, c);
      }
  }
  return out;
}

}  // namespace oracle
