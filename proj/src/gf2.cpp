#include "marq/gf2.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace marq {

bool gf2_get(const GF2Vec& v, std::uint32_t i) { return (v[i / 64] >> (i % 64)) & 1; }

void gf2_flip(GF2Vec& v, std::uint32_t i) { v[i / 64] ^= std::uint64_t(1) << (i % 64); }

std::uint64_t gf2_popcount(const GF2Vec& v) {
  std::uint64_t total = 0;
  for (auto w : v) total += static_cast<std::uint64_t>(__builtin_popcountll(w));
  return total;
}

void GF2System::add_parity(std::span<const std::uint32_t> vars, bool rhs) {
  Row row;
  row.mask.assign(words(), 0);
  row.rhs = rhs;
  for (auto v : vars) {
    if (v >= n_vars) throw UsageError("variable index " + std::to_string(v) + " out of range");
    gf2_flip(row.mask, v);
  }
  rows.push_back(std::move(row));
}

void GF2System::add_unit(std::uint32_t var, bool value) {
  std::uint32_t vs[1] = {var};
  add_parity(vs, value);
}

GF2Elimination gf2_eliminate(const GF2System& s) {
  GF2Elimination out;
  const std::size_t words = s.words();

  // Reduced row echelon over bit-packed rows: each accepted pivot row
  // has a unique pivot column, cleared from every other row.
  std::vector<GF2Vec> pivot_rows;
  std::vector<bool> pivot_rhs;
  std::vector<std::uint32_t>& pivot_cols = out.pivot_cols;

  for (const auto& row : s.rows) {
    GF2Vec work = row.mask;
    if (work.size() < words) work.resize(words, 0);
    bool rhs = row.rhs;
    for (std::size_t p = 0; p < pivot_rows.size(); ++p) {
      if (gf2_get(work, pivot_cols[p])) {
        for (std::size_t w = 0; w < words; ++w) work[w] ^= pivot_rows[p][w];
        rhs ^= pivot_rhs[p];
      }
    }
    std::uint32_t col = UINT32_MAX;
    for (std::uint32_t i = 0; i < s.n_vars && col == UINT32_MAX; ++i)
      if (gf2_get(work, i)) col = i;
    if (col == UINT32_MAX) {
      if (rhs) out.consistent = false;
      continue;
    }
    // Clear the new pivot column from the existing rows to keep the
    // basis fully reduced.
    for (std::size_t p = 0; p < pivot_rows.size(); ++p) {
      if (gf2_get(pivot_rows[p], col)) {
        for (std::size_t w = 0; w < words; ++w) pivot_rows[p][w] ^= work[w];
        pivot_rhs[p] = pivot_rhs[p] ^ rhs;
      }
    }
    pivot_rows.push_back(std::move(work));
    pivot_rhs.push_back(rhs);
    pivot_cols.push_back(col);
  }

  out.rank = static_cast<std::uint32_t>(pivot_rows.size());
  if (!out.consistent) return out;

  std::vector<bool> is_pivot(s.n_vars, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::uint32_t i = 0; i < s.n_vars; ++i)
    if (!is_pivot[i]) out.free_cols.push_back(i);

  // Particular solution with free variables at zero: each pivot row
  // reads x_pivot + sum of free columns = rhs.
  out.particular.assign(words, 0);
  for (std::size_t p = 0; p < pivot_rows.size(); ++p)
    if (pivot_rhs[p]) gf2_flip(out.particular, pivot_cols[p]);

  // Null-space basis: one vector per free column f, with x_f = 1 and
  // each pivot variable set to that row's coefficient on f.
  out.null_basis.reserve(out.free_cols.size());
  for (auto f : out.free_cols) {
    GF2Vec basis(words, 0);
    gf2_flip(basis, f);
    for (std::size_t p = 0; p < pivot_rows.size(); ++p)
      if (gf2_get(pivot_rows[p], f)) gf2_flip(basis, pivot_cols[p]);
    out.null_basis.push_back(std::move(basis));
  }
  return out;
}

BigInt count_solutions(const GF2System& s) {
  auto elim = gf2_eliminate(s);
  if (!elim.consistent) return BigInt(0);
  return pow2(s.n_vars - elim.rank);
}

GF2System faff_system(std::uint32_t n, std::uint32_t n_limit) {
  if (n < 1) throw UsageError("f_aff requires n >= 1");
  if (n > n_limit)
    throw CapacityError("f_aff limited to n <= " + std::to_string(n_limit) + ", got " +
                        std::to_string(n));
  FaffLayout layout(n);
  GF2System s(layout.total_vars());
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = 1; j <= n; ++j)
      for (std::uint32_t k = 1; k <= n; ++k) {
        std::uint32_t parity4[4] = {layout.y_index(i, j, k), layout.x_index(i),
                                    layout.x_index(j), layout.x_index(k)};
        s.add_parity(parity4, true);
        std::uint32_t parity2[2] = {layout.y_index(i, j, k), layout.z_index(i, j, k)};
        s.add_parity(parity2, true);
      }
  return s;
}

namespace {

void fold_evidence(GF2System& s, const EvidenceString& m) {
  if (m.size() != s.n_vars)
    throw UsageError("evidence string has length " + std::to_string(m.size()) +
                     ", system has " + std::to_string(s.n_vars) + " variables");
  for (std::uint32_t i = 0; i < m.size(); ++i)
    if (m.entries[i] != Mark::star) s.add_unit(i, m.entries[i] == Mark::one);
}

}  // namespace

BigInt faff_mar(std::uint32_t n, const EvidenceString& m, std::uint32_t n_limit) {
  GF2System s = faff_system(n, n_limit);
  fold_evidence(s, m);
  return count_solutions(s);
}

KonesReduction reduce_kones_to_hmar(const XorFormula& phi, std::uint32_t k) {
  if (k > phi.n) throw UsageError("k must be between 0 and n");
  FaffLayout layout(phi.n);
  KonesReduction red;
  red.m = EvidenceString::all_stars(layout.total_vars());
  for (const auto& clause : phi.clauses) {
    auto [i, j, l] = clause;
    if (i < 1 || i > phi.n || j < 1 || j > phi.n || l < 1 || l > phi.n)
      throw UsageError("clause index out of range");
    red.m.entries[layout.y_index(i, j, l)] = Mark::zero;
    red.m.entries[layout.z_index(i, j, l)] = Mark::one;
  }
  red.target_weight = static_cast<std::uint64_t>(k) +
                      static_cast<std::uint64_t>(phi.n) * phi.n * phi.n;
  return red;
}

std::uint64_t brute_kones(const XorFormula& phi, std::uint32_t k) {
  if (phi.n > 24) throw CapacityError("brute_kones limited to 24 variables");
  std::vector<std::uint32_t> clause_masks;
  clause_masks.reserve(phi.clauses.size());
  for (const auto& clause : phi.clauses) {
    std::uint32_t mask = 0;
    for (auto idx : clause) {
      if (idx < 1 || idx > phi.n) throw UsageError("clause index out of range");
      mask ^= std::uint32_t(1) << (idx - 1);
    }
    clause_masks.push_back(mask);
  }
  std::uint64_t count = 0;
  const std::uint32_t limit = std::uint32_t(1) << phi.n;
  for (std::uint32_t x = 0; x < limit; ++x) {
    if (static_cast<std::uint32_t>(__builtin_popcount(x)) != k) continue;
    bool ok = true;
    for (auto mask : clause_masks)
      if ((__builtin_popcount(x & mask) & 1) != 1) { ok = false; break; }
    if (ok) ++count;
  }
  return count;
}

std::vector<BigInt> weight_histogram(const GF2System& s, const EvidenceString& m,
                                     std::uint32_t dim_limit) {
  GF2System combined = s;
  fold_evidence(combined, m);
  std::vector<BigInt> histogram(s.n_vars + 1, BigInt(0));

  auto elim = gf2_eliminate(combined);
  if (!elim.consistent) return histogram;
  const std::uint32_t dim = s.n_vars - elim.rank;
  if (dim > dim_limit)
    throw CapacityError("solution space dimension " + std::to_string(dim) +
                        " exceeds the enumeration limit " + std::to_string(dim_limit));

  const std::size_t words = combined.words();
  GF2Vec current = elim.particular;
  // Gray-code walk over the affine span: flip one basis vector per step.
  histogram[gf2_popcount(current)] += 1;
  const std::uint64_t total = std::uint64_t(1) << dim;
  for (std::uint64_t g = 1; g < total; ++g) {
    const std::uint32_t bit = static_cast<std::uint32_t>(__builtin_ctzll(g));
    for (std::size_t w = 0; w < words; ++w) current[w] ^= elim.null_basis[bit][w];
    histogram[gf2_popcount(current)] += 1;
  }
  return histogram;
}

XorFormula parse_xorcsp(std::istream& in) {
  XorFormula phi;
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = line.substr(0, line.find('#'));
    std::istringstream ss(body);
    std::string first;
    if (!(ss >> first)) continue;
    if (!saw_header) {
      if (first != "xorcsp") throw ParseError("expected 'xorcsp <n>' header", line_no);
      unsigned long n = 0;
      if (!(ss >> n) || n < 1 || n > 1000000) throw ParseError("bad variable count", line_no);
      phi.n = static_cast<std::uint32_t>(n);
      saw_header = true;
      continue;
    }
    if (first != "c") throw ParseError("expected clause line 'c <i> <j> <k>'", line_no);
    unsigned long i = 0, j = 0, k = 0;
    if (!(ss >> i >> j >> k)) throw ParseError("clause needs three indices", line_no);
    std::string extra;
    if (ss >> extra) throw ParseError("trailing content '" + extra + "'", line_no);
    if (i < 1 || i > phi.n || j < 1 || j > phi.n || k < 1 || k > phi.n)
      throw ParseError("clause index out of range (1-based, n=" + std::to_string(phi.n) + ")",
                       line_no);
    phi.clauses.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                           static_cast<std::uint32_t>(k)});
  }
  if (!saw_header) throw ParseError("empty input: missing 'xorcsp' header");
  return phi;
}

std::string serialize_xorcsp(const XorFormula& phi) {
  std::ostringstream out;
  out << "xorcsp " << phi.n << "\n";
  for (const auto& clause : phi.clauses)
    out << "c " << clause[0] << " " << clause[1] << " " << clause[2] << "\n";
  return out.str();
}

GF2System system_from_xorcsp(const XorFormula& phi) {
  GF2System s(phi.n);
  for (const auto& clause : phi.clauses) {
    std::uint32_t vars[3];
    for (int i = 0; i < 3; ++i) {
      if (clause[i] < 1 || clause[i] > phi.n) throw UsageError("clause index out of range");
      vars[i] = clause[i] - 1;
    }
    s.add_parity(vars, true);
  }
  return s;
}

}  // namespace marq
